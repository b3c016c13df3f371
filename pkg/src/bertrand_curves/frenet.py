"""Frenet apparatus from position jets.

Curves are not reparametrized by arc length. All primes are derivatives with
respect to the curve parameter ``t`` and the speed ``speed = |alpha'|``
carries the conversion, so the frame equations read::

    T' = speed*kappa*N,  N' = -speed*kappa*T + speed*tau*B,  B' = -speed*tau*N
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import jet as J
from .errors import FrameUndefined, GuardViolation, SingularSpeed

EPS_FLAT = 1e-9


@dataclass(frozen=True)
class FrenetFrame:
    t: float
    position: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float
    speed: float
    kappa_p: float
    kappa_pp: float
    tau_p: float
    tau_pp: float
    speed_p: float
    speed_pp: float
    kappa_jet: J.Jet = field(repr=False, compare=False)
    tau_jet: J.Jet = field(repr=False, compare=False)
    speed_jet: J.Jet = field(repr=False, compare=False)
    T_jet: J.Jet = field(repr=False, compare=False)
    N_jet: J.Jet = field(repr=False, compare=False)
    B_jet: J.Jet = field(repr=False, compare=False)

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "position": self.position.tolist(),
            "T": self.T.tolist(),
            "N": self.N.tolist(),
            "B": self.B.tolist(),
            "kappa": self.kappa,
            "tau": self.tau,
            "speed": self.speed,
            "kappa_p": self.kappa_p,
            "kappa_pp": self.kappa_pp,
            "tau_p": self.tau_p,
            "tau_pp": self.tau_pp,
            "speed_p": self.speed_p,
            "speed_pp": self.speed_pp,
        }


def frenet_apparatus(pos: J.Jet, t: float = float("nan"), eps_flat: float = EPS_FLAT) -> FrenetFrame:
    """Frame, curvature, torsion, speed and their derivatives from a position jet.

    ``pos`` must have order >= 5 so that kappa'' and tau'' are available.
    Raises :class:`SingularSpeed` when ``|alpha'|`` vanishes and
    :class:`FrameUndefined` when ``kappa <= eps_flat``.
    """
    if pos.order < 5:
        raise ValueError(f"position jet of order {pos.order} < 5")
    v = _nth_derivative(pos, 1)
    a = _nth_derivative(pos, 2)
    j = _nth_derivative(pos, 3)

    speed2 = J.dot(v, v)
    if speed2.value <= J.EPS_DIV**2:
        raise SingularSpeed(f"|alpha'| = {np.sqrt(speed2.value):.3g} at t={t}", t=t)
    speed = J.sqrt(speed2)

    c = J.cross(v, a)
    c2 = J.dot(c, c)
    cn = np.sqrt(c2.value)
    if cn <= eps_flat * speed.value**3:
        raise FrameUndefined(
            f"curvature {cn / speed.value**3:.3g} <= {eps_flat:g} at t={t}", t=t
        )
    try:
        cnorm = J.sqrt(c2)
    except GuardViolation as exc:
        raise FrameUndefined(str(exc), t=t) from exc

    kappa = cnorm / speed**3
    tau = J.det3(v, a, j) / c2
    T = v / speed
    B = c / cnorm
    N = J.cross(B, T)

    return FrenetFrame(
        t=float(t),
        position=np.asarray(pos.value),
        T=T.value,
        N=N.value,
        B=B.value,
        kappa=kappa[0],
        tau=tau[0],
        speed=speed[0],
        kappa_p=kappa[1],
        kappa_pp=kappa[2],
        tau_p=tau[1],
        tau_pp=tau[2],
        speed_p=speed[1],
        speed_pp=speed[2],
        kappa_jet=kappa,
        tau_jet=tau,
        speed_jet=speed,
        T_jet=T,
        N_jet=N,
        B_jet=B,
    )


def _nth_derivative(x: J.Jet, k: int) -> J.Jet:
    """k-th derivative jet."""
    for _ in range(k):
        x = x.derivative()
    return x


def frame_at(spec, t: float, order: int = 6, eps_flat: float = EPS_FLAT) -> FrenetFrame:
    from .curves import eval_jet

    return frenet_apparatus(eval_jet(spec, t, order), t=t, eps_flat=eps_flat)


def _stencil_derivative(f, t: float, h: float) -> np.ndarray:
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h)


def frenet_ode_residual(spec, t: float, h: float = 1e-4) -> float:
    """Largest violation of the three frame equations at ``t``.

    The frame vectors are differentiated numerically (5-point central
    stencil) and compared with the right-hand sides built from the jet
    curvature, torsion and speed.
    """
    fr = frame_at(spec, t)

    def vec(name):
        return lambda s: getattr(frame_at(spec, s), name)

    sk = fr.speed * fr.kappa
    st = fr.speed * fr.tau
    res_T = _stencil_derivative(vec("T"), t, h) - sk * fr.N
    res_N = _stencil_derivative(vec("N"), t, h) - (-sk * fr.T + st * fr.B)
    res_B = _stencil_derivative(vec("B"), t, h) - (-st * fr.N)
    return float(max(np.linalg.norm(res_T), np.linalg.norm(res_N), np.linalg.norm(res_B)))
