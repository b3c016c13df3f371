"""Bertrand partner curves ``beta = alpha + lam*N``.

The offset ``lam`` is constant and supplied by the caller. The companion
constant ``mu`` comes from ``lam*kappa + mu*tau = 1`` and the pair angle from
``cos(theta) = <T_beta, T>``, ``sin(theta) = <T_beta, B>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .curves import CurveSpec, eval_jet
from .errors import (
    DegenerateDenominator,
    DegeneratePartner,
    FrameUndefined,
    NotBertrand,
    ThetaDegenerate,
    TorsionZero,
)
from .frenet import EPS_FLAT, FrenetFrame, frame_at, frenet_apparatus

TOL_PAIR = 1e-8
EPS_THETA = 1e-6
TOL_NORMAL = 1e-8
_EPS_TAU = 1e-12


@dataclass(frozen=True)
class BertrandPair:
    base: CurveSpec
    lam: float
    mu: float
    cos_theta: float
    sin_theta: float
    theta_samples: tuple = field(default=(), repr=False)
    # N_beta = normal_sign * N at every sample
    normal_sign: int = 1
    # sign of the closed-form kappa_beta relative to the directly computed one
    curvature_sign: int = 1

    def summary(self) -> dict:
        return {
            "bertrand_lambda": self.lam,
            "mu": self.mu,
            "cos_theta": self.cos_theta,
            "sin_theta": self.sin_theta,
            "normal_sign": self.normal_sign,
            "curvature_sign": self.curvature_sign,
        }


def partner_jet(base: CurveSpec, lam: float, t: float, order: int = 6):
    """Position jet of the partner; the base is evaluated two orders higher."""
    fr = frenet_apparatus(eval_jet(base, t, order + 2), t=t)
    return fr.N_jet * lam + eval_jet(base, t, order).truncate(fr.N_jet.order)


def partner_point(base: CurveSpec, lam: float, t: float) -> np.ndarray:
    fr = frame_at(base, t)
    return fr.position + lam * fr.N


def partner_frame(base: CurveSpec, lam: float, t: float, order: int = 6,
                  eps_flat: float = EPS_FLAT) -> FrenetFrame:
    """Frenet apparatus computed directly from the partner's own jets."""
    return frenet_apparatus(partner_jet(base, lam, t, order), t=t, eps_flat=eps_flat)


def derive_mu(base: CurveSpec, lam: float, grid: Sequence[float], tol_pair: float = TOL_PAIR,
              frames: Sequence[FrenetFrame] | None = None) -> float:
    """Mean of ``(1 - lam*kappa)/tau`` over the grid; must be constant."""
    frames = frames if frames is not None else [frame_at(base, t) for t in grid]
    mus = []
    for fr in frames:
        if abs(fr.tau) <= _EPS_TAU:
            raise TorsionZero(f"torsion vanishes at t={fr.t}", t=fr.t)
        mus.append((1.0 - lam * fr.kappa) / fr.tau)
    mus = np.array(mus)
    mu = float(mus.mean())
    spread = float(mus.max() - mus.min())
    if spread > tol_pair * max(1.0, abs(mu)):
        worst = int(np.argmax(np.abs(mus - mu)))
        raise NotBertrand(
            f"mu is not constant for lambda={lam}: spread {spread:.3g}",
            quantity="mu", spread=spread, t=frames[worst].t,
        )
    return mu


def compute_theta(base: FrenetFrame, partner: FrenetFrame,
                  eps_theta: float = EPS_THETA) -> tuple[float, float]:
    """``(cos theta, sin theta)`` between corresponding tangents."""
    off_plane = float(np.dot(partner.T, base.N))
    if abs(off_plane) > TOL_NORMAL:
        raise NotBertrand(
            f"partner tangent has normal component {off_plane:.3g} at t={base.t}",
            quantity="T_beta.N", value=off_plane, t=base.t,
        )
    c = float(np.dot(partner.T, base.T))
    s = float(np.dot(partner.T, base.B))
    if abs(s) <= eps_theta:
        raise ThetaDegenerate(f"|sin theta| = {abs(s):.3g} at t={base.t}", t=base.t)
    return c, s


def partner_frame_closed_form(frame: FrenetFrame, cos_theta: float, sin_theta: float):
    """``(T_beta, N_beta, B_beta)`` as a rotation of ``(T, B)`` about ``N``."""
    T_b = cos_theta * frame.T + sin_theta * frame.B
    B_b = -sin_theta * frame.T + cos_theta * frame.B
    return T_b, frame.N.copy(), B_b


def partner_curvatures_closed_form(kappa: float, tau: float, pair: BertrandPair) -> tuple[float, float]:
    lam, s2 = pair.lam, pair.sin_theta**2
    den = lam * (1.0 - lam * kappa)
    if abs(den) <= _EPS_TAU or abs(tau) <= _EPS_TAU:
        raise DegenerateDenominator(
            f"lam*(1-lam*kappa)={den:.3g}, tau={tau:.3g}", lam=lam, kappa=kappa, tau=tau
        )
    return (lam * kappa - s2) / den, s2 / (lam**2 * tau)


def partner_speed(tau: float, pair: BertrandPair, base_speed: float = 1.0) -> float:
    """``|beta'| = base_speed * |tau| * sqrt(lam^2 + mu^2)``."""
    return base_speed * abs(tau) * math.hypot(pair.lam, pair.mu)


def validate_pair(base: CurveSpec, lam: float, grid: Sequence[float],
                  tol_pair: float = TOL_PAIR, eps_theta: float = EPS_THETA,
                  eps_flat: float = EPS_FLAT, order: int = 6) -> BertrandPair:
    """Check every Bertrand axiom on the grid and return the aggregated pair.

    Raises :class:`NotBertrand` (or a subclass) naming the failing sample.
    A partner without a Frenet frame raises :class:`DegeneratePartner`.
    """
    grid = [float(t) for t in grid]
    if not grid:
        raise ValueError("empty grid")
    frames = [frame_at(base, t, order, eps_flat=eps_flat) for t in grid]
    mu = derive_mu(base, lam, grid, tol_pair, frames=frames)

    thetas, signs = [], []
    for fr in frames:
        try:
            pf = partner_frame(base, lam, fr.t, order, eps_flat=eps_flat)
        except FrameUndefined as exc:
            raise DegeneratePartner(
                f"partner frame undefined at t={fr.t} for lambda={lam}: {exc}", t=fr.t
            ) from exc
        c, s = compute_theta(fr, pf, eps_theta)
        sign = 1 if float(np.dot(pf.N, fr.N)) > 0 else -1
        if np.linalg.norm(pf.N - sign * fr.N) > TOL_NORMAL:
            raise NotBertrand(f"normals differ at t={fr.t}", quantity="N", t=fr.t)
        pair_residual = lam * fr.kappa + mu * fr.tau - 1.0
        if abs(pair_residual) > tol_pair:
            raise NotBertrand(
                f"lam*kappa + mu*tau - 1 = {pair_residual:.3g} at t={fr.t}",
                quantity="pair_identity", t=fr.t,
            )
        thetas.append((c, s))
        signs.append(sign)

    if len(set(signs)) > 1:
        raise NotBertrand("partner normal flips orientation along the grid", quantity="N")
    cs = np.array(thetas)
    spread = float(np.ptp(cs, axis=0).max())
    if spread > tol_pair:
        raise NotBertrand(f"theta is not constant: spread {spread:.3g}", quantity="theta", spread=spread)
    c, s = (float(v) for v in cs.mean(axis=0))
    norm = math.hypot(c, s)
    c, s = c / norm, s / norm

    pair = BertrandPair(base, float(lam), mu, c, s, tuple(map(tuple, cs)), signs[0])
    try:
        kb, _ = partner_curvatures_closed_form(frames[0].kappa, frames[0].tau, pair)
    except DegenerateDenominator:
        return pair
    return replace(pair, curvature_sign=-1 if kb < 0 else 1)
