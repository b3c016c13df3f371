"""Frame-field calculus along a curve.

A :class:`FrameField` is ``f_T*T + f_N*N + f_B*B`` with coefficient jets in
the base-curve parameter. Derivations act through the frame rules:

* ``derive_T``: ``T' = vk N``, ``N' = -vk T + vt B``, ``B' = -vt N`` where
  ``vk = speed*kappa`` and ``vt = speed*tau``.
* ``derive_B``: ``D_B T = a1 N``, ``D_B N = -a1 T - a2 B``, ``D_B B = a2 N``
  with ``a1 = (1-cos)/sin * kappa`` and ``a2 = (cos-1)/sin * tau``.
* ``normal_derive_B``: ``derive_B`` with the ``B`` component dropped.

Each derivation lowers the jet order by one; running out of order raises
:class:`JetOrderExhausted`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotNormalField
from .frenet import FrenetFrame
from .jet import Jet, dot

TOL_NORMAL_FIELD = 1e-12


@dataclass(frozen=True)
class FrameField:
    f_T: Jet
    f_N: Jet
    f_B: Jet

    @property
    def order(self) -> int:
        return min(self.f_T.order, self.f_N.order, self.f_B.order)

    @classmethod
    def zero(cls, order: int) -> "FrameField":
        z = Jet.constant(0.0, order)
        return cls(z, z, z)

    @classmethod
    def basis(cls, name: str, order: int) -> "FrameField":
        one, zero = Jet.constant(1.0, order), Jet.constant(0.0, order)
        comps = {"T": (one, zero, zero), "N": (zero, one, zero), "B": (zero, zero, one)}
        return cls(*comps[name])

    @classmethod
    def from_coefficients(cls, f_T, f_N, f_B, order: int) -> "FrameField":
        """Field from scalar jets or plain numbers (constants)."""
        c = [f if isinstance(f, Jet) else Jet.constant(f, order) for f in (f_T, f_N, f_B)]
        return cls(*c)

    @classmethod
    def embed(cls, v: Jet, frame: FrenetFrame) -> "FrameField":
        """Components of a vector jet along the moving frame, derivatives included."""
        return cls(dot(v, frame.T_jet), dot(v, frame.N_jet), dot(v, frame.B_jet))

    def values(self) -> np.ndarray:
        return np.array([self.f_T[0], self.f_N[0], self.f_B[0]])

    def to_vector(self, frame: FrenetFrame) -> np.ndarray:
        f = self.values()
        return f[0] * frame.T + f[1] * frame.N + f[2] * frame.B

    def norm(self) -> float:
        return float(np.linalg.norm(self.values()))

    def truncate(self, order: int) -> "FrameField":
        return FrameField(self.f_T.truncate(order), self.f_N.truncate(order), self.f_B.truncate(order))

    def __add__(self, other: "FrameField") -> "FrameField":
        return FrameField(self.f_T + other.f_T, self.f_N + other.f_N, self.f_B + other.f_B)

    def __sub__(self, other: "FrameField") -> "FrameField":
        return FrameField(self.f_T - other.f_T, self.f_N - other.f_N, self.f_B - other.f_B)

    def __neg__(self) -> "FrameField":
        return FrameField(-self.f_T, -self.f_N, -self.f_B)

    def scale(self, f) -> "FrameField":
        """Multiply by a scalar jet or a number."""
        return FrameField(self.f_T * f, self.f_N * f, self.f_B * f)


@dataclass(frozen=True)
class DerivationCoefficients:
    """Jets of ``a1 = (1-cos)/sin*kappa``, ``a2 = (cos-1)/sin*tau`` and the
    partner mean-curvature coefficient ``h = (lam*kappa - sin^2)/(mu*sin)``."""

    alpha1: Jet
    alpha2: Jet
    a1: Jet
    cos_theta: float
    sin_theta: float

    @classmethod
    def from_curvatures(cls, kappa: Jet, tau: Jet, lam: float, mu: float,
                        cos_theta: float, sin_theta: float) -> "DerivationCoefficients":
        r = (1.0 - cos_theta) / sin_theta
        a1 = (kappa * lam - sin_theta**2) * (1.0 / (mu * sin_theta))
        return cls(kappa * r, tau * (-r), a1, cos_theta, sin_theta)

    @classmethod
    def from_pair(cls, pair, frame: FrenetFrame) -> "DerivationCoefficients":
        return cls.from_curvatures(frame.kappa_jet, frame.tau_jet, pair.lam, pair.mu,
                                   pair.cos_theta, pair.sin_theta)


def _d(j: Jet) -> Jet:
    return j.derivative()


def derive_T(field: FrameField, frame: FrenetFrame) -> FrameField:
    """Parameter derivative of ``field`` along the base curve."""
    vk = frame.speed_jet * frame.kappa_jet
    vt = frame.speed_jet * frame.tau_jet
    f_T, f_N, f_B = field.f_T, field.f_N, field.f_B
    return FrameField(
        _d(f_T) - vk * f_N,
        _d(f_N) + vk * f_T - vt * f_B,
        _d(f_B) + vt * f_N,
    )


def derive_B(field: FrameField, coeffs: DerivationCoefficients) -> FrameField:
    a1, a2 = coeffs.alpha1, coeffs.alpha2
    f_T, f_N, f_B = field.f_T, field.f_N, field.f_B
    return FrameField(
        _d(f_T) - a1 * f_N,
        _d(f_N) + a1 * f_T + a2 * f_B,
        _d(f_B) - a2 * f_N,
    )


def _check_normal(field: FrameField) -> None:
    worst = float(np.max(np.abs(field.f_B.d)))
    if worst > TOL_NORMAL_FIELD:
        raise NotNormalField(f"field has B component {worst:.3g}")


def normal_derive_B(field: FrameField, coeffs: DerivationCoefficients) -> FrameField:
    _check_normal(field)
    a1 = coeffs.alpha1
    f_T, f_N = field.f_T, field.f_N
    d_T = _d(f_T) - a1 * f_N
    d_N = _d(f_N) + a1 * f_T
    return FrameField(d_T, d_N, Jet.constant(0.0, min(d_T.order, d_N.order)))


def laplacian(field: FrameField, deriv: Callable[[FrameField], FrameField]) -> FrameField:
    """``-deriv(deriv(field))``.

    ``deriv`` is a one-argument derivation, e.g.
    ``functools.partial(derive_B, coeffs=c)``.
    """
    return -deriv(deriv(field))


def normal_laplacian(field: FrameField, coeffs: DerivationCoefficients) -> FrameField:
    return -normal_derive_B(normal_derive_B(field, coeffs), coeffs)
