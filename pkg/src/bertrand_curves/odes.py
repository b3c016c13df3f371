"""Coefficients and residuals of the characterizing third-order equations.

* base tangent:    ``D_T^3 T + l2 D_T^2 T + l1 D_T T + l0 T = 0``
* partner binormal: ``D_B^3 B + l2 D_B^2 B + l1 D_B B + l0 B = 0``
* normal connection: ``a1 D^2 X - a1' D X + a1^3 X = 0`` for ``X`` in ``{T, N}``

Residuals are evaluated with the frame calculus of :mod:`laplace`, so they
vanish to rounding for every admissible curve. The coefficient formulas are
checked independently by :func:`solve_coefficients`, which recovers
``(l0, l1, l2)`` from the iterated derivatives by a 3x3 linear solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bertrand import BertrandPair
from .errors import DegenerateDenominator, NumericFailure
from .frenet import FrenetFrame, frame_at
from .jet import Jet
from .laplace import (
    DerivationCoefficients,
    FrameField,
    derive_B,
    derive_T,
    normal_derive_B,
)

_EPS_DEN = 1e-12


class OdeContext(str, Enum):
    BASE_TANGENT = "BaseTangent"
    PARTNER_BINORMAL = "PartnerBinormal"
    NORMAL_T = "NormalT"
    NORMAL_N = "NormalN"


@dataclass(frozen=True)
class OdeCoefficients:
    lambda0: float
    lambda1: float
    lambda2: float
    context: OdeContext

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.lambda0, self.lambda1, self.lambda2)):
            raise NumericFailure(f"non-finite {self.context.value} coefficients")

    def as_tuple(self) -> tuple[float, float, float]:
        return self.lambda0, self.lambda1, self.lambda2


def _nonzero(**values: float) -> None:
    for name, v in values.items():
        if abs(v) <= _EPS_DEN:
            raise DegenerateDenominator(f"{name} = {v:.3g} vanishes", **{name: v})


def tangent_coefficients(frame: FrenetFrame) -> OdeCoefficients:
    k, kp, kpp = frame.kappa, frame.kappa_p, frame.kappa_pp
    t, tp = frame.tau, frame.tau_p
    v, vp, vpp = frame.speed, frame.speed_p, frame.speed_pp
    _nonzero(kappa=k, tau=t, speed=v)
    rv, rk, rt = vp / v, kp / k, tp / t
    l0 = v * v * k * t * (kp * t - k * tp) / (t * t)
    l1 = v * v * (k * k + t * t) - vpp / v - kpp / k + (rv + rk) * (3 * rv + rt) + 2 * rk * rk
    l2 = -(3 * rv + 2 * rk + rt)
    return OdeCoefficients(l0, l1, l2, OdeContext.BASE_TANGENT)


def _iterate(field: FrameField, deriv, times: int) -> list[FrameField]:
    out = [field]
    for _ in range(times):
        out.append(deriv(out[-1]))
    return out


def _combine(fields: list[FrameField], coeffs: OdeCoefficients) -> np.ndarray:
    x0, x1, x2, x3 = (f.values() for f in fields)
    return x3 + coeffs.lambda2 * x2 + coeffs.lambda1 * x1 + coeffs.lambda0 * x0


def tangent_derivatives(frame: FrenetFrame) -> list[FrameField]:
    """``[T, D_T T, D_T^2 T, D_T^3 T]`` as frame fields."""
    order = frame.kappa_jet.order
    return _iterate(FrameField.basis("T", order), lambda f: derive_T(f, frame), 3)


def tangent_residual(spec, t: float, order: int = 6) -> float:
    frame = frame_at(spec, t, order)
    return float(np.linalg.norm(_combine(tangent_derivatives(frame), tangent_coefficients(frame))))


def binormal_coefficients_from(kappa: Jet, tau: Jet, cos_theta: float, sin_theta: float) -> OdeCoefficients:
    """Binormal-equation coefficients from curvature and torsion jets."""
    k, kp = kappa[0], kappa[1]
    t, tp, tpp = tau[0], tau[1], tau[2]
    _nonzero(kappa=k, tau=t, sin_theta=sin_theta)
    r2 = ((1.0 - cos_theta) / sin_theta) ** 2
    l2 = -(kp / k + 2 * tp / t)
    l1 = r2 * (k * k + t * t) + 2 * (tp / t) ** 2 + kp * tp / (k * t) - tpp / t
    l0 = k * t * r2 * (tp * k - t * kp) / (k * k)
    return OdeCoefficients(l0, l1, l2, OdeContext.PARTNER_BINORMAL)


def binormal_coefficients(pair: BertrandPair, frame: FrenetFrame) -> OdeCoefficients:
    return binormal_coefficients_from(frame.kappa_jet, frame.tau_jet, pair.cos_theta, pair.sin_theta)


def binormal_lambda0_alternative(coeffs: DerivationCoefficients) -> float:
    """The ``B`` coefficient in the form ``a2' a2 - (a1'/a1) a2^2``."""
    a1, a1p = coeffs.alpha1[0], coeffs.alpha1[1]
    a2, a2p = coeffs.alpha2[0], coeffs.alpha2[1]
    _nonzero(alpha1=a1)
    return a2p * a2 - a1p / a1 * a2 * a2


def binormal_derivatives(coeffs: DerivationCoefficients) -> list[FrameField]:
    """``[B, D_B B, D_B^2 B, D_B^3 B]`` as frame fields."""
    order = min(coeffs.alpha1.order, coeffs.alpha2.order)
    return _iterate(FrameField.basis("B", order), lambda f: derive_B(f, coeffs), 3)


def _pair_context(pair: BertrandPair, t: float, order: int = 6):
    frame = frame_at(pair.base, t, order)
    return frame, DerivationCoefficients.from_pair(pair, frame)


def binormal_residual(pair: BertrandPair, t: float, order: int = 6) -> float:
    frame, coeffs = _pair_context(pair, t, order)
    lam = binormal_coefficients(pair, frame)
    return float(np.linalg.norm(_combine(binormal_derivatives(coeffs), lam)))


def normal_pair_residuals(pair: BertrandPair, t: float, order: int = 6) -> tuple[float, float]:
    _, coeffs = _pair_context(pair, t, order)
    return normal_residuals(coeffs)


def normal_residuals(coeffs: DerivationCoefficients) -> tuple[float, float]:
    a1 = coeffs.alpha1
    _nonzero(alpha1=a1[0])
    order = a1.order
    out = []
    for name in ("T", "N"):
        x0, x1, x2 = _iterate(FrameField.basis(name, order), lambda f: normal_derive_B(f, coeffs), 2)
        r = a1[0] * x2.values() - a1[1] * x1.values() + a1[0] ** 3 * x0.values()
        out.append(float(np.linalg.norm(r)))
    return out[0], out[1]


def normal_reduced(pair: BertrandPair, frame: FrenetFrame) -> tuple[float, float]:
    """``(p, q)`` of the monic form ``D^2 X + p D X + q X = 0``: ``p = -a1'/a1``, ``q = a1^2``."""
    a1 = DerivationCoefficients.from_pair(pair, frame).alpha1
    _nonzero(alpha1=a1[0])
    return -a1[1] / a1[0], a1[0] ** 2


def solve_coefficients(fields: list[FrameField], context: OdeContext) -> OdeCoefficients:
    """Solve ``x3 + l2 x2 + l1 x1 + l0 x0 = 0`` for ``(l0, l1, l2)``."""
    x0, x1, x2, x3 = (f.values() for f in fields)
    A = np.column_stack([x0, x1, x2])
    if abs(np.linalg.det(A)) <= _EPS_DEN:
        raise DegenerateDenominator("derivative fields are linearly dependent")
    l0, l1, l2 = np.linalg.solve(A, -x3)
    return OdeCoefficients(float(l0), float(l1), float(l2), context)


def residual_row(pair: BertrandPair | None, spec, t: float, order: int = 6) -> dict:
    """One row of the residual table; unavailable entries are ``None``."""
    row = {"t": float(t), "tangent_ode": None, "binormal_ode": None, "normal_ode_T": None, "normal_ode_N": None,
           "binormal_lambda0_gap": None}
    try:
        row["tangent_ode"] = tangent_residual(spec, t, order)
    except DegenerateDenominator:
        pass
    if pair is None:
        return row
    frame, coeffs = _pair_context(pair, t, order)
    try:
        row["binormal_ode"] = float(np.linalg.norm(
            _combine(binormal_derivatives(coeffs), binormal_coefficients(pair, frame))))
        row["binormal_lambda0_gap"] = abs(binormal_coefficients(pair, frame).lambda0
                                       - binormal_lambda0_alternative(coeffs))
    except DegenerateDenominator:
        pass
    try:
        row["normal_ode_T"], row["normal_ode_N"] = normal_residuals(coeffs)
    except DegenerateDenominator:
        pass
    return row
