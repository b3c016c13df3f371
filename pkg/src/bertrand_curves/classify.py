"""Harmonicity of the Bertrand partner.

The partner's mean curvature field is ``h*N`` with
``h = (lam*kappa - sin^2)/(mu*sin)``. Its Laplacian under ``D_B`` and under the
normal connection is computed twice: once by the frame calculus of
:mod:`laplace` and once from the closed-form component expansion. The two must
agree; a mismatch raises :class:`ConsistencyError`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from functools import partial
from typing import Optional, Sequence

import numpy as np

from .bertrand import BertrandPair, partner_frame, validate_pair
from .curves import CurveSpec, Family
from .errors import (
    ConsistencyError,
    Degenerate,
    DegeneratePartner,
    FrameUndefined,
    NotHelixBase,
)
from .frenet import FrenetFrame, frame_at
from .laplace import (
    DerivationCoefficients,
    FrameField,
    derive_B,
    laplacian,
    normal_laplacian,
)

EPS_CLASS = 1e-7
RATIO_SPREAD = 1e-6
TOL_ROUTES = 1e-8
_EPS_DEN = 1e-12


class VerdictD(str, Enum):
    BIHARMONIC = "Biharmonic"
    ONE_TYPE = "OneTypeHarmonic"
    NEITHER = "Neither"
    DEGENERATE = "Degenerate"


class VerdictDperp(str, Enum):
    WEAK_BIHARMONIC = "WeakBiharmonic"
    ONE_TYPE = "OneTypeHarmonic"
    NEITHER = "Neither"
    DEGENERATE = "Degenerate"


@dataclass
class ClassificationReport:
    verdict_D: VerdictD
    verdict_Dperp: VerdictDperp
    harmonic_constant_D: Optional[float] = None
    harmonic_constant_Dperp: Optional[float] = None
    residual_norms: dict = field(default_factory=dict)
    condition_values: list = field(default_factory=list)
    fit: dict = field(default_factory=dict)
    mean_curvature_routes: dict = field(default_factory=dict)
    scale: float = 0.0
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["verdict_D"] = self.verdict_D.value
        out["verdict_Dperp"] = self.verdict_Dperp.value
        return out

    @classmethod
    def degenerate(cls, reason: str) -> "ClassificationReport":
        return cls(VerdictD.DEGENERATE, VerdictDperp.DEGENERATE, reason=reason)


def mean_curvature(frame: FrenetFrame) -> FrameField:
    """``H = speed*kappa*N`` with coefficient jets."""
    coeff = frame.speed_jet * frame.kappa_jet
    return FrameField.from_coefficients(0.0, coeff, 0.0, coeff.order)


def partner_mean_curvature(pair: BertrandPair, frame: FrenetFrame,
                           partner: FrenetFrame | None = None) -> tuple[FrameField, Optional[float]]:
    """Partner mean curvature ``h*N`` and, if ``partner`` is given, the same
    coefficient obtained from the partner's own speed and curvature."""
    if abs(pair.mu * pair.sin_theta) <= _EPS_DEN:
        raise Degenerate(f"mu*sin(theta) = {pair.mu * pair.sin_theta:.3g}")
    coeffs = DerivationCoefficients.from_pair(pair, frame)
    h = coeffs.a1
    direct = None
    if partner is not None:
        direct = pair.normal_sign * partner.speed * partner.kappa / frame.speed
    return FrameField.from_coefficients(0.0, h, 0.0, h.order), direct


def laplacian_closed_form(pair: BertrandPair, frame: FrenetFrame) -> np.ndarray:
    """``(T, N, B)`` components of the partner Laplacian from the expansion."""
    lam, mu, c, s = pair.lam, pair.mu, pair.cos_theta, pair.sin_theta
    k, kp, kpp = frame.kappa, frame.kappa_p, frame.kappa_pp
    t, tp = frame.tau, frame.tau_p
    s2 = s * s
    return np.array([
        (3 * lam * k - s2) * kp / (mu * (1 + c)),
        ((lam * k - s2) * (1 - c) ** 2 * (k * k + t * t) - lam * kpp * s2) / (mu * s**3),
        (s2 * tp - lam * k * tp - 2 * lam * kp * t) / (mu * (1 + c)),
    ])


def normal_laplacian_closed_form(pair: BertrandPair, frame: FrenetFrame) -> np.ndarray:
    lam, mu, c, s = pair.lam, pair.mu, pair.cos_theta, pair.sin_theta
    k, kp, kpp = frame.kappa, frame.kappa_p, frame.kappa_pp
    s2 = s * s
    return np.array([
        (3 * lam * k * kp - s2 * kp) / (mu * (1 + c)),
        ((lam * k - s2) * (1 - c) ** 2 * k * k - lam * kpp * s2) / (mu * s**3),
        0.0,
    ])


def eval_conditions_D(pair: BertrandPair, frame: FrenetFrame) -> tuple[float, float, float]:
    lam, c, s2 = pair.lam, pair.cos_theta, pair.sin_theta**2
    k, kp, kpp = frame.kappa, frame.kappa_p, frame.kappa_pp
    t, tp = frame.tau, frame.tau_p
    c1 = (3 * lam * k - s2) * kp
    c2 = (lam * k - s2) * (1 - c) ** 2 * (k * k + t * t) - lam * kpp * s2
    c3 = s2 * tp - lam * k * tp - 2 * lam * kp * t
    return c1, c2, c3


def eval_conditions_Dperp(pair: BertrandPair, frame: FrenetFrame) -> tuple[float, float]:
    lam, c, s2 = pair.lam, pair.cos_theta, pair.sin_theta**2
    k, kp, kpp = frame.kappa, frame.kappa_p, frame.kappa_pp
    return (3 * lam * k * kp - s2 * kp,
            (lam * k - s2) * (1 - c) ** 2 * k * k - lam * kpp * s2)


def helix_one_type_constants(pair: BertrandPair) -> tuple[float, float]:
    """1-type constants for a circular-helix base under ``D`` and ``D_perp``.

    These are the closed forms for the unit-speed helix with
    ``kappa^2 + tau^2 = 1``; for other helices the fitted constant is
    ``((1-cos)/sin)^2 * (kappa^2 + tau^2)`` instead.
    """
    if not (pair.base.is_catalog and pair.base.family is Family.CIRCULAR_HELIX):
        raise NotHelixBase("closed-form constants need a circular-helix base")
    r2 = ((pair.cos_theta - 1.0) / pair.sin_theta) ** 2
    return r2, 0.5 * r2


def _check_routes(calculus: np.ndarray, closed: np.ndarray, scale: float, what: str, t: float):
    err = float(np.max(np.abs(calculus - closed)))
    if err > TOL_ROUTES * max(scale, float(np.max(np.abs(closed))), 1e-300):
        raise ConsistencyError(
            f"{what}: frame calculus and closed form differ by {err:.3g} at t={t}",
            t=t, difference=err,
        )
    return err


def _fit(lap: np.ndarray, H: np.ndarray, scale: float, eps_class: float) -> dict:
    hh = np.einsum("ij,ij->i", H, H)
    lh = np.einsum("ij,ij->i", lap, H)
    lsq = float(lh.sum() / hh.sum())
    ratios = lh / hh
    ratio_mean = float(ratios.mean())
    spread = float(ratios.max() - ratios.min())
    rel_spread = spread / max(abs(ratio_mean), 1e-300)
    residual = float(np.max(np.linalg.norm(lap - lsq * H, axis=1)))
    zero = float(np.max(np.linalg.norm(lap, axis=1)))
    return {
        "least_squares": lsq,
        "ratio_mean": ratio_mean,
        "ratio_spread": rel_spread,
        "fit_residual": residual,
        "laplacian_max_norm": zero,
        "is_zero": zero <= eps_class * scale,
        "is_one_type": residual <= eps_class * scale and rel_spread <= RATIO_SPREAD,
    }


def classify(pair: BertrandPair, grid: Sequence[float], eps_class: float = EPS_CLASS,
             order: int = 6) -> ClassificationReport:
    """Verdicts for the partner under ``D_B`` and the normal connection.

    Raises :class:`Degenerate` when the partner has no frame or its mean
    curvature vanishes on the grid.
    """
    grid = [float(t) for t in grid]
    samples = []
    H_rows, lap_rows, nlap_rows = [], [], []
    route_err = {"D": 0.0, "Dperp": 0.0}
    direct_gap = 0.0
    for t in grid:
        frame = frame_at(pair.base, t, order)
        try:
            pf = partner_frame(pair.base, pair.lam, t, order)
        except FrameUndefined as exc:
            raise Degenerate(f"partner frame undefined at t={t}: {exc}", t=t) from exc
        H, direct = partner_mean_curvature(pair, frame, pf)
        coeffs = DerivationCoefficients.from_pair(pair, frame)
        lap = laplacian(H, partial(derive_B, coeffs=coeffs)).values()
        nlap = normal_laplacian(H, coeffs).values()
        h = H.values()
        lap_cf = laplacian_closed_form(pair, frame)
        nlap_cf = normal_laplacian_closed_form(pair, frame)
        route_err["D"] = max(route_err["D"], _check_routes(lap, lap_cf, abs(h[1]), "Laplacian", t))
        route_err["Dperp"] = max(route_err["Dperp"],
                                 _check_routes(nlap, nlap_cf, abs(h[1]), "normal Laplacian", t))
        direct_gap = max(direct_gap, abs(h[1] - direct))

        c1, c2, c3 = eval_conditions_D(pair, frame)
        p1, p2 = eval_conditions_Dperp(pair, frame)
        s2 = pair.sin_theta**2
        samples.append({
            "t": t, "c1": c1, "c2": c2, "c3": c3,
            "c2_over_sin2": c2 / s2,
            "cperp1": p1, "cperp2": p2,
            "cperp2_over_mu_sin3": p2 / (pair.mu * pair.sin_theta**3),
            "cperp2_over_sin2": p2 / s2,
            "excess": pair.lam * frame.kappa - s2,
        })
        H_rows.append(h)
        lap_rows.append(lap)
        nlap_rows.append(nlap)

    H_arr, lap_arr, nlap_arr = map(np.array, (H_rows, lap_rows, nlap_rows))
    scale = float(np.max(np.linalg.norm(H_arr, axis=1)))
    if scale <= _EPS_DEN:
        raise Degenerate("partner mean curvature vanishes on the grid")

    fit_D = _fit(lap_arr, H_arr, scale, eps_class)
    fit_P = _fit(nlap_arr, H_arr, scale, eps_class)

    if fit_D["is_zero"]:
        vD, kD = VerdictD.BIHARMONIC, None
    elif fit_D["is_one_type"]:
        vD, kD = VerdictD.ONE_TYPE, fit_D["least_squares"]
    else:
        vD, kD = VerdictD.NEITHER, None
    if fit_P["is_zero"]:
        vP, kP = VerdictDperp.WEAK_BIHARMONIC, None
    elif fit_P["is_one_type"]:
        vP, kP = VerdictDperp.ONE_TYPE, fit_P["least_squares"]
    else:
        vP, kP = VerdictDperp.NEITHER, None

    # 1-type conditions in their sin^2-normalized form: lhs = constant * excess
    for row in samples:
        if kD is not None:
            row["one_type_D_rhs"] = kD * row["excess"]
        if kP is not None:
            row["one_type_Dperp_rhs"] = kP * row["excess"]

    comps = ("T", "N", "B")
    residual_norms = {
        "laplacian_D": dict(zip(comps, np.max(np.abs(lap_arr), axis=0).tolist())),
        "laplacian_Dperp": dict(zip(comps, np.max(np.abs(nlap_arr), axis=0).tolist())),
        "fit_D": fit_D["fit_residual"],
        "fit_Dperp": fit_P["fit_residual"],
        "routes_D": route_err["D"],
        "routes_Dperp": route_err["Dperp"],
    }
    strip = lambda f: {k: v for k, v in f.items() if not k.startswith("is_")}  # noqa: E731
    return ClassificationReport(
        verdict_D=vD,
        verdict_Dperp=vP,
        harmonic_constant_D=kD,
        harmonic_constant_Dperp=kP,
        residual_norms=residual_norms,
        condition_values=samples,
        fit={"D": strip(fit_D), "Dperp": strip(fit_P)},
        mean_curvature_routes={
            "max_abs_difference": direct_gap,
            "sign_mismatch": bool(direct_gap > TOL_ROUTES * scale),
        },
        scale=scale,
    )


def classify_offset(base: CurveSpec, lam: float, grid: Sequence[float], **tolerances) -> ClassificationReport:
    """Validate the pair and classify it; a base or partner without a
    Frenet frame yields a ``Degenerate`` report instead of an exception."""
    eps_class = tolerances.pop("eps_class", EPS_CLASS)
    order = tolerances.get("order", 6)
    try:
        pair = validate_pair(base, lam, grid, **tolerances)
        return classify(pair, grid, eps_class, order)
    except (Degenerate, DegeneratePartner, FrameUndefined) as exc:
        return ClassificationReport.degenerate(str(exc))


def helix_constant_D(pair: BertrandPair, frame: FrenetFrame) -> float:
    """``((1-cos)/sin)^2 * (kappa^2 + tau^2)`` at one sample."""
    r = (1.0 - pair.cos_theta) / pair.sin_theta
    return r * r * (frame.kappa**2 + frame.tau**2)

