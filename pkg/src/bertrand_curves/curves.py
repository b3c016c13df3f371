"""Parametric curve definitions and their position jets.

A curve is either a catalog family with closed-form derivatives or three
coordinate expressions in the parameter ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import expr
from .errors import ConfigError
from .jet import Jet

HELIX_A = HELIX_B = 1.0 / math.sqrt(2.0)


class Family(str, Enum):
    CIRCULAR_HELIX = "CircularHelix"
    GENERAL_HELIX = "GeneralHelix"
    CIRCLE = "Circle"
    TWISTED_CUBIC = "TwistedCubic"
    LINE = "Line"


# accepted parameter counts per family
_ARITY = {
    Family.CIRCULAR_HELIX: (0, 2),
    Family.GENERAL_HELIX: (2,),
    Family.CIRCLE: (1,),
    Family.TWISTED_CUBIC: (0,),
    Family.LINE: (3, 6),
}


@dataclass(frozen=True)
class CurveSpec:
    """A catalog curve (``family`` + ``params``) or an expression curve.

    ``CircularHelix`` without parameters is ``(cos t, sin t, t)/sqrt(2)``.
    ``Line`` takes a direction, or a point followed by a direction.
    """

    family: Optional[Family] = None
    params: tuple = ()
    sources: Optional[tuple] = None
    asts: Optional[tuple] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if (self.family is None) == (self.sources is None):
            raise ConfigError("curve needs exactly one of family or expressions")
        if self.family is not None:
            fam = Family(self.family)
            object.__setattr__(self, "family", fam)
            params = tuple(float(p) for p in self.params)
            object.__setattr__(self, "params", params)
            if len(params) not in _ARITY[fam]:
                raise ConfigError(
                    f"{fam.value} takes {' or '.join(map(str, _ARITY[fam]))} parameters, got {len(params)}"
                )
            if fam in (Family.GENERAL_HELIX, Family.CIRCULAR_HELIX) and params and params[0] <= 0:
                raise ConfigError(f"{fam.value} radius must be positive, got {params[0]}")
            if fam is Family.CIRCLE and params[0] <= 0:
                raise ConfigError(f"Circle radius must be positive, got {params[0]}")
            if fam is Family.LINE and not any(params[-3:]):
                raise ConfigError("Line direction must be nonzero")
        else:
            if len(self.sources) != 3:
                raise ConfigError("expression curves need x, y and z sources")
            asts = tuple(expr.parse_expression(s) for s in self.sources)
            object.__setattr__(self, "sources", tuple(self.sources))
            object.__setattr__(self, "asts", asts)

    @classmethod
    def catalog(cls, family, *params) -> "CurveSpec":
        return cls(family=Family(family), params=tuple(params))

    @classmethod
    def expression(cls, x: str, y: str, z: str) -> "CurveSpec":
        return cls(sources=(x, y, z))

    @property
    def is_catalog(self) -> bool:
        return self.family is not None

    def helix_params(self) -> tuple[float, float]:
        if self.family is Family.CIRCULAR_HELIX and not self.params:
            return HELIX_A, HELIX_B
        return self.params[0], self.params[1]

    def to_document(self) -> dict:
        if self.is_catalog:
            return {"family": self.family.value, "params": list(self.params)}
        return dict(zip("xyz", self.sources))

    @classmethod
    def from_document(cls, doc: dict) -> "CurveSpec":
        if not isinstance(doc, dict):
            raise ConfigError("curve must be a mapping")
        if "family" in doc:
            try:
                fam = Family(doc["family"])
            except ValueError:
                names = ", ".join(f.value for f in Family)
                raise ConfigError(f"unknown family {doc['family']!r}; expected one of {names}") from None
            return cls(family=fam, params=tuple(doc.get("params", ())))
        missing = [k for k in "xyz" if k not in doc]
        if missing:
            raise ConfigError(f"curve document needs 'family' or x/y/z; missing {missing}")
        return cls(sources=tuple(str(doc[k]) for k in "xyz"))


def _trig(amplitude: float, t: float, order: int, phase: float) -> np.ndarray:
    # d^k/dt^k a*cos(t + phase) = a*cos(t + phase + k*pi/2)
    k = np.arange(order + 1)
    return amplitude * np.cos(t + phase + k * math.pi / 2)


def _polynomial(coeffs, t: float, order: int) -> np.ndarray:
    p = np.polynomial.Polynomial(coeffs)
    out = np.empty(order + 1)
    for k in range(order + 1):
        out[k] = p(t)
        p = p.deriv()
    return out


def eval_jet(spec: CurveSpec, t: float, order: int = 6) -> Jet:
    """Position jet ``[alpha(t), alpha'(t), ..., alpha^(order)(t)]``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    t = float(t)
    if spec.is_catalog:
        return Jet(_catalog_jet(spec, t, order))
    return Jet(np.stack([expr.evaluate_jet(a, t, order).d for a in spec.asts], axis=-1))


def _catalog_jet(spec: CurveSpec, t: float, order: int) -> np.ndarray:
    fam = spec.family
    d = np.zeros((order + 1, 3))
    if fam in (Family.CIRCULAR_HELIX, Family.GENERAL_HELIX):
        a, b = spec.helix_params()
        d[:, 0] = _trig(a, t, order, 0.0)
        d[:, 1] = _trig(a, t, order, -math.pi / 2)
        d[:, 2] = _polynomial([0.0, b], t, order)
    elif fam is Family.CIRCLE:
        (r,) = spec.params
        d[:, 0] = _trig(r, t, order, 0.0)
        d[:, 1] = _trig(r, t, order, -math.pi / 2)
    elif fam is Family.TWISTED_CUBIC:
        d[:, 0] = _polynomial([0, 1], t, order)
        d[:, 1] = _polynomial([0, 0, 1], t, order)
        d[:, 2] = _polynomial([0, 0, 0, 1], t, order)
    elif fam is Family.LINE:
        p = spec.params
        point, direction = (p[:3], p[3:]) if len(p) == 6 else ((0.0, 0.0, 0.0), p)
        for i in range(3):
            d[:, i] = _polynomial([point[i], direction[i]], t, order)
    return d


def catalog_oracle(spec: CurveSpec, t: float):
    """Closed-form Frenet data for helices and circles, ``None`` otherwise."""
    from .frenet import FrenetFrame

    if not spec.is_catalog:
        return None
    t = float(t)
    c, s = math.cos(t), math.sin(t)
    if spec.family in (Family.CIRCULAR_HELIX, Family.GENERAL_HELIX):
        a, b = spec.helix_params()
        w = math.hypot(a, b)
        position = np.array([a * c, a * s, b * t])
        T = np.array([-a * s, a * c, b]) / w
        N = np.array([-c, -s, 0.0])
        B = np.array([b * s, -b * c, a]) / w
        kappa, tau, speed = a / w**2, b / w**2, w
    elif spec.family is Family.CIRCLE:
        (r,) = spec.params
        position = np.array([r * c, r * s, 0.0])
        T = np.array([-s, c, 0.0])
        N = np.array([-c, -s, 0.0])
        B = np.array([0.0, 0.0, 1.0])
        kappa, tau, speed = 1.0 / r, 0.0, r
    else:
        return None
    return FrenetFrame(
        t=t, position=position, T=T, N=N, B=B,
        kappa=kappa, tau=tau, speed=speed,
        kappa_p=0.0, kappa_pp=0.0, tau_p=0.0, tau_pp=0.0, speed_p=0.0, speed_pp=0.0,
        kappa_jet=Jet.constant(kappa, 0), tau_jet=Jet.constant(tau, 0),
        speed_jet=Jet.constant(speed, 0),
        T_jet=Jet(T[None]), N_jet=Jet(N[None]), B_jet=Jet(B[None]),
    )
