"""Independent reference values for the test suite.

Nothing here touches the jet, frame or calculus code: derivatives come from
finite differences and helix data from the textbook closed forms for
``(a cos t, a sin t, b t)``. The Bertrand partner of that helix at offset
``lam`` is again a helix, with signed radius ``a - lam``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

FD_STEP = {1: 1e-4, 2: 1e-4, 3: 1e-3}


def fd_derivative(f, t: float, k: int, h: float | None = None):
    """Five-point central difference of order ``k`` (1, 2 or 3)."""
    if k not in FD_STEP:
        raise ValueError(f"order {k} not supported")
    h = FD_STEP[k] if h is None else h
    fm2, fm1, fp1, fp2 = (np.asarray(f(t + s * h), dtype=float) for s in (-2, -1, 1, 2))
    if k == 1:
        return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
    if k == 2:
        f0 = np.asarray(f(t), dtype=float)
        return (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
    return (-fm2 + 2 * fm1 - 2 * fp1 + fp2) / (2 * h**3)


def twisted_cubic_curvatures(t: float) -> tuple[float, float]:
    """Curvature and torsion of ``(t, t^2, t^3)``."""
    q = 9 * t**4 + 9 * t**2 + 1
    kappa = 2 * math.sqrt(q) / (1 + 4 * t**2 + 9 * t**4) ** 1.5
    return kappa, 3.0 / q


class DegenerateFixture(ValueError):
    pass


@dataclass(frozen=True)
class HelixPairFixture:
    a: float
    b: float
    lam: float
    kappa: float
    tau: float
    speed: float
    mu: float
    cos_theta: float
    sin_theta: float
    theta_speed: float
    kappa_beta: float
    tau_beta: float
    a1: float
    harmonic_constant_D: float
    harmonic_constant_Dperp: float


def helix_pair_fixture(a: float, b: float, lam: float) -> HelixPairFixture:
    if a <= 0 or b <= 0:
        raise ValueError("helix parameters must be positive")
    if math.isclose(lam, a, rel_tol=1e-12, abs_tol=1e-15):
        raise DegenerateFixture(f"offset {lam} equals the radius; the partner is a line")
    w2 = a * a + b * b
    w = math.sqrt(w2)
    kappa, tau = a / w2, b / w2
    ab = a - lam
    wb2 = ab * ab + b * b
    wb = math.sqrt(wb2)
    mu = (1 - lam * kappa) / tau
    cos_t = (a * ab + b * b) / (w * wb)
    sin_t = b * lam / (w * wb)
    kappa_beta = abs(ab) / wb2
    tau_beta = b / wb2
    a1 = math.copysign(1.0, ab) * wb * kappa_beta / w
    r2 = ((1 - cos_t) / sin_t) ** 2
    fx = HelixPairFixture(
        a=a, b=b, lam=lam, kappa=kappa, tau=tau, speed=w, mu=mu,
        cos_theta=cos_t, sin_theta=sin_t, theta_speed=wb,
        kappa_beta=kappa_beta, tau_beta=tau_beta, a1=a1,
        harmonic_constant_D=r2 * (kappa**2 + tau**2),
        harmonic_constant_Dperp=r2 * kappa**2,
    )
    _self_check(fx)
    return fx


def _self_check(fx: HelixPairFixture) -> None:
    lam, mu, k, t = fx.lam, fx.mu, fx.kappa, fx.tau
    s2 = fx.sin_theta**2
    checks = {
        "pair identity": (lam * k + mu * t, 1.0),
        "cos theta via mu": (fx.cos_theta, mu / math.hypot(lam, mu)),
        "speed identity": (fx.theta_speed, fx.speed * t * math.hypot(lam, mu)),
        "kappa_beta closed form": (math.copysign(fx.kappa_beta, fx.a - lam),
                                   (lam * k - s2) / (lam * (1 - lam * k))),
        "tau_beta closed form": (fx.tau_beta, s2 / (lam**2 * t)),
        "a1 closed form": (fx.a1, (lam * k - s2) / (mu * fx.sin_theta)),
    }
    for name, (got, want) in checks.items():
        if not math.isclose(got, want, rel_tol=1e-10, abs_tol=1e-13):
            raise AssertionError(f"fixture {name} failed: {got!r} != {want!r}")


HELIX_FIXTURES = (
    (1 / math.sqrt(2), 1 / math.sqrt(2), math.sqrt(2) / 4),
    (1 / math.sqrt(2), 1 / math.sqrt(2), -math.sqrt(2)),
    (1 / math.sqrt(2), 1 / math.sqrt(2), 1.0),
    (3 / math.sqrt(2), 1 / math.sqrt(2), 0.5),
    (2.0, 1.0, -0.75),
)


def write_fixtures(path: Path) -> None:
    data = [asdict(helix_pair_fixture(*args)) for args in HELIX_FIXTURES]
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


if __name__ == "__main__":
    import sys

    write_fixtures(Path(sys.argv[1]))
