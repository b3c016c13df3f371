"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (the lines are repeated in the terminal summary) or
directly with ``python tests/test_acceptance.py``.
"""

import math
import sys
import time
from functools import partial
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bertrand_curves.bertrand import (  # noqa: E402
    partner_curvatures_closed_form,
    partner_frame,
    partner_jet,
    partner_speed,
    validate_pair,
)
from bertrand_curves.classify import (  # noqa: E402
    VerdictD,
    VerdictDperp,
    classify,
    classify_offset,
    laplacian_closed_form,
    partner_mean_curvature,
)
from bertrand_curves.curves import CurveSpec, eval_jet  # noqa: E402
from bertrand_curves.errors import NotBertrand  # noqa: E402
from bertrand_curves.frenet import frame_at  # noqa: E402
from bertrand_curves.laplace import DerivationCoefficients, derive_B, laplacian  # noqa: E402
from bertrand_curves.odes import tangent_residual, binormal_coefficients, normal_reduced  # noqa: E402
from bertrand_curves.odes import binormal_residual, normal_pair_residuals  # noqa: E402
from bertrand_curves.oracles import fd_derivative  # noqa: E402

A = B = 1 / math.sqrt(2)
HELIX = CurveSpec.catalog("CircularHelix", A, B)
CUBIC = CurveSpec.catalog("TwistedCubic")
LAM = math.sqrt(2) / 4
GRID = np.linspace(0.0, 2 * math.pi, 50)
RNG_SEED = 7

RESULTS: dict[int, tuple[bool, str, float]] = {}
# every (pair, grid) used below, for the property sweep of criterion 8
PAIRS_USED: list = []


def _pair(spec, lam, grid=GRID):
    pair = validate_pair(spec, lam, grid)
    PAIRS_USED.append((pair, grid))
    return pair


def record(n: int, title: str):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed criterion, reported as such
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - t0
            RESULTS[n] = (ok, f"{title}: {detail}", elapsed)
            print(line(n))
            return ok
        run.__name__ = fn.__name__
        return run
    return wrap


def line(n: int) -> str:
    ok, text, elapsed = RESULTS[n]
    return f"[{'PASS' if ok else 'FAIL'}] {n}. {text} ({elapsed:.2f}s)"


def rel(a, b):
    return abs(a - b) / abs(b)


@record(1, "helix Frenet reproduction")
def crit_helix_frenet():
    t0 = time.perf_counter()
    ts = np.random.default_rng(RNG_SEED).uniform(-50, 50, 100)
    kappa_o, tau_o = A / (A * A + B * B), B / (A * A + B * B)
    worst = 0.0
    for t in ts:
        fr = frame_at(HELIX, t)
        worst = max(worst, rel(fr.kappa, kappa_o), rel(fr.tau, tau_o), rel(fr.speed, 1.0))
    runtime = time.perf_counter() - t0
    ok = worst <= 1e-9 and runtime < 1.0 and abs(kappa_o - 0.7071068) < 5e-8
    return ok, f"max rel err {worst:.2e} (<= 1e-9), 100 samples in {runtime:.3f}s (< 1s)"


@record(2, "partner closed forms vs direct Frenet computation")
def crit_closed_forms():
    pair = _pair(HELIX, LAM)
    worst_k = worst_speed = 0.0
    for t in GRID:
        fr, pf = frame_at(HELIX, t), partner_frame(HELIX, LAM, t)
        kb, tb = partner_curvatures_closed_form(fr.kappa, fr.tau, pair)
        worst_k = max(worst_k, rel(kb, pf.kappa), rel(tb, pf.tau))
        speed = partner_speed(fr.tau, pair, fr.speed)
        worst_speed = max(worst_speed, abs(speed - np.linalg.norm(partner_jet(HELIX, LAM, t)[1])))
    kb, tb = partner_curvatures_closed_form(A, A, pair)
    speed = partner_speed(A, pair)
    numbers = abs(kb - 0.5656854) < 5e-8 and abs(tb - 1.1313708) < 5e-8 and abs(speed - 0.7905694) < 5e-8
    ok = worst_k <= 1e-8 and worst_speed <= 1e-10 and numbers
    return ok, (f"(kappa_b, tau_b) = ({kb:.7f}, {tb:.7f}), rel gap {worst_k:.2e} (<= 1e-8); "
                f"speed {speed:.7f}, gap to |beta'| {worst_speed:.2e} (<= 1e-10)")


def _classified():
    if "report" not in _classified.cache:
        pair = _pair(HELIX, LAM)
        _classified.cache["report"] = (pair, classify(pair, GRID))
    return _classified.cache["report"]


_classified.cache = {}


@record(3, "1-type constant under D")
def crit_constant_D():
    pair, report = _classified()
    want = ((pair.cos_theta - 1) / pair.sin_theta) ** 2
    got = report.harmonic_constant_D
    ok = (report.verdict_D is VerdictD.ONE_TYPE and abs(got - want) <= 1e-9
          and abs(got - 0.0263340) < 5e-8)
    return ok, f"{report.verdict_D.value} with {got:.10f}, closed form {want:.10f} (tol 1e-9)"


@record(4, "1-type constant under the normal connection")
def crit_constant_Dperp():
    pair, report = _classified()
    want = 0.5 * ((pair.cos_theta - 1) / pair.sin_theta) ** 2
    got = report.harmonic_constant_Dperp
    ok = (report.verdict_Dperp is VerdictDperp.ONE_TYPE and abs(got - want) <= 1e-9
          and abs(got - 0.0131670) < 5e-8)
    return ok, f"{report.verdict_Dperp.value} with {got:.10f}, closed form {want:.10f} (tol 1e-9)"


@record(5, "partner Laplacian equals its componentwise expansion")
def crit_expansion():
    cases = [(HELIX, lam) for lam in (LAM, -math.sqrt(2), 0.2, 1.0)]
    cases += [(CurveSpec.catalog("GeneralHelix", 2.0, 1.0), -0.75),
              (CurveSpec.catalog("GeneralHelix", 3 * A, A), 0.5)]
    worst = 0.0
    for spec, lam in cases:
        pair = _pair(spec, lam)
        for t in GRID:
            fr = frame_at(spec, t)
            co = DerivationCoefficients.from_pair(pair, fr)
            H, _ = partner_mean_curvature(pair, fr)
            got = laplacian(H, partial(derive_B, coeffs=co)).values()
            want = laplacian_closed_form(pair, fr)
            worst = max(worst, float(np.max(np.abs(got - want))) / float(np.max(np.abs(want))))
    return worst <= 1e-9, f"max rel gap {worst:.2e} over {len(cases)} pairs x 50 samples (<= 1e-9)"


@record(6, "third-order equation identities")
def crit_odes():
    ts = np.random.default_rng(RNG_SEED + 1).uniform(-2, 2, 100)
    r12 = max(max(tangent_residual(HELIX, t), tangent_residual(CUBIC, t)) for t in ts)
    r25 = r26 = 0.0
    reduced = 0.0
    for lam in (LAM, -math.sqrt(2)):
        pair = _pair(HELIX, lam)
        for t in GRID:
            r25 = max(r25, binormal_residual(pair, t))
            r26 = max(r26, *normal_pair_residuals(pair, t))
        fr = frame_at(HELIX, 0.0)
        c, s = pair.cos_theta, pair.sin_theta
        lam_b = binormal_coefficients(pair, fr).as_tuple()
        p, q = normal_reduced(pair, fr)
        reduced = max(reduced, *np.abs(np.subtract(lam_b, (0.0, ((1 - c) / s) ** 2, 0.0))),
                      abs(p), abs(q - ((c - 1) / (math.sqrt(2) * s)) ** 2))
    ok = r12 < 1e-6 and r25 < 1e-9 and r26 < 1e-9 and reduced <= 1e-12
    return ok, (f"tangent {r12:.1e} (< 1e-6), binormal {r25:.1e}, normal {r26:.1e} (< 1e-9), "
                f"reduced coefficients gap {reduced:.1e} (<= 1e-12)")


@record(7, "negative controls")
def crit_negative():
    grid = np.linspace(-1.5, 1.5, 50)
    rejected = 0
    lams = (-2.0, -0.3, 0.0, 0.3, 1.0, 5.0)
    for lam in lams:
        try:
            validate_pair(CUBIC, lam, grid)
        except NotBertrand as exc:
            rejected += exc.details.get("quantity") == "mu"
    report = classify_offset(HELIX, 1 / math.sqrt(2), GRID)
    ok = rejected == len(lams) and report.verdict_D is VerdictD.DEGENERATE
    return ok, (f"twisted cubic rejected for {rejected}/{len(lams)} offsets; "
                f"helix at 1/sqrt(2) -> {report.verdict_D.value}")


@record(8, "oracle agreement and property sweep")
def crit_oracles():
    rng = np.random.default_rng(RNG_SEED + 2)
    catalog = [HELIX, CurveSpec.catalog("GeneralHelix", 3 * A, A), CurveSpec.catalog("Circle", 2.0),
               CUBIC, CurveSpec.catalog("Line", 0.0, 0.0, 0.0, 1.0, 2.0, 3.0)]
    worst_fd = 0.0
    for spec in catalog:
        def pos(s, spec=spec):
            return eval_jet(spec, s, 0)[0]
        for t in rng.uniform(-3, 3, 100):
            j = eval_jet(spec, t, 3)
            for k in (1, 2, 3):
                err = np.linalg.norm(j[k] - fd_derivative(pos, t, k)) / max(np.linalg.norm(j[k]), 1.0)
                worst_fd = max(worst_fd, err)
    if not PAIRS_USED:
        _pair(HELIX, LAM)
    worst_prop = 0.0
    samples = 0
    for pair, grid in PAIRS_USED:
        worst_prop = max(worst_prop, abs(pair.cos_theta**2 + pair.sin_theta**2 - 1))
        for t in grid:
            fr = frame_at(pair.base, t)
            F = np.array([fr.T, fr.N, fr.B])
            worst_prop = max(worst_prop, float(np.max(np.abs(F @ F.T - np.eye(3)))),
                             abs(pair.lam * fr.kappa + pair.mu * fr.tau - 1))
            samples += 1
    ok = worst_fd <= 1e-5 and worst_prop <= 1e-12
    return ok, (f"jet vs FD max rel {worst_fd:.1e} (<= 1e-5); properties hold to {worst_prop:.1e} "
                f"at {samples} samples of {len(PAIRS_USED)} pair runs")


CRITERIA = [crit_helix_frenet, crit_closed_forms, crit_constant_D, crit_constant_Dperp,
            crit_expansion, crit_odes, crit_negative, crit_oracles]


@pytest.mark.parametrize("crit", CRITERIA, ids=[c.__name__ for c in CRITERIA])
def test_criterion(crit):
    assert crit(), line(CRITERIA.index(crit) + 1)


def test_total_runtime_under_ten_seconds():
    total = sum(r[2] for r in RESULTS.values())
    assert len(RESULTS) == len(CRITERIA)
    print(f"[{'PASS' if total < 10 else 'FAIL'}] total acceptance runtime {total:.2f}s (< 10s)")
    assert total < 10.0


def summary_lines() -> list[str]:
    out = [line(n) for n in sorted(RESULTS)]
    if RESULTS:
        total = sum(r[2] for r in RESULTS.values())
        out.append(f"[{'PASS' if total < 10 else 'FAIL'}] total acceptance runtime {total:.2f}s (< 10s)")
    return out


if __name__ == "__main__":
    results = [crit() for crit in CRITERIA]
    print(summary_lines()[-1])
    sys.exit(0 if all(results) else 1)
