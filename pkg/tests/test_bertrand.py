import json
import math
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from bertrand_curves.bertrand import (
    BertrandPair,
    compute_theta,
    derive_mu,
    partner_curvatures_closed_form,
    partner_frame,
    partner_frame_closed_form,
    partner_point,
    partner_speed,
    validate_pair,
)
from bertrand_curves.curves import CurveSpec
from bertrand_curves.errors import (
    DegenerateDenominator,
    DegeneratePartner,
    FrameUndefined,
    NotBertrand,
    ThetaDegenerate,
    TorsionZero,
)
from bertrand_curves.frenet import frame_at

from conftest import GRID50, HELIX, SQRT2

R = 1 / SQRT2
CUBIC = CurveSpec.catalog("TwistedCubic")
FIXTURES = json.loads((Path(__file__).parent / "data" / "helix_pair_fixtures.json").read_text())


def test_partner_point_examples(rng):
    np.testing.assert_allclose(partner_point(HELIX, SQRT2 / 4, 0.0), [0.3535534, 0, 0], atol=5e-8)
    for t in rng.uniform(-4, 4, 10):
        np.testing.assert_allclose(partner_point(CUBIC, 0.0, t), frame_at(CUBIC, t).position, atol=1e-15)
        np.testing.assert_allclose(partner_point(HELIX, R, t), [0, 0, t * R], atol=1e-15)


def test_line_partner_has_no_frame():
    with pytest.raises(FrameUndefined):
        partner_frame(HELIX, R, 0.4)


def test_derive_mu_examples():
    assert derive_mu(HELIX, SQRT2 / 4, GRID50) == pytest.approx(1.0606602, abs=5e-8)
    assert derive_mu(HELIX, SQRT2 / 4, GRID50) == pytest.approx(3 * SQRT2 / 4, rel=1e-14)
    assert derive_mu(HELIX, 0.0, GRID50) == pytest.approx(SQRT2, rel=1e-14)
    with pytest.raises(NotBertrand) as info:
        derive_mu(CUBIC, 0.3, np.linspace(-1, 1, 20))
    assert info.value.details["quantity"] == "mu"


def test_planar_base_has_zero_torsion():
    with pytest.raises(TorsionZero):
        derive_mu(CurveSpec.catalog("Circle", 1.0), 0.2, GRID50)


def test_theta_examples():
    fr = frame_at(HELIX, 0.8)
    c, s = compute_theta(fr, partner_frame(HELIX, SQRT2 / 4, 0.8))
    assert (c, s) == pytest.approx((3 / math.sqrt(10), 1 / math.sqrt(10)), rel=1e-13)
    c, s = compute_theta(fr, partner_frame(HELIX, -SQRT2, 0.8))
    assert (c, s) == pytest.approx((2 / math.sqrt(5), -1 / math.sqrt(5)), rel=1e-13)
    with pytest.raises(ThetaDegenerate):
        compute_theta(fr, partner_frame(HELIX, 0.0, 0.8))


def test_theta_rejects_tangent_with_normal_component():
    fr = frame_at(HELIX, 0.0)
    tilted = replace(fr, T=(fr.T + 1e-3 * fr.N) / np.linalg.norm(fr.T + 1e-3 * fr.N))
    with pytest.raises(NotBertrand):
        compute_theta(fr, tilted)


def test_closed_form_frame_examples(rng):
    fr = frame_at(HELIX, 0.0)
    T_b, N_b, B_b = partner_frame_closed_form(fr, 3 / math.sqrt(10), 1 / math.sqrt(10))
    np.testing.assert_allclose(T_b, [0, 0.4472136, 0.8944272], atol=5e-8)
    same = partner_frame_closed_form(fr, 1.0, 0.0)
    for got, want in zip(same, (fr.T, fr.N, fr.B)):
        np.testing.assert_allclose(got, want, atol=0)
    for _ in range(20):
        Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        theta = rng.uniform(-math.pi, math.pi)
        fake = replace(fr, T=Q[0], N=Q[1], B=Q[2])
        F = np.array(partner_frame_closed_form(fake, math.cos(theta), math.sin(theta)))
        np.testing.assert_allclose(F @ F.T, np.eye(3), atol=1e-14)


def test_closed_form_curvature_examples(pair_quarter, pair_negative):
    assert partner_curvatures_closed_form(R, R, pair_quarter) == pytest.approx((0.5656854, 1.1313708), abs=5e-8)
    assert partner_curvatures_closed_form(R, R, pair_negative) == pytest.approx((0.4242641, 0.1414214), abs=5e-8)
    # lam = 1/sqrt(2): the partner is the z-axis, so cos = sin = 1/sqrt(2) and lam*kappa = sin^2
    line = BertrandPair(HELIX, R, R, 1 / SQRT2, 1 / SQRT2)
    assert partner_curvatures_closed_form(R, R, line)[0] == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DegenerateDenominator):
        partner_curvatures_closed_form(R, R, BertrandPair(HELIX, SQRT2, 0.0, 0.0, 1.0))


def test_partner_speed_examples(pair_quarter, pair_negative):
    assert partner_speed(R, pair_quarter) == pytest.approx(math.sqrt(10) / 4, rel=1e-14)
    assert partner_speed(R, pair_negative) == pytest.approx(math.sqrt(5), rel=1e-14)


def test_validate_pair_on_helix(pair_quarter):
    assert pair_quarter.mu == pytest.approx(3 * SQRT2 / 4, rel=1e-14)
    spread = np.ptp(np.array(pair_quarter.theta_samples), axis=0).max()
    assert spread < 1e-10
    assert pair_quarter.normal_sign == 1 and pair_quarter.curvature_sign == 1


def test_validate_pair_rejections():
    with pytest.raises(NotBertrand):
        validate_pair(CUBIC, 0.3, np.linspace(-1, 1, 20))
    with pytest.raises(NotBertrand) as info:
        validate_pair(HELIX, R, GRID50)
    assert isinstance(info.value, DegeneratePartner)
    assert info.value.code == "Degenerate"


def test_normal_flip_recorded():
    pair = validate_pair(HELIX, 1.0, GRID50)
    assert pair.normal_sign == -1
    assert pair.curvature_sign == -1


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f"a={f['a']:.3f},lam={f['lam']:.3f}")
def test_pairs_match_independent_fixtures(fx):
    spec = CurveSpec.catalog("GeneralHelix", fx["a"], fx["b"])
    grid = np.linspace(0, 2 * math.pi, 20)
    pair = validate_pair(spec, fx["lam"], grid)
    assert pair.mu == pytest.approx(fx["mu"], rel=1e-10)
    assert pair.cos_theta == pytest.approx(fx["cos_theta"], rel=1e-10)
    assert pair.sin_theta == pytest.approx(fx["sin_theta"], rel=1e-10)
    for t in grid[::4]:
        pf = partner_frame(spec, fx["lam"], t)
        assert pf.kappa == pytest.approx(fx["kappa_beta"], rel=1e-10)
        assert pf.tau == pytest.approx(fx["tau_beta"], rel=1e-10)
        assert pf.speed == pytest.approx(fx["theta_speed"], rel=1e-10)


@pytest.mark.parametrize("lam", [SQRT2 / 4, -SQRT2, 1.0, 0.2, -0.5])
def test_pair_invariants_on_grid(lam):
    pair = validate_pair(HELIX, lam, GRID50)
    assert pair.cos_theta**2 + pair.sin_theta**2 == pytest.approx(1.0, abs=1e-15)
    for t in GRID50:
        fr = frame_at(HELIX, t)
        pf = partner_frame(HELIX, lam, t)
        assert lam * fr.kappa + pair.mu * fr.tau == pytest.approx(1.0, abs=1e-12)
        T_b, N_b, B_b = partner_frame_closed_form(fr, pair.cos_theta, pair.sin_theta)
        np.testing.assert_allclose(pf.T, T_b, atol=1e-8)
        np.testing.assert_allclose(pf.N, pair.normal_sign * N_b, atol=1e-8)
        np.testing.assert_allclose(pf.B, pair.normal_sign * B_b, atol=1e-8)
        kb, tb = partner_curvatures_closed_form(fr.kappa, fr.tau, pair)
        assert abs(kb) == pytest.approx(pf.kappa, rel=1e-8)
        assert math.copysign(1, kb) == pair.curvature_sign
        assert tb == pytest.approx(pf.tau, rel=1e-8)
        assert partner_speed(fr.tau, pair, fr.speed) == pytest.approx(pf.speed, rel=1e-10)
