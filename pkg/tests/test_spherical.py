import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fourvertex.curves import (
    FourierCurve,
    Jet3,
    RadialCurve,
    TrigPoly,
    circle,
    evaluate_jet,
    normalized_jet,
    parameter_grid,
    random_fourier_curve,
)
from fourvertex.errors import HypothesisViolation, InvalidCenterError
from fourvertex.signcert import count_sign_changes, torsion_sign_changes
from fourvertex.spherical import (
    find_inflections,
    geodesic_curvature,
    geodesic_curvature_function,
    project_frames,
    project_jet,
    tangent_great_circle_side,
)
from fourvertex.zoo import get_entry
from conftest import random_rotation

seeds = st.integers(0, 2**32 - 1)


def small_circle(alpha):
    s, c = np.sin(alpha), np.cos(alpha)
    return FourierCurve([0, 0, c], [[s, 0, 0]], [[0, s, 0]])


def test_projection_of_a_point():
    j = Jet3(0.0, np.array([2.0, 0, 0]), np.array([0, 1.0, 0]), np.array([-1.0, 0, 0]), np.zeros(3))
    s = project_jet(j)
    np.testing.assert_allclose(s.pbar, [1, 0, 0])


def test_great_circle_has_zero_curvature():
    s, ok = project_frames(evaluate_jet(circle(2.0), parameter_grid(64)))
    assert ok.all()
    np.testing.assert_allclose(s.pbar, evaluate_jet(circle(), parameter_grid(64)).x0, atol=1e-15)
    assert np.abs(s.kbar).max() < 1e-12 and np.abs(s.kg).max() < 1e-12


def test_small_circle_curvature_matches_oracle(derived):
    s, _ = project_frames(evaluate_jet(small_circle(np.pi / 4), parameter_grid(16)))
    np.testing.assert_allclose(geodesic_curvature(s), derived["small_circle_kg"], rtol=1e-9)
    np.testing.assert_allclose(s.kg, 1.0, rtol=1e-12)
    # the normalized quantity is the cosine of the angle between Nbar and nbar
    np.testing.assert_allclose(s.kbar, np.cos(np.pi / 4), rtol=1e-12)


def test_center_on_curve():
    with pytest.raises(InvalidCenterError):
        project_jet(evaluate_jet(circle(), 0.0), [1.0, 0, 0])


def test_tangent_through_center():
    j = Jet3(0.0, np.array([1.0, 0, 0]), np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.zeros(3))
    with pytest.raises(HypothesisViolation):
        project_jet(j)
    _, ok = project_frames(Jet3(np.array([0.0]), j.x0[None], j.x1[None], j.x2[None], j.x3[None]))
    assert not ok[0]


@given(seeds)
def test_sample_invariants(seed):
    rng = np.random.default_rng(seed)
    c = random_fourier_curve(3, rng)
    o = rng.normal(size=3) * 3
    s, ok = project_frames(evaluate_jet(c, parameter_grid(128)), o)
    good = ok & ~s.second_kind
    np.testing.assert_allclose(np.linalg.norm(s.pbar, axis=1), 1, atol=1e-12)
    assert np.abs(np.sum(s.pbar[ok] * s.Tbar[ok], axis=1)).max() < 1e-10
    np.testing.assert_allclose(s.nbar[ok], np.cross(s.pbar[ok], s.Tbar[ok]), atol=1e-12)
    np.testing.assert_allclose(s.kbar[good], np.sum(s.Nbar[good] * s.nbar[good], axis=1), atol=1e-12)
    assert np.all(np.sign(s.kbar[good]) == np.sign(s.kg[good]))


def _identity_residuals(c, o, t):
    j = evaluate_jet(c, t)
    g = j.x0 - o
    g0, g1, g2, _ = normalized_jet(g, j.x1, j.x2, j.x3)
    n2 = np.sum(g * g, axis=1)[:, None]
    r1 = np.cross(g0, g1) - np.cross(g, j.x1) / n2
    r2 = np.cross(g0, g2) - (np.cross(g, j.x2) * n2 - 2 * np.cross(g, j.x1) * np.sum(g * j.x1, axis=1)[:, None]) / n2**2
    return np.linalg.norm(r1, axis=1), np.linalg.norm(r2, axis=1)


@given(seeds)
def test_cross_product_identities(seed):
    rng = np.random.default_rng(seed)
    c = random_fourier_curve(4, rng)
    t = rng.uniform(0, 2 * np.pi, 64)
    o = evaluate_jet(c, t).x0.mean(axis=0) + rng.normal(size=3)
    r1, r2 = _identity_residuals(c, o, t)
    assert r1.max() < 1e-10 and r2.max() < 1e-8


def test_tangent_great_circle_side():
    s = project_jet(evaluate_jet(small_circle(0.7), 0.3))
    assert tangent_great_circle_side(s, s.nbar) == pytest.approx(1)
    assert tangent_great_circle_side(s, -s.nbar) == pytest.approx(-1)
    q = np.cos(0.4) * s.pbar + np.sin(0.4) * s.Tbar
    assert abs(tangent_great_circle_side(s, q)) < 1e-12


def test_tennis_ball_inflections_match_oracle(derived):
    ref = derived["curves"]["tennis-ball"]
    scan = find_inflections(get_entry("tennis-ball").spec)
    genuine = scan.genuine
    assert len(genuine) == ref["kg_sign_changes"] == 4
    ts = np.array([r.t_star for r in genuine])
    np.testing.assert_allclose(ts, ref["kg_flips"], atol=2 * np.pi / 2**16)
    np.testing.assert_allclose(ts, [0, np.pi / 2, np.pi, 3 * np.pi / 2], atol=1e-9)
    for r in genuine:
        assert r.kbar_left * r.kbar_right == -1
        res = r.lemma_residuals
        assert res.nbar_plus_pbar < 1e-6 and res.nbar_minus_bbar < 1e-6
        assert res.max_residual() < 1e-6 and res.eq_a_value < 0


@pytest.mark.parametrize("c", [0.3, 0.6])
def test_tennis_ball_amplitudes(c, derived):
    key = "tennis-ball" if c == 0.3 else "tennis-ball-0.6"
    assert len(find_inflections(get_entry("tennis-ball", c=c).spec).genuine) == derived["curves"][key]["kg_sign_changes"]


def test_great_circle_is_degenerate():
    scan = find_inflections(circle(1.0), n_samples=512)
    assert scan.degenerate and not scan.genuine
    tilted = FourierCurve([0, 0, 0], [[1, 0, 1]], [[0, 1, 0]])
    assert find_inflections(tilted, n_samples=512).degenerate


def test_rotation_about_center_preserves_curvature(rng):
    spec = get_entry("starshaped-nonconvex").spec
    R = random_rotation(rng)
    rotated = RadialCurve(TrigPoly(spec.direction.a0 @ R.T, spec.direction.a @ R.T, spec.direction.b @ R.T), spec.radius)
    t = parameter_grid(256)
    a = geodesic_curvature_function(spec)(t)
    b = geodesic_curvature_function(rotated)(t)
    np.testing.assert_allclose(a, b, atol=1e-9)


def test_torsion_zeros_are_curvature_extrema_on_the_sphere():
    for name in ("tennis-ball", "hemisphere-curls", "flat-inflection"):
        spec = get_entry(name).spec
        kg = geodesic_curvature_function(spec)
        h = 1e-5
        dkg = count_sign_changes(lambda t: (kg(t + h) - kg(t - h)) / (2 * h))
        tau = torsion_sign_changes(spec)
        a, b = dkg.parameters(), tau.parameters()
        assert len(a) == len(b) > 0
        d = np.abs(np.angle(np.exp(1j * (a[:, None] - b[None, :]))))
        assert d.min(axis=1).max() < 1e-6
