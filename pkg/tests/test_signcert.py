import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fourvertex.curves import TorusCurve, circle, reparametrize
from fourvertex.signcert import count_sign_changes, torsion_sign_changes
from fourvertex.zoo import get_entry


def test_sin_2t():
    scan = count_sign_changes(lambda t: np.sin(2 * t))
    assert scan.count == 4
    np.testing.assert_allclose(scan.parameters(), [0, np.pi / 2, np.pi, 3 * np.pi / 2], atol=1e-9)
    for ch in scan:
        assert ch.left_sign * ch.right_sign == -1
        assert ch.bracket_width < 1e-10
        assert abs(ch.left_value) > 1e-9 and abs(ch.right_value) > 1e-9


def test_positive_function():
    scan = count_sign_changes(lambda t: 1 + 0.5 * np.cos(t))
    assert scan.count == 0 and not scan.degenerate and not scan.tangential


def test_cos_t():
    scan = count_sign_changes(lambda t: np.cos(t))
    np.testing.assert_allclose(scan.parameters(), [np.pi / 2, 3 * np.pi / 2], atol=1e-9)


def test_tangential_zero_is_not_counted():
    scan = count_sign_changes(lambda t: np.sin(t) ** 2)
    assert scan.count == 0
    np.testing.assert_allclose(scan.tangential, [0, np.pi], atol=1e-3)


def test_identically_zero_is_degenerate():
    scan = count_sign_changes(lambda t: 0 * t)
    assert scan.degenerate and scan.count == 0
    assert scan.degenerate_windows[0][1] - scan.degenerate_windows[0][0] > 6


def test_flat_window_is_degenerate_but_short_dip_is_not():
    # t^7 near pi: |f| < 1e-9 for |t - pi| < ~0.05
    flat = count_sign_changes(lambda t: (t - np.pi) ** 7)
    assert flat.degenerate
    steep = count_sign_changes(lambda t: (t - np.pi) ** 3)
    assert not steep.degenerate and steep.count == 2  # at pi and across the seam


def test_nan_samples_are_gaps():
    def f(t):
        v = np.sin(t)
        v[(t > 1) & (t < 1.2)] = np.nan
        return v

    scan = count_sign_changes(f)
    assert scan.gaps and scan.count == 2


def test_n_samples_precondition():
    with pytest.raises(ValueError):
        count_sign_changes(np.sin, n_samples=32)


@given(st.integers(1, 6), st.floats(0, 2 * np.pi))
def test_odd_periodic_count_is_even_and_positive(k, shift):
    # f(t + pi) = -f(t) for odd k
    m = 2 * k - 1
    scan = count_sign_changes(lambda t: np.sin(m * (t - shift)) + 0.3 * np.sin(3 * m * (t - shift)))
    assert scan.count >= 2 and scan.count % 2 == 0


def test_doubling_samples_never_loses_changes():
    for name in ("tennis-ball", "starshaped-nonconvex", "hemisphere-curls", "dumbbell"):
        spec = get_entry(name).spec
        counts = [torsion_sign_changes(spec, n).count for n in (1024, 2048, 4096)]
        assert counts == sorted(counts)


def test_planar_curve_torsion_is_degenerate():
    scan = torsion_sign_changes(circle(), 1024)
    assert scan.count == 0 and scan.degenerate


def test_tennis_ball_torsion_matches_oracle(derived):
    ref = derived["curves"]["tennis-ball"]
    scan = torsion_sign_changes(get_entry("tennis-ball").spec)
    assert scan.count == ref["torsion_sign_changes"] == 4
    np.testing.assert_allclose(scan.parameters(), ref["torsion_flips"], atol=2 * np.pi / 2**16)


def test_thin_torus_has_constant_sign_torsion(derived):
    ref = derived["curves"]["torus-1-7"]
    scan = torsion_sign_changes(TorusCurve(7, 1.0, 0.05))
    assert scan.count == ref["torsion_sign_changes"] == 0
    assert not scan.tangential and not scan.degenerate


@given(st.floats(0, 2 * np.pi), st.sampled_from([1, -1]))
def test_count_invariant_under_reparametrization(phase, orientation):
    spec = get_entry("starshaped-nonconvex").spec
    base = torsion_sign_changes(spec, 1024).count
    assert torsion_sign_changes(reparametrize(spec, phase, orientation), 1024).count == base
