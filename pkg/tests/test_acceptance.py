"""Acceptance suite: one test per criterion, each recording a single pass/fail line.

The lines are printed as the tests run (visible with ``-s``) and repeated in
the terminal summary under "acceptance criteria".
"""

import io
import time

import numpy as np
import pytest

import oracles
from conftest import random_rotation
from fourvertex.cli import main
from fourvertex.config import RunConfig, Tolerances
from fourvertex.curves import (
    RadialCurve,
    TrigPoly,
    evaluate_jet,
    normalized_jet,
    parameter_grid,
    random_fourier_curve,
    reparametrize,
)
from fourvertex.errors import PreconditionError
from fourvertex.frenet import frenet_frames
from fourvertex.hypotheses import (
    check_local_convexity,
    check_tu_condition,
    convexity_witness,
    tu_values,
)
from fourvertex.signcert import torsion_sign_changes
from fourvertex.spherical import find_inflections, geodesic_curvature_function
from fourvertex.verifier import (
    HYPOTHESES_FAIL,
    THEOREM_VERIFIED,
    check_spherical_max_principle,
    check_torsion_max_principle,
    lemma_holds,
    perturb_center,
    verify_osculating_lemma,
    verify_theorem,
)
from fourvertex.zoo import get_entry, zoo_names

TWO_PI = 2 * np.pi
LEMMA_TOL = 1e-6


def curved_random_curves(rng, count, kappa_min=0.05, degrees=(2, 5)):
    """Random fourier curves whose curvature stays above ``kappa_min`` on a dense grid."""
    out = []
    while len(out) < count:
        c = random_fourier_curve(int(rng.integers(degrees[0], degrees[1] + 1)), rng)
        if np.all(frenet_frames(evaluate_jet(c, parameter_grid(4096))).kappa > kappa_min):
            out.append(c)
    return out


@pytest.fixture(scope="module")
def zoo_reports():
    return {n: verify_theorem(get_entry(n).spec, get_entry(n).center) for n in zoo_names()}


# ---------------------------------------------------------------------------


def test_c01_frenet_oracle_agreement(acceptance):
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    curves = curved_random_curves(rng, 50)
    t = parameter_grid(256)
    worst_k = worst_t = 0.0
    for c in curves:
        fs = frenet_frames(evaluate_jet(c, t))
        k, tau = (x.astype(float) for x in oracles.mode_stencil_frenet(c.a0, c.a, c.b, t))
        worst_k = max(worst_k, float(np.max(np.abs(fs.kappa - k) / k)))
        worst_t = max(worst_t, float(np.max(np.abs(fs.tau - tau) / np.abs(tau))))
    elapsed = time.perf_counter() - start
    ok = worst_k < 1e-5 and worst_t < 1e-5 and elapsed < 10
    acceptance(1, "Frenet oracle agreement", ok,
               f"max rel err kappa {worst_k:.1e}, tau {worst_t:.1e}, {elapsed:.1f} s")
    assert ok


def test_c02_projection_identities(acceptance):
    rng = np.random.default_rng(102)
    worst1 = worst2 = 0.0
    for _ in range(100):
        c = random_fourier_curve(int(rng.integers(1, 6)), rng)
        t = rng.uniform(0, TWO_PI, 100)
        j = evaluate_jet(c, t)
        o = j.x0.mean(axis=0) + rng.normal(size=3)
        g = j.x0 - o
        g0, g1, g2, _ = normalized_jet(g, j.x1, j.x2, j.x3)
        n2 = np.sum(g * g, axis=1)[:, None]
        gx1 = np.cross(g, j.x1)
        r1 = np.cross(g0, g1) - gx1 / n2
        r2 = np.cross(g0, g2) - (np.cross(g, j.x2) * n2 - 2 * gx1 * np.sum(g * j.x1, axis=1)[:, None]) / n2**2
        worst1 = max(worst1, float(np.linalg.norm(r1, axis=1).max()))
        worst2 = max(worst2, float(np.linalg.norm(r2, axis=1).max()))
    ok = worst1 < 1e-10 and worst2 < 1e-8
    acceptance(2, "projection cross-product identities", ok,
               f"10^4 pairs, max residual {worst1:.1e} / {worst2:.1e}")
    assert ok


def test_c03_tennis_ball(acceptance):
    spec = get_entry("tennis-ball").spec
    start = time.perf_counter()
    r = verify_theorem(spec, np.zeros(3), RunConfig(n_samples=4096))
    elapsed = time.perf_counter() - start
    res = [verify_osculating_lemma(spec, np.zeros(3), x) for x in r.genuine_inflections]
    worst = max(x.max_residual() for x in res)
    ok = (r.hypothesis_report.all_pass and len(r.genuine_inflections) == 4
          and r.n_torsion_changes == 4 and r.verdict == THEOREM_VERIFIED
          and worst < LEMMA_TOL and all(x.eq_a_value < 0 for x in res) and elapsed < 5)
    acceptance(3, "tennis-ball fixture", ok,
               f"{len(r.genuine_inflections)} inflections, {r.n_torsion_changes} torsion changes, "
               f"lemma residual {worst:.1e}, {elapsed:.1f} s")
    assert ok


def test_c04_torus_negative_control(acceptance, zoo_reports, derived):
    e = get_entry("torus-1-7")
    r = zoo_reports["torus-1-7"]
    scan = torsion_sign_changes(e.spec, 4096)
    tau = frenet_frames(evaluate_jet(e.spec, parameter_grid(4096))).tau
    min_tau = float(np.abs(tau).min())
    ok = (r.n_torsion_changes == 0 and len(scan.changes) == 0 and min_tau > 0
          and derived["curves"]["torus-1-7"]["min_abs_tau"] > 0
          and r.hypothesis_report.locally_convex.status == "fail"
          and r.hypothesis_report.star_shaped.status == "pass")
    acceptance(4, "torus (1,7) negative control", ok,
               f"r = {e.spec.r}, 0 changes, min |tau| {min_tau:.2e}, star pass, convexity fail")
    assert ok


def test_c05_hemisphere_curls(acceptance, zoo_reports):
    h = zoo_reports["hemisphere-curls"]
    ok = (h.n_torsion_changes == 2 and h.hypothesis_report.hull_interior.status == "fail"
          and h.hypothesis_report.locally_convex.status == "pass")
    acceptance(5, "hemisphere-curls negative control", ok,
               f"{h.n_torsion_changes} changes, hull {h.hypothesis_report.hull_interior.status}")
    assert ok


def test_c06_starshaped_nonconvex(acceptance, zoo_reports):
    e = get_entry("starshaped-nonconvex")
    r = zoo_reports["starshaped-nonconvex"]
    w = convexity_witness(e.spec, e.extras["witness_t"])
    ok = r.hypothesis_report.all_pass and w > 0 and r.n_torsion_changes >= 4
    acceptance(6, "star-shaped non-convex fixture", ok,
               f"witness excursion {w:.3f}, {r.n_torsion_changes} changes")
    assert ok


def perturbed_tennis_ball(rng, eps=0.02, K=3):
    """Tennis-ball coefficients plus small noise in direction and radius (degree raised to K)."""
    d = get_entry("tennis-ball").spec.direction
    a = np.zeros((K, 3))
    b = np.zeros((K, 3))
    a[: d.a.shape[0]] = d.a
    b[: d.b.shape[0]] = d.b
    direction = TrigPoly(d.a0 + eps * rng.normal(size=3), a + eps * rng.normal(size=(K, 3)),
                         b + eps * rng.normal(size=(K, 3)))
    radius = TrigPoly([1.0], eps * rng.normal(size=(K, 1)), eps * rng.normal(size=(K, 1)))
    return RadialCurve(direction, radius)


def test_c07_interval_argument(acceptance, zoo_reports):
    fixtures = [n for n, r in zoo_reports.items() if r.hypothesis_report.all_pass]
    bad = [n for n in fixtures
           if not (zoo_reports[n].interval_verdicts
                   and all(v.has_sign_change for v in zoo_reports[n].interval_verdicts))]
    rng = np.random.default_rng(107)
    config = RunConfig(n_samples=1024)
    accepted = drawn = 0
    while accepted < 100 and drawn < 300:
        drawn += 1
        r = verify_theorem(perturbed_tennis_ball(rng), np.zeros(3), config)
        if r.verdict == HYPOTHESES_FAIL or not r.hypothesis_report.all_pass:
            continue
        accepted += 1
        if not (len(r.genuine_inflections) >= 4 and r.interval_verdicts
                and all(v.has_sign_change for v in r.interval_verdicts)):
            bad.append(f"perturbation {drawn}")
    ok = not bad and accepted == 100
    acceptance(7, "interval argument", ok,
               f"fixtures {', '.join(fixtures)}; {accepted} passing perturbations of {drawn} drawn"
               + (f"; failures: {bad}" if bad else ""))
    assert ok


def _arcs(ts):
    ts = sorted(ts)
    if not ts:
        return [(0.0, TWO_PI)]
    return [(a, ts[(i + 1) % len(ts)] + (TWO_PI if i == len(ts) - 1 else 0.0)) for i, a in enumerate(ts)]


def _random_subsegment(rng, arcs):
    a, b = arcs[rng.integers(len(arcs))]
    m = 0.02 * (b - a)
    s, u = np.sort(rng.uniform(a + m, b - m, 2))
    return float(s), float(max(u, s + 1e-3))


def test_c08_maximum_principles(acceptance):
    rng = np.random.default_rng(108)
    tol = Tolerances()
    corpus = []
    for name in zoo_names():
        e = get_entry(name)
        o = perturb_center(e.spec, e.center)[0] if name == "flat-inflection" else e.center
        tors = _arcs([c.t_star for c in torsion_sign_changes(e.spec, 4096).changes])
        infl = _arcs([x.t_star for x in find_inflections(e.spec, o, with_residuals=False).genuine])
        corpus.append((name, e.spec, o, tors, infl))
    failures = []
    n_torsion = n_spherical = 0
    for i in range(200):
        name, spec, o, tors, infl = corpus[i % len(corpus)]
        seg = _random_subsegment(rng, tors)
        r = check_torsion_max_principle(spec, seg, tol=tol)
        n_torsion += 1
        if r.status != "pass":
            failures.append((name, "torsion", seg))
        s, u = _random_subsegment(rng, infl)
        kg = geodesic_curvature_function(spec, o)(np.array([0.5 * (s + u) % TWO_PI]))[0]
        try:
            if kg >= 0:
                r = check_spherical_max_principle(spec, o, (s, u), tol=tol)
            else:
                r = check_spherical_max_principle(reparametrize(spec, 0.0, -1), o, (-u, -s), tol=tol)
        except PreconditionError:
            failures.append((name, "spherical precondition", (s, u)))
            continue
        n_spherical += 1
        if r.status != "pass":
            failures.append((name, "spherical", (s, u)))
    ok = not failures
    acceptance(8, "maximum principles", ok,
               f"{n_torsion} torsion and {n_spherical} spherical segments, {len(failures)} failures")
    assert ok, failures[:5]


def test_c09_tu_implies_local_convexity(acceptance):
    rng = np.random.default_rng(109)
    tol = Tolerances()
    entries = [get_entry(n) for n in zoo_names()]
    checked = counterexamples = 0
    while checked < 10_000:
        e = entries[rng.integers(len(entries))]
        t = rng.uniform(0, TWO_PI, 64)
        v = tu_values(e.spec, e.center, t, tol)
        for s in t[v < -tol.tu_margin][: 10_000 - checked]:
            checked += 1
            if not check_local_convexity(e.spec, e.center, s, tol).valid:
                counterexamples += 1
    ok = counterexamples == 0
    acceptance(9, "normal-position condition implies local convexity", ok,
               f"{checked} pairs, {counterexamples} counterexamples")
    assert ok


def test_c10_invariance(acceptance):
    rng = np.random.default_rng(110)
    failures = []

    def close(name, x, y):
        if not np.allclose(x, y, rtol=1e-9, atol=1e-9):
            failures.append(name)

    for c in curved_random_curves(rng, 20):
        t = rng.uniform(0, TWO_PI, 64)
        a = frenet_frames(evaluate_jet(c, t))
        phase = rng.uniform(-6, 6)
        b = frenet_frames(evaluate_jet(reparametrize(c, phase, 1), t - phase))
        for nm, x, y in (("T", a.T, b.T), ("N", a.N, b.N), ("B", a.B, b.B),
                         ("kappa", a.kappa, b.kappa), ("tau", a.tau, b.tau)):
            close(f"phase {nm}", x, y)
        b = frenet_frames(evaluate_jet(reparametrize(c, 0.0, -1), -t))
        close("reverse T", b.T, -a.T)
        close("reverse N", b.N, a.N)
        close("reverse B", b.B, -a.B)
        close("reverse kappa", b.kappa, a.kappa)
        close("reverse tau", b.tau, a.tau)
        R = random_rotation(rng)
        b = frenet_frames(evaluate_jet(c.transformed(R, rng.normal(size=3)), t))
        close("rigid T", b.T, a.T @ R.T)
        close("rigid N", b.N, a.N @ R.T)
        close("rigid B", b.B, a.B @ R.T)
        close("rigid kappa", b.kappa, a.kappa)
        close("rigid tau", b.tau, a.tau)
        b = frenet_frames(evaluate_jet(c.transformed(np.diag([1.0, 1.0, -1.0])), t))
        close("reflection tau", b.tau, -a.tau)
        lam = rng.uniform(0.1, 10)
        b = frenet_frames(evaluate_jet(c.transformed(np.eye(3), np.zeros(3), lam), t))
        close("scale kappa", b.kappa, a.kappa / lam)
        close("scale tau", b.tau, a.tau / lam)
    ok = not failures
    acceptance(10, "invariance suite", ok, f"20 curves, {len(failures)} failing checks")
    assert ok, sorted(set(failures))


def test_c11_determinism(acceptance, tmp_path):
    outputs = []
    for i in range(2):
        dest = tmp_path / f"report{i}.json"
        code = main(["analyze", "zoo:flat-inflection", "--seed", "11", "--samples", "2048",
                     "--out", str(dest)], io.StringIO(), io.StringIO())
        outputs.append((code, dest.read_bytes()))
    ok = outputs[0] == outputs[1] and outputs[0][0] == 0
    acceptance(11, "determinism", ok, f"{len(outputs[0][1])} byte reports identical")
    assert ok
