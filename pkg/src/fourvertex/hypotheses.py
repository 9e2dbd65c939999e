"""Sampling-based checks of star-shapedness, local convexity and hull interiority.

Every check returns a three-valued verdict (``pass``, ``fail``,
``degenerate``) together with the margin that decided it. None of them is a
proof: they establish the hypotheses at the sampling resolution only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.spatial import cKDTree

from .config import Tolerances
from .curves import as_center, evaluate_jet, parameter_grid, sample_curve
from .errors import InvalidCenterError, PreconditionError
from .frenet import frenet_at, frenet_frames

PASS = "pass"
FAIL = "fail"
DEGENERATE = "degenerate"

THETA_GRID = 256
WINDOW_POINTS = 32
_DEFAULT_TOL = Tolerances()


@dataclass
class CheckResult:
    status: str
    margin: float
    details: Dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass(frozen=True)
class SupportPlaneWitness:
    """Plane through ``gamma(t)`` containing the tangent line, with normal ``u``.

    ``u = cos(theta) N + sin(theta) B`` points towards the side that holds
    both ``o`` (by ``o_side_margin``) and the nearby curve (down to
    ``neighborhood_min``). ``side_ratio`` is the smallest
    ``<gamma(s) - p, u> / |gamma(s) - p|^2`` over the window, a scale-aware
    measure of how firmly the curve stays on that side.
    """

    t: float
    theta: float
    u: np.ndarray
    o_side_margin: float
    neighborhood_min: float
    valid: bool
    reason: str = ""
    side_ratio: float = float("nan")


@dataclass
class HypothesisReport:
    star_shaped: CheckResult
    locally_convex: CheckResult
    hull_interior: CheckResult
    tu_condition: CheckResult
    witnesses: List[SupportPlaneWitness] = field(default_factory=list, repr=False)

    def _core(self):
        return (self.star_shaped, self.locally_convex, self.hull_interior)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self._core())

    @property
    def any_fail(self) -> bool:
        return any(c.status == FAIL for c in self._core())

    @property
    def any_degenerate(self) -> bool:
        return any(c.status == DEGENERATE for c in self._core())


# ---------------------------------------------------------------------------
# star-shapedness


def _projected_points(spec, o, n_samples):
    x = evaluate_jet(spec, parameter_grid(n_samples)).x0 - o
    d = np.linalg.norm(x, axis=1)
    if np.any(d == 0):
        raise InvalidCenterError("center lies on the curve")
    return x / d[:, None], d


def _segment_distances(p0, p1, q0, q1):
    """Distances between segments [p0, p1] and [q0, q1], row by row."""
    d1 = p1 - p0
    d2 = q1 - q0
    r = p0 - q0
    a = np.einsum("ij,ij->i", d1, d1)
    e = np.einsum("ij,ij->i", d2, d2)
    f = np.einsum("ij,ij->i", d2, r)
    c = np.einsum("ij,ij->i", d1, r)
    b = np.einsum("ij,ij->i", d1, d2)
    denom = a * e - b * b
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(denom > 1e-300, np.clip((b * f - c * e) / denom, 0, 1), 0.0)
        t = (b * s + f) / e
    # clamp t and recompute s where needed
    t_lo = t < 0
    t_hi = t > 1
    t = np.clip(t, 0, 1)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(t_lo, np.clip(-c / a, 0, 1), s)
        s = np.where(t_hi, np.clip((b - c) / a, 0, 1), s)
    diff = (p0 + s[:, None] * d1) - (q0 + t[:, None] * d2)
    return np.linalg.norm(diff, axis=1)


def _nearest_far_points(pts, sep_idx):
    """For each point, the nearest point more than ``sep_idx`` indices away (cyclically)."""
    tree = cKDTree(pts)
    n = len(pts)
    best = np.full(n, np.inf)
    partner = np.full(n, -1)
    k = min(n, 2 * sep_idx + 4)
    todo = np.arange(n)
    while len(todo):
        dd, ii = tree.query(pts[todo], k=k)
        dd = dd.reshape(len(todo), -1)
        ii = ii.reshape(len(todo), -1)
        gap = np.abs(ii - todo[:, None])
        gap = np.minimum(gap, n - gap)
        far = gap > sep_idx
        has = far.any(axis=1)
        first = np.argmax(far, axis=1)
        rows = np.flatnonzero(has)
        best[todo[rows]] = dd[rows, first[rows]]
        partner[todo[rows]] = ii[rows, first[rows]]
        if k >= n:
            break
        todo = todo[~has]
        k = min(n, 2 * k)
    return tree, best, partner


def check_star_shaped(spec, o, n_samples: int = 4096, tol: Tolerances = _DEFAULT_TOL,
                      separation_floor: Optional[float] = None) -> CheckResult:
    """Injectivity of the radial projection, judged on samples.

    Points of the projected polyline more than ``separation_floor`` apart in
    parameter (default ``4*pi/n``) must stay at least ``proximity_floor``
    radians apart. Distances are taken between polyline segments, so a
    transversal self-crossing of the projection is caught even when no two
    samples land on it. The margin is the smallest such angular distance.
    """
    o = as_center(o)
    pts, dist = _projected_points(spec, o, n_samples)
    if dist.min() <= 1e-12 * max(1.0, dist.max()):
        raise InvalidCenterError("center lies on the curve")
    if separation_floor is None:
        separation_floor = 4 * np.pi / n_samples
    n = len(pts)
    sep_idx = int(np.floor(separation_floor * n / (2 * np.pi) + 1e-9))
    tree, best, partner = _nearest_far_points(pts, sep_idx)
    i = int(np.argmin(best))
    chord, pair = float(best[i]), (i, int(partner[i]))

    nxt = np.roll(pts, -1, axis=0)
    seg_len = float(np.max(np.linalg.norm(nxt - pts, axis=1)))
    cand = tree.query_pairs(chord + 2 * seg_len, output_type="ndarray")
    if len(cand):
        a, b = cand[:, 0], cand[:, 1]
        gap = np.abs(a - b)
        gap = np.minimum(gap, n - gap)
        keep = gap > sep_idx + 1
        a, b = a[keep], b[keep]
        if len(a):
            # each close point pair stands for the four segments around it
            ia = np.concatenate([a, a, (a - 1) % n, (a - 1) % n])
            ib = np.concatenate([b, (b - 1) % n, b, (b - 1) % n])
            d = _segment_distances(pts[ia], pts[(ia + 1) % n], pts[ib], pts[(ib + 1) % n])
            k = int(np.argmin(d))
            if d[k] < chord:
                chord, pair = float(d[k]), (int(ia[k]), int(ib[k]))

    angle = float(2 * np.arcsin(min(1.0, chord / 2)))
    status = PASS if angle > tol.proximity_floor else FAIL
    t = parameter_grid(n_samples)
    details = {"closest_pair": [float(t[pair[0]]), float(t[pair[1]])] if pair[1] >= 0 else None}
    return CheckResult(status, angle, details)


# ---------------------------------------------------------------------------
# local convexity


def _theta_grid():
    margin = np.pi / (2 * THETA_GRID)
    return np.linspace(-np.pi / 2 + margin, np.pi / 2 - margin, THETA_GRID)


def _window(spec, t, kappa, speed, npts=WINDOW_POINTS):
    delta = np.minimum(0.2 / (kappa * speed), np.pi / 8)
    j = np.concatenate([-np.arange(npts, 0, -1), np.arange(1, npts + 1)]) / npts
    s = t[:, None] + delta[:, None] * j[None, :]
    return evaluate_jet(spec, s.ravel()).x0.reshape(len(t), len(j), 3)


def _witness_scores(dN, dB, dd, oN, oB, theta):
    """Side values for one sample and a set of angles."""
    c, s = np.cos(theta), np.sin(theta)
    side = dN[:, None] * c + dB[:, None] * s
    nb_min = np.minimum(side.min(axis=0), 0.0)
    score = (side / dd[:, None]).min(axis=0)
    o_side = oN * c + oB * s
    return nb_min, score, o_side


def _support_planes(spec, o, ts, tol: Tolerances, polish="failures"):
    """Best support-plane witness at each parameter in ``ts``."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    jets = evaluate_jet(spec, ts)
    fs = frenet_frames(jets, tol.kappa_min)
    speed = np.linalg.norm(jets.x1, axis=1)
    theta = _theta_grid()
    c, s = np.cos(theta), np.sin(theta)
    out = []
    chunk = 256
    for lo in range(0, len(ts), chunk):
        sl = slice(lo, lo + chunk)
        valid = fs.valid[sl]
        kappa = np.where(valid, fs.kappa[sl], 1.0)
        W = _window(spec, ts[sl], kappa, speed[sl])
        p = jets.x0[sl]
        D = W - p[:, None, :]
        N, B, T = fs.N[sl], fs.B[sl], fs.T[sl]
        dN = np.einsum("ijk,ik->ij", D, np.nan_to_num(N))
        dB = np.einsum("ijk,ik->ij", D, np.nan_to_num(B))
        dd = np.einsum("ijk,ijk->ij", D, D)
        side = dN[:, :, None] * c + dB[:, :, None] * s
        nb_min = np.minimum(side.min(axis=1), 0.0)
        score = (side / dd[:, :, None]).min(axis=1)
        op = o - p
        oN = np.einsum("ik,ik->i", op, np.nan_to_num(N))
        oB = np.einsum("ik,ik->i", op, np.nan_to_num(B))
        o_side = oN[:, None] * c + oB[:, None] * s
        perp = op - np.einsum("ik,ik->i", op, T)[:, None] * T
        through_o = np.linalg.norm(perp, axis=1) <= tol.tangent_tol * np.linalg.norm(op, axis=1)
        feasible = o_side >= tol.o_margin
        for r in range(len(p)):
            t = float(ts[lo + r])
            if not valid[r]:
                out.append(SupportPlaneWitness(t, np.nan, np.full(3, np.nan), np.nan, np.nan,
                                               False, "curvature below floor"))
                continue
            if through_o[r]:
                out.append(SupportPlaneWitness(t, np.nan, np.full(3, np.nan), 0.0, np.nan,
                                               False, "tangent line through center"))
                continue
            if feasible[r].any():
                k = int(np.argmax(np.where(feasible[r], score[r], -np.inf)))
            else:
                k = int(np.argmax(o_side[r]))
            th = float(theta[k])
            nbm, om, sr = float(nb_min[r, k]), float(o_side[r, k]), float(score[r, k])
            ok = om >= tol.o_margin and nbm >= -tol.side_tol
            if polish == "always" or (polish == "failures" and not ok):
                th2 = _polish(dN[r], dB[r], dd[r], oN[r], oB[r], th, tol)
                nb2, sr2, om2 = _witness_scores(dN[r], dB[r], dd[r], oN[r], oB[r], np.array([th2]))
                ok2 = om2[0] >= tol.o_margin and nb2[0] >= -tol.side_tol
                if ok2 or not ok:
                    th, nbm, om, sr, ok = th2, float(nb2[0]), float(om2[0]), float(sr2[0]), bool(ok2)
            u = np.cos(th) * N[r] + np.sin(th) * B[r]
            reason = "" if ok else ("center on wrong side" if om < tol.o_margin else "curve crosses plane")
            out.append(SupportPlaneWitness(t, th, u, om, nbm, bool(ok), reason, sr))
    return out


def _polish(dN, dB, dd, oN, oB, th0, tol):
    step = np.pi / THETA_GRID

    def neg(th):
        nb, score, o_side = _witness_scores(dN, dB, dd, oN, oB, np.array([th]))
        penalty = min(0.0, o_side[0] - tol.o_margin)
        return -(score[0] + 1e3 * penalty)

    lo = max(-np.pi / 2 + 1e-12, th0 - step)
    hi = min(np.pi / 2 - 1e-12, th0 + step)
    res = minimize_scalar(neg, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    return float(res.x) if res.fun <= neg(th0) else th0


def check_local_convexity(spec, o, t: float, tol: Tolerances = _DEFAULT_TOL) -> SupportPlaneWitness:
    """Search planes through the tangent line at ``t`` for a local support plane.

    Returns the best witness; ``witness.valid`` tells whether it qualifies.
    Raises :class:`CurvatureDegeneracyError` when the curvature at ``t`` is
    below the floor.
    """
    o = as_center(o)
    frenet_at(evaluate_jet(spec, float(t)), tol.kappa_min)
    return _support_planes(spec, o, [float(t)], tol, polish="always")[0]


def check_local_convexity_all(spec, o, n_samples: int = 4096, tol: Tolerances = _DEFAULT_TOL) -> CheckResult:
    """Local convexity at every sample; the margin is the worst witness slack."""
    return _local_convexity_all(spec, o, n_samples, tol)[0]


def _local_convexity_all(spec, o, n_samples, tol):
    o = as_center(o)
    ts = parameter_grid(n_samples)
    ws = _support_planes(spec, o, ts, tol)
    failures = [w for w in ws if not w.valid]
    degenerate = [w for w in failures if w.reason == "curvature below floor"]
    ratios = [w.side_ratio for w in ws if np.isfinite(w.side_ratio)]
    margin = float(min(ratios)) if ratios else float("nan")
    if degenerate:
        status = DEGENERATE
    elif failures:
        status = FAIL
    else:
        status = PASS
    details = {
        "n_checked": len(ws),
        "n_failures": len(failures),
        "first_failure": failures[0].t if failures else None,
        "first_failure_reason": failures[0].reason if failures else None,
        "min_o_side_margin": float(min((w.o_side_margin for w in ws if np.isfinite(w.o_side_margin)),
                                       default=float("nan"))),
    }
    return CheckResult(status, margin, details), ws


# ---------------------------------------------------------------------------
# convex hull interior


def fibonacci_directions(n: int) -> np.ndarray:
    """Deterministic, nearly uniform unit vectors (golden-angle spiral)."""
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    r = np.sqrt(1 - z * z)
    phi = np.pi * (3 - np.sqrt(5)) * i
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def check_hull_interior(spec, o, n_samples: int = 4096, n_directions: int = 512,
                        tol: Tolerances = _DEFAULT_TOL) -> CheckResult:
    """Whether ``o`` is interior to the convex hull, by support-function probing.

    For every probe direction ``u`` the support value ``max_p <p - o, u>``
    must reach ``hull_margin``. A (numerically) planar curve has a hull with
    empty interior and is reported degenerate.
    """
    o = as_center(o)
    x = evaluate_jet(spec, parameter_grid(n_samples)).x0
    centered = x - x.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    if sv[0] == 0 or sv[-1] <= tol.planarity_tol * sv[0]:
        return CheckResult(DEGENERATE, 0.0, {"planarity": float(sv[-1] / sv[0]) if sv[0] else 0.0})
    U = fibonacci_directions(n_directions)
    support = ((x - o) @ U.T).max(axis=0)
    k = int(np.argmin(support))
    margin = float(support[k])
    status = PASS if margin >= tol.hull_margin else FAIL
    return CheckResult(status, margin, {"worst_direction": U[k].tolist()})


# ---------------------------------------------------------------------------
# Thorbergsson-Umehara condition


def tu_values(spec, o, ts, tol: Tolerances = _DEFAULT_TOL):
    """``<p - o, N(p)>`` at parameters ``ts`` (NaN where N is undefined)."""
    o = as_center(o)
    jets = evaluate_jet(spec, np.atleast_1d(ts))
    fs = frenet_frames(jets, tol.kappa_min)
    return np.einsum("ik,ik->i", jets.x0 - o, fs.N)


def check_tu_condition(spec, o, n_samples: int = 4096, tol: Tolerances = _DEFAULT_TOL) -> CheckResult:
    """Angle between principal normal and position vector obtuse at every sample."""
    ts = parameter_grid(n_samples)
    v = tu_values(spec, o, ts, tol)
    if not np.all(np.isfinite(v)):
        return CheckResult(DEGENERATE, float("nan"), {"undefined_at": float(ts[np.argmin(np.isfinite(v))])})
    k = int(np.argmax(v))
    status = PASS if v[k] < -tol.tu_margin else FAIL
    # margin is positive when the condition holds, like the other checks
    return CheckResult(status, float(-v[k]), {"worst_t": float(ts[k])})


def check_hypotheses(spec, o, n_samples: int = 4096, n_directions: int = 512,
                     tol: Tolerances = _DEFAULT_TOL) -> HypothesisReport:
    o = as_center(o)
    sample_curve(spec, n_samples)
    star = check_star_shaped(spec, o, n_samples, tol)
    conv, witnesses = _local_convexity_all(spec, o, n_samples, tol)
    hull = check_hull_interior(spec, o, n_samples, n_directions, tol)
    tu = check_tu_condition(spec, o, n_samples, tol)
    return HypothesisReport(star, conv, hull, tu, witnesses)


def hypotheses_pass(spec, o, n_samples: int = 4096, n_directions: int = 512,
                    tol: Tolerances = _DEFAULT_TOL) -> bool:
    """Short-circuiting ``check_hypotheses(...).all_pass``, cheapest checks first."""
    o = as_center(o)
    if not check_hull_interior(spec, o, n_samples, n_directions, tol).passed:
        return False
    if not check_star_shaped(spec, o, n_samples, tol).passed:
        return False
    return check_local_convexity_all(spec, o, n_samples, tol).passed


def convexity_witness(spec, t: float, n_samples: int = 4096, n_planes: int = 360, eps: float = 1e-9):
    """Evidence that the curve lies on no convex surface.

    Every plane of the pencil through the tangent line at ``t`` is tested; if
    each one has sampled curve points strictly on both sides (beyond ``eps``
    times the curve size), no support plane exists at ``t``, which any curve
    on the boundary of a convex body would have. Returns the smallest
    two-sided excursion ``min over planes of min(max side, -min side)``;
    positive means a witness.
    """
    jet = evaluate_jet(spec, float(t))
    fs = frenet_at(jet)
    x = evaluate_jet(spec, parameter_grid(n_samples)).x0 - jet.x0
    size = float(np.max(np.linalg.norm(x, axis=1)))
    phi = np.linspace(0, np.pi, n_planes, endpoint=False)
    U = np.cos(phi)[:, None] * fs.N + np.sin(phi)[:, None] * fs.B
    side = x @ U.T
    two_sided = np.minimum(side.max(axis=0), -side.min(axis=0))
    return float(two_sided.min() - eps * size)


def require_passing(report: HypothesisReport):
    if not report.all_pass:
        raise PreconditionError("hypotheses do not all pass at this center")
