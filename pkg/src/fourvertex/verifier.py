"""End-to-end check of the four-sign-change theorem on one curve and center.

Pipeline: hypotheses -> center perturbation -> inflections of the radial
projection -> osculating-plane residuals at each genuine inflection ->
torsion sign changes -> the interval argument (each arc between consecutive
genuine inflections must contain a torsion sign change), with the maximum
principles checked on every arc along the way.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .config import RunConfig, Tolerances
from .curves import TWO_PI, as_center, evaluate_jet, reparametrize, sample_curve
from .errors import FourVertexError, PreconditionError
from .frenet import frenet_at, frenet_frames
from .hypotheses import (
    DEGENERATE,
    FAIL,
    PASS,
    HypothesisReport,
    check_hypotheses,
    hypotheses_pass,
)
from .signcert import SignChange, torsion_sign_changes
from .spherical import (
    InflectionRecord,
    InflectionScan,
    LemmaResiduals,
    find_inflections,
    geodesic_curvature_function,
    osculating_lemma_residuals,
    project_frames,
    project_jet,
)

THEOREM_VERIFIED = "theorem-verified"
HYPOTHESES_FAIL = "hypotheses-fail"
INCONCLUSIVE = "inconclusive-degenerate"

LEMMA_TOL = 1e-6
NEAR_FRACTION = 0.1
N_PROBE = 64


class CenterPerturbationFailed(FourVertexError):
    """No nearby center made the inflections of the projection nondegenerate."""

    def __init__(self, attempts):
        self.attempts = attempts
        super().__init__(f"degeneracy persists after {attempts} perturbation attempts")


@dataclass(eq=False)
class IntervalVerdict:
    """One arc between consecutive genuine inflections (open at both ends).

    ``orientation`` is -1 when the geodesic curvature is negative on the arc
    and the maximum principles were applied to the reversed curve.
    """

    interval: Tuple[float, float]
    has_sign_change: bool
    torsion_changes_inside: int
    orientation: int
    spherical_above: Optional[bool] = None
    osculating_above: Optional[bool] = None


@dataclass(eq=False)
class TheoremReport:
    hypothesis_report: HypothesisReport
    center_requested: np.ndarray
    center_used: np.ndarray
    perturbation_attempts: int
    perturbation_seed: int
    inflections: List[InflectionRecord]
    degenerate_inflection_windows: List[Tuple[float, float]]
    torsion_changes: List[SignChange]
    torsion_uncertified: List[float]
    torsion_degenerate_windows: List[Tuple[float, float]]
    interval_verdicts: List[IntervalVerdict]
    lemma_checks_pass: Optional[bool]
    verdict: str
    config: RunConfig = field(default_factory=RunConfig)

    @property
    def genuine_inflections(self) -> List[InflectionRecord]:
        return [r for r in self.inflections if r.genuine]

    @property
    def n_torsion_changes(self) -> int:
        return len(self.torsion_changes)


@dataclass
class MaxPrincipleResult:
    """Outcome of a maximum-principle check on one parameter segment.

    ``status`` is ``pass``, ``fail`` or ``coincident`` (the segment lies in the
    plane or great circle it is compared against, which the corollaries
    exclude).
    """

    status: str
    sign_class: str
    interval: Tuple[float, float]
    min_side_start: float
    max_side_start: float
    min_side_end: float
    max_side_end: float
    contained: bool
    corollary: str = "not-applicable"

    @property
    def passed(self) -> bool:
        return self.status == PASS


# ---------------------------------------------------------------------------
# center perturbation


def _nondegenerate(spec, o, config: RunConfig):
    tol = config.tolerances
    scan = find_inflections(spec, o, config.n_samples, tol.cert_floor, tol.degeneracy_window,
                            tol.kappa_min, with_residuals=False)
    return not scan.degenerate and not scan.scan.uncertified and not scan.scan.gaps


def perturb_center(spec, o, radius: Optional[float] = None, max_attempts: Optional[int] = None,
                   config: Optional[RunConfig] = None, seed: Optional[int] = None):
    """Return ``(center, attempts)`` with nondegenerate inflections at ``center``.

    ``o`` itself is returned with ``attempts == 0`` when its projection has no
    degenerate geodesic-curvature windows. Otherwise centers drawn uniformly
    from the ball of ``radius`` about ``o`` (seeded) are tried until one keeps
    every hypothesis and clears the degeneracy. Raises
    :class:`CenterPerturbationFailed` when ``max_attempts`` draws all fail.
    """
    config = config or RunConfig()
    pert = config.perturbation
    radius = pert.radius if radius is None else radius
    max_attempts = pert.max_attempts if max_attempts is None else max_attempts
    seed = pert.seed if seed is None else seed
    o = as_center(o)
    tol = config.tolerances

    def acceptable(c):
        # the inflection scan is cheap next to the local convexity sweep
        return (_nondegenerate(spec, c, config)
                and hypotheses_pass(spec, c, config.n_samples, config.n_directions, tol))

    if acceptable(o):
        return o, 0
    rng = np.random.default_rng(seed)
    for attempt in range(1, max_attempts + 1):
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        c = o + radius * rng.uniform() ** (1 / 3) * d
        if acceptable(c):
            return c, attempt
    raise CenterPerturbationFailed(max_attempts)


# ---------------------------------------------------------------------------
# osculating-plane lemma


def verify_osculating_lemma(spec, o, record: InflectionRecord,
                            tol: Tolerances = Tolerances()) -> LemmaResiduals:
    """Residuals of the osculating-plane identities at a genuine inflection."""
    if not record.genuine:
        raise PreconditionError(f"inflection at t={record.t_star!r} is not genuine")
    frenet_at(evaluate_jet(spec, record.t_star), tol.kappa_min)
    return osculating_lemma_residuals(spec, o, record.t_star, tol.kappa_min)


def lemma_holds(res: LemmaResiduals, lemma_tol: float = LEMMA_TOL) -> bool:
    return (
        res.dist_o_to_osc_plane_bar < lemma_tol
        and res.dist_p_to_osc_plane_bar < lemma_tol
        and res.plane_coincidence_angle < lemma_tol
        and res.binormal_angle < lemma_tol
        and res.eq_a_value < 0
    )


# ---------------------------------------------------------------------------
# maximum principles


def _probe_params(a, b, n):
    return a + (b - a) * np.arange(1, n + 1) / (n + 1)


def _near_params(a, b, n, fraction, at_end=False):
    w = fraction * (b - a)
    k = np.arange(1, n + 1) / n
    return b - w * k if at_end else a + w * k


def _diameter(x):
    return float(np.max(np.linalg.norm(x - x[0], axis=1)))


def check_torsion_max_principle(spec, interval, n_probe: int = N_PROBE,
                                tol: Tolerances = Tolerances(),
                                near_fraction: float = NEAR_FRACTION) -> MaxPrincipleResult:
    """Sign of torsion versus position relative to the osculating planes at the ends.

    With torsion >= 0 on the segment, the segment must start above the
    osculating plane at its initial point and end below the one at its final
    point (``<= 0`` mirrors this). The converse is also exercised: if the
    segment leaves the plane at its start upwards and is not contained in
    it, some probe must have certified positive torsion.
    """
    a, b = map(float, interval)
    if not b > a:
        raise PreconditionError("interval must have positive length")
    probes = _probe_params(a, b, n_probe)
    tau = frenet_frames(evaluate_jet(spec, probes), tol.kappa_min).tau
    if not np.all(np.isfinite(tau)):
        raise PreconditionError("curvature below floor inside the interval")
    nonneg = bool(np.all(tau >= -tol.cert_floor))
    nonpos = bool(np.all(tau <= tol.cert_floor))
    if not (nonneg or nonpos):
        raise PreconditionError("torsion changes sign inside the interval")
    sign_class = "zero" if nonneg and nonpos else ("nonneg" if nonneg else "nonpos")

    fa = frenet_at(evaluate_jet(spec, a), tol.kappa_min)
    fb = frenet_at(evaluate_jet(spec, b), tol.kappa_min)
    pa = evaluate_jet(spec, a).x0
    pb = evaluate_jet(spec, b).x0
    xs = evaluate_jet(spec, _near_params(a, b, n_probe, near_fraction)).x0
    xe = evaluate_jet(spec, _near_params(a, b, n_probe, near_fraction, at_end=True)).x0
    side_s = (xs - pa) @ fa.B
    side_e = (xe - pb) @ fb.B
    seg = evaluate_jet(spec, np.linspace(a, b, n_probe + 2)).x0
    full_side = (seg - pa) @ fa.B
    contained = bool(np.max(np.abs(full_side)) <= tol.coincidence_floor * max(_diameter(seg), 1e-300))

    st = tol.side_tol
    if sign_class == "nonneg":
        lemma_ok = side_s.min() >= -st and side_e.max() <= st
    elif sign_class == "nonpos":
        lemma_ok = side_s.max() <= st and side_e.min() >= -st
    else:
        lemma_ok = np.abs(side_s).max() <= st and np.abs(side_e).max() <= st or contained

    # leaving upwards must be certified: side values all within side_tol say nothing
    above_start = side_s.min() >= -st and side_s.max() > st
    if contained:
        corollary = "vacuous"
    elif above_start:
        corollary = PASS if np.any(tau > tol.cert_floor) else FAIL
    else:
        corollary = "not-applicable"
    status = PASS if lemma_ok and corollary != FAIL else FAIL
    return MaxPrincipleResult(status, sign_class, (a, b), float(side_s.min()), float(side_s.max()),
                              float(side_e.min()), float(side_e.max()), contained, corollary)


def check_spherical_max_principle(spec, o, interval, n_probe: int = N_PROBE,
                                  tol: Tolerances = Tolerances(),
                                  near_fraction: float = NEAR_FRACTION) -> MaxPrincipleResult:
    """Position of a positively curved spherical arc relative to its end tangent great circles.

    Requires geodesic curvature ``>= -cert_floor`` at every interior probe.
    The arc must lie above both end tangent great circles near the ends;
    an arc that stays on them (zero geodesic curvature) is reported as
    ``coincident`` rather than passing.
    """
    o = as_center(o)
    a, b = map(float, interval)
    if not b > a:
        raise PreconditionError("interval must have positive length")
    kg = geodesic_curvature_function(spec, o, tol.tangent_tol)(_probe_params(a, b, n_probe))
    if not np.all(np.isfinite(kg)):
        raise PreconditionError("projection undefined inside the interval")
    if np.any(kg < -tol.cert_floor):
        raise PreconditionError("geodesic curvature is negative inside the interval")

    sa = project_jet(evaluate_jet(spec, a), o, tol.tangent_tol)
    sb = project_jet(evaluate_jet(spec, b), o, tol.tangent_tol)
    qs, _ = project_frames(evaluate_jet(spec, _near_params(a, b, n_probe, near_fraction)), o)
    qe, _ = project_frames(evaluate_jet(spec, _near_params(a, b, n_probe, near_fraction, True)), o)
    side_s = qs.pbar @ sa.nbar
    side_e = qe.pbar @ sb.nbar
    seg, _ = project_frames(evaluate_jet(spec, np.linspace(a, b, n_probe + 2)), o)
    floor = tol.coincidence_floor * max(_diameter(seg.pbar), 1e-300)
    coincide = bool(np.abs(side_s).max() <= floor or np.abs(side_e).max() <= floor)
    above = bool(side_s.min() >= -tol.side_tol and side_e.min() >= -tol.side_tol)
    if coincide:
        status = "coincident"
    else:
        status = PASS if above else FAIL
    return MaxPrincipleResult(status, "nonneg", (a, b), float(side_s.min()), float(side_s.max()),
                              float(side_e.min()), float(side_e.max()), coincide)


def _osculating_above(spec, a, b, tol: Tolerances, n_probe=N_PROBE, near_fraction=NEAR_FRACTION):
    """Does the segment leave the osculating planes at both ends on the binormal side?"""
    out = []
    for end, t0 in ((False, a), (True, b)):
        j = evaluate_jet(spec, t0)
        B = frenet_at(j, tol.kappa_min).B
        x = evaluate_jet(spec, _near_params(a, b, n_probe, near_fraction, end)).x0
        out.append(float(((x - j.x0) @ B).min()))
    return min(out) >= -tol.side_tol


# ---------------------------------------------------------------------------
# the interval argument


def _inside(t, a, b):
    """Is ``t`` in the open cyclic interval from ``a`` to ``b`` (b may exceed 2*pi)?"""
    d = (t - a) % TWO_PI
    return 0 < d < (b - a)


def interval_verdicts(spec, o, genuine_ts, torsion_ts, tol: Tolerances = Tolerances(),
                      with_max_principles: bool = True) -> List[IntervalVerdict]:
    ts = sorted(float(t) for t in genuine_ts)
    out = []
    if len(ts) < 2:
        return out
    kg = geodesic_curvature_function(spec, o, tol.tangent_tol)
    for i, a in enumerate(ts):
        b = ts[(i + 1) % len(ts)]
        if b <= a:
            b += TWO_PI
        inside = [t for t in torsion_ts if _inside(t, a, b)]
        mid = 0.5 * (a + b)
        orientation = 1 if kg(np.array([mid % TWO_PI]))[0] >= 0 else -1
        v = IntervalVerdict((a, b if b < TWO_PI else b - TWO_PI), bool(inside), len(inside), orientation)
        if with_max_principles:
            try:
                if orientation == 1:
                    oriented, ia, ib = spec, a, b
                else:
                    oriented, ia, ib = reparametrize(spec, 0.0, -1), -b, -a
                sph = check_spherical_max_principle(oriented, o, (ia, ib), tol=tol)
                v.spherical_above = sph.passed
                v.osculating_above = _osculating_above(oriented, ia, ib, tol)
            except FourVertexError:
                v.spherical_above = False
                v.osculating_above = False
        out.append(v)
    return out


def verify_theorem(spec, o=(0.0, 0.0, 0.0), config: Optional[RunConfig] = None) -> TheoremReport:
    """Run the whole pipeline and classify the outcome.

    Hypothesis failures do not abort: inflections, torsion sign changes and
    interval verdicts are still reported at the requested center so that
    negative examples can be inspected.
    """
    config = config or RunConfig()
    tol = config.tolerances
    o = as_center(o)
    sample_curve(spec, config.n_samples)

    hyp = check_hypotheses(spec, o, config.n_samples, config.n_directions, tol)
    center, attempts = o, 0
    perturbation_failed = False
    if hyp.all_pass:
        try:
            center, attempts = perturb_center(spec, o, config=config)
        except CenterPerturbationFailed as exc:
            attempts = exc.attempts
            perturbation_failed = True
        if attempts > 0:
            hyp = check_hypotheses(spec, center, config.n_samples, config.n_directions, tol)

    scan: InflectionScan = find_inflections(spec, center, config.n_samples, tol.cert_floor,
                                            tol.degeneracy_window, tol.kappa_min)
    tors = torsion_sign_changes(spec, config.n_samples, tol.cert_floor, tol.kappa_min,
                                tol.degeneracy_window)
    genuine = [r for r in scan.records if r.genuine]
    lemma_ok = None
    if hyp.all_pass and genuine:
        lemma_ok = all(r.lemma_residuals is not None and lemma_holds(r.lemma_residuals)
                       for r in genuine)
    intervals = interval_verdicts(spec, center, [r.t_star for r in genuine],
                                  [c.t_star for c in tors.changes], tol)

    if hyp.any_fail:
        verdict = HYPOTHESES_FAIL
    elif hyp.any_degenerate or perturbation_failed or scan.degenerate:
        verdict = INCONCLUSIVE
    elif (len(genuine) >= 4 and len(tors.changes) >= 4
          and intervals and all(v.has_sign_change for v in intervals)):
        verdict = THEOREM_VERIFIED
    else:
        # hypotheses hold but the conclusion was not reproduced numerically
        verdict = INCONCLUSIVE
    return TheoremReport(
        hypothesis_report=hyp,
        center_requested=o,
        center_used=center,
        perturbation_attempts=attempts,
        perturbation_seed=config.perturbation.seed,
        inflections=list(scan.records),
        degenerate_inflection_windows=list(scan.degenerate_windows),
        torsion_changes=list(tors.changes),
        torsion_uncertified=list(tors.uncertified),
        torsion_degenerate_windows=list(tors.degenerate_windows),
        interval_verdicts=intervals,
        lemma_checks_pass=lemma_ok,
        verdict=verdict,
        config=config,
    )


# ---------------------------------------------------------------------------
# serialization


def _jsonable(x):
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: _jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if np.isfinite(v) else None
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def report_to_dict(report: TheoremReport) -> dict:
    hyp = report.hypothesis_report
    genuine = report.genuine_inflections
    return {
        "verdict": report.verdict,
        "summary": {
            "genuine_inflections": len(genuine),
            "torsion_sign_changes": report.n_torsion_changes,
            "intervals_with_sign_change": sum(v.has_sign_change for v in report.interval_verdicts),
            "intervals": len(report.interval_verdicts),
        },
        "center_requested": _jsonable(report.center_requested),
        "center_used": _jsonable(report.center_used),
        "perturbation": {"attempts": report.perturbation_attempts, "seed": report.perturbation_seed},
        "hypotheses": {
            "star_shaped": _jsonable(hyp.star_shaped),
            "locally_convex": _jsonable(hyp.locally_convex),
            "hull_interior": _jsonable(hyp.hull_interior),
            "tu_condition": _jsonable(hyp.tu_condition),
        },
        "inflections": _jsonable(report.inflections),
        "degenerate_inflection_windows": _jsonable(report.degenerate_inflection_windows),
        "torsion_changes": _jsonable(report.torsion_changes),
        "torsion_uncertified": _jsonable(report.torsion_uncertified),
        "torsion_degenerate_windows": _jsonable(report.torsion_degenerate_windows),
        "interval_verdicts": _jsonable(report.interval_verdicts),
        "lemma_checks_pass": report.lemma_checks_pass,
        "config": report.config.to_dict(),
    }


__all__ = [
    "CenterPerturbationFailed",
    "IntervalVerdict",
    "MaxPrincipleResult",
    "TheoremReport",
    "check_spherical_max_principle",
    "check_torsion_max_principle",
    "interval_verdicts",
    "lemma_holds",
    "perturb_center",
    "report_to_dict",
    "trace_table",
    "verify_osculating_lemma",
    "verify_theorem",
    "DEGENERATE",
    "FAIL",
    "PASS",
    "THEOREM_VERIFIED",
    "HYPOTHESES_FAIL",
    "INCONCLUSIVE",
]


def trace_table(spec, o=(0.0, 0.0, 0.0), n_samples: int = 4096, tol: Tolerances = Tolerances()):
    """Columns ``t, kappa, tau, kbar`` on the uniform grid; NaN where undefined."""
    from .curves import parameter_grid

    t = parameter_grid(n_samples)
    jets = evaluate_jet(spec, t)
    fs = frenet_frames(jets, tol.kappa_min)
    try:
        sp, ok = project_frames(jets, as_center(o), tol.tangent_tol)
        kbar = np.where(ok, sp.kbar, np.nan)
    except FourVertexError:
        kbar = np.full(n_samples, np.nan)
    return t, fs.kappa, fs.tau, kbar
