"""Radial projection onto the unit sphere about a center ``o``.

Everything is computed in ``o``-centered coordinates: the projected curve is
``g = (gamma - o) / |gamma - o|`` and its derivatives come from the exact
quotient rule. The spherical frame is

    Tbar = g'/|g'|,  Bbar = g' x g'' / |g' x g''|,  Nbar = Bbar x Tbar,

the conormal is ``nbar = g x Tbar`` and the normalized geodesic curvature is
``kbar = <Nbar, nbar>``. Its sign agrees with the geodesic curvature proper,
``kg = det(g, g', g'') / |g'|^3``, which stays well defined where ``Nbar``
does not (``g' x g'' = 0``); sign certification therefore runs on ``kg``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

from .curves import Jet3, as_center, evaluate_jet, normalized_jet
from .errors import FourVertexError, HypothesisViolation, InvalidCenterError
from .frenet import KAPPA_MIN, frenet_at
from .signcert import (
    CERT_FLOOR,
    DEFAULT_SAMPLES,
    DEGENERACY_WINDOW,
    SignChangeScan,
    count_sign_changes,
)

# sin(angle between gamma' and gamma - o) below this means the tangent line hits o
TANGENT_TOL = 1e-9
# |g' x g''| / |g'|^3 below this leaves Nbar undefined
SECOND_KIND_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SphericalSample:
    """Projected point, spherical frame, conormal and curvatures (single or batch).

    ``jet`` holds the projected curve and its derivatives to third order.
    ``second_kind`` flags samples where ``g' x g''`` vanishes and ``Nbar``,
    ``Bbar`` and ``kbar`` are NaN.
    """

    t: Union[float, np.ndarray]
    pbar: np.ndarray
    Tbar: np.ndarray
    Nbar: np.ndarray
    Bbar: np.ndarray
    nbar: np.ndarray
    kbar: Union[float, np.ndarray]
    kg: Union[float, np.ndarray]
    jet: Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    second_kind: Union[bool, np.ndarray] = False

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i):
        return SphericalSample(
            float(self.t[i]), self.pbar[i], self.Tbar[i], self.Nbar[i], self.Bbar[i],
            self.nbar[i], float(self.kbar[i]), float(self.kg[i]),
            tuple(x[i] for x in self.jet), bool(self.second_kind[i]),
        )


@dataclass(frozen=True)
class LemmaResiduals:
    """How closely the osculating-plane identities hold at an inflection.

    ``dist_o_to_osc_plane_bar``: distance from ``o`` to the osculating plane of
    the projected curve. ``dist_p_to_osc_plane_bar``: distance from the space
    curve point to that plane. ``plane_coincidence_angle``: angle between the
    two osculating planes as unoriented planes. ``binormal_angle``: angle
    between ``B`` and ``Bbar`` as oriented vectors. ``eq_a_value``:
    ``<kappa N, p - o>``, negative under local convexity. ``nbar_minus_bbar``
    and ``nbar_plus_pbar``: ``|nbar - Bbar|`` and ``|Nbar + pbar|``.
    """

    dist_o_to_osc_plane_bar: float
    dist_p_to_osc_plane_bar: float
    plane_coincidence_angle: float
    binormal_angle: float
    eq_a_value: float
    nbar_minus_bbar: float
    nbar_plus_pbar: float

    def max_residual(self) -> float:
        return max(
            self.dist_o_to_osc_plane_bar,
            self.dist_p_to_osc_plane_bar,
            self.plane_coincidence_angle,
            self.binormal_angle,
        )


@dataclass(frozen=True)
class InflectionRecord:
    t_star: float
    genuine: bool
    kbar_left: int
    kbar_right: int
    lemma_residuals: Optional[LemmaResiduals] = None


@dataclass
class InflectionScan:
    """Inflections of the projected curve, ascending in ``t_star``.

    Iterating yields :class:`InflectionRecord` objects. ``scan`` is the raw
    sign-change scan of the geodesic curvature.
    """

    records: List[InflectionRecord]
    scan: SignChangeScan
    center: np.ndarray = field(default=None)

    @property
    def genuine(self) -> List[InflectionRecord]:
        return [r for r in self.records if r.genuine]

    @property
    def degenerate(self) -> bool:
        return self.scan.degenerate

    @property
    def degenerate_windows(self):
        return self.scan.degenerate_windows

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]


def _cross(u, v):
    return np.cross(u, v)


def _dot(u, v):
    return np.sum(u * v, axis=-1)


def _projected(jet: Jet3, o):
    d0 = jet.x0 - o
    dist = np.linalg.norm(d0, axis=-1)
    if np.any(dist == 0.0):
        raise InvalidCenterError("center lies on the curve")
    g = normalized_jet(d0, jet.x1, jet.x2, jet.x3)
    speed = np.linalg.norm(g[1], axis=-1)
    # |g'| = |x1 perp d0| / |d0|, so speed * dist / |x1| is the sine of the angle
    sine = speed * dist / np.linalg.norm(jet.x1, axis=-1)
    return g, speed, sine


def _frame(g, speed):
    g0, g1, g2, _ = g
    T = g1 / speed[..., None]
    c = _cross(g1, g2)
    cn = np.linalg.norm(c, axis=-1)
    second = cn <= SECOND_KIND_TOL * speed**3
    with np.errstate(invalid="ignore", divide="ignore"):
        B = c / cn[..., None]
    B = np.where(second[..., None], np.nan, B)
    N = _cross(B, T)
    n = _cross(g0, T)
    kbar = _dot(N, n)
    kg = _dot(g0, c) / speed**3
    return T, N, B, n, kbar, kg, second


def project_jet(jet: Jet3, o=(0.0, 0.0, 0.0), tangent_tol: float = TANGENT_TOL) -> SphericalSample:
    """Project a single jet radially onto the unit sphere about ``o``.

    Raises :class:`HypothesisViolation` when the tangent line passes through ``o``.
    """
    if jet.is_batch:
        raise TypeError("project_jet takes a single jet; use project_frames for batches")
    o = as_center(o)
    g, speed, sine = _projected(jet, o)
    if not sine > tangent_tol:
        raise HypothesisViolation(f"tangent line at t={jet.t!r} passes through the center")
    T, N, B, n, kbar, kg, second = _frame(g, speed)
    return SphericalSample(jet.t, g[0], T, N, B, n, float(kbar), float(kg), g, bool(second))


def project_frames(jets: Jet3, o=(0.0, 0.0, 0.0), tangent_tol: float = TANGENT_TOL):
    """Batch projection; returns ``(sample, ok)`` with ``ok`` False where the tangent hits ``o``."""
    o = as_center(o)
    g, speed, sine = _projected(jets, o)
    ok = sine > tangent_tol
    with np.errstate(invalid="ignore", divide="ignore"):
        T, N, B, n, kbar, kg, second = _frame(g, speed)
    kg = np.where(ok, kg, np.nan)
    kbar = np.where(ok, kbar, np.nan)
    return SphericalSample(jets.t, g[0], T, N, B, n, kbar, kg, g, second), ok


def geodesic_curvature(sample: SphericalSample):
    """Geodesic curvature of the projected curve, signed by the conormal ``pbar x Tbar``.

    Same sign as ``sample.kbar``; unlike it, it carries the magnitude (a small
    circle of angular radius ``a`` has ``|kg| = cot a``).
    """
    return sample.kg


def geodesic_curvature_function(spec, o=(0.0, 0.0, 0.0), tangent_tol: float = TANGENT_TOL):
    """Vectorized ``t -> kg(t)``; NaN where the projection is undefined."""
    o = as_center(o)

    def kg(t):
        sample, _ = project_frames(evaluate_jet(spec, np.atleast_1d(t)), o, tangent_tol)
        return sample.kg

    return kg


def tangent_great_circle_side(sample_at_pbar: SphericalSample, qbar):
    """``<qbar, nbar>``: positive above the tangent great circle at ``pbar``."""
    return _dot(np.asarray(qbar, dtype=float), sample_at_pbar.nbar)


def _angle(u, v):
    return float(np.arctan2(np.linalg.norm(np.cross(u, v)), np.dot(u, v)))


def osculating_lemma_residuals(spec, o, t: float, kappa_min: float = KAPPA_MIN) -> LemmaResiduals:
    """Residuals of the osculating-plane identities at parameter ``t``.

    Only meaningful at an inflection of the projected curve.
    """
    o = as_center(o)
    jet = evaluate_jet(spec, float(t))
    fs = frenet_at(jet, kappa_min)
    sp = project_jet(jet, o)
    p = jet.x0
    pbar_pos = o + sp.pbar
    Bbar = sp.Bbar
    d_o = abs(float(np.dot(o - pbar_pos, Bbar)))
    d_p = abs(float(np.dot(p - pbar_pos, Bbar)))
    plane_angle = _angle(fs.B, Bbar)
    plane_angle = min(plane_angle, np.pi - plane_angle)
    return LemmaResiduals(
        dist_o_to_osc_plane_bar=d_o,
        dist_p_to_osc_plane_bar=d_p,
        plane_coincidence_angle=float(plane_angle),
        binormal_angle=_angle(fs.B, Bbar),
        eq_a_value=float(fs.kappa * np.dot(fs.N, p - o)),
        nbar_minus_bbar=float(np.linalg.norm(sp.nbar - Bbar)),
        nbar_plus_pbar=float(np.linalg.norm(sp.Nbar + sp.pbar)),
    )


def find_inflections(
    spec,
    o=(0.0, 0.0, 0.0),
    n_samples: int = DEFAULT_SAMPLES,
    cert_floor: float = CERT_FLOOR,
    degeneracy_window: float = DEGENERACY_WINDOW,
    kappa_min: float = KAPPA_MIN,
    with_residuals: bool = True,
) -> InflectionScan:
    """Locate the inflections of the projection of ``spec`` about ``o``.

    Certified sign changes of the geodesic curvature give genuine inflections;
    near-zero contacts without a sign change give non-genuine ones. When
    ``with_residuals`` is set, genuine records carry the osculating-plane
    residuals at ``t_star`` (computed only where the space curve's curvature
    exceeds ``kappa_min``).
    """
    o = as_center(o)
    scan = count_sign_changes(
        geodesic_curvature_function(spec, o), n_samples, cert_floor, degeneracy_window
    )
    records = []
    for ch in scan.changes:
        res = None
        if with_residuals:
            try:
                res = osculating_lemma_residuals(spec, o, ch.t_star, kappa_min)
            except FourVertexError:
                res = None
        records.append(InflectionRecord(ch.t_star, True, ch.left_sign, ch.right_sign, res))
    kg = geodesic_curvature_function(spec, o)
    for t in scan.tangential:
        s = int(np.sign(kg(np.array([t]))[0]))
        records.append(InflectionRecord(float(t), False, s, s, None))
    records.sort(key=lambda r: r.t_star)
    return InflectionScan(records, scan, o)
