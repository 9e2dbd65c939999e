"""Certified detection of sign changes of periodic scalar functions.

A sign change is *certified* when it is bracketed by two sample points at
which the function exceeds ``cert_floor`` in absolute value and has opposite
signs. Brackets are then shrunk by bisection. Runs of samples at or below the
floor are either short (tolerated, possibly reported as tangential contacts or
uncertified flips) or long enough to count as a degenerate window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np

from .curves import TWO_PI, evaluate_jet, parameter_grid
from .frenet import KAPPA_MIN, frenet_frames

CERT_FLOOR = 1e-9
DEGENERACY_WINDOW = 1e-3
BRACKET_TOL = 1e-10
DEFAULT_SAMPLES = 4096


@dataclass(frozen=True)
class SignChange:
    t_star: float
    left_sign: int
    right_sign: int
    bracket_width: float
    left_value: float
    right_value: float
    left_t: float
    right_t: float


@dataclass
class SignChangeScan:
    """Result of scanning one periodic function.

    ``changes`` are the certified sign changes in ascending ``t_star``.
    ``uncertified`` holds parameters of raw sign flips that could not be
    bracketed by values above the floor; they are never counted.
    ``tangential`` holds centers of near-zero runs flanked by the same sign.
    ``degenerate_windows`` are ``(start, end)`` parameter ranges where the
    function stays within the floor for longer than the degeneracy window, and
    ``gaps`` are ranges where it could not be evaluated at all.
    """

    changes: List[SignChange] = field(default_factory=list)
    uncertified: List[float] = field(default_factory=list)
    tangential: List[float] = field(default_factory=list)
    degenerate_windows: List[Tuple[float, float]] = field(default_factory=list)
    gaps: List[Tuple[float, float]] = field(default_factory=list)
    n_samples: int = 0

    @property
    def count(self) -> int:
        return len(self.changes)

    @property
    def degenerate(self) -> bool:
        return bool(self.degenerate_windows)

    def __len__(self):
        return len(self.changes)

    def __iter__(self):
        return iter(self.changes)

    def __getitem__(self, i):
        return self.changes[i]

    def parameters(self) -> np.ndarray:
        return np.array([c.t_star for c in self.changes])


def _runs(mask):
    """Maximal cyclic runs of True in a boolean array, as (start, length) pairs."""
    n = len(mask)
    if mask.all():
        return [(0, n)]
    if not mask.any():
        return []
    # rotate so that index 0 is False, then runs never wrap
    shift = int(np.argmin(mask))
    m = np.roll(mask, -shift)
    d = np.diff(np.concatenate(([0], m.astype(np.int8), [0])))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1)
    return [((s + shift) % n, e - s) for s, e in zip(starts, ends)]


def _bisect(f, lo, hi, f_lo_sign, tol, period):
    """Shrink all brackets simultaneously; returns (lo, hi, failed-mask)."""
    lo = lo.astype(float).copy()
    hi = hi.astype(float).copy()
    failed = np.zeros(len(lo), dtype=bool)
    done = np.zeros(len(lo), dtype=bool)
    for _ in range(200):
        active = ~done & ~failed & ((hi - lo) >= tol)
        if not active.any():
            break
        mid = 0.5 * (lo[active] + hi[active])
        fm = np.asarray(f(np.mod(mid, period)), dtype=float)
        sm = np.sign(fm)
        idx = np.flatnonzero(active)
        bad = ~np.isfinite(fm)
        failed[idx[bad]] = True
        exact = sm == 0
        lo[idx[exact]] = mid[exact]
        hi[idx[exact]] = mid[exact]
        done[idx[exact]] = True
        same = (sm == f_lo_sign[idx]) & ~bad & ~exact
        lo[idx[same]] = mid[same]
        other = ~same & ~bad & ~exact
        hi[idx[other]] = mid[other]
    return lo, hi, failed


def count_sign_changes(
    f: Callable[[np.ndarray], np.ndarray],
    n_samples: int = DEFAULT_SAMPLES,
    cert_floor: float = CERT_FLOOR,
    degeneracy_window: float = DEGENERACY_WINDOW,
    period: float = TWO_PI,
    bracket_tol: float = BRACKET_TOL,
) -> SignChangeScan:
    """Find and certify every sign change of a vectorized periodic ``f``.

    ``f`` receives an array of parameters and returns an array of values; NaN
    marks points where it is undefined. The seam ``period -> 0`` is handled
    cyclically, so each crossing is counted once.
    """
    if n_samples < 64:
        raise ValueError(f"n_samples must be >= 64, got {n_samples}")
    t = period * np.arange(n_samples) / n_samples
    dt = period / n_samples
    v = np.asarray(f(t), dtype=float)
    finite = np.isfinite(v)
    strong = finite & (np.abs(v) > cert_floor)
    scan = SignChangeScan(n_samples=n_samples)

    for s, length in _runs(~finite):
        scan.gaps.append((float(t[s]), float(t[s] + (length - 1) * dt)))

    weak_runs = _runs(~strong)
    for s, length in weak_runs:
        span = (length - 1) * dt
        if span > degeneracy_window or length == n_samples:
            scan.degenerate_windows.append((float(t[s]), float(t[s] + span)))

    idx = np.flatnonzero(strong)
    if len(idx) < 2:
        scan.uncertified.extend(_raw_flips(t, v, dt, range(n_samples)))
        return scan

    sign = np.sign(v)
    lo_i = idx
    hi_i = np.roll(idx, -1)
    lo_t = t[lo_i]
    hi_t = t[hi_i] + np.where(hi_i <= lo_i, period, 0.0)
    flips = sign[lo_i] != sign[hi_i]
    # a bracket spanning an undefined sample cannot be refined safely
    has_gap = np.zeros(len(idx), dtype=bool)
    for k in range(len(idx)):
        inner = (lo_i[k] + 1 + np.arange(int(round((hi_t[k] - lo_t[k]) / dt)) - 1)) % n_samples
        if len(inner):
            if not finite[inner].all():
                has_gap[k] = True
            if not flips[k]:
                # weak run between same-sign neighbours
                weak = inner[~strong[inner] & finite[inner]]
                if len(weak):
                    scan.tangential.append(float(t[weak[np.argmin(np.abs(v[weak]))]]))
                scan.uncertified.extend(_raw_flips(t, v, dt, inner))

    cand = np.flatnonzero(flips & ~has_gap)
    for k in np.flatnonzero(flips & has_gap):
        scan.uncertified.append(float(np.mod(0.5 * (lo_t[k] + hi_t[k]), period)))
    if len(cand):
        lo, hi, failed = _bisect(f, lo_t[cand], hi_t[cand], sign[lo_i[cand]], bracket_tol, period)
        for j, k in enumerate(cand):
            if failed[j]:
                scan.uncertified.append(float(np.mod(0.5 * (lo[j] + hi[j]), period)))
                continue
            scan.changes.append(
                SignChange(
                    t_star=float(np.mod(0.5 * (lo[j] + hi[j]), period)),
                    left_sign=int(sign[lo_i[k]]),
                    right_sign=int(sign[hi_i[k]]),
                    bracket_width=float(hi[j] - lo[j]),
                    left_value=float(v[lo_i[k]]),
                    right_value=float(v[hi_i[k]]),
                    left_t=float(lo_t[k]),
                    right_t=float(np.mod(hi_t[k], period)),
                )
            )
    scan.changes.sort(key=lambda c: c.t_star)
    scan.uncertified.sort()
    scan.tangential.sort()
    return scan


def _raw_flips(t, v, dt, indices):
    """Parameters of strict sign flips between consecutive samples in ``indices``."""
    out = []
    indices = list(indices)
    for a, b in zip(indices[:-1], indices[1:]):
        if np.isfinite(v[a]) and np.isfinite(v[b]) and v[a] * v[b] < 0:
            out.append(float(t[a] + 0.5 * dt))
    return out


def torsion_sign_changes(
    spec,
    n_samples: int = DEFAULT_SAMPLES,
    cert_floor: float = CERT_FLOOR,
    kappa_min: float = KAPPA_MIN,
    degeneracy_window: float = DEGENERACY_WINDOW,
) -> SignChangeScan:
    """Certified sign changes of the torsion of ``spec``.

    Parameters where the curvature drops below ``kappa_min`` have undefined
    torsion and show up in ``scan.gaps``.
    """

    def tau(t):
        return frenet_frames(evaluate_jet(spec, t), kappa_min).tau

    return count_sign_changes(tau, n_samples, cert_floor, degeneracy_window)


def sampled_values(f, n_samples):
    t = parameter_grid(n_samples)
    return t, np.asarray(f(t), dtype=float)
