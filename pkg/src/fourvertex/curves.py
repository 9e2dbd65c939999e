"""Closed parametric curves with exact derivatives up to third order.

Three representations are supported, all 2*pi-periodic by construction:

* :class:`FourierCurve` -- a trigonometric polynomial per coordinate,
* :class:`TorusCurve` -- the (1, n) torus curve
  ``((R + r cos nt) cos t, (R + r cos nt) sin t, r sin nt)``,
* :class:`RadialCurve` -- a radial graph ``rho(t) * u(t) / |u(t)|`` over the
  unit sphere, with ``u`` a vector and ``rho`` a scalar trigonometric
  polynomial. Zoo entries are built from this family.

Derivatives are always evaluated in closed form; nothing here uses finite
differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ConfigurationError, DegenerateCurveError

TWO_PI = 2.0 * np.pi

# ||x1|| at or below this (relative to max(1, ||x0||)) counts as a stopped curve
REGULARITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Jet3:
    """Position and first three derivatives at one parameter, or a batch of them.

    For a single jet ``t`` is a float and ``x0..x3`` have shape ``(3,)``;
    for a batch ``t`` has shape ``(n,)`` and ``x0..x3`` have shape ``(n, 3)``.
    Batches support ``len`` and indexing.
    """

    t: Union[float, np.ndarray]
    x0: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray

    @property
    def is_batch(self) -> bool:
        return np.ndim(self.t) == 1

    def __len__(self):
        if not self.is_batch:
            raise TypeError("single Jet3 has no length")
        return len(self.t)

    def __getitem__(self, i):
        if not self.is_batch:
            raise TypeError("single Jet3 is not indexable")
        if isinstance(i, (int, np.integer)):
            return Jet3(float(self.t[i]), self.x0[i], self.x1[i], self.x2[i], self.x3[i])
        return Jet3(self.t[i], self.x0[i], self.x1[i], self.x2[i], self.x3[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def derivatives(self):
        return self.x0, self.x1, self.x2, self.x3


# ---------------------------------------------------------------------------
# trigonometric polynomials


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """``a0 + sum_k a[k] cos(kt) + b[k] sin(kt)``, k = 1..K, with vector values.

    ``a0`` has shape ``(d,)``; ``a`` and ``b`` have shape ``(K, d)``.
    """

    a0: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a0 = np.atleast_1d(np.asarray(self.a0, dtype=float))
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.ndim == 1:
            a = a.reshape(-1, a0.shape[0]) if a.size else np.zeros((0, a0.shape[0]))
        if b.ndim == 1:
            b = b.reshape(-1, a0.shape[0]) if b.size else np.zeros((0, a0.shape[0]))
        if a.shape != b.shape or a.ndim != 2 or a.shape[1] != a0.shape[0]:
            raise ConfigurationError(
                f"coefficient shapes disagree: a0 {a0.shape}, a {a.shape}, b {b.shape}"
            )
        if a.shape[0] < 1:
            raise ConfigurationError("trigonometric polynomial needs K >= 1")
        if not (np.all(np.isfinite(a0)) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ConfigurationError("non-finite coefficient")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def order(self) -> int:
        return self.a.shape[0]

    @property
    def dim(self) -> int:
        return self.a0.shape[0]

    def jet(self, t):
        """Values and derivatives 0..3 at ``t`` (array), each of shape ``(n, d)``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        k = np.arange(1, self.order + 1, dtype=float)
        kt = np.outer(t, k)
        c, s = np.cos(kt), np.sin(kt)
        x0 = self.a0 + c @ self.a + s @ self.b
        x1 = (-s * k) @ self.a + (c * k) @ self.b
        k2 = k * k
        x2 = -(c * k2) @ self.a - (s * k2) @ self.b
        k3 = k2 * k
        x3 = (s * k3) @ self.a - (c * k3) @ self.b
        return x0, x1, x2, x3

    def reparametrized(self, phase, orientation):
        """Exact coefficients of ``t -> f(orientation * t + phase)``."""
        k = np.arange(1, self.order + 1, dtype=float)[:, None]
        cp, sp = np.cos(k * phase), np.sin(k * phase)
        a = self.a * cp + self.b * sp
        b = orientation * (self.b * cp - self.a * sp)
        return TrigPoly(self.a0.copy(), a, b)


def _check_orientation(orientation):
    if orientation not in (1, -1):
        raise ConfigurationError(f"orientation must be +1 or -1, got {orientation!r}")


# ---------------------------------------------------------------------------
# jet algebra


def _binom_product(f, g):
    """Leibniz rule for jets of a product, f and g are 4-tuples of derivatives."""
    return (
        f[0] * g[0],
        f[1] * g[0] + f[0] * g[1],
        f[2] * g[0] + 2 * f[1] * g[1] + f[0] * g[2],
        f[3] * g[0] + 3 * f[2] * g[1] + 3 * f[1] * g[2] + f[0] * g[3],
    )


def _dot(u, v):
    return np.sum(u * v, axis=-1)


def normalized_jet(x0, x1, x2, x3):
    """Jet of ``x / |x|`` from the jet of ``x`` (quotient rule, to third order).

    Works for single vectors ``(3,)`` and batches ``(n, 3)``.
    """
    s0 = _dot(x0, x0)
    s1 = 2 * _dot(x0, x1)
    s2 = 2 * (_dot(x1, x1) + _dot(x0, x2))
    s3 = 2 * (3 * _dot(x1, x2) + _dot(x0, x3))
    # w = s^(-1/2) and its derivatives
    r = 1.0 / np.sqrt(s0)
    r3 = r / s0
    r5 = r3 / s0
    r7 = r5 / s0
    w0 = r
    w1 = -0.5 * r3 * s1
    w2 = 0.75 * r5 * s1**2 - 0.5 * r3 * s2
    w3 = -1.875 * r7 * s1**3 + 2.25 * r5 * s1 * s2 - 0.5 * r3 * s3
    w = tuple(np.asarray(wi)[..., None] for wi in (w0, w1, w2, w3))
    return _binom_product(w, (x0, x1, x2, x3))


# ---------------------------------------------------------------------------
# curve families


@dataclass(frozen=True, eq=False)
class FourierCurve:
    """Closed curve whose coordinates are trigonometric polynomials of degree K."""

    a0: np.ndarray
    a: np.ndarray
    b: np.ndarray
    poly: TrigPoly = field(init=False, repr=False, compare=False)

    kind = "fourier"

    def __post_init__(self):
        poly = TrigPoly(self.a0, self.a, self.b)
        if poly.dim != 3:
            raise ConfigurationError(f"fourier curve must be 3-dimensional, got {poly.dim}")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "a0", poly.a0)
        object.__setattr__(self, "a", poly.a)
        object.__setattr__(self, "b", poly.b)

    @classmethod
    def from_poly(cls, poly: TrigPoly) -> "FourierCurve":
        return cls(poly.a0, poly.a, poly.b)

    def _jet(self, t):
        return self.poly.jet(t)

    def reparametrized(self, phase, orientation):
        return FourierCurve.from_poly(self.poly.reparametrized(phase, orientation))

    def transformed(self, rotation, translation=(0.0, 0.0, 0.0), scale=1.0):
        """Image under ``x -> scale * rotation @ x + translation``."""
        R = np.asarray(rotation, dtype=float) * scale
        return FourierCurve(
            R @ self.a0 + np.asarray(translation, dtype=float),
            self.a @ R.T,
            self.b @ R.T,
        )


@dataclass(frozen=True, eq=False)
class TorusCurve:
    """Torus curve of type (1, n) on the torus with radii R > r > 0."""

    n: int
    R: float
    r: float
    m: int = 1

    kind = "torus"

    def __post_init__(self):
        if self.m != 1:
            raise ConfigurationError("only torus curves of type (1, n) are supported")
        if int(self.n) != self.n or self.n < 1:
            raise ConfigurationError(f"winding n must be an integer >= 1, got {self.n!r}")
        if not (self.R > 0 and self.r > 0):
            raise ConfigurationError("torus radii must be positive")
        if not self.r < self.R:
            raise ConfigurationError(f"need r < R, got r={self.r!r}, R={self.R!r}")
        object.__setattr__(self, "n", int(self.n))

    def _jet(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        n, R, r = self.n, self.R, self.r
        cn, sn = np.cos(n * t), np.sin(n * t)
        c, s = np.cos(t), np.sin(t)
        f = (R + r * cn, -r * n * sn, -r * n**2 * cn, r * n**3 * sn)
        cos_j = (c, -s, -c, s)
        sin_j = (s, c, -s, -c)
        x = _binom_product(f, cos_j)
        y = _binom_product(f, sin_j)
        z = (r * sn, r * n * cn, -r * n**2 * sn, -r * n**3 * cn)
        return tuple(np.stack([x[i], y[i], z[i]], axis=-1) for i in range(4))

    def to_fourier(self) -> FourierCurve:
        """The same curve written as an exact trigonometric polynomial."""
        n, R, r = self.n, self.R, self.r
        K = n + 1
        a0 = np.zeros(3)
        a = np.zeros((K, 3))
        b = np.zeros((K, 3))
        a[0, 0] += R
        b[0, 1] += R
        # cos(nt) cos t = (cos (n+1)t + cos (n-1)t) / 2
        # cos(nt) sin t = (sin (n+1)t - sin (n-1)t) / 2
        a[n, 0] += r / 2
        b[n, 1] += r / 2
        if n - 1 == 0:
            a0[0] += r / 2
        else:
            a[n - 2, 0] += r / 2
            b[n - 2, 1] -= r / 2
        b[n - 1, 2] += r
        return FourierCurve(a0, a, b)

    def reparametrized(self, phase, orientation):
        return self.to_fourier().reparametrized(phase, orientation)


@dataclass(frozen=True, eq=False)
class RadialCurve:
    """Radial graph ``center + rho(t) * u(t) / |u(t)|``.

    ``direction`` is a 3-vector trigonometric polynomial that must never vanish;
    ``radius`` is a positive scalar trigonometric polynomial. With a constant
    radius the curve lies on a sphere about ``center`` (default the origin).
    """

    direction: TrigPoly
    radius: TrigPoly
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))

    kind = "radial"

    def __post_init__(self):
        if self.direction.dim != 3:
            raise ConfigurationError("radial direction must be 3-dimensional")
        if self.radius.dim != 1:
            raise ConfigurationError("radial radius must be scalar")
        c = np.asarray(self.center, dtype=float).reshape(-1)
        if c.shape != (3,) or not np.all(np.isfinite(c)):
            raise ConfigurationError("radial center must be a finite 3-vector")
        object.__setattr__(self, "center", c)

    @classmethod
    def spherical(cls, direction: TrigPoly, radius=1.0, center=(0.0, 0.0, 0.0)) -> "RadialCurve":
        return cls(direction, TrigPoly([radius], np.zeros((1, 1)), np.zeros((1, 1))), center)

    def _jet(self, t):
        u = self.direction.jet(t)
        ubar = normalized_jet(*u)
        rho = self.radius.jet(t)
        x = _binom_product(rho, ubar)
        return (x[0] + self.center,) + tuple(x[1:])

    def reparametrized(self, phase, orientation):
        return RadialCurve(
            self.direction.reparametrized(phase, orientation),
            self.radius.reparametrized(phase, orientation),
            self.center.copy(),
        )


CurveSpec = Union[FourierCurve, TorusCurve, RadialCurve]


# ---------------------------------------------------------------------------
# operations


def evaluate_jet(spec: CurveSpec, t) -> Jet3:
    """Exact jet of the curve at ``t``.

    A scalar ``t`` gives a single :class:`Jet3`, an array gives a batch.
    Regularity is not enforced here; see :func:`check_regular`.
    """
    scalar = np.ndim(t) == 0
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if not np.all(np.isfinite(tt)):
        raise ConfigurationError("parameter must be finite")
    x = spec._jet(tt)
    if scalar:
        return Jet3(float(tt[0]), *(xi[0] for xi in x))
    return Jet3(tt, *x)


def is_regular(jet: Jet3):
    """Boolean (or boolean array) telling where the first derivative is nonzero."""
    speed = np.linalg.norm(jet.x1, axis=-1)
    scale = np.maximum(1.0, np.linalg.norm(jet.x0, axis=-1))
    return speed > REGULARITY_TOL * scale


def check_regular(jet: Jet3) -> Jet3:
    ok = np.atleast_1d(is_regular(jet))
    if not ok.all():
        bad = np.atleast_1d(jet.t)[np.argmin(ok)]
        raise DegenerateCurveError(bad)
    return jet


def parameter_grid(n_samples: int) -> np.ndarray:
    return TWO_PI * np.arange(n_samples) / n_samples


def sample_curve(spec: CurveSpec, n_samples: int) -> Jet3:
    """Jets at ``t_i = 2*pi*i/n``, ascending; raises on any non-regular sample."""
    if int(n_samples) != n_samples or n_samples < 1:
        raise ConfigurationError(f"n_samples must be a positive integer, got {n_samples!r}")
    return check_regular(evaluate_jet(spec, parameter_grid(int(n_samples))))


def reparametrize(spec: CurveSpec, phase: float = 0.0, orientation: int = 1) -> CurveSpec:
    """Spec tracing ``t -> gamma(orientation * t + phase)``.

    Torus curves come back as the equivalent :class:`FourierCurve`.
    """
    _check_orientation(orientation)
    if phase == 0.0 and orientation == 1:
        return spec
    return spec.reparametrized(float(phase), orientation)


def rigid_motion(spec: CurveSpec, rotation, translation=(0.0, 0.0, 0.0), scale=1.0):
    """Image of a curve under a similarity ``x -> scale * rotation @ x + translation``.

    Fourier and torus curves become a :class:`FourierCurve`; radial curves stay
    radial, with their center moved along.
    """
    R = np.asarray(rotation, dtype=float)
    if isinstance(spec, TorusCurve):
        spec = spec.to_fourier()
    if isinstance(spec, FourierCurve):
        return spec.transformed(R, translation, scale)
    d = spec.direction
    rad = spec.radius
    return RadialCurve(
        TrigPoly(R @ d.a0, d.a @ R.T, d.b @ R.T),
        TrigPoly(rad.a0 * scale, rad.a * scale, rad.b * scale),
        scale * R @ spec.center + np.asarray(translation, dtype=float),
    )


def curve_scale(spec: CurveSpec, n_samples: int = 256) -> float:
    """Diameter-like length scale: max distance of sampled points from their mean."""
    x = evaluate_jet(spec, parameter_grid(n_samples)).x0
    return float(np.max(np.linalg.norm(x - x.mean(axis=0), axis=1)))


def as_center(o) -> np.ndarray:
    c = np.asarray(o, dtype=float).reshape(-1)
    if c.shape != (3,) or not np.all(np.isfinite(c)):
        raise ConfigurationError(f"center must be a finite 3-vector, got {o!r}")
    return c


def circle(radius=1.0, center=(0.0, 0.0, 0.0)) -> FourierCurve:
    """Circle in the plane parallel to xy, counterclockwise seen from +z."""
    return FourierCurve(center, [[radius, 0.0, 0.0]], [[0.0, radius, 0.0]])


def random_fourier_curve(K: int, rng: np.random.Generator, decay: float = 1.0) -> FourierCurve:
    """Random fourier curve of degree K with coefficients decaying like k^-(1+decay)."""
    k = np.arange(1, K + 1, dtype=float)[:, None]
    a = rng.normal(size=(K, 3)) / k ** (1 + decay)
    b = rng.normal(size=(K, 3)) / k ** (1 + decay)
    return FourierCurve(rng.normal(size=3) * 0.1, a, b)
