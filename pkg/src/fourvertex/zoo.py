"""Named example curves with their expected pipeline outcomes.

Every expectation carries a provenance tag: ``published`` for counts stated in
the literature, ``derived`` for values produced by an independent oracle
(named in the tag) and committed, ``trivial`` for immediate consequences of
the construction. Parameters for the pictured-only examples come from the
sweeps in ``demos/`` and are fixed here; nothing is randomized at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple, Union

import numpy as np

from .curves import CurveSpec, RadialCurve, TorusCurve, TrigPoly
from .errors import ConfigurationError

Count = Union[int, Tuple[int, Optional[int]]]


@dataclass(frozen=True)
class Expectation:
    value: Any
    provenance: str


@dataclass(eq=False)
class ZooEntry:
    """A curve, the center to analyze it about and what the pipeline should report.

    ``expected`` maps keys such as ``star_shaped``, ``genuine_inflections``,
    ``torsion_sign_changes`` or ``verdict`` to :class:`Expectation` objects.
    Counts are either exact integers or ``(low, high)`` ranges with ``high``
    possibly ``None``.
    """

    name: str
    description: str
    spec: CurveSpec
    center: np.ndarray
    expected: Dict[str, Expectation]
    params: Dict[str, Any] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)

    def expects(self, key):
        e = self.expected.get(key)
        return None if e is None else e.value

    def to_json_ref(self) -> dict:
        return {"type": "zoo", "name": self.name, "params": dict(self.params)}


def count_matches(expected: Count, actual: int) -> bool:
    if isinstance(expected, tuple):
        lo, hi = expected
        return actual >= lo and (hi is None or actual <= hi)
    return actual == expected


def _zeros(k):
    return np.zeros((k, 1))


def _scalar(a0, cos_terms=None):
    """Scalar trig polynomial ``a0 + sum cos_terms[k] cos(kt)``."""
    cos_terms = cos_terms or {}
    K = max(list(cos_terms) + [1])
    a = _zeros(K)
    for k, v in cos_terms.items():
        a[k - 1, 0] = v
    return TrigPoly([a0], a, _zeros(K))


def tennis_ball_direction(c):
    """``(cos t, sin t, c sin 2t)``."""
    return TrigPoly([0.0, 0.0, 0.0], [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]], [[0.0, 1.0, 0.0], [0.0, 0.0, c]])


# ---------------------------------------------------------------------------
# generators


def zoo_tennis_ball(c: float = 0.3) -> ZooEntry:
    """Spherical curve ``normalize(cos t, sin t, c sin 2t)`` about the origin.

    The projected geodesic curvature is a positive multiple of
    ``z'' + z = -3c sin 2t``, so the inflections sit at multiples of pi/2.
    """
    if not 0 < c < 1:
        raise ConfigurationError(f"tennis-ball amplitude must lie in (0, 1), got {c!r}")
    spec = RadialCurve.spherical(tennis_ball_direction(c))
    oracle = "derived: dense sampling (2^16) of kg and tau"
    return ZooEntry(
        "tennis-ball",
        "spherical seam curve; canonical theorem-verified fixture",
        spec,
        np.zeros(3),
        {
            "star_shaped": Expectation("pass", oracle),
            "locally_convex": Expectation("pass", "trivial: curve on a sphere about the center"),
            "hull_interior": Expectation("pass", "derived: symmetric about the origin"),
            "genuine_inflections": Expectation(4, oracle),
            "inflection_parameters": Expectation([0.0, np.pi / 2, np.pi, 3 * np.pi / 2],
                                                 "derived: zeros of z'' + z = -3c sin 2t"),
            "torsion_sign_changes": Expectation(4, oracle),
            "verdict": Expectation("theorem-verified", "derived: full pipeline"),
        },
        {"c": c},
    )


def zoo_torus_1n(n: int = 7, R: float = 1.0, r: Optional[float] = None) -> ZooEntry:
    """Torus curve of type (1, n); thin enough by default to have torsion of one sign.

    Torsion keeps one sign only in a window of minor radii: below
    ``r = R / (1 + n^2)`` curvature vanishes on the inner equator and sign
    changes come back (at n = 2 the window is roughly 0.21 < r / R < 0.33,
    see ``demos/sweep_torus_thinness.py``). Defaults: 0.25 R for n = 2,
    0.05 R for n = 7, otherwise ``min(0.25, 2 / (1 + n^2)) R``.
    """
    if int(n) != n or n < 2:
        raise ConfigurationError(f"torus winding must be an integer >= 2, got {n!r}")
    n = int(n)
    if r is None:
        r = _thin_radius(n) * R
    spec = TorusCurve(n, R, r)
    thin = bool(np.isclose(r / R, _thin_radius(n)))
    expected = {
        "star_shaped": Expectation("pass", "published: star-shaped about any point on the symmetry axis"),
        "locally_convex": Expectation("fail", "derived: support-plane sweep over all samples"),
        "verdict": Expectation("hypotheses-fail", "derived: full pipeline"),
    }
    if thin:
        expected["torsion_sign_changes"] = Expectation(
            0, "published: nonvanishing torsion on thin tori; radius derived by sweep")
    return ZooEntry(
        f"torus-1-{n}",
        f"(1,{n}) torus curve; star-shaped but not locally convex",
        spec,
        np.zeros(3),
        expected,
        {"n": n, "R": R, "r": r},
    )


_THIN_RADIUS = {2: 0.25, 7: 0.05}


def _thin_radius(n):
    return _THIN_RADIUS.get(n, min(0.25, 2.0 / (1 + n * n)))


def zoo_hemisphere_curls(loop_count: int = 2, a: float = 1.0, b: float = 0.5,
                         scale: float = 0.6) -> ZooEntry:
    """Looped spherical curve inside the upper hemisphere.

    A limacon ``(a/2 + b cos t + a/2 cos 2t, b sin t + a/2 sin 2t)`` in the
    plane ``z = 1``, scaled by ``scale`` and projected onto the unit sphere.
    The lift is gnomonic, so great circles correspond to lines and the
    limacon's two curvature extrema survive as the only two extrema of the
    geodesic curvature.
    """
    if loop_count != 2:
        raise ConfigurationError("only loop_count = 2 is constructed")
    if not (a > 0 and 0 < b < a and scale > 0):
        raise ConfigurationError("need a > b > 0 and scale > 0")
    s = scale
    u = TrigPoly([s * a / 2, 0.0, 1.0],
                 [[s * b, 0.0, 0.0], [s * a / 2, 0.0, 0.0]],
                 [[0.0, s * b, 0.0], [0.0, s * a / 2, 0.0]])
    spec = RadialCurve.spherical(u)
    oracle = "derived: dense sampling (2^16) of tau"
    return ZooEntry(
        "hemisphere-curls",
        "looped curve in an open hemisphere; two torsion sign changes",
        spec,
        np.zeros(3),
        {
            "star_shaped": Expectation("fail", "derived: the inner loop crosses the outer arc"),
            "locally_convex": Expectation("pass", "trivial: curve on a sphere about the center"),
            "hull_interior": Expectation("fail", "derived: (0, 0, -1) separates"),
            "torsion_sign_changes": Expectation(2, "published: only two sign changes; " + oracle),
            "torsion_parameters": Expectation([0.0, np.pi], oracle),
            "verdict": Expectation("hypotheses-fail", "derived: full pipeline"),
        },
        {"loop_count": loop_count, "a": a, "b": b, "scale": scale},
    )


def zoo_starshaped_nonconvex(c: float = 0.6, e: float = 0.25) -> ZooEntry:
    """Radial graph ``(1 + e cos 4t) * normalize(cos t, sin t, c sin 2t)``.

    Four bulges make the curve leave every convex surface (no support plane
    along the tangent line at ``witness_t``) while it stays star-shaped and
    locally convex about the origin. Parameters come from
    ``demos/sweep_starshaped_nonconvex.py``.
    """
    spec = RadialCurve(tennis_ball_direction(c), _scalar(1.0, {4: e}))
    oracle = "derived: full pipeline, sweep in demos/"
    return ZooEntry(
        "starshaped-nonconvex",
        "star-shaped, locally convex, on no convex surface; theorem-verified",
        spec,
        np.zeros(3),
        {
            "star_shaped": Expectation("pass", oracle),
            "locally_convex": Expectation("pass", oracle),
            "hull_interior": Expectation("pass", oracle),
            "genuine_inflections": Expectation((4, None), oracle),
            "torsion_sign_changes": Expectation((4, None), oracle),
            "convexity_witness": Expectation(True, "derived: global side sweep over the tangent pencil"),
            "verdict": Expectation("theorem-verified", oracle),
        },
        {"c": c, "e": e},
        {"witness_t": 2.503, "stability_radius": 0.05},
    )


def zoo_flat_inflection(g: float = 0.3) -> ZooEntry:
    """Spherical curve whose projection about the origin has a fifth-order inflection.

    For ``u = (cos t, sin t, z)`` one has ``det(u, u', u'') = z'' + z``; here
    ``z'' + z = g (2.8 sin 2t - 3.2 sin 3t + sin 4t)``, which vanishes to fifth
    order at ``t = 0``. The sign change there is buried in a window of
    below-floor geodesic curvature, so the origin is a degenerate center and
    the pipeline must move it.
    """
    z = [0.0, -2.8 / 3 * g, 3.2 / 8 * g, -1.0 / 15 * g]
    a = np.zeros((4, 3))
    a[0, 0] = 1.0
    b = np.zeros((4, 3))
    b[0, 1] = 1.0
    b[:, 2] = z
    spec = RadialCurve.spherical(TrigPoly([0.0, 0.0, 0.0], a, b))
    oracle = "derived: full pipeline"
    return ZooEntry(
        "flat-inflection",
        "spherical curve with a high-order inflection; needs center perturbation",
        spec,
        np.zeros(3),
        {
            "star_shaped": Expectation("pass", oracle),
            "locally_convex": Expectation("pass", "trivial: curve on a sphere about the center"),
            "hull_interior": Expectation("pass", oracle),
            "degenerate_at_center": Expectation(True, "derived: kg = O(t^5) at t = 0"),
            "genuine_inflections": Expectation((4, None), oracle),
            "torsion_sign_changes": Expectation((4, None), oracle),
            "verdict": Expectation("theorem-verified", "derived: full pipeline after perturbation"),
        },
        {"g": g},
    )


def zoo_dumbbell(c: float = 0.3, e: float = 0.5) -> ZooEntry:
    """Pinched radial graph ``(1 + e cos 2t) * normalize(cos t, sin t, c sin 2t)``.

    Stand-in for a curve admitting no center at which the principal normal
    points back towards the center everywhere: the waist has principal
    normals pointing outwards for every center near the middle.
    """
    spec = RadialCurve(tennis_ball_direction(c), _scalar(1.0, {2: e}))
    return ZooEntry(
        "dumbbell",
        "pinched radial graph; normal-position condition fails on a grid of centers",
        spec,
        np.zeros(3),
        {
            "tu_condition": Expectation("fail", "derived: 5x5x5 center grid on [-0.3, 0.3]^3"),
            "locally_convex": Expectation("fail", "derived: support-plane sweep"),
            "verdict": Expectation("hypotheses-fail", "derived: full pipeline"),
        },
        {"c": c, "e": e},
        {"center_grid": (-0.3, 0.3, 5)},
    )


# ---------------------------------------------------------------------------
# registry

_REGISTRY: Dict[str, Callable[..., ZooEntry]] = {
    "tennis-ball": zoo_tennis_ball,
    "torus-1-n": zoo_torus_1n,
    "torus-1-7": lambda **kw: zoo_torus_1n(**{"n": 7, **kw}),
    "torus-1-2": lambda **kw: zoo_torus_1n(**{"n": 2, **kw}),
    "hemisphere-curls": zoo_hemisphere_curls,
    "starshaped-nonconvex": zoo_starshaped_nonconvex,
    "flat-inflection": zoo_flat_inflection,
    "dumbbell": zoo_dumbbell,
}

# listing shown by ``zoo list``; torus-1-n is reachable with params only
LISTED = ("tennis-ball", "torus-1-7", "torus-1-2", "hemisphere-curls",
          "starshaped-nonconvex", "flat-inflection", "dumbbell")


def zoo_names():
    return list(LISTED)


def get_entry(name: str, **params) -> ZooEntry:
    try:
        builder = _REGISTRY[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown zoo entry {name!r}; valid names: {', '.join(sorted(_REGISTRY))}"
        ) from None
    try:
        entry = builder(**params)
    except TypeError as exc:
        raise ConfigurationError(f"bad params for zoo entry {name!r}: {exc}") from None
    if name in ("torus-1-7", "torus-1-2"):
        entry.name = name
    return entry


def all_entries():
    return [get_entry(n) for n in LISTED]
