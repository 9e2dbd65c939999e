"""Curve spec JSON documents.

Supported shapes::

    {"type": "fourier", "x": {"a0": f, "a": [f...], "b": [f...]}, "y": {...}, "z": {...}}
    {"type": "torus", "n": int, "R": f, "r": f}
    {"type": "zoo", "name": str, "params": {...}}
    {"type": "radial", "direction": {"x": ..., "y": ..., "z": ...},
     "radius": {"a0": f, "a": [f...], "b": [f...]}, "center": [f, f, f]}

The radial form is the native representation of spherical and radial-graph
curves (``center + rho(t) * u(t) / |u(t)|``); it has no finite fourier equivalent.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

import numpy as np

from .curves import CurveSpec, FourierCurve, RadialCurve, TorusCurve, TrigPoly
from .errors import ConfigurationError

AXES = ("x", "y", "z")


def _coord(doc, where):
    if not isinstance(doc, Mapping):
        raise ConfigurationError(f"{where}: expected an object with a0, a, b")
    missing = {"a0", "a", "b"} - set(doc)
    if missing:
        raise ConfigurationError(f"{where}: missing {sorted(missing)}")
    a, b = list(doc["a"]), list(doc["b"])
    if len(a) != len(b):
        raise ConfigurationError(f"{where}: a and b must have equal length")
    try:
        return float(doc["a0"]), [float(v) for v in a], [float(v) for v in b]
    except (TypeError, ValueError):
        raise ConfigurationError(f"{where}: coefficients must be numbers") from None


def _poly(docs, where):
    """Stack per-coordinate coefficient lists into one TrigPoly, zero-padding to a common K."""
    parts = [_coord(d, f"{where}.{ax}") for d, ax in zip(docs, AXES)]
    K = max(max(len(p[1]) for p in parts), 1)
    a0 = np.array([p[0] for p in parts])
    a = np.zeros((K, len(parts)))
    b = np.zeros((K, len(parts)))
    for j, (_, pa, pb) in enumerate(parts):
        a[: len(pa), j] = pa
        b[: len(pb), j] = pb
    return TrigPoly(a0, a, b)


def _poly_doc(poly: TrigPoly, axes=AXES):
    return {
        ax: {"a0": float(poly.a0[j]), "a": poly.a[:, j].tolist(), "b": poly.b[:, j].tolist()}
        for j, ax in enumerate(axes)
    }


def curve_from_dict(doc: Mapping[str, Any]) -> CurveSpec:
    if not isinstance(doc, Mapping):
        raise ConfigurationError("curve spec must be a JSON object")
    kind = doc.get("type")
    if kind == "fourier":
        missing = [ax for ax in AXES if ax not in doc]
        if missing:
            raise ConfigurationError(f"fourier spec missing coordinates {missing}")
        return FourierCurve.from_poly(_poly([doc[ax] for ax in AXES], "fourier"))
    if kind == "torus":
        try:
            n, R, r = doc["n"], float(doc["R"]), float(doc["r"])
        except KeyError as exc:
            raise ConfigurationError(f"torus spec missing {exc.args[0]!r}") from None
        if isinstance(n, bool) or not isinstance(n, int):
            raise ConfigurationError(f"torus winding n must be an integer, got {n!r}")
        return TorusCurve(n, R, r, int(doc.get("m", 1)))
    if kind == "radial":
        try:
            d, rad = doc["direction"], doc["radius"]
        except KeyError as exc:
            raise ConfigurationError(f"radial spec missing {exc.args[0]!r}") from None
        if not isinstance(d, Mapping) or any(ax not in d for ax in AXES):
            raise ConfigurationError("radial direction needs x, y and z")
        center = doc.get("center", [0.0, 0.0, 0.0])
        return RadialCurve(_poly([d[ax] for ax in AXES], "direction"), _poly([rad], "radius"), center)
    if kind == "zoo":
        from .zoo import get_entry

        params = doc.get("params", {}) or {}
        if not isinstance(params, Mapping):
            raise ConfigurationError("zoo params must be an object")
        return get_entry(str(doc.get("name")), **params).spec
    raise ConfigurationError(f"unknown curve type {kind!r}")


def curve_to_dict(spec: CurveSpec) -> dict:
    if isinstance(spec, FourierCurve):
        return {"type": "fourier", **_poly_doc(spec.poly)}
    if isinstance(spec, TorusCurve):
        return {"type": "torus", "n": spec.n, "R": float(spec.R), "r": float(spec.r)}
    if isinstance(spec, RadialCurve):
        return {
            "type": "radial",
            "direction": _poly_doc(spec.direction),
            "radius": _poly_doc(spec.radius, ("rho",))["rho"],
            "center": spec.center.tolist(),
        }
    raise TypeError(f"not a curve spec: {type(spec).__name__}")


def parse_json(text: str, source: str = "<input>"):
    """``json.loads`` with a diagnostic that names line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def loads_curve(text: str, source: str = "<input>") -> CurveSpec:
    return curve_from_dict(parse_json(text, source))


def load_curve(path) -> CurveSpec:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read curve spec {path}: {exc.strerror}") from None
    return loads_curve(text, str(path))


def dumps_curve(spec: CurveSpec) -> str:
    return json.dumps(curve_to_dict(spec), indent=2, sort_keys=True) + "\n"
