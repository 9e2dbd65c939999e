"""Run configuration: sample counts, tolerances and the center-perturbation policy."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import ConfigurationError


@dataclass(frozen=True)
class Tolerances:
    kappa_min: float = 1e-8
    cert_floor: float = 1e-9
    side_tol: float = 1e-9
    o_margin: float = 1e-6
    degeneracy_tol: float = 1e-9
    degeneracy_window: float = 1e-3
    proximity_floor: float = 1e-4
    hull_margin: float = 1e-6
    tu_margin: float = 1e-9
    planarity_tol: float = 1e-9
    tangent_tol: float = 1e-9
    coincidence_floor: float = 1e-7

    def __post_init__(self):
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and v > 0):
                raise ConfigurationError(f"tolerance {f.name} must be > 0, got {v!r}")


@dataclass(frozen=True)
class Perturbation:
    radius: float = 1e-2
    max_attempts: int = 20
    seed: int = 0

    def __post_init__(self):
        if not self.radius > 0:
            raise ConfigurationError("perturbation radius must be > 0")
        if int(self.max_attempts) != self.max_attempts or self.max_attempts < 0:
            raise ConfigurationError("max_attempts must be a non-negative integer")


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a pipeline run, apart from curve and center."""

    n_samples: int = 4096
    n_directions: int = 512
    tolerances: Tolerances = field(default_factory=Tolerances)
    perturbation: Perturbation = field(default_factory=Perturbation)

    def __post_init__(self):
        if int(self.n_samples) != self.n_samples or self.n_samples < 64:
            raise ConfigurationError(f"n_samples must be an integer >= 64, got {self.n_samples!r}")
        if int(self.n_directions) != self.n_directions or self.n_directions < 4:
            raise ConfigurationError("n_directions must be an integer >= 4")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "RunConfig":
        d = dict(d)
        unknown = set(d) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        try:
            tol = Tolerances(**d.pop("tolerances", {}))
            pert = Perturbation(**d.pop("perturbation", {}))
        except TypeError as exc:
            raise ConfigurationError(str(exc)) from None
        return cls(tolerances=tol, perturbation=pert, **d)

    def updated(self, **changes) -> "RunConfig":
        """Copy with top-level fields, or ``tolerances``/``perturbation`` sub-fields, replaced."""
        tol = changes.pop("tolerances", {})
        pert = changes.pop("perturbation", {})
        out = dataclasses.replace(self, **changes)
        if tol:
            out = dataclasses.replace(out, tolerances=dataclasses.replace(out.tolerances, **tol))
        if pert:
            out = dataclasses.replace(out, perturbation=dataclasses.replace(out.perturbation, **pert))
        return out


def load_config(path) -> RunConfig:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(
                f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from None
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{path}: config must be a JSON object")
    return RunConfig.from_dict(doc)
