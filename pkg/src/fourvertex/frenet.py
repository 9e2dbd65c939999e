"""Frenet apparatus of a regular space curve in an arbitrary parametrization.

With ``x1, x2, x3`` the first three derivatives,

    T = x1/|x1|,  B = x1 x x2 / |x1 x x2|,  N = B x T,
    kappa = |x1 x x2| / |x1|^3,  tau = <x1 x x2, x3> / |x1 x x2|^2,

which agree with the unit-speed definitions at the same geometric point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .curves import Jet3, check_regular
from .errors import CurvatureDegeneracyError

KAPPA_MIN = 1e-8


@dataclass(frozen=True, eq=False)
class FrenetSample:
    """Frame, curvature and torsion at one parameter (or a batch).

    In a batch, samples whose curvature is below the floor carry
    ``valid = False`` and NaN in every derived field.
    """

    t: Union[float, np.ndarray]
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: Union[float, np.ndarray]
    tau: Union[float, np.ndarray]
    valid: Union[bool, np.ndarray] = True

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i):
        return FrenetSample(
            float(self.t[i]), self.T[i], self.N[i], self.B[i],
            float(self.kappa[i]), float(self.tau[i]), bool(self.valid[i]),
        )


@dataclass(frozen=True, eq=False)
class OsculatingPlane:
    point: np.ndarray
    normal: np.ndarray


def _frenet_arrays(x1, x2, x3):
    c = np.cross(x1, x2)
    c2 = np.sum(c * c, axis=-1)
    cn = np.sqrt(c2)
    speed = np.linalg.norm(x1, axis=-1)
    kappa = cn / speed**3
    with np.errstate(invalid="ignore", divide="ignore"):
        T = x1 / speed[..., None]
        B = c / cn[..., None]
        tau = np.sum(c * x3, axis=-1) / c2
    N = np.cross(B, T)
    return T, N, B, kappa, tau


def frenet_at(jet: Jet3, kappa_min: float = KAPPA_MIN) -> FrenetSample:
    """Frenet sample at a single jet; raises when the curvature is below ``kappa_min``."""
    if jet.is_batch:
        raise TypeError("frenet_at takes a single jet; use frenet_frames for batches")
    check_regular(jet)
    T, N, B, kappa, tau = _frenet_arrays(jet.x1, jet.x2, jet.x3)
    if not kappa > kappa_min:
        raise CurvatureDegeneracyError(jet.t, kappa, kappa_min)
    return FrenetSample(jet.t, T, N, B, float(kappa), float(tau), True)


def frenet_frames(jets: Jet3, kappa_min: float = KAPPA_MIN) -> FrenetSample:
    """Vectorized Frenet samples for a batch; degenerate samples are marked invalid."""
    check_regular(jets)
    x1, x2, x3 = (np.atleast_2d(x) for x in (jets.x1, jets.x2, jets.x3))
    T, N, B, kappa, tau = _frenet_arrays(x1, x2, x3)
    valid = kappa > kappa_min
    if not valid.all():
        bad = ~valid
        N = N.copy()
        B = B.copy()
        tau = tau.copy()
        N[bad] = np.nan
        B[bad] = np.nan
        tau[bad] = np.nan
    return FrenetSample(np.atleast_1d(jets.t), T, N, B, kappa, tau, valid)


def torsion(spec, t, kappa_min: float = KAPPA_MIN):
    """Torsion of ``spec`` at parameter(s) ``t``; NaN where curvature is below the floor."""
    from .curves import evaluate_jet

    fs = frenet_frames(evaluate_jet(spec, np.atleast_1d(t)), kappa_min)
    return fs.tau if np.ndim(t) else float(fs.tau[0])


def osculating_plane(sample: FrenetSample, position) -> OsculatingPlane:
    return OsculatingPlane(np.asarray(position, dtype=float), np.asarray(sample.B, dtype=float))


def signed_side(plane: OsculatingPlane, q):
    """Signed distance of ``q`` from the plane; positive is the side ``B`` points to."""
    return np.sum((np.asarray(q, dtype=float) - plane.point) * plane.normal, axis=-1)
