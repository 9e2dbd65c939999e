"""Torsion of the (1, n) torus curves as the tube radius shrinks.

In a window of tube radii torsion keeps one sign although the curve is
star-shaped about the axis, so star-shapedness alone does not force sign
changes. The window closes at ``r = R / (1 + n^2)``, where curvature
vanishes on the inner equator; thinner tubes have sign changes again.

    python3 demos/sweep_torus_thinness.py
"""

import numpy as np

from fourvertex.curves import TorusCurve, evaluate_jet, parameter_grid
from fourvertex.frenet import frenet_frames
from fourvertex.signcert import torsion_sign_changes

for n in (2, 3, 7):
    print(f"n = {n}")
    for r in (0.5, 0.4, 0.3, 0.25, 0.2, 0.1, 0.05, 0.02):
        spec = TorusCurve(n, 1.0, r)
        tau = frenet_frames(evaluate_jet(spec, parameter_grid(4096))).tau
        if not np.all(np.isfinite(tau)):
            print(f"  r = {r:4.2f}: curvature vanishes, torsion undefined")
            continue
        k = len(torsion_sign_changes(spec, 4096).changes)
        print(f"  r = {r:4.2f}: {k:2d} sign changes, tau in [{tau.min():+9.3f}, {tau.max():+9.3f}]")
