"""Grow the radial bumps of the star-shaped non-convex fixture and watch what survives.

The curve is ``(1 + e cos 4t) * normalize(cos t, sin t, c sin 2t)``. At
``e = 0`` it is the tennis ball; for moderate ``e`` it leaves every convex
surface while star-shapedness and local convexity still hold.

    python3 demos/sweep_starshaped_nonconvex.py
"""

import numpy as np

from fourvertex.config import RunConfig
from fourvertex.hypotheses import convexity_witness
from fourvertex.verifier import verify_theorem
from fourvertex.zoo import get_entry

config = RunConfig(n_samples=2048)
print(f"{'e':>5} {'star':>5} {'convex':>7} {'hull':>5} {'witness':>9} {'changes':>8}  verdict")
for e in (0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4):
    entry = get_entry("starshaped-nonconvex", e=e)
    r = verify_theorem(entry.spec, entry.center, config)
    h = r.hypothesis_report
    w = max(convexity_witness(entry.spec, t, 2048) for t in np.linspace(0, 2 * np.pi, 48, endpoint=False))
    print(f"{e:5.2f} {h.star_shaped.status:>5} {h.locally_convex.status:>7} {h.hull_interior.status:>5}"
          f" {f'{w:.4f}' if w > 0 else 'none':>9} {r.n_torsion_changes:8d}  {r.verdict}")
