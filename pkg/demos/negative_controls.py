"""Curves that break one hypothesis each, and what the pipeline reports for them.

    python3 demos/negative_controls.py
"""

import itertools

import numpy as np

from fourvertex.hypotheses import check_tu_condition
from fourvertex.verifier import verify_theorem
from fourvertex.zoo import get_entry

for name in ("torus-1-7", "hemisphere-curls", "dumbbell"):
    entry = get_entry(name)
    r = verify_theorem(entry.spec, entry.center)
    h = r.hypothesis_report
    failing = [k for k in ("star_shaped", "locally_convex", "hull_interior") if getattr(h, k).status != "pass"]
    print(f"{name}: {entry.description}")
    print(f"  failing hypotheses: {', '.join(failing) or 'none'}; "
          f"torsion sign changes: {r.n_torsion_changes}; verdict: {r.verdict}")

# the dumbbell waist defeats the normal-position condition for every nearby center
entry = get_entry("dumbbell")
lo, hi, n = entry.extras["center_grid"]
axis = np.linspace(lo, hi, n)
worst = max(check_tu_condition(entry.spec, np.array(c), 1024).margin for c in itertools.product(axis, axis, axis))
print(f"dumbbell: best normal-position margin over a {n}^3 center grid is {worst:+.4f} (needs > 0)")
