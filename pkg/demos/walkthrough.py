"""Step through the verification pipeline on the tennis-ball curve.

    python3 demos/walkthrough.py
"""

import numpy as np

from fourvertex.hypotheses import check_hypotheses
from fourvertex.signcert import torsion_sign_changes
from fourvertex.spherical import find_inflections
from fourvertex.verifier import report_to_dict, verify_osculating_lemma, verify_theorem
from fourvertex.zoo import get_entry

entry = get_entry("tennis-ball")
spec, o = entry.spec, entry.center
print(f"curve: {entry.description}")

hyp = check_hypotheses(spec, o)
for name in ("star_shaped", "locally_convex", "hull_interior", "tu_condition"):
    r = getattr(hyp, name)
    print(f"  {name:15s} {r.status:6s} margin {r.margin:.3e}")

scan = find_inflections(spec, o, with_residuals=False)
print("genuine inflections of the projection:", np.round([r.t_star for r in scan.genuine], 6))
for r in scan.genuine:
    res = verify_osculating_lemma(spec, o, r)
    print(f"  t = {r.t_star:.4f}: osculating planes agree to {res.plane_coincidence_angle:.1e} rad,"
          f" <kappa N, p - o> = {res.eq_a_value:+.4f}")

tors = torsion_sign_changes(spec, 4096)
print("certified torsion sign changes:", np.round([c.t_star for c in tors.changes], 6))

report = verify_theorem(spec, o)
for v in report.interval_verdicts:
    a, b = v.interval
    print(f"  arc ({a:.3f}, {b:.3f}): {v.torsion_changes_inside} change(s), orientation {v.orientation:+d}")
print("verdict:", report.verdict)
print("summary:", report_to_dict(report)["summary"])
