"""Torsion sign changes of closed space curves via radial projection to the sphere."""

from .config import Perturbation, RunConfig, Tolerances, load_config
from .curves import (
    FourierCurve,
    Jet3,
    RadialCurve,
    TorusCurve,
    TrigPoly,
    circle,
    evaluate_jet,
    reparametrize,
    rigid_motion,
    sample_curve,
)
from .errors import (
    ConfigurationError,
    CurvatureDegeneracyError,
    DegenerateCurveError,
    FourVertexError,
    HypothesisViolation,
    InvalidCenterError,
    PreconditionError,
)
from .frenet import FrenetSample, OsculatingPlane, frenet_at, frenet_frames, osculating_plane, signed_side, torsion
from .hypotheses import (
    HypothesisReport,
    check_hull_interior,
    check_hypotheses,
    check_local_convexity,
    check_local_convexity_all,
    check_star_shaped,
    check_tu_condition,
    convexity_witness,
)
from .signcert import SignChange, SignChangeScan, count_sign_changes, torsion_sign_changes
from .specio import curve_from_dict, curve_to_dict, dumps_curve, load_curve, loads_curve
from .spherical import (
    InflectionRecord,
    find_inflections,
    geodesic_curvature,
    project_frames,
    project_jet,
    tangent_great_circle_side,
)
from .verifier import (
    TheoremReport,
    check_spherical_max_principle,
    check_torsion_max_principle,
    perturb_center,
    report_to_dict,
    verify_osculating_lemma,
    verify_theorem,
)
from .zoo import ZooEntry, get_entry, zoo_names

__version__ = "0.1.0"
