"""gon: exact-arithmetic geometry of numbers.

Lattices, convex bodies, successive minima, lattice-point counting,
polar duality, small integer solutions of linear systems, and a registry
of verifiable inequalities between these quantities.
"""

from .body import (
    Body,
    alpha_ratio,
    box,
    centered_simplex,
    cross_polytope,
    cube,
    dual_centered_simplex,
    ellipsoid,
    generalized_hexagon,
    hpoly,
    intrinsic_volumes_box,
    polar_body,
    standard_simplex,
    symmetrize,
    unit_ball,
    vpoly,
)
from .counting import EhrhartPoly, count_points, count_ratio_bounds, ehrhart
from .exactmath import (
    DEFAULT_WIDTH,
    DimensionGuardError,
    ExactGeometryError,
    Interval,
    LPResult,
    QMat,
    QuadVal,
    RankDeficientError,
    Rat,
    UnboundedError,
    e_interval,
    extreme_points,
    hnf,
    invariant_factors,
    lp_exact,
    pi_interval,
    rat,
    rat_str,
    snf,
    sqrt_interval,
    unit_ball_volume_interval,
    vertex_enum,
    volume_centroid,
)
from .lattice import (
    Lattice,
    kernel_lattice,
    lll_reduce,
    make_lattice,
    minors_gcd,
    polar_lattice,
    standard_lattice,
)
from .minima import (
    MinimaResult,
    difference_body,
    enumerate_points,
    first_minimum,
    jarnik_bracket,
    lattice_width,
    polytope_integer_points,
    quadratic_integer_points,
    successive_minima,
)
from .siegel import (
    CubeSection,
    GeneralizedHexagon,
    ScanRecord,
    ScanReport,
    SiegelSolution,
    delta_lower_bound,
    hexagon_contains,
    hexagon_delta2,
    project_body,
    scan_constants,
    section_body,
    siegel_solve,
    sigma_reference,
    sinc_sigma,
    smaller_section,
    whitworth_delta,
)
from .verify import (
    CheckReport,
    candidate_json,
    counterexample_candidates,
    instance_json,
    list_checks,
    random_body,
    random_instance,
    random_lattice,
    run_checks,
)

__version__ = "0.1.0"

__all__ = [
    "Body",
    "CheckReport",
    "CubeSection",
    "DEFAULT_WIDTH",
    "DimensionGuardError",
    "EhrhartPoly",
    "ExactGeometryError",
    "GeneralizedHexagon",
    "Interval",
    "LPResult",
    "Lattice",
    "MinimaResult",
    "QMat",
    "QuadVal",
    "RankDeficientError",
    "Rat",
    "ScanRecord",
    "ScanReport",
    "SiegelSolution",
    "UnboundedError",
    "alpha_ratio",
    "box",
    "candidate_json",
    "centered_simplex",
    "count_points",
    "count_ratio_bounds",
    "counterexample_candidates",
    "cross_polytope",
    "cube",
    "delta_lower_bound",
    "difference_body",
    "dual_centered_simplex",
    "e_interval",
    "ehrhart",
    "ellipsoid",
    "enumerate_points",
    "extreme_points",
    "first_minimum",
    "generalized_hexagon",
    "hexagon_contains",
    "hexagon_delta2",
    "hnf",
    "hpoly",
    "instance_json",
    "intrinsic_volumes_box",
    "invariant_factors",
    "jarnik_bracket",
    "kernel_lattice",
    "lattice_width",
    "list_checks",
    "lll_reduce",
    "lp_exact",
    "make_lattice",
    "minors_gcd",
    "pi_interval",
    "polar_body",
    "polar_lattice",
    "polytope_integer_points",
    "project_body",
    "quadratic_integer_points",
    "random_body",
    "random_instance",
    "random_lattice",
    "rat",
    "rat_str",
    "run_checks",
    "scan_constants",
    "section_body",
    "siegel_solve",
    "sigma_reference",
    "sinc_sigma",
    "smaller_section",
    "snf",
    "sqrt_interval",
    "standard_lattice",
    "standard_simplex",
    "successive_minima",
    "symmetrize",
    "unit_ball",
    "unit_ball_volume_interval",
    "vertex_enum",
    "volume_centroid",
    "vpoly",
    "whitworth_delta",
    "__version__",
]
