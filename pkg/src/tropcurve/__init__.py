"""Exact-arithmetic toolkit for tropical plane curves."""

from .geom import (
    GeometryError,
    IntVector,
    Point,
    PseudoAngle,
    Rational,
    cross,
    dot,
    moment,
    primitive_decompose,
    primitive_direction,
    pseudo_angle,
    pt,
    vec,
)
from .curve import (
    BalanceReport,
    Edge,
    LoopError,
    Ray,
    StructureError,
    TropicalCurve,
    canonical_form,
    curve,
    global_balance_sum,
    local_star,
    locate,
    moment_sum,
    normalize,
    translate,
    union,
    validate,
)
from .newton import (
    DualityError,
    FaceStructure,
    LatticePolygon,
    NewtonComplex,
    convex_hull,
    dual_cell,
    face_structure,
    minkowski_sum,
    newton_complex,
    newton_polygon,
    newton_polygon_from_rays,
    vertex_multiplicity,
)
from .intersect import (
    Divisor,
    NonGenericDirection,
    bezout_degree,
    generic_direction,
    is_transversal,
    perturbation_oracle,
    stable_intersection,
    transversal_multiplicity,
)
from .bunch import (
    BouquetStructure,
    BunchGraph,
    DisconnectedCurveError,
    NotABouquet,
    bouquet_structure,
    bunch,
    classify_edges,
)
from .jacobian import (
    AbelCoordinate,
    CycleParametrization,
    CycleSystem,
    UnsupportedCurveError,
    abel_coordinate,
    cycle_system,
    linearly_equivalent,
    linearly_equivalent_on,
    parametrize_cycles,
    project_point,
    sigma,
)
from .params import (
    ClosureError,
    CurveSkeleton,
    ParamPoint,
    curve_from_params,
    is_degeneration,
    params_from_curve,
    perturb,
    same_component,
)
from .polyfront import (
    DualSubdivision,
    EmptyCurveError,
    PolyParseError,
    TropicalPolynomial,
    corner_locus,
    dual_subdivision,
    evaluate,
    parse,
    polynomial,
)

__version__ = "0.1.0"
