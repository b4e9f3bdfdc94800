"""refinedgeo: exact geometry where figures partition without shared boundaries.

Points are refined to carry a flag of directions recording how a figure
occupies them infinitesimally; half-spaces then split space seamlessly, set
operations on polytopes and angles are exact, and polygon equidecomposition
can be verified as genuine disjoint union, never "up to boundary".
"""

from __future__ import annotations

from .algebra import (
    ConventionalPolytope,
    RefinedPolytope,
    closing,
    contains_point,
    difference,
    disjoint,
    equals,
    intersect,
    is_empty,
    is_subset,
    lift,
    partition_check,
    partition_failure,
    union,
)
from .angles import (
    RefinedAngle,
    angle_contains,
    angle_difference,
    angle_equals,
    angle_intersect,
    angle_is_empty,
    angle_is_subset,
    angle_union,
    full_resolution,
    opposite,
    tangent_angle,
    wedge_ccw,
)
from .cells import Cell, ClosedPiece
from .equidecomp import (
    Decomposition,
    Motion,
    area,
    convex_polygon_lift,
    equidecompose,
    polygon_lift,
    triangulate,
    verify_decomposition,
)
from .errors import GeometryError, ParseError
from .linalg import AffineFunctional, Carrier, Vec
from .resolution import Flag, RefinedPoint, eval_refinement, lex_positive
from .scalars import (
    QuadExt,
    Scalar,
    adjoin_sqrt,
    parse_scalar,
    scalar_str,
    sign,
    to_scalar,
)
from .scenario import (
    Scenario,
    bundled_scenarios,
    parse_scenario,
    print_scenario,
    run_scenario,
)
from .svg import render_svg, svg_document

__version__ = "0.1.0"

__all__ = [
    "AffineFunctional",
    "Carrier",
    "Cell",
    "ClosedPiece",
    "ConventionalPolytope",
    "Decomposition",
    "Flag",
    "GeometryError",
    "Motion",
    "ParseError",
    "QuadExt",
    "RefinedAngle",
    "RefinedPoint",
    "RefinedPolytope",
    "Scalar",
    "Scenario",
    "Vec",
    "adjoin_sqrt",
    "angle_contains",
    "angle_difference",
    "angle_equals",
    "angle_intersect",
    "angle_is_empty",
    "angle_is_subset",
    "angle_union",
    "area",
    "bundled_scenarios",
    "closing",
    "contains_point",
    "convex_polygon_lift",
    "difference",
    "disjoint",
    "equals",
    "equidecompose",
    "eval_refinement",
    "full_resolution",
    "intersect",
    "is_empty",
    "is_subset",
    "lex_positive",
    "lift",
    "opposite",
    "parse_scalar",
    "parse_scenario",
    "partition_check",
    "partition_failure",
    "polygon_lift",
    "print_scenario",
    "render_svg",
    "run_scenario",
    "scalar_str",
    "sign",
    "svg_document",
    "tangent_angle",
    "to_scalar",
    "triangulate",
    "union",
    "verify_decomposition",
    "wedge_ccw",
    "__version__",
]
