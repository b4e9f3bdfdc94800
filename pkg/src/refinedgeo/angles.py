"""Refined rectilinear angles: refinements of linear functionals over flags.

An angle of rank k is a set of direction flags (v1, ..., vk).  A linear
functional phi refines to the sign sequence of (phi(v1), phi(v1+v2), ...);
an angle cell keeps the flags on which every functional's sequence is
lexicographically positive.

The machinery is the polytope algebra instantiated homogeneously: a cell
with constant-free constraints, evaluated at the origin, produces the
refinement sequence (0, phi(v1), phi(v1+v2), ...), and a leading zero never
affects lexicographic positivity.  A refined angle therefore wraps a
refined polytope whose cells have linear carriers (through the origin) and
homogeneous constraints, and every set operation delegates.  Apexes are
irrelevant: angles live purely in direction space, so comparing angles of
figures at different points needs no motion, only flag membership.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import (
    RefinedPolytope,
    difference as _poly_difference,
    equals as _poly_equals,
    intersect as _poly_intersect,
    is_subset as _poly_is_subset,
    union as _poly_union,
)
from .cells import Cell
from .errors import GeometryError
from .linalg import AffineFunctional, Carrier, Vec, cross2
from .resolution import Flag, RefinedPoint, SignSeq
from .scalars import Scalar, sign

__all__ = [
    "LinearFunctional",
    "RefinedAngle",
    "angle_contains",
    "angle_difference",
    "angle_equals",
    "angle_from_functionals",
    "angle_intersect",
    "angle_is_empty",
    "angle_is_subset",
    "angle_ops",
    "angle_union",
    "eval_angle_refinement",
    "full_resolution",
    "opposite",
    "pointwise_decomposition_check",
    "tangent_angle",
    "wedge_ccw",
]

_ZERO = Fraction(0)


class LinearFunctional:
    """phi(v) = linear . v; the homogeneous counterpart of a functional."""

    __slots__ = ("linear",)

    def __init__(self, linear):
        self.linear = linear if isinstance(linear, Vec) else Vec(linear)

    @property
    def dim(self) -> int:
        return self.linear.dim

    @property
    def is_regular(self) -> bool:
        return not self.linear.is_zero()

    def value(self, v: Vec) -> Scalar:
        return self.linear.dot(v)

    def __neg__(self) -> "LinearFunctional":
        return LinearFunctional(-self.linear)

    def __eq__(self, other):
        if not isinstance(other, LinearFunctional):
            return NotImplemented
        return self.linear == other.linear

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinearFunctional({self.linear!r})"


def eval_angle_refinement(phi: LinearFunctional, flag: Flag) -> SignSeq:
    """Signs of (phi(v1), phi(v1+v2), ..., phi(v1+...+vk))."""
    out = []
    total: Scalar = _ZERO
    for v in flag:
        total = total + phi.value(v)
        out.append(sign(total))
    return tuple(out)


def _zero_vec(d: int) -> Vec:
    return Vec(*[_ZERO] * d)


def _check_homogeneous(poly: RefinedPolytope) -> None:
    for cell in poly.cells:
        if not cell.carrier.base.is_zero():
            raise GeometryError("angle cells need linear carriers (through the origin)")
        for xi in cell.constraints:
            if sign(xi.constant) != 0:
                raise GeometryError("angle cell constraints must be homogeneous")


class RefinedAngle:
    """Finite union of angle cells of a common rank.

    ``outside_domain`` marks the empty angle returned by ``tangent_angle``
    for a point outside the polytope's closing; ordinary construction
    leaves it False.
    """

    __slots__ = ("poly", "outside_domain")

    def __init__(self, rank: int, cells: Iterable[Cell] = (), outside_domain: bool = False):
        poly = cells if isinstance(cells, RefinedPolytope) else RefinedPolytope(rank, cells)
        if poly.rank != rank:
            raise GeometryError("angle rank disagrees with its cells")
        _check_homogeneous(poly)
        self.poly = poly
        self.outside_domain = outside_domain

    @property
    def rank(self) -> int:
        return self.poly.rank

    @property
    def cells(self):
        return self.poly.cells

    def contains(self, flag: Flag) -> bool:
        if flag.dim != self.rank:
            raise GeometryError(
                f"flag dimension {flag.dim} does not match angle rank {self.rank}"
            )
        if not self.cells:
            return False
        d = self.cells[0].carrier.ambient_dim
        if flag.ambient_dim != d:
            raise GeometryError("flag ambient dimension mismatch")
        return self.poly.contains(RefinedPoint(_zero_vec(d), flag))

    def is_empty(self) -> bool:
        return not self.cells

    def __repr__(self) -> str:
        return f"RefinedAngle(rank={self.rank}, cells={len(self.cells)})"


def full_resolution(d: int) -> RefinedAngle:
    """All flags of the full direction space: the resolution of rank d."""
    return RefinedAngle(d, [Cell(Carrier.full(d), [])])


def angle_from_functionals(
    phis: Sequence[LinearFunctional], carrier: Optional[Carrier] = None, d: Optional[int] = None
) -> RefinedAngle:
    """Single-cell angle of the flags refining every phi positively.

    ``carrier`` restricts to a linear subspace; functionals are given in
    ambient coordinates.  A functional vanishing on the carrier kills the
    cell (its sequence is identically zero), giving the empty angle.
    """
    if carrier is None:
        if d is None:
            if not phis:
                raise GeometryError("angle needs functionals, a carrier, or a dimension")
            d = phis[0].dim
        carrier = Carrier.full(d)
    if not carrier.base.is_zero():
        raise GeometryError("angle carriers must pass through the origin")
    cell = Cell.from_ambient(
        carrier, [AffineFunctional(phi.linear, _ZERO) for phi in phis]
    )
    cells = [] if cell is None else [cell]
    return RefinedAngle(carrier.dim, cells)


def _check_angle_ranks(a: RefinedAngle, b: RefinedAngle) -> None:
    if a.rank != b.rank:
        raise GeometryError(f"angle rank mismatch: {a.rank} vs {b.rank}")


def angle_union(a: RefinedAngle, b: RefinedAngle) -> RefinedAngle:
    _check_angle_ranks(a, b)
    return RefinedAngle(a.rank, _poly_union(a.poly, b.poly))


def angle_intersect(a: RefinedAngle, b: RefinedAngle) -> RefinedAngle:
    _check_angle_ranks(a, b)
    return RefinedAngle(a.rank, _poly_intersect(a.poly, b.poly))


def angle_difference(a: RefinedAngle, b: RefinedAngle) -> RefinedAngle:
    _check_angle_ranks(a, b)
    return RefinedAngle(a.rank, _poly_difference(a.poly, b.poly))


def angle_ops(a: RefinedAngle, b: RefinedAngle, op: str) -> RefinedAngle:
    table = {
        "union": angle_union,
        "intersect": angle_intersect,
        "difference": angle_difference,
    }
    if op not in table:
        raise GeometryError(f"unknown angle operation {op!r}")
    return table[op](a, b)


def angle_contains(a: RefinedAngle, flag: Flag) -> bool:
    return a.contains(flag)


def angle_is_empty(a: RefinedAngle) -> bool:
    return a.is_empty()


def angle_is_subset(a: RefinedAngle, b: RefinedAngle) -> bool:
    _check_angle_ranks(a, b)
    return _poly_is_subset(a.poly, b.poly)


def angle_equals(a: RefinedAngle, b: RefinedAngle) -> bool:
    _check_angle_ranks(a, b)
    return _poly_equals(a.poly, b.poly)


def opposite(a: RefinedAngle) -> RefinedAngle:
    """Image under the point reflection v -> -v (the vertical angle)."""
    cells = [
        Cell(cell.carrier, [-xi for xi in cell.constraints]) for cell in a.cells
    ]
    return RefinedAngle(a.rank, cells)


def wedge_ccw(v: Vec, w: Vec) -> RefinedAngle:
    """The 2D angle swept counterclockwise from ray v to ray w.

    Convex for cross(v, w) > 0, the open half-plane left of v for w
    antiparallel to v, reflex (complement of the convex wedge) for
    cross(v, w) < 0, and empty when the rays coincide.
    """
    if v.dim != 2 or w.dim != 2:
        raise GeometryError("wedge_ccw works in the plane")
    if v.is_zero() or w.is_zero():
        raise GeometryError("wedge rays must be nonzero")
    turn = sign(cross2(v, w))
    if turn > 0:
        return angle_from_functionals(
            [LinearFunctional(Vec(-v[1], v[0])), LinearFunctional(Vec(w[1], -w[0]))]
        )
    if turn < 0:
        return angle_difference(full_resolution(2), wedge_ccw(w, v))
    if sign(v.dot(w)) > 0:  # same ray: zero sweep
        return RefinedAngle(2, [])
    # Antiparallel: the straight angle, a single refined half-plane.
    return angle_from_functionals([LinearFunctional(Vec(-v[1], v[0]))])


def tangent_angle(p: RefinedPolytope, x: Vec) -> RefinedAngle:
    """The refined angle occupied by P at the position x.

    For each cell whose closure holds x, the constraints tight at x
    contribute their linear parts as a homogeneous angle cell on the
    carrier's direction space; slack constraints place no restriction.
    Outside the closing the angle is empty and marked ``outside_domain``.
    """
    cells_out = []
    onto = False
    for cell in p.cells:
        if not cell.carrier.contains_point(x):
            continue
        t = cell.carrier.coords_of_point(x)
        vals = [sign(xi.value(t)) for xi in cell.constraints]
        if any(s < 0 for s in vals):
            continue
        onto = True
        directions = Carrier(_zero_vec(cell.carrier.ambient_dim), cell.carrier.basis)
        # Tight constraints' linear parts are already intrinsic to the
        # carrier's direction space, whose canonical basis equals `directions`.
        tight = [
            AffineFunctional(xi.linear, _ZERO)
            for xi, s in zip(cell.constraints, vals)
            if s == 0
        ]
        cells_out.append(Cell(directions, tight))
    return RefinedAngle(p.rank, cells_out, outside_domain=not onto)


def pointwise_decomposition_check(
    p: RefinedPolytope, samples: Sequence[RefinedPoint]
) -> bool:
    """Membership factors through position and tangent angle, pointwise:
    (x; rho) in P  iff  x in closing(P) and rho in tangent_angle(P, x)."""
    for rp in samples:
        direct = p.contains(rp)
        angle = tangent_angle(p, rp.position)
        factored = (not angle.outside_domain) and angle.contains(rp.flag)
        if direct != factored:
            return False
    return True
