"""Refined convex cells: intersections of refined half-spaces on a carrier.

A cell's constraints are regular affine functionals in the carrier's
intrinsic coordinates; a refined point belongs to the cell when it lies in
the carrier and every constraint's refinement sign-sequence is
lexicographically positive.  Emptiness of the refined set coincides with
infeasibility of the strict interior system, and the closure of a nonempty
cell is the conventional weak polytope with the same constraints.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import GeometryError
from .fm import LinIneq, feasible, is_bounded, sample_point, vertices
from .linalg import AffineFunctional, Carrier, Vec, rank, restrict_functional
from .resolution import Flag, RefinedPoint, eval_refinement, lex_positive
from .scalars import Scalar, sign

__all__ = [
    "Cell",
    "ClosedPiece",
    "cell_closure",
    "cell_contains",
    "cell_is_empty",
    "complement_halfspace",
]

_ONE = Fraction(1)
_ZERO = Fraction(0)


def complement_halfspace(xi: AffineFunctional) -> AffineFunctional:
    """The refined half-space of -xi is the exact set complement of xi's."""
    if not xi.is_regular:
        raise GeometryError("complement of a non-regular functional")
    return -xi


def _ambient_form(carrier: Carrier, intrinsic: Sequence[AffineFunctional]) -> list[AffineFunctional]:
    """One ambient preimage per intrinsic functional (supported on the
    carrier's pivot columns; restriction is exactly the inverse)."""
    out = []
    d = carrier.ambient_dim
    for xi in intrinsic:
        linear = [_ZERO] * d
        const = xi.constant
        for coeff, col in zip(xi.linear, carrier.pivots):
            linear[col] = coeff
            const = const - coeff * carrier.base[col]
        out.append(AffineFunctional(Vec(*linear), const))
    return out


class ClosedPiece:
    """A conventional convex piece: carrier plus weak intrinsic inequalities."""

    __slots__ = ("carrier", "functionals")

    def __init__(self, carrier: Carrier, functionals: Iterable[AffineFunctional]):
        fns = tuple(functionals)
        for xi in fns:
            if xi.dim != carrier.dim:
                raise GeometryError("piece constraint dimension mismatch")
        self.carrier = carrier
        self.functionals = fns

    def _system(self) -> list[LinIneq]:
        return [LinIneq.from_functional(xi, strict=False) for xi in self.functionals]

    def contains_position(self, x: Vec) -> bool:
        if not self.carrier.contains_point(x):
            return False
        t = self.carrier.coords_of_point(x)
        return all(sign(xi.value(t)) >= 0 for xi in self.functionals)

    def is_empty(self) -> bool:
        return not feasible(self._system(), self.carrier.dim)

    def sample_position(self) -> Optional[Vec]:
        point = sample_point(self._system(), self.carrier.dim)
        if point is None:
            return None
        return self.carrier.embed_point(Vec(*point))

    def is_bounded(self) -> bool:
        return is_bounded(self._system(), self.carrier.dim)

    def vertex_positions(self) -> list[Vec]:
        return [
            self.carrier.embed_point(Vec(*p))
            for p in vertices(self._system(), self.carrier.dim)
        ]

    def ambient_constraints(self) -> list[AffineFunctional]:
        """Ambient functionals restricting back to this piece's inequalities."""
        return _ambient_form(self.carrier, self.functionals)

    def __repr__(self) -> str:
        return f"ClosedPiece({self.carrier!r}, {list(self.functionals)!r})"


class Cell:
    """Intersection of refined half-spaces inside a carrier."""

    __slots__ = ("carrier", "constraints", "_empty")

    def __init__(self, carrier: Carrier, constraints: Iterable[AffineFunctional] = ()):
        cons = tuple(constraints)
        for xi in cons:
            if xi.dim != carrier.dim:
                raise GeometryError("cell constraint dimension mismatch")
            if not xi.is_regular:
                raise GeometryError("cell constraint must be regular on its carrier")
        self.carrier = carrier
        self.constraints = cons
        self._empty: Optional[bool] = None

    @classmethod
    def from_ambient(
        cls, carrier: Carrier, functionals: Iterable[AffineFunctional]
    ) -> Optional["Cell"]:
        """Restrict ambient functionals to the carrier.  Constant restrictions
        with positive value are tautological and dropped; zero or negative
        constants make the cell empty (None)."""
        kept = []
        for xi in functionals:
            rho = restrict_functional(xi, carrier)
            if rho.is_regular:
                kept.append(rho)
            elif sign(rho.constant) <= 0:
                return None
        return cls(carrier, kept)

    # -- semantics ----------------------------------------------------------

    def contains(self, p: RefinedPoint) -> bool:
        if p.flag.dim != self.carrier.dim:
            raise GeometryError("flag dimension does not match the carrier")
        if not self.carrier.contains_point(p.position):
            return False
        if not all(self.carrier.contains_direction(v) for v in p.flag):
            return False
        t = self.carrier.coords_of_point(p.position)
        intrinsic = RefinedPoint(
            t, Flag([self.carrier.coords_of_direction(v) for v in p.flag])
        )
        return all(
            lex_positive(eval_refinement(xi, intrinsic)) for xi in self.constraints
        )

    def _strict_system(self) -> list[LinIneq]:
        return [LinIneq.from_functional(xi, strict=True) for xi in self.constraints]

    def is_empty(self) -> bool:
        if self._empty is None:
            self._empty = not feasible(self._strict_system(), self.carrier.dim)
        return self._empty

    def closure(self) -> ClosedPiece:
        """The conventional polytope with the same constraints read weakly.
        Only valid for nonempty cells (the weak set can exceed the image of
        an empty cell's closure)."""
        if self.is_empty():
            raise GeometryError("closure of an empty cell is not represented")
        return ClosedPiece(self.carrier, self.constraints)

    # -- witnesses ------------------------------------------------------------

    def _full_flag_at(self, interior_first: Optional[Vec] = None) -> Flag:
        """A flag of the carrier's direction space in intrinsic coordinates,
        optionally led by a prescribed first vector."""
        k = self.carrier.dim
        rows: list[Vec] = []
        if interior_first is not None and not interior_first.is_zero():
            rows.append(interior_first)
        for i in range(k):
            unit = Vec(*[_ONE if j == i else _ZERO for j in range(k)])
            if rank(rows + [unit]) > len(rows):
                rows.append(unit)
            if len(rows) == k:
                break
        return Flag([self.carrier.embed_direction(r) for r in rows])

    def witness(self) -> Optional[RefinedPoint]:
        """A refined point inside the cell (interior position, any full
        flag), or None when the cell is empty."""
        point = sample_point(self._strict_system(), self.carrier.dim)
        if point is None:
            return None
        t = Vec(*point)
        rp = RefinedPoint(self.carrier.embed_point(t), self._full_flag_at())
        return rp

    def inward_refined_point(self, x: Vec) -> Optional[RefinedPoint]:
        """A refined point of the cell located at the (possibly boundary)
        position x: the flag leads toward a strictly interior point, which
        makes every constraint's first nonzero refinement entry positive.
        None when x is outside the closure or the cell is empty."""
        if not self.carrier.contains_point(x):
            return None
        t = self.carrier.coords_of_point(x)
        if any(sign(xi.value(t)) < 0 for xi in self.constraints):
            return None
        interior = sample_point(self._strict_system(), self.carrier.dim)
        if interior is None:
            return None
        u = Vec(*interior) - t
        rp = RefinedPoint(x, self._full_flag_at(u))
        if not self.contains(rp):  # exact self-check; never expected to fire
            return None
        return rp

    # -- derived representations -----------------------------------------------

    def ambient_constraints(self) -> list[AffineFunctional]:
        """Ambient functionals restricting back to this cell's constraints.
        (One canonical preimage; enough to rebuild the cell on its carrier.)"""
        return _ambient_form(self.carrier, self.constraints)

    def translated(self, v: Vec) -> "Cell":
        carrier = Carrier(self.carrier.base + v, self.carrier.basis)
        moved = [
            AffineFunctional(xi.linear, xi.constant - xi.linear.dot(v))
            for xi in self.ambient_constraints()
        ]
        cell = Cell.from_ambient(carrier, moved)
        if cell is None:  # translation cannot introduce emptiness
            raise GeometryError("translation produced an inconsistent cell")
        return cell

    def with_extra(self, constraints: Sequence[AffineFunctional]) -> "Cell":
        return Cell(self.carrier, list(self.constraints) + list(constraints))

    def pruned(self) -> "Cell":
        """An equal cell without constraints the others already imply.

        Intersections stack constraints faster than they add facets, and
        every later feasibility question fans out over the constraint list,
        so dropping implied ones once pays for itself downstream."""
        kept = list(self.constraints)
        i = 0
        while len(kept) > 1 and i < len(kept):
            rest = kept[:i] + kept[i + 1 :]
            probe = Cell(self.carrier, rest + [complement_halfspace(kept[i])])
            if probe.is_empty():
                kept = rest
            else:
                i += 1
        if len(kept) == len(self.constraints):
            return self
        cell = Cell(self.carrier, kept)
        cell._empty = self._empty
        return cell

    def __repr__(self) -> str:
        return f"Cell({self.carrier!r}, {list(self.constraints)!r})"


# -- spec-level operation names ------------------------------------------------


def cell_contains(cell: Cell, p: RefinedPoint) -> bool:
    return cell.contains(p)


def cell_is_empty(cell: Cell) -> bool:
    return cell.is_empty()


def cell_closure(cell: Cell) -> ClosedPiece:
    return cell.closure()
