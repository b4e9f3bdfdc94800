"""Refined polytopes: finite unions of same-rank cells, with set operations.

A refined polytope of rank k is a finite union of refined cells whose
carriers all have dimension k; cells are grouped by canonical carrier.
Distinct k-dimensional carriers have disjoint refined spaces, so the set
operations only ever combine constraint lists of same-carrier cells:

  * union         concatenates the cell lists;
  * intersection  concatenates constraints of same-carrier cell pairs;
  * difference    expands the complement of a cell into prefix pieces
                  (the complements of its half-spaces partition seamlessly).

Equality and subset are semantic, via difference-emptiness, and the
closing/lift pair moves between refined polytopes and conventional weak
ones.  Everything is exact; emptiness reduces to strict-system feasibility.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .cells import Cell, ClosedPiece, complement_halfspace
from .errors import GeometryError
from .fm import LinIneq, affine_dim
from .linalg import AffineFunctional, Carrier, Vec, carrier_intersection, restrict_functional
from .resolution import RefinedPoint
from .scalars import sign

__all__ = [
    "ConventionalPolytope",
    "RefinedPolytope",
    "closing",
    "contains_point",
    "difference",
    "disjoint",
    "equals",
    "intersect",
    "is_empty",
    "is_subset",
    "lift",
    "partition_check",
    "partition_failure",
    "rank_drop_check",
    "union",
]


def _group_cells(cells: Sequence[Cell]) -> list[tuple[Carrier, list[Cell]]]:
    groups: list[tuple[Carrier, list[Cell]]] = []
    for cell in cells:
        for carrier, bucket in groups:
            if carrier == cell.carrier:
                bucket.append(cell)
                break
        else:
            groups.append((cell.carrier, [cell]))
    return groups


class RefinedPolytope:
    """Finite union of refined cells, all carriers of dimension ``rank``.

    Construction filters out empty cells, so an empty polytope is exactly
    one with no cells.  Cells may overlap; the representation is a plain
    union, not a partition.
    """

    __slots__ = ("rank", "cells", "ambient_dim")

    def __init__(self, rank: int, cells: Iterable[Cell] = ()):
        kept = []
        ambient: Optional[int] = None
        for cell in cells:
            if cell.carrier.dim != rank:
                raise GeometryError(
                    f"cell carrier has dimension {cell.carrier.dim}, expected rank {rank}"
                )
            if ambient is None:
                ambient = cell.carrier.ambient_dim
            elif cell.carrier.ambient_dim != ambient:
                raise GeometryError("cells live in different ambient spaces")
            if not cell.is_empty():
                kept.append(cell)
        grouped = _group_cells(kept)
        self.rank = rank
        self.cells = tuple(c for _, bucket in grouped for c in bucket)
        self.ambient_dim = ambient

    def groups(self) -> list[tuple[Carrier, list[Cell]]]:
        return _group_cells(self.cells)

    def contains(self, p: RefinedPoint) -> bool:
        if p.flag.dim != self.rank:
            raise GeometryError(
                f"flag dimension {p.flag.dim} does not match rank {self.rank}"
            )
        return any(cell.contains(p) for cell in self.cells)

    def translated(self, v: Vec) -> "RefinedPolytope":
        return RefinedPolytope(self.rank, [c.translated(v) for c in self.cells])

    def __repr__(self) -> str:
        return f"RefinedPolytope(rank={self.rank}, cells={len(self.cells)})"


class ConventionalPolytope:
    """Finite union of closed convex pieces with rank-k carriers."""

    __slots__ = ("rank", "pieces")

    def __init__(self, rank: int, pieces: Iterable[ClosedPiece] = ()):
        ps = tuple(pieces)
        for piece in ps:
            if piece.carrier.dim != rank:
                raise GeometryError(
                    f"piece carrier has dimension {piece.carrier.dim}, expected rank {rank}"
                )
        self.rank = rank
        self.pieces = ps

    def contains_position(self, x: Vec) -> bool:
        return any(piece.contains_position(x) for piece in self.pieces)

    def translated(self, v: Vec) -> "ConventionalPolytope":
        moved = []
        for piece in self.pieces:
            carrier = Carrier(piece.carrier.base + v, piece.carrier.basis)
            shifted = [
                restrict_functional(
                    AffineFunctional(amb.linear, amb.constant - amb.linear.dot(v)),
                    carrier,
                )
                for amb in piece.ambient_constraints()
            ]
            moved.append(ClosedPiece(carrier, shifted))
        return ConventionalPolytope(self.rank, moved)

    def __repr__(self) -> str:
        return f"ConventionalPolytope(rank={self.rank}, pieces={len(self.pieces)})"


def _check_ranks(p: RefinedPolytope, q: RefinedPolytope) -> None:
    if p.rank != q.rank:
        raise GeometryError(f"rank mismatch: {p.rank} vs {q.rank}")


# -- boolean algebra -------------------------------------------------------------


def union(p: RefinedPolytope, q: RefinedPolytope) -> RefinedPolytope:
    _check_ranks(p, q)
    return RefinedPolytope(p.rank, list(p.cells) + list(q.cells))


def intersect(p: RefinedPolytope, q: RefinedPolytope) -> RefinedPolytope:
    """Cells on distinct carriers are disjoint; only same-carrier pairs meet."""
    _check_ranks(p, q)
    q_groups = q.groups()
    out: list[Cell] = []
    for carrier, p_cells in p.groups():
        for other, q_cells in q_groups:
            if carrier == other:
                for a in p_cells:
                    for b in q_cells:
                        out.append(a.with_extra(b.constraints))
                break
    return RefinedPolytope(p.rank, out)


def _subtract_cell(pieces: list[Cell], q: Cell) -> list[Cell]:
    """Intersect each piece with the complement of q (same carrier assumed).

    The complement of an intersection of refined half-spaces is expanded
    into prefix pieces: keep the first j-1 half-spaces, flip the j-th.
    The pieces are pairwise disjoint by construction; empties are pruned.
    """
    result: list[Cell] = []
    for r in pieces:
        # Pieces that miss q entirely survive whole; one feasibility test
        # here avoids fanning r out into len(q.constraints) fragments.
        if r.with_extra(q.constraints).is_empty():
            result.append(r)
            continue
        for j, eta in enumerate(q.constraints):
            cand = r.with_extra(
                list(q.constraints[:j]) + [complement_halfspace(eta)]
            )
            if not cand.is_empty():
                result.append(cand)
    return result


def difference(p: RefinedPolytope, q: RefinedPolytope) -> RefinedPolytope:
    _check_ranks(p, q)
    q_groups = q.groups()
    out: list[Cell] = []
    for carrier, p_cells in p.groups():
        q_cells: list[Cell] = []
        for other, bucket in q_groups:
            if carrier == other:
                q_cells = bucket
                break
        pieces = list(p_cells)
        for qc in q_cells:
            pieces = _subtract_cell(pieces, qc)
            if not pieces:
                break
        out.extend(pieces)
    return RefinedPolytope(p.rank, out)


def contains_point(p: RefinedPolytope, point: RefinedPoint) -> bool:
    return p.contains(point)


def is_empty(p: RefinedPolytope) -> bool:
    return not p.cells


def is_subset(p: RefinedPolytope, q: RefinedPolytope) -> bool:
    return is_empty(difference(p, q))


def equals(p: RefinedPolytope, q: RefinedPolytope) -> bool:
    return is_subset(p, q) and is_subset(q, p)


def disjoint(p: RefinedPolytope, q: RefinedPolytope) -> bool:
    _check_ranks(p, q)
    return is_empty(intersect(p, q))


# -- closing and lift -------------------------------------------------------------


def closing(p: RefinedPolytope) -> ConventionalPolytope:
    """Union of cell closures.  Total: empty polytope closes to empty."""
    return ConventionalPolytope(p.rank, [cell.closure() for cell in p.cells])


def lift(conv: ConventionalPolytope) -> RefinedPolytope:
    """Replace each weak inequality by its refined half-space.

    Requires pure input: every piece must have full rank inside its
    carrier (equivalently, nonempty relative interior); otherwise the
    closing of the lift would lose the degenerate piece.
    """
    cells = []
    npieces = len(conv.pieces)
    for idx, piece in enumerate(conv.pieces):
        kept = [xi for xi in piece.functionals if xi.is_regular]
        if any(
            not xi.is_regular and sign(xi.constant) < 0 for xi in piece.functionals
        ):
            dim = -1
        else:
            system = [LinIneq.from_functional(xi, strict=False) for xi in kept]
            dim = affine_dim(system, piece.carrier.dim)
        if dim != conv.rank:
            raise GeometryError(
                f"cannot lift: piece {idx + 1} of {npieces} has rank {dim}, "
                f"expected {conv.rank}"
            )
        cells.append(Cell(piece.carrier, kept))
    return RefinedPolytope(conv.rank, cells)


# -- disjointness via closures ----------------------------------------------------


def _closed_intersection_rank(a: ClosedPiece, b: ClosedPiece) -> int:
    """Affine dimension of the intersection of two closed pieces (-1: empty)."""
    meet = carrier_intersection(a.carrier, b.carrier)
    if meet is None:
        return -1
    system: list[LinIneq] = []
    for piece in (a, b):
        for amb in piece.ambient_constraints():
            rho = restrict_functional(amb, meet)
            if rho.is_regular:
                system.append(LinIneq.from_functional(rho, strict=False))
            elif sign(rho.constant) < 0:
                return -1
    return affine_dim(system, meet.dim)


def rank_drop_check(p: RefinedPolytope, q: RefinedPolytope) -> bool:
    """True iff the closings intersect in rank < k (hence P, Q refined-disjoint)."""
    _check_ranks(p, q)
    best = -1
    for piece_p in closing(p).pieces:
        for piece_q in closing(q).pieces:
            best = max(best, _closed_intersection_rank(piece_p, piece_q))
            if best >= p.rank:
                return False
    return best < p.rank


# -- partitions --------------------------------------------------------------------


def _bounding_box(p: RefinedPolytope) -> Optional[tuple[list, list]]:
    """Componentwise vertex range of the closures; None when unbounded."""
    lo: Optional[list] = None
    hi: Optional[list] = None
    for cell in p.cells:
        try:
            vertices = cell.closure().vertex_positions()
        except GeometryError:
            return None
        for v in vertices:
            if lo is None:
                lo = list(v)
                hi = list(v)
                continue
            for c in range(len(lo)):
                if sign(v[c] - lo[c]) < 0:
                    lo[c] = v[c]
                if sign(v[c] - hi[c]) > 0:
                    hi[c] = v[c]
    if lo is None:
        return None
    return lo, hi


def _boxes_apart(a, b) -> bool:
    """Strict separation of closed boxes; touching boxes are not apart."""
    if a is None or b is None:
        return False
    for c in range(len(a[0])):
        if sign(a[1][c] - b[0][c]) < 0 or sign(b[1][c] - a[0][c]) < 0:
            return True
    return False


def partition_failure(
    parts: Sequence[RefinedPolytope], whole: RefinedPolytope
) -> Optional[tuple[str, Optional[RefinedPoint]]]:
    """None when the parts partition the whole; otherwise a reason and a
    refined-point witness of the failure."""
    for part in parts:
        _check_ranks(part, whole)
    # Strictly separated bounding boxes prove disjointness outright, which
    # spares the quadratic overlap scan most of its feasibility work.
    boxes = [_bounding_box(part) for part in parts]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if _boxes_apart(boxes[i], boxes[j]):
                continue
            overlap = intersect(parts[i], parts[j])
            if overlap.cells:
                return (
                    f"parts {i + 1} and {j + 1} overlap",
                    overlap.cells[0].witness(),
                )
    total = RefinedPolytope(whole.rank, [])
    for part in parts:
        total = union(total, part)
    excess = difference(total, whole)
    if excess.cells:
        return ("parts spill outside the whole", excess.cells[0].witness())
    missing = difference(whole, total)
    if missing.cells:
        return ("parts do not cover the whole", missing.cells[0].witness())
    return None


def partition_check(
    parts: Sequence[RefinedPolytope], whole: RefinedPolytope
) -> bool:
    return partition_failure(parts, whole) is None
