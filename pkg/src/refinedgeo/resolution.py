"""Refined points: positions carrying a flag of directions.

A flag is an ordered list of independent vectors recording how a figure
occupies a position infinitesimally; it stands in for an orthonormal frame,
canonicalized under the upper-triangular positive-diagonal action (echelon
form with sign-preserving unit leading entries).  The k-refinement of an
affine functional evaluates the functional along the flag's prefix sums and
the lexicographic sign of that tuple decides refined half-space membership.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GeometryError
from .linalg import AffineFunctional, Carrier, Vec
from .scalars import Scalar, sign

__all__ = [
    "Flag",
    "RefinedPoint",
    "canonicalize_flag",
    "eval_refinement",
    "lex_positive",
    "sample_refined_point",
]

SignSeq = tuple[int, ...]


def _echelonize(vectors: Sequence[Vec]) -> tuple[Vec, ...]:
    """Canonical orbit representative: reduce each vector at the pivots of
    its predecessors, then scale positively so the leading entry is +-1."""
    rows: list[Vec] = []
    pivots: list[int] = []
    for v in vectors:
        r = list(v.coords)
        for row, col in zip(rows, pivots):
            f = r[col] / row[col]
            if sign(f) != 0:
                for j in range(len(r)):
                    r[j] = r[j] - f * row.coords[j]
        lead = None
        for j, c in enumerate(r):
            if sign(c) != 0:
                lead = j
                break
        if lead is None:
            raise GeometryError("flag vectors are linearly dependent")
        scale = abs(r[lead])
        rows.append(Vec(*[c / scale for c in r]))
        pivots.append(lead)
    return tuple(rows)


class Flag:
    """Ordered independent directions, stored canonically."""

    __slots__ = ("vectors",)

    def __init__(self, vectors: Iterable[Vec]):
        self.vectors = _echelonize(list(vectors))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def ambient_dim(self) -> int:
        return self.vectors[0].dim if self.vectors else 0

    def __iter__(self):
        return iter(self.vectors)

    def __eq__(self, other):
        if not isinstance(other, Flag):
            return NotImplemented
        return len(self.vectors) == len(other.vectors) and all(
            a == b for a, b in zip(self.vectors, other.vectors)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Flag({list(self.vectors)!r})"


def canonicalize_flag(flag: Flag) -> Flag:
    """Canonical representative of the flag's orbit (idempotent: flags are
    already stored canonically, so this returns an equal flag)."""
    return Flag(flag.vectors)


class RefinedPoint:
    """A position together with a flag of the ambient refinement level."""

    __slots__ = ("position", "flag")

    def __init__(self, position: Vec, flag: Flag):
        for v in flag:
            if v.dim != position.dim:
                raise GeometryError("flag/position dimension mismatch")
        self.position = position
        self.flag = flag

    def __eq__(self, other):
        if not isinstance(other, RefinedPoint):
            return NotImplemented
        return self.position == other.position and self.flag == other.flag

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RefinedPoint({self.position!r}, {self.flag!r})"


def eval_refinement(xi: AffineFunctional, p: RefinedPoint) -> SignSeq:
    """Signs of (xi(x), xi(x+v1), xi(x+v1+v2), ...): length k+1."""
    if xi.dim != p.position.dim:
        raise GeometryError("functional/point dimension mismatch")
    out = [sign(xi.value(p.position))]
    y = p.position
    for v in p.flag:
        y = y + v
        out.append(sign(xi.value(y)))
    return tuple(out)


def lex_positive(seq: Sequence[int]) -> bool:
    """First nonzero sign is +1; the all-zero tuple is not positive."""
    for s in seq:
        if s != 0:
            return s > 0
    return False


def sample_refined_point(carrier: Carrier, rng_seed: int) -> RefinedPoint:
    """Deterministic pseudo-random refined point of the carrier's refined
    space: rational position in the carrier, full random flag inside its
    direction space."""
    rng = random.Random(rng_seed)
    k = carrier.dim

    def coeff() -> Scalar:
        return Fraction(rng.randint(-24, 24), rng.randint(1, 9))

    position = carrier.base
    for b in carrier.basis:
        position = position + b.scale(coeff())

    while True:
        matrix = [[coeff() for _ in range(k)] for _ in range(k)]
        try:
            vectors = [carrier.embed_direction(Vec(*row)) for row in matrix]
            flag = Flag(vectors)
            break
        except GeometryError:
            continue
    return RefinedPoint(position, flag)
