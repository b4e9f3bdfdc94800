"""Tour of the core idea: boundaries belong to exactly one side.

A refined point is a position plus a flag of directions saying how a figure
occupies the position infinitesimally.  Under that refinement a segment
split at an interior point, or a triangle cut by a cevian, is a genuine
partition: every refined point of the whole lies in exactly one part.
"""

from __future__ import annotations

from fractions import Fraction as F

from refinedgeo import (
    AffineFunctional,
    Carrier,
    Cell,
    Flag,
    RefinedPoint,
    RefinedPolytope,
    Vec,
    angle_equals,
    angle_union,
    contains_point,
    full_resolution,
    partition_check,
    partition_failure,
    polygon_lift,
    tangent_angle,
)


def segment(a, b) -> RefinedPolytope:
    line = Carrier.full(1)
    return RefinedPolytope(
        1, [Cell(line, [AffineFunctional((1,), -F(a)), AffineFunctional((-1,), F(b))])]
    )


def main() -> None:
    # -- a segment split at an interior point ------------------------------
    whole, left, right = segment(0, 2), segment(0, 1), segment(1, 2)
    print("sto[0,1] and sto[1,2] partition sto[0,2]:", partition_check([left, right], whole))

    into_right = RefinedPoint(Vec(1), Flag([Vec(1)]))
    into_left = RefinedPoint(Vec(1), Flag([Vec(-1)]))
    print("(1; +1) is in the right part only:",
          contains_point(right, into_right) and not contains_point(left, into_right))
    print("(1; -1) is in the left part only:",
          contains_point(left, into_left) and not contains_point(right, into_left))

    # -- a triangle cut by a cevian ----------------------------------------
    a, b, c = Vec(0, 0), Vec(4, 0), Vec(0, 3)
    d = Vec(F(3, 2), 0)
    triangle = polygon_lift([a, b, c])
    half_1 = polygon_lift([a, d, c])
    half_2 = polygon_lift([d, b, c])
    print("cevian halves partition the triangle:", partition_check([half_1, half_2], triangle))

    # the failure report is a concrete refined point, not a boolean shrug
    overlap = partition_failure([half_1, half_1], triangle)
    print("doubling a part fails with a witness:", overlap)

    # -- tangent angles split seamlessly too -------------------------------
    # at the cevian foot the halves' vertex angles fill the edge angle
    alpha = tangent_angle(triangle, d)
    beta = tangent_angle(half_1, d)
    gamma = tangent_angle(half_2, d)
    print("vertex angles at the foot fill the edge angle:",
          angle_equals(angle_union(beta, gamma), alpha))

    # along the open cut the two sides fill every direction
    mid = (d + c).scale(F(1, 2))
    both = angle_union(tangent_angle(half_1, mid), tangent_angle(half_2, mid))
    print("along the cut the sides fill the full resolution:",
          angle_equals(both, full_resolution(2)))


if __name__ == "__main__":
    main()
