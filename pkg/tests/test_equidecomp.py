"""Equidecomposition tests: motions, areas, triangulation, cut-and-paste stages,
the full pipeline, and its exact verifier."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from refinedgeo.algebra import RefinedPolytope, equals, partition_check
from refinedgeo.cells import Cell
from refinedgeo.equidecomp import (
    Decomposition,
    Motion,
    area,
    convex_polygon_cell,
    convex_polygon_lift,
    equiareal_shear,
    equidecompose,
    match_triangle_areas,
    polygon_lift,
    shoelace_area,
    triangle_to_parallelogram,
    triangulate,
    triangulate_cycle,
    verify_decomposition,
)
from refinedgeo.errors import GeometryError
from refinedgeo.linalg import AffineFunctional, Carrier, Vec
from refinedgeo.scalars import adjoin_sqrt, sign

F = Fraction
PLANE = Carrier.full(2)

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
WIDE_RECT = [(0, 0), (2, 0), (2, F(1, 2)), (0, F(1, 2))]
L_HEXAGON = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]


# -- motions ---------------------------------------------------------------------


def test_motion_identity_and_translation():
    assert Motion.identity().is_identity()
    t = Motion.translation_by(Vec(3, -2))
    assert t.apply_vec(Vec(1, 1)) == Vec(4, -1)
    assert t.inverse().compose(t).is_identity()


def test_motion_rejects_non_rotations():
    with pytest.raises(GeometryError):
        Motion(((1, 0), (0, 2)), Vec(0, 0))  # not orthogonal
    with pytest.raises(GeometryError):
        Motion(((1, 0), (0, -1)), Vec(0, 0))  # reflection, det -1
    with pytest.raises(GeometryError):
        Motion(((1, 0, 0), (0, 1, 0)), Vec(0, 0))


def test_motion_with_tower_entries():
    c = adjoin_sqrt(F(1, 2))  # cos = sin = sqrt(2)/2
    m = Motion(((c, -c), (c, c)), Vec(0, 0))
    img = m.apply_vec(Vec(1, 0))
    assert sign(img[0] - c) == 0 and sign(img[1] - c) == 0
    assert m.inverse().compose(m).is_identity()
    assert m.compose(m).apply_vec(Vec(1, 0)) == Vec(0, 1)  # two eighth turns


def test_rotation_about_fixes_center():
    center = Vec(F(3, 2), 1)
    m = Motion.rotation_about(center, F(3, 5), F(4, 5))
    assert m.apply_vec(center) == center
    assert not m.is_identity()


def test_motion_moves_cells_exactly():
    m = Motion.rotation_about(Vec(0, 0), 0, 1)  # quarter turn
    square = convex_polygon_lift(UNIT_SQUARE)
    turned = m.apply_polytope(square)
    assert equals(turned, convex_polygon_lift([(0, 0), (0, 1), (-1, 1), (-1, 0)]))


# -- area ------------------------------------------------------------------------


def test_area_unit_square():
    assert area(convex_polygon_lift(UNIT_SQUARE)) == 1


def test_area_triangle():
    assert area(convex_polygon_lift([(0, 0), (2, 0), (0, 1)])) == 1


def test_area_quadrilateral_splits_along_diagonal():
    a, b, c, d = (0, 0), (4, 0), (5, 3), (1, 4)
    quad = area(convex_polygon_lift([a, b, c, d]))
    split = area(convex_polygon_lift([a, b, c])) + area(convex_polygon_lift([c, d, a]))
    assert quad == split == abs(shoelace_area([Vec(*p) for p in (a, b, c, d)]))


def test_area_counts_overlap_once():
    both = RefinedPolytope(
        2,
        [
            convex_polygon_cell([(0, 0), (2, 0), (2, 2), (0, 2)]),
            convex_polygon_cell([(1, 1), (3, 1), (3, 3), (1, 3)]),
        ],
    )
    assert area(both) == 7


def test_area_additive_over_triangulation():
    pieces = triangulate(L_HEXAGON)
    assert sum((area(t) for t in pieces), F(0)) == area(polygon_lift(L_HEXAGON)) == 3


def test_area_unbounded_rejected():
    half = RefinedPolytope(2, [Cell(PLANE, [AffineFunctional(Vec(1, 0), F(0))])])
    with pytest.raises(GeometryError):
        area(half)


# -- triangulation -----------------------------------------------------------------


def test_triangulate_triangle_is_itself():
    tris = triangulate([(0, 0), (3, 0), (0, 3)])
    assert len(tris) == 1
    assert equals(tris[0], convex_polygon_lift([(0, 0), (3, 0), (0, 3)]))


def test_triangulate_convex_quad():
    quad = [(0, 0), (4, 0), (5, 3), (1, 4)]
    tris = triangulate(quad)
    assert len(tris) == 2
    assert partition_check(tris, polygon_lift(quad))


def test_triangulate_l_hexagon():
    tris = triangulate(L_HEXAGON)
    assert len(tris) == 4
    assert partition_check(tris, polygon_lift(L_HEXAGON))


def test_triangulate_deterministic():
    first = triangulate_cycle(L_HEXAGON)
    second = triangulate_cycle(L_HEXAGON)
    assert first == second


def test_triangulate_rejects_bad_cycles():
    with pytest.raises(GeometryError):
        triangulate_cycle([(0, 0), (2, 2), (2, 0), (0, 2)])  # bowtie
    with pytest.raises(GeometryError):
        triangulate_cycle([(0, 0), (2, 0), (1, 0), (1, 1)])  # spike at (2,0)
    with pytest.raises(GeometryError):
        triangulate_cycle([(0, 0), (0, 0), (1, 1)])  # repeated vertex
    with pytest.raises(GeometryError):
        triangulate_cycle([(0, 0), (1, 0), (2, 0)])  # zero area


def test_triangulate_drops_straight_vertices():
    padded = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)]
    tris = triangulate(padded)
    assert partition_check(tris, convex_polygon_lift([(0, 0), (2, 0), (2, 2), (0, 2)]))


# -- area matching -----------------------------------------------------------------


def tri_of_area(x0, a) -> tuple[Vec, Vec, Vec]:
    # Base 2 on y=0 starting at x0, apex above: area = a exactly.
    return (Vec(F(x0), F(0)), Vec(F(x0) + 2, F(0)), Vec(F(x0), a))


def test_match_splits_two_one_against_ones():
    left = [tri_of_area(0, F(2)), tri_of_area(3, F(1))]
    right = [tri_of_area(0, F(1)), tri_of_area(3, F(1)), tri_of_area(6, F(1))]
    out_a, out_b = match_triangle_areas(left, right)
    areas_a = [abs(shoelace_area(t)) for t in out_a]
    areas_b = [abs(shoelace_area(t)) for t in out_b]
    assert areas_a == areas_b == [F(1), F(1), F(1)]
    assert len(out_a) <= len(left) + len(right) - 1
    # Each output list partitions its input list.
    assert partition_check(
        [convex_polygon_lift(t) for t in out_a],
        RefinedPolytope(2, [convex_polygon_cell(t) for t in left]),
    )


def test_match_identical_lists_unchanged():
    tris = [tri_of_area(0, F(1)), tri_of_area(3, F(2))]
    out_a, out_b = match_triangle_areas(tris, tris)
    assert out_a == out_b == list(tris)


def test_match_cevian_cut_ratio():
    whole = [tri_of_area(0, F(3))]
    parts = [tri_of_area(0, F(1)), tri_of_area(3, F(2))]
    out_a, out_b = match_triangle_areas(whole, parts)
    assert [abs(shoelace_area(t)) for t in out_a] == [F(1), F(2)]
    # The first cut is the cevian at the 1/3 point of the far side.
    x, y, z = whole[0]
    assert out_a[0][2] == y + (z - y).scale(F(1, 3))


def test_match_rejects_area_mismatch():
    with pytest.raises(GeometryError):
        match_triangle_areas([tri_of_area(0, F(2))], [tri_of_area(0, F(1))])


# -- triangle to parallelogram ---------------------------------------------------


def test_triangle_to_parallelogram_golden():
    pieces, motions, target = triangle_to_parallelogram(
        [Vec(0, 0), Vec(4, 0), Vec(0, 2)]
    )
    assert len(pieces) == 2
    assert motions[0].is_identity()
    assert motions[1].rotation == ((F(-1), F(0)), (F(0), F(-1)))
    # 180-degree rotation about the cut midpoint (2, 1): translation is twice it.
    assert motions[1].translation == Vec(4, 2)
    assert equals(target, convex_polygon_lift([(0, 0), (4, 0), (4, 1), (0, 1)]))
    assert partition_check(pieces, convex_polygon_lift([(0, 0), (4, 0), (0, 2)]))
    assert area(target) == 4


def test_triangle_to_parallelogram_keeps_area():
    _, _, target = triangle_to_parallelogram([Vec(0, 0), Vec(2, 0), Vec(1, 2)])
    assert area(target) == 2


def test_triangle_to_parallelogram_rejects_degenerate():
    with pytest.raises(GeometryError):
        triangle_to_parallelogram([Vec(0, 0), Vec(1, 1), Vec(2, 2)])


# -- equiareal shear ---------------------------------------------------------------


def test_shear_single_diagonal_cut():
    pieces, motions, target = equiareal_shear(
        Vec(0, 0), Vec(2, 0), Vec(0, 1), Vec(1, 1)
    )
    assert len(pieces) == 2
    assert all(m.rotation == ((F(1), F(0)), (F(0), F(1))) for m in motions)
    shifts = sorted(m.translation[0] for m in motions)
    assert shifts == [F(0), F(2)]
    assert equals(target, convex_polygon_lift([(0, 0), (2, 0), (3, 1), (1, 1)]))


def test_shear_identity_is_single_piece():
    pieces, motions, _ = equiareal_shear(Vec(0, 0), Vec(2, 0), Vec(0, 1), Vec(0, 1))
    assert len(pieces) == 1
    assert motions[0].is_identity()


def test_shear_strip_count():
    # Displacement 5 against base 2 needs ceil(5/2) + 1 = 4 strip pieces.
    pieces, _, _ = equiareal_shear(Vec(0, 0), Vec(2, 0), Vec(0, 1), Vec(5, 1))
    assert len(pieces) == 4


def test_shear_rejects_non_parallel_move():
    with pytest.raises(GeometryError):
        equiareal_shear(Vec(0, 0), Vec(2, 0), Vec(0, 1), Vec(1, 2))
    with pytest.raises(GeometryError):
        equiareal_shear(Vec(0, 0), Vec(2, 0), Vec(4, 0), Vec(4, 0))


# -- full pipeline -----------------------------------------------------------------


def test_equidecompose_square_to_rectangle():
    d = equidecompose(UNIT_SQUARE, WIDE_RECT)
    assert d.report is not None and d.report.all_passed
    assert len(d) >= 2
    assert sum((area(p) for p in d.pieces_p), F(0)) == 1
    assert sum((area(q) for q in d.pieces_q), F(0)) == 1
    assert any("composed chains" in line for line in d.provenance)
    assert str(d.report).count("PASS") == len(d.report.entries)


def test_equidecompose_polygon_with_itself():
    quad = [(0, 0), (4, 0), (5, 3), (1, 4)]
    d = equidecompose(quad, quad)
    assert len(d) == 1
    assert d.motions[0].is_identity()
    assert d.report is not None and d.report.all_passed


def test_equidecompose_triangle_to_square():
    d = equidecompose([(0, 0), (2, 0), (0, 1)], UNIT_SQUARE)
    assert d.report is not None and d.report.all_passed
    total = sum((area(q) for q in d.pieces_q), F(0))
    assert total == 1


def test_equidecompose_rejects_area_mismatch():
    with pytest.raises(GeometryError):
        equidecompose(UNIT_SQUARE, [(0, 0), (3, 0), (3, 1), (0, 1)])


def test_equidecompose_rejects_non_simple():
    with pytest.raises(GeometryError):
        equidecompose([(0, 0), (2, 2), (2, 0), (0, 2)], UNIT_SQUARE)


def test_verify_flags_tampered_decomposition():
    d = equidecompose(UNIT_SQUARE, WIDE_RECT)
    bumped = Motion.translation_by(Vec(1, 0))
    tampered_q = [bumped.apply_polytope(d.pieces_q[0])] + d.pieces_q[1:]
    bad = Decomposition(d.pieces_p, tampered_q, d.motions)
    report = verify_decomposition(
        bad, polygon_lift(UNIT_SQUARE), polygon_lift(WIDE_RECT)
    )
    assert not report.all_passed
    failed = [entry for entry in report.entries if not entry[1]]
    assert any("partition the target" in label for label, _, _ in failed)
    # The partition failure names a witness refined point.
    assert any("RefinedPoint" in detail for _, ok, detail in report.entries if not ok)


def test_verify_empty_decomposition_passes():
    nothing = RefinedPolytope(2, [])
    report = verify_decomposition(Decomposition([], [], []), nothing, nothing)
    assert report.all_passed
    assert len(report.entries) == 2


def test_decomposition_requires_aligned_lengths():
    with pytest.raises(GeometryError):
        Decomposition([polygon_lift(UNIT_SQUARE)], [], [])


def random_convex_polygon(rng: random.Random) -> list[tuple[Fraction, Fraction]]:
    while True:
        pts = {
            (F(rng.randint(-4, 4)), F(rng.randint(-4, 4))) for _ in range(rng.randint(3, 8))
        }
        pts = sorted(pts)
        if len(pts) < 3:
            continue

        def hull_side(points):
            side: list[tuple[Fraction, Fraction]] = []
            for p in points:
                while len(side) >= 2:
                    a, b = side[-2], side[-1]
                    turn = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
                    if turn <= 0:
                        side.pop()
                    else:
                        break
                side.append(p)
            return side

        lower = hull_side(pts)
        upper = hull_side(list(reversed(pts)))
        hull = lower[:-1] + upper[:-1]
        if len(hull) >= 3:
            return hull


def test_pipeline_sound_on_random_equal_area_polygons():
    rng = random.Random(2026)
    for _ in range(4):
        p = random_convex_polygon(rng)
        q = random_convex_polygon(rng)
        ratio = abs(shoelace_area([Vec(*v) for v in p])) / abs(
            shoelace_area([Vec(*v) for v in q])
        )
        q = [(x * ratio, y) for x, y in q]
        d = equidecompose(p, q)
        assert d.report is not None and d.report.all_passed
