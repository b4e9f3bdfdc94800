"""Deterministic SVG rendering of refined plane figures.

Closures are drawn as polygons; boundary occupation is drawn with glyphs:
a small half-disk on the occupied side of each edge and an angular sector
at each vertex showing the directions the piece occupies there.  Geometry
stays exact all the way here; coordinates are rounded only when written,
to a fixed number of decimal digits (default 9), so rendering never shares
a precision budget with verification.

The y axis is flipped at serialization so figures appear in conventional
mathematical orientation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

from .algebra import RefinedPolytope
from .cells import Cell
from .equidecomp import Decomposition, ccw_order
from .errors import GeometryError
from .linalg import Vec

__all__ = ["render_svg", "svg_document"]

Drawable = Union[RefinedPolytope, Decomposition]

_PALETTE_STEP = 137  # degrees; coprime to 360, spreads hues evenly


def _fmt(value: float, precision: int) -> str:
    text = f"{value:.{precision}f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _pt(v: Vec, precision: int) -> str:
    return f"{_fmt(float(v[0]), precision)},{_fmt(-float(v[1]), precision)}"


def _xy(x: float, y: float, precision: int) -> str:
    return f"{_fmt(x, precision)},{_fmt(-y, precision)}"


def _cell_vertices(cell: Cell) -> list[Vec]:
    return ccw_order(cell.closure().vertex_positions())


def _unit(dx: float, dy: float) -> tuple[float, float]:
    norm = (dx * dx + dy * dy) ** 0.5
    return (dx / norm, dy / norm) if norm else (0.0, 0.0)


def _half_disk(mid: Vec, edge: Vec, r: float, precision: int) -> str:
    """Half-disk at mid with its flat side along edge, bulging to the left
    of the edge direction (the interior side for counterclockwise cycles)."""
    dx, dy = _unit(float(edge[0]), float(edge[1]))
    mx, my = float(mid[0]), float(mid[1])
    p1 = (mx - r * dx, my - r * dy)
    p2 = (mx + r * dx, my + r * dy)
    apex = (mx - r * dy, my + r * dx)
    # Screen coordinates flip y; the sweep flag follows the apex side.
    ux, uy = p2[0] - p1[0], -(p2[1] - p1[1])
    wx, wy = apex[0] - p1[0], -(apex[1] - p1[1])
    flag = 1 if ux * wy - uy * wx < 0 else 0
    return (
        f'<path d="M {_xy(*p1, precision)} '
        f"A {_fmt(r, precision)} {_fmt(r, precision)} 0 0 {flag} "
        f'{_xy(*p2, precision)} Z"/>'
    )


def _sector(v: Vec, toward_next: Vec, toward_prev: Vec, r: float, precision: int) -> str:
    """Angular sector at a vertex spanning the interior directions, from the
    outgoing edge counterclockwise to the incoming one."""
    ax, ay = _unit(float(toward_next[0]), float(toward_next[1]))
    bx, by = _unit(float(toward_prev[0]), float(toward_prev[1]))
    vx, vy = float(v[0]), float(v[1])
    p1 = (vx + r * ax, vy + r * ay)
    p2 = (vx + r * bx, vy + r * by)
    # Counterclockwise in math coordinates is sweep 0 on the flipped axis;
    # convex corners never need the large-arc flag.
    return (
        f'<path d="M {_xy(vx, vy, precision)} L {_xy(*p1, precision)} '
        f"A {_fmt(r, precision)} {_fmt(r, precision)} 0 0 0 "
        f'{_xy(*p2, precision)} Z"/>'
    )


def _cell_markup(cell: Cell, pts: list[Vec], r: float, precision: int, fill: str) -> list[str]:
    out = [
        f'<polygon points="{" ".join(_pt(p, precision) for p in pts)}" '
        f'fill="{fill}" fill-opacity="0.35" stroke="black" stroke-width="{_fmt(r / 4, precision)}"/>'
    ]
    n = len(pts)
    glyphs: list[str] = []
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        glyphs.append(_half_disk((p + q).scale(Fraction(1, 2)), q - p, r, precision))
        glyphs.append(_sector(p, q - p, pts[i - 1] - p, r, precision))
    out.append(f'<g fill="{fill}" stroke="none">')
    out.extend(glyphs)
    out.append("</g>")
    return out


def _polytope_markup(p: RefinedPolytope, r: float, precision: int, fill: str) -> list[str]:
    if not p.cells:
        return ["<g></g>"]
    out = ["<g>"]
    for cell in p.cells:
        pts = _cell_vertices(cell)
        if len(pts) >= 3:
            out.extend(_cell_markup(cell, pts, r, precision, fill))
        elif len(pts) == 2:
            out.append(
                f'<line x1="{_fmt(float(pts[0][0]), precision)}" y1="{_fmt(-float(pts[0][1]), precision)}" '
                f'x2="{_fmt(float(pts[1][0]), precision)}" y2="{_fmt(-float(pts[1][1]), precision)}" '
                f'stroke="{fill}" stroke-width="{_fmt(r / 2, precision)}"/>'
            )
    out.append("</g>")
    return out


def _hue(i: int) -> str:
    return f"hsl({(i * _PALETTE_STEP) % 360},70%,55%)"


def _gather_points(obj: Drawable) -> list[Vec]:
    if isinstance(obj, Decomposition):
        pts: list[Vec] = []
        for piece in list(obj.pieces_p) + list(obj.pieces_q):
            pts.extend(_gather_points(piece))
        return pts
    pts = []
    for cell in obj.cells:
        if cell.carrier.ambient_dim != 2:
            raise GeometryError("rendering needs plane figures")
        piece = cell.closure()
        if not piece.is_bounded():
            raise GeometryError("rendering needs bounded figures")
        pts.extend(piece.vertex_positions())
    return pts


def svg_document(
    objects: Sequence[Drawable], precision: int = 9
) -> str:
    """Deterministic SVG text for polytopes and decompositions.

    Rank-2 polytopes each get one group; decompositions draw source and
    target pieces with matching fill colors per pair."""
    all_pts: list[Vec] = []
    for obj in objects:
        all_pts.extend(_gather_points(obj))
    if all_pts:
        xs = [float(p[0]) for p in all_pts]
        ys = [-float(p[1]) for p in all_pts]
        lo_x, hi_x = min(xs), max(xs)
        lo_y, hi_y = min(ys), max(ys)
    else:
        lo_x = lo_y = 0.0
        hi_x = hi_y = 1.0
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    r = span * 0.025
    pad = span * 0.08 + r
    view = (
        f"{_fmt(lo_x - pad, precision)} {_fmt(lo_y - pad, precision)} "
        f"{_fmt(hi_x - lo_x + 2 * pad, precision)} {_fmt(hi_y - lo_y + 2 * pad, precision)}"
    )
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}">',
    ]
    color = 0
    for obj in objects:
        if isinstance(obj, Decomposition):
            lines.append('<g class="decomposition">')
            for group in (obj.pieces_p, obj.pieces_q):
                lines.append("<g>")
                for i, piece in enumerate(group):
                    lines.extend(_polytope_markup(piece, r, precision, _hue(i)))
                lines.append("</g>")
            lines.append("</g>")
        else:
            lines.extend(_polytope_markup(obj, r, precision, _hue(color)))
            color += 1
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(
    objects: Sequence[Drawable], path: Optional[str] = None, precision: int = 9
) -> str:
    """Render to SVG text; when path is given, also write the file."""
    text = svg_document(objects, precision)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
