"""Tiny SVG renderings of 2D lattice polytopes.

Hand-rolled string assembly on purpose: the figures are diagnostic aids
(polygon outline, lattice-point dots, barycenter crosses) and a drawing
dependency would dwarf them. Coordinates are formatted with a fixed number
of decimals so regenerated files are byte-identical.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

SCALE = 60.0
MARGIN = 0.7


def _f(x: float) -> str:
    return f"{x:.2f}"


def _order_boundary(vertices: Sequence[Sequence[Fraction]]) -> list[tuple[float, float]]:
    """Vertices of a convex polygon in counterclockwise order."""
    pts = [(float(v[0]), float(v[1])) for v in vertices]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def polytope_figure(
    outline: Sequence[Sequence],
    dots: Iterable[Sequence] = (),
    crosses: Iterable[Sequence] = (),
    inner_outline: Sequence[Sequence] = (),
) -> str:
    """SVG for a polygon with optional lattice dots, cross marks and a second
    (inner) polygon such as a barycentric hull."""
    all_pts = [tuple(map(float, p)) for p in list(outline) + list(dots) + list(crosses)]
    if not all_pts:
        raise ValueError("nothing to draw")
    if any(len(p) != 2 for p in all_pts):
        raise ValueError("figures are two-dimensional")
    xs = [p[0] for p in all_pts]
    ys = [p[1] for p in all_pts]
    x0, x1 = min(xs) - MARGIN, max(xs) + MARGIN
    y0, y1 = min(ys) - MARGIN, max(ys) + MARGIN

    def view(p):
        # SVG y grows downward; flip so the figure reads like the plane.
        return (p[0] - x0) * SCALE, (y1 - p[1]) * SCALE

    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_f(w)} {_f(h)}" '
        f'width="{_f(w)}" height="{_f(h)}">',
        f'<rect width="{_f(w)}" height="{_f(h)}" fill="white"/>',
    ]

    def poly_path(vs, fill, stroke):
        ordered = _order_boundary(vs)
        path = " ".join(f"{_f(x)},{_f(y)}" for x, y in map(view, ordered))
        parts.append(
            f'<polygon points="{path}" fill="{fill}" stroke="{stroke}" stroke-width="2"/>'
        )

    if len(outline) >= 3:
        poly_path(outline, "#eef3ff", "#29527a")
    if len(list(inner_outline)) >= 3:
        poly_path(list(inner_outline), "none", "#b03a2e")

    for p in dots:
        x, y = view((float(p[0]), float(p[1])))
        parts.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="4.00" fill="#1b2631"/>')
    arm = 5.0
    for p in crosses:
        x, y = view((float(p[0]), float(p[1])))
        parts.append(
            f'<path d="M {_f(x - arm)} {_f(y - arm)} L {_f(x + arm)} {_f(y + arm)} '
            f'M {_f(x - arm)} {_f(y + arm)} L {_f(x + arm)} {_f(y - arm)}" '
            f'stroke="#b03a2e" stroke-width="2" fill="none"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(path: str, svg: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
