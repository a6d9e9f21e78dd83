"""Static SVG drawings of line configurations and unit disk placements."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

from .geometry import LineConfig, Placement

ROLE_COLOURS = {
    "PAlpha": "#e6b800",
    "PL": "#1f77b4",
    "PR": "#1f77b4",
    "DiamondTip": "#17becf",
    "LiteralPath": "#2ca02c",
    "EndCycle": "#9467bd",
    "Flag": "#d62728",
}
DEFAULT_COLOUR = "#555555"
MARGIN = Fraction(2)


def _fmt(q: Fraction, scale: int) -> str:
    return f"{float(q * scale):.3f}"


def render_svg(
    lines: LineConfig,
    placement: Placement | None = None,
    roles: Sequence | Mapping | None = None,
    scale: int = 20,
) -> str:
    """Lines in grey, one radius-1 circle per centre, coloured by role kind when roles are given.

    Output depends only on the inputs: vertices are drawn in index order and numbers use a
    fixed format.  The y axis points up as in the plane.
    """
    points = dict(placement.points) if placement else {}
    xs = list(lines.verticals) + [p.x for p in points.values()]
    ys = list(lines.horizontals) + [p.y for p in points.values()]
    xs = xs or [Fraction(0)]
    ys = ys or [Fraction(0)]
    x0, x1 = min(xs) - MARGIN, max(xs) + MARGIN
    y0, y1 = min(ys) - MARGIN, max(ys) + MARGIN
    width, height = (x1 - x0) * scale, (y1 - y0) * scale

    def sx(x):
        return _fmt(x - x0, scale)

    def sy(y):
        return _fmt(y1 - y, scale)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width, 1)}" height="{_fmt(height, 1)}" '
        f'viewBox="0 0 {_fmt(width, 1)} {_fmt(height, 1)}">',
        '<rect width="100%" height="100%" fill="white"/>',
        '<g stroke="#999999" stroke-width="1">',
    ]
    for h in lines.horizontals:
        out.append(f'<line x1="{sx(x0)}" y1="{sy(h)}" x2="{sx(x1)}" y2="{sy(h)}"/>')
    for v in lines.verticals:
        out.append(f'<line x1="{sx(v)}" y1="{sy(y0)}" x2="{sx(v)}" y2="{sy(y1)}"/>')
    out.append("</g>")
    out.append('<g fill-opacity="0.25" stroke-width="1">')
    for v in sorted(points):
        p = points[v]
        kind = None
        if roles is not None:
            role = roles[v]
            kind = role.get("kind") if isinstance(role, Mapping) else getattr(role, "kind", None)
        colour = ROLE_COLOURS.get(kind, DEFAULT_COLOUR)
        title = f"{v}" + (f" {kind}" if kind else "")
        out.append(
            f'<circle cx="{sx(p.x)}" cy="{sy(p.y)}" r="{scale}" fill="{colour}" stroke="{colour}">'
            f"<title>{escape(title)}</title></circle>"
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
