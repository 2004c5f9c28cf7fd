"""SVG picture: the Newton staircase and the subdivided weight fan side by side."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .errors import UnsupportedDimension
from .fan import canonical_subdivision
from .mixed_poly import MixedPolynomial
from .newton import newton_boundary, support_points

PANEL = 360
MARGIN = 30
WIDTH = 2 * PANEL + 3 * MARGIN
HEIGHT = PANEL + 2 * MARGIN


def _num(x: float) -> str:
    return f"{x:.2f}"


def _ray_label(v) -> str:
    if v.p == (1, 0):
        return "E1"
    if v.p == (0, 1):
        return "E2"
    return "(" + ",".join(map(str, v.p)) + ")"


def emit_svg(f: MixedPolynomial) -> bytes:
    if f.n != 2:
        raise UnsupportedDimension(f"plots need n = 2, got n = {f.n}")
    st = newton_boundary(f)
    sub = canonical_subdivision(f)
    pts = support_points(f)
    extent = max(max(x for x, _ in pts), max(y for _, y in pts), 1)
    scale = (PANEL - 20) / extent

    def left(x, y):
        return MARGIN + x * scale, MARGIN + PANEL - y * scale

    on_boundary = set(st.vertices) | {p for e in st.edges for p in e.points}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<g id="newton-polyhedron">',
    ]
    ox, oy = left(0, 0)
    out.append(f'<line class="axis" x1="{_num(ox)}" y1="{_num(oy)}" x2="{_num(ox + PANEL)}" '
               f'y2="{_num(oy)}" stroke="black"/>')
    out.append(f'<line class="axis" x1="{_num(ox)}" y1="{_num(oy)}" x2="{_num(ox)}" '
               f'y2="{_num(oy - PANEL)}" stroke="black"/>')
    chain = [left(*v) for v in st.vertices]
    first, last = chain[0], chain[-1]
    poly = [(MARGIN + PANEL, first[1])] + chain + [(last[0], MARGIN)]
    out.append('<polyline class="boundary" fill="none" stroke="blue" points="'
               + " ".join(f"{_num(x)},{_num(y)}" for x, y in poly) + '"/>')
    for p in sorted(pts):
        x, y = left(*p)
        kind = "boundary" if p in on_boundary else "interior"
        fill = "black" if kind == "boundary" else "white"
        out.append(f'<circle class="support-point {kind}" cx="{_num(x)}" cy="{_num(y)}" r="4" '
                   f'fill="{fill}" stroke="black"><title>{p[0]},{p[1]}</title></circle>')
    out.append("</g>")
    out.append('<g id="fan">')
    fx, fy = 2 * MARGIN + PANEL, MARGIN + PANEL
    for v in sub.vertices:
        norm = (v[0] ** 2 + v[1] ** 2) ** 0.5
        x2 = fx + (PANEL - 40) * v[0] / norm
        y2 = fy - (PANEL - 40) * v[1] / norm
        label = escape(_ray_label(v))
        out.append(f'<line class="ray" x1="{_num(fx)}" y1="{_num(fy)}" x2="{_num(x2)}" '
                   f'y2="{_num(y2)}" stroke="black"/>')
        out.append(f'<text class="ray-label" x="{_num(x2 + 4)}" y="{_num(y2 - 4)}" '
                   f'font-size="12">{label}</text>')
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
