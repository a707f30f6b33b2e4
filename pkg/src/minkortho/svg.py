"""Standalone SVG figures of a C-orthocentric construction.

Circles are drawn as translated, scaled copies of the true unit ball, so in
L_inf they come out as squares and in a polygonal norm as that polygon.
"""

from __future__ import annotations

import math

from .construct import OrthoSystem, construction_bundle
from .norms import NormSpec, unit_vector

LAYERS = ("unitball", "circumcircle", "feuerbach", "triangle", "antitriangle",
          "medial", "euler", "system")
SAMPLES = 256
SIZE = 640.0
PAD = 0.10

_STYLE = {
    "unitball": 'fill="none" stroke="#999999" stroke-dasharray="4 3"',
    "circumcircle": 'fill="none" stroke="#1f77b4"',
    "feuerbach": 'fill="none" stroke="#d62728"',
    "triangle": 'fill="none" stroke="#000000" stroke-width="1.5"',
    "antitriangle": 'fill="none" stroke="#2ca02c"',
    "medial": 'fill="none" stroke="#9467bd" stroke-dasharray="2 2"',
    "euler": 'fill="none" stroke="#ff7f0e" stroke-dasharray="2 2"',
}


def ball_outline(norm: NormSpec):
    verts = norm.ball_vertices
    if verts is not None:
        return list(verts)
    return [unit_vector(norm, 2.0 * math.pi * k / SAMPLES) for k in range(SAMPLES)]


def _circle(outline, center, radius):
    return [center + v * radius for v in outline]


def _shapes(sys: OrthoSystem, layers):
    """(layer, kind, points, label) tuples in drawing order."""
    b = construction_bundle(sys)
    outline = ball_outline(sys.norm)
    out = []
    if "unitball" in layers:
        out.append(("unitball", "closed", outline, None))
    if "circumcircle" in layers:
        out.append(("circumcircle", "closed", _circle(outline, sys.p4, sys.lam), None))
    if "feuerbach" in layers:
        out.append(("feuerbach", "closed", _circle(outline, b.feuerbach.center, b.feuerbach.radius), None))
        for i, v in enumerate(b.six_points):
            tag = f"m{i + 1}" if i < 3 else f"d{i - 2}"
            out.append(("feuerbach", "point", [v], tag))
    if "triangle" in layers:
        out.append(("triangle", "closed", list(sys.vertices), None))
    if "antitriangle" in layers:
        out.append(("antitriangle", "closed", list(b.anti), None))
        for i, v in enumerate(b.anti):
            out.append(("antitriangle", "point", [v], f"p{i + 1}"))
    if "medial" in layers:
        out.append(("medial", "closed", list(b.medial), None))
    if "euler" in layers:
        out.append(("euler", "closed", list(b.euler_points), None))
    if "system" in layers:
        named = [("x1", sys.x1), ("x2", sys.x2), ("x3", sys.x3), ("x4", sys.x4),
                 ("p4", sys.p4), ("q", sys.q), ("g", b.barycenter)]
        for tag, v in named:
            out.append(("system", "point", [v], tag))
    return out


def _f(v: float) -> str:
    s = "%.3f" % v
    return "0.000" if s == "-0.000" else s


def render_svg(sys: OrthoSystem, layers=LAYERS) -> str:
    layers = [l for l in LAYERS if l in set(layers)]
    shapes = _shapes(sys, layers)
    pts = [v for _, _, vs, _ in shapes for v in vs] or list(sys.vertices)
    xs = [v.x for v in pts]
    ys = [v.y for v in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-12)
    x0 = min(xs) - PAD * span
    y1 = max(ys) + PAD * span
    scale = SIZE / ((1.0 + 2.0 * PAD) * span)
    w = (max(xs) - min(xs) + 2.0 * PAD * span) * scale
    h = (max(ys) - min(ys) + 2.0 * PAD * span) * scale

    def tx(v):
        # y axis flipped so the figure reads like the plane
        return (v.x - x0) * scale, (y1 - v.y) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" '
        f'viewBox="0 0 {_f(w)} {_f(h)}">',
        f'<rect width="{_f(w)}" height="{_f(h)}" fill="#ffffff"/>',
    ]
    for layer in layers:
        group = [s for s in shapes if s[0] == layer]
        if not group:
            continue
        lines.append(f'<g id="{layer}">')
        for _, kind, vs, label in group:
            if kind == "closed":
                coords = " ".join(f"{_f(a)},{_f(b)}" for a, b in map(tx, vs))
                lines.append(f'<polygon points="{coords}" {_STYLE[layer]}/>')
            else:
                a, b = tx(vs[0])
                lines.append(f'<circle class="point" cx="{_f(a)}" cy="{_f(b)}" r="3" fill="#000000"/>')
                lines.append(f'<text x="{_f(a + 5)}" y="{_f(b - 5)}" font-size="12" '
                             f'font-family="sans-serif">{label}</text>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
