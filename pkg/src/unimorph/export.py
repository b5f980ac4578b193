"""SVG animation and CSV step tables."""

from __future__ import annotations

import csv
import io as _io
from fractions import Fraction

from .geom import Vector, dot, sqrt_floor
from .morph import AnyDirection, Direction, Morph

SEGMENT_SECONDS = 1.0


def _frame_box(m: Morph):
    xs = [float(p[0]) for k in m.keyframes for p in k.values()]
    ys = [float(p[1]) for k in m.keyframes for p in k.values()]
    return min(xs), min(ys), max(xs), max(ys)


def to_svg(m: Morph, size: int = 600) -> str:
    """Animated SVG: one linear segment per step, equal duration each.

    With zero steps the picture is static.
    """
    x0, y0, x1, y1 = _frame_box(m)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * span

    def sx(x):
        return (float(x) - x0 + pad) / (span + 2 * pad) * size

    def sy(y):
        # svg y grows downward
        return (y1 - float(y) + pad) / (span + 2 * pad) * size

    k = m.steps
    total = k * SEGMENT_SECONDS
    times = ";".join(f"{i / k:.6f}" for i in range(k + 1)) if k else ""
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<!-- {k} steps -->']

    def anim(attr, values):
        if not k:
            return ""
        vals = ";".join(f"{v:.3f}" for v in values)
        return (f'<animate attributeName="{attr}" dur="{total}s" values="{vals}" '
                f'keyTimes="{times}" calcMode="linear" fill="freeze" repeatCount="indefinite"/>')

    first = m.keyframes[0]
    for u, v in m.triangulation.edges:
        xs_u = [sx(f[u][0]) for f in m.keyframes]
        ys_u = [sy(f[u][1]) for f in m.keyframes]
        xs_v = [sx(f[v][0]) for f in m.keyframes]
        ys_v = [sy(f[v][1]) for f in m.keyframes]
        out.append(f'<line x1="{sx(first[u][0]):.3f}" y1="{sy(first[u][1]):.3f}" '
                   f'x2="{sx(first[v][0]):.3f}" y2="{sy(first[v][1]):.3f}" '
                   f'stroke="black" stroke-width="1">'
                   + anim("x1", xs_u) + anim("y1", ys_u) + anim("x2", xs_v) + anim("y2", ys_v)
                   + "</line>")
    for v in m.triangulation.vertices:
        cx = [sx(f[v][0]) for f in m.keyframes]
        cy = [sy(f[v][1]) for f in m.keyframes]
        out.append(f'<circle cx="{cx[0]:.3f}" cy="{cy[0]:.3f}" r="3" fill="crimson">'
                   + anim("cx", cx) + anim("cy", cy) + "</circle>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _direction_text(d) -> str:
    if isinstance(d, AnyDirection):
        return "any"
    if isinstance(d, Direction):
        return f"({d.vector[0]}, {d.vector[1]})"
    return f"not unidirectional ({d.u}, {d.v})"


def max_displacement(a, b) -> Fraction:
    """Largest vertex displacement, rounded down to a dyadic rational."""
    best = Fraction(0)
    for v, p in a.items():
        d = Vector(b[v][0] - p[0], b[v][1] - p[1])
        best = max(best, dot(d, d))
    return sqrt_floor(best, 20)


def to_csv(m: Morph) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf)
    w.writerow(["index", "direction", "max_displacement"])
    for i, d in enumerate(m.directions()):
        disp = max_displacement(m.keyframes[i], m.keyframes[i + 1])
        w.writerow([i, _direction_text(d), f"{float(disp):.9g}"])
    return buf.getvalue()
