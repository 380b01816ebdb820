"""SVG drawings of real line arrangements.

Two views: ``affine`` clips each line to a rectangle of the chart ``z = 1``;
``disk`` projects the upper hemisphere orthographically, so the line at
infinity becomes the boundary circle.  Floats are used here and nowhere else.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

from .arrangement import LineArrangement
from .errors import RenderError

_EPS = 1e-12


def float_lines(A: LineArrangement) -> list[tuple[float, float, float]]:
    if A.float_lines is not None:
        return [tuple(f) for f in A.float_lines]
    if A.p is not None:
        raise RenderError("arrangement over GF(p) carries no float approximations; cannot draw it")
    return [tuple(float(c) for c in L.coords) for L in A.lines]


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _is_infinity(L) -> bool:
    return abs(L[0]) < _EPS and abs(L[1]) < _EPS


def auto_box(lines: Sequence[tuple[float, float, float]]) -> tuple[float, float, float, float]:
    """Square box around the affine intersection points, with a margin."""
    r = 1.0
    for L, M in combinations(lines, 2):
        x, y, z = (L[1] * M[2] - L[2] * M[1], L[2] * M[0] - L[0] * M[2], L[0] * M[1] - L[1] * M[0])
        if abs(z) > 1e-9:
            r = max(r, abs(x / z), abs(y / z))
    r = min(r, 1e6) * 1.25
    return (-r, -r, r, r)


def clip_line(L, box) -> tuple[tuple[float, float], tuple[float, float]] | None:
    """Liang-Barsky clip of ``a x + b y + c = 0`` to ``box = (xmin, ymin, xmax, ymax)``."""
    a, b, c = L
    xmin, ymin, xmax, ymax = box
    n = math.hypot(a, b)
    if n < _EPS:
        return None
    # foot of perpendicular from origin, direction along the line
    x0, y0 = -a * c / (n * n), -b * c / (n * n)
    dx, dy = -b / n, a / n
    t0, t1 = -math.inf, math.inf
    for p, q in ((-dx, x0 - xmin), (dx, xmax - x0), (-dy, y0 - ymin), (dy, ymax - y0)):
        if abs(p) < _EPS:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    if t0 > t1:
        return None
    return (x0 + t0 * dx, y0 + t0 * dy), (x0 + t1 * dx, y0 + t1 * dy)


def _disk_path(L, scale: float, samples: int = 64) -> list[tuple[float, float]]:
    a, b, c = L[0], L[1], L[2] / scale
    n = math.sqrt(a * a + b * b + c * c)
    a, b, c = a / n, b / n, c / n
    # u: horizontal unit vector in the plane; v completes it with v_z >= 0
    h = math.hypot(a, b)
    u = (-b / h, a / h, 0.0)
    v = (b * u[2] - c * u[1], c * u[0] - a * u[2], a * u[1] - b * u[0])
    if v[2] < 0:
        v = tuple(-x for x in v)
    pts = []
    for k in range(samples + 1):
        t = math.pi * k / samples
        pts.append((math.cos(t) * u[0] + math.sin(t) * v[0], math.cos(t) * u[1] + math.sin(t) * v[1]))
    return pts


def render_svg(A: LineArrangement, *, mode: str = "affine", size: int = 400,
               box: tuple[float, float, float, float] | None = None, scale: float = 1.0,
               stroke: str = "black", stroke_width: float = 1.0) -> str:
    """Deterministic SVG 1.1 text for ``A``.

    ``box`` is the affine viewport (default: fitted to the intersection points);
    ``scale`` shrinks affine coordinates before projecting in ``disk`` mode.
    """
    if mode not in ("affine", "disk"):
        raise RenderError(f"unknown mode {mode!r}")
    lines = float_lines(A)
    pad = 10
    total = size + 2 * pad
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" '
        f'viewBox="0 0 {total} {total}">',
    ]
    if A.label:
        out.append(f"<title>{_escape(A.label)}</title>")
    out.append(f'<g fill="none" stroke="{stroke}" stroke-width="{_fmt(stroke_width)}">')
    if mode == "affine":
        box = box or auto_box(lines)
        xmin, ymin, xmax, ymax = box
        sx, sy = size / (xmax - xmin), size / (ymax - ymin)

        def to_px(x, y):
            return pad + (x - xmin) * sx, pad + (ymax - y) * sy

        for i, L in enumerate(lines):
            if _is_infinity(L):
                r = size / 2
                out.append(f'<circle class="line-at-infinity" data-index="{i}" cx="{_fmt(pad + r)}" '
                           f'cy="{_fmt(pad + r)}" r="{_fmt(r)}" stroke-dasharray="4 3"/>')
                continue
            seg = clip_line(L, box)
            if seg is None:
                continue
            (x1, y1), (x2, y2) = to_px(*seg[0]), to_px(*seg[1])
            out.append(f'<line data-index="{i}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                       f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    else:
        r = size / 2
        cx = cy = pad + r
        has_inf = False
        for i, L in enumerate(lines):
            if _is_infinity(L):
                has_inf = True
                out.append(f'<circle class="line-at-infinity" data-index="{i}" cx="{_fmt(cx)}" '
                           f'cy="{_fmt(cy)}" r="{_fmt(r)}"/>')
                continue
            pts = _disk_path(L, scale)
            d = " ".join(f"{_fmt(cx + r * x)},{_fmt(cy - r * y)}" for x, y in pts)
            out.append(f'<polyline data-index="{i}" points="{d}"/>')
        if not has_inf:
            out.append(f'<circle class="boundary" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
                       'stroke="gray" stroke-dasharray="2 2"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
