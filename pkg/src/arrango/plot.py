"""SVG pictures of real rank-3 arrangements in the affine chart x3 = 1."""

from __future__ import annotations

import math
from itertools import combinations

from .arrangement import Arrangement

SIZE = 480
MARGIN = 24


def _line_geometry(A: Arrangement):
    """Affine lines a x + b y + c = 0 as floats, plus the index of the ideal line if present."""
    lines = []
    ideal = None
    for k, n in enumerate(A.normals):
        a, b, c = (float(x) for x in n)
        if n[0] == 0 and n[1] == 0:
            ideal = k
            continue
        lines.append((k, a, b, c))
    return lines, ideal


def _radius(lines) -> float:
    r = 1.0
    for _, a, b, c in lines:
        r = max(r, abs(c) / math.hypot(a, b))
    for (_, a1, b1, c1), (_, a2, b2, c2) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if abs(det) > 1e-12:
            x = (b1 * c2 - b2 * c1) / det
            y = (a2 * c1 - a1 * c2) / det
            r = max(r, math.hypot(x, y))
    return 1.25 * r


def _chord(a: float, b: float, c: float, R: float):
    """End points of the line inside the disk of radius R about the origin."""
    norm = math.hypot(a, b)
    d = -c / norm
    px, py = a / norm * d, b / norm * d
    half = math.sqrt(max(R * R - d * d, 0.0))
    tx, ty = -b / norm, a / norm
    return (px - half * tx, py - half * ty), (px + half * tx, py + half * ty)


def plot_svg(A: Arrangement) -> str:
    """Deterministic SVG text: one chord per affine line, a dashed circle for the ideal line."""
    if A.dim != 3 or A.rank != 3:
        raise ValueError("plotting needs an essential arrangement of rank 3")
    if not A.ordered:
        raise ValueError("plotting needs a real arrangement")
    lines, ideal = _line_geometry(A)
    R = _radius(lines)
    scale = (SIZE / 2 - MARGIN) / R
    mid = SIZE / 2

    def pt(x: float, y: float) -> str:
        return f'{mid + scale * x:.3f}', f'{mid - scale * y:.3f}'

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for k, a, b, c in lines:
        (x1, y1), (x2, y2) = _chord(a, b, c, R)
        (sx1, sy1), (sx2, sy2) = pt(x1, y1), pt(x2, y2)
        out.append(
            f'<line class="hyperplane" data-index="{k}" x1="{sx1}" y1="{sy1}" x2="{sx2}" y2="{sy2}" '
            'stroke="black" stroke-width="1.5"/>'
        )
    if ideal is not None:
        r = f"{scale * R:.3f}"
        out.append(
            f'<circle class="ideal" data-index="{ideal}" cx="{mid:.3f}" cy="{mid:.3f}" r="{r}" '
            'fill="none" stroke="black" stroke-dasharray="6 4"/>'
        )
        x, y = pt(R * math.cos(math.pi / 4), R * math.sin(math.pi / 4))
        out.append(f'<text x="{x}" y="{y}" font-size="16" dy="-4">∞</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
