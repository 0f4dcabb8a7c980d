"""Plain SVG rendering of a set of desirable gambles on two outcomes."""

from __future__ import annotations

import numpy as np

from .gambles import DimensionError
from .operators import DesirSet, GeneratedSet

SIZE = 600
MARGIN = 50
EXTENT = 3.0
IN_COLOUR = "#4a7ab5"
UNKNOWN_COLOUR = "#c8c8c8"


def _px(x: float) -> float:
    return MARGIN + (x + EXTENT) / (2 * EXTENT) * SIZE


def _py(y: float) -> float:
    return MARGIN + (EXTENT - y) / (2 * EXTENT) * SIZE


def membership_grid(D: DesirSet, resolution: int) -> np.ndarray:
    """Membership codes at cell centres; row 0 is the top of the picture."""
    step = 2 * EXTENT / resolution
    centres = -EXTENT + step * (np.arange(resolution) + 0.5)
    xs, ys = np.meshgrid(centres, centres[::-1])
    F = np.column_stack([xs.ravel(), ys.ravel()])
    return D.member_codes(F).reshape(resolution, resolution)


def render_svg(D: DesirSet, resolution: int = 300, labels=("w1", "w2"), marks=None, title: str = "") -> str:
    if D.n != 2:
        raise DimensionError("plots need a space with two outcomes")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    codes = membership_grid(D, resolution)
    cell = SIZE / resolution
    total = SIZE + 2 * MARGIN
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" viewBox="0 0 {total} {total}">',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="white" stroke="black"/>',
    ]
    for code, colour in ((1, IN_COLOUR), (-1, UNKNOWN_COLOUR)):
        out.append(f'<g fill="{colour}" stroke="none">')
        for r in range(resolution):
            row = codes[r] == code
            c = 0
            while c < resolution:
                if not row[c]:
                    c += 1
                    continue
                start = c
                while c < resolution and row[c]:
                    c += 1
                out.append(
                    f'<rect x="{MARGIN + start * cell:.3f}" y="{MARGIN + r * cell:.3f}" '
                    f'width="{(c - start) * cell:.3f}" height="{cell:.3f}"/>'
                )
        out.append("</g>")
    # axes through the origin with integer ticks
    out.append('<g stroke="black" stroke-width="1">')
    out.append(f'<line x1="{_px(-EXTENT)}" y1="{_py(0)}" x2="{_px(EXTENT)}" y2="{_py(0)}"/>')
    out.append(f'<line x1="{_px(0)}" y1="{_py(-EXTENT)}" x2="{_px(0)}" y2="{_py(EXTENT)}"/>')
    for t in range(-int(EXTENT), int(EXTENT) + 1):
        out.append(f'<line x1="{_px(t)}" y1="{_py(0) - 4}" x2="{_px(t)}" y2="{_py(0) + 4}"/>')
        out.append(f'<line x1="{_px(0) - 4}" y1="{_py(t)}" x2="{_px(0) + 4}" y2="{_py(t)}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="12" fill="black">')
    for t in range(-int(EXTENT), int(EXTENT) + 1):
        if t:
            out.append(f'<text x="{_px(t)}" y="{_py(0) + 18}" text-anchor="middle">{t}</text>')
            out.append(f'<text x="{_px(0) - 8}" y="{_py(t) + 4}" text-anchor="end">{t}</text>')
    out.append(f'<text x="{_px(EXTENT)}" y="{_py(0) - 8}" text-anchor="end">f({labels[0]})</text>')
    out.append(f'<text x="{_px(0) + 8}" y="{_py(EXTENT) + 14}">f({labels[1]})</text>')
    if title:
        out.append(f'<text x="{total / 2}" y="{MARGIN / 2}" text-anchor="middle" font-size="14">{title}</text>')
    out.append("</g>")
    if isinstance(D, GeneratedSet):
        out.append('<g fill="#d62728" stroke="black" stroke-width="0.5">')
        for g in D.generators:
            if np.all(np.abs(g) <= EXTENT):
                out.append(f'<circle cx="{_px(g[0]):.3f}" cy="{_py(g[1]):.3f}" r="4"/>')
        out.append("</g>")
    for name, g in (marks or {}).items():
        x, y = _px(float(g[0])), _py(float(g[1]))
        out.append(
            f'<g stroke="#2ca02c" stroke-width="2"><line x1="{x - 5:.3f}" y1="{y - 5:.3f}" x2="{x + 5:.3f}" y2="{y + 5:.3f}"/>'
            f'<line x1="{x - 5:.3f}" y1="{y + 5:.3f}" x2="{x + 5:.3f}" y2="{y - 5:.3f}"/></g>'
        )
        out.append(f'<text x="{x + 7:.3f}" y="{y - 7:.3f}" font-family="sans-serif" font-size="11">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
