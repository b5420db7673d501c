"""Deterministic SVG drawings of figures and solved problems.

All coordinates are printed with six decimals; identical inputs give
byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .geometry import ConvexFigure
from .measures import DiscreteMeasure

__all__ = ["RenderStyle", "render_svg", "OVERLAYS"]

OVERLAYS = ("container", "centers", "atoms")


@dataclass
class RenderStyle:
    stroke_width: float = 0.01  # relative to the drawing's largest extent
    fill: bool = True
    padding: float = 0.08  # relative to the largest extent
    size: int = 480  # pixel width and height of the viewport
    overlays: Sequence[str] = field(default_factory=lambda: list(OVERLAYS))

    def __post_init__(self):
        if self.stroke_width <= 0 or self.padding < 0 or self.size <= 0:
            raise ValueError("render style needs positive dimensions")
        bad = [o for o in self.overlays if o not in OVERLAYS]
        if bad:
            raise ValueError(f"unknown overlay {bad[0]!r}; choose from {', '.join(OVERLAYS)}")


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _path(v: np.ndarray, close: bool = True) -> str:
    parts = [f"M {_f(v[0, 0])} {_f(-v[0, 1])}"]
    parts += [f"L {_f(p[0])} {_f(-p[1])}" for p in v[1:]]
    if close and len(v) > 2:
        parts.append("Z")
    return " ".join(parts)


def render_svg(body: ConvexFigure, style: Optional[RenderStyle] = None, *, container: Optional[ConvexFigure] = None,
               centers: Optional[np.ndarray] = None, atoms: Optional[DiscreteMeasure] = None) -> str:
    """SVG document showing ``body`` and the requested overlays.

    The y axis points up (the drawing is mirrored into SVG's downward axis).
    Overlays are drawn only when listed in the style and supplied here.
    """
    style = style or RenderStyle()
    show = set(style.overlays)
    pts = [body.vertices]
    if container is not None and "container" in show:
        pts.append(container.vertices)
    if centers is not None and len(centers) and "centers" in show:
        pts.append(np.asarray(centers, dtype=float).reshape(-1, 2))
    allp = np.vstack(pts)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    extent = float((hi - lo).max())
    if not extent > 0:
        raise ValueError("degenerate viewport: nothing with positive extent to draw")
    arrow = 0.15 * extent
    pad = style.padding * extent + (arrow if atoms is not None and len(atoms) and "atoms" in show else 0.0)
    x0, y0 = lo[0] - pad, -(hi[1] + pad)
    w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
    sw = style.stroke_width * extent

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.size}" height="{style.size}" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">',
    ]
    fill = "#cfe3f7" if style.fill else "none"
    out.append(f'<path class="body" d="{_path(body.vertices)}" fill="{fill}" stroke="#1f4e79" '
               f'stroke-width="{_f(sw)}"/>')
    if container is not None and "container" in show:
        out.append(f'<path class="container" d="{_path(container.vertices)}" fill="none" stroke="#444444" '
                   f'stroke-width="{_f(sw)}" stroke-dasharray="{_f(3 * sw)} {_f(2 * sw)}"/>')
    if centers is not None and len(centers) and "centers" in show:
        for k, c in enumerate(np.asarray(centers, dtype=float).reshape(-1, 2), start=1):
            out.append(f'<circle class="center" cx="{_f(c[0])}" cy="{_f(-c[1])}" r="{_f(1.5 * sw)}" fill="#444444"/>')
            out.append(f'<text x="{_f(c[0] + 2 * sw)}" y="{_f(-c[1] - 2 * sw)}" font-size="{_f(6 * sw)}">O{k}</text>')
    if atoms is not None and len(atoms) and "atoms" in show:
        wmax = float(atoms.weights.max())
        U = atoms.units
        base = body.vertices[np.argmax(U @ body.vertices.T, axis=1)]
        for p, u, wt in zip(base, U, atoms.weights):
            q = p + arrow * (wt / wmax) * u
            out.append(f'<line class="atom" x1="{_f(p[0])}" y1="{_f(-p[1])}" x2="{_f(q[0])}" y2="{_f(-q[1])}" '
                       f'stroke="#b22222" stroke-width="{_f(0.5 * sw)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
