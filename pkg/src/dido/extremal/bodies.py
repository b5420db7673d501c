"""Closed-form solution bodies, discretized on a direction grid.

Arcs of radius ``alpha`` are represented by chains of edges of the grid
ball scaled by ``alpha`` (each edge ``alpha * 2 tan(pi/n)`` long, normal on
the grid).  This keeps every measure identity cellwise exact, so optimality
certificates can be checked to rounding error instead of to quadrature
error.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from ..geometry import (
    ConvexFigure,
    DirectionGrid,
    _angle,
    disk,
    equilateral_triangle,
    minkowski_sum,
    segment,
)
from ..measures import DiscreteMeasure

__all__ = ["bulge_body", "triangle_bulge_body", "lens_2d", "stadium", "arc_centers"]


def _tangent(theta: float) -> np.ndarray:
    return np.array([-math.sin(theta), math.cos(theta)])


def bulge_body(x0: ConvexFigure, alpha: float, grid: DirectionGrid) -> Tuple[ConvexFigure, DiscreteMeasure]:
    """Smallest-breadth-per-area body around ``x0`` built from arcs of radius ``alpha``.

    Every edge of ``x0`` is replaced by an arc of radius ``alpha`` through
    its endpoints; the vertices of ``x0`` stay corners of the result.
    Returns the body and the contact measure: the part of ``alpha`` times
    the grid ball measure not used by the arcs, which sits on normals
    where the body touches ``x0`` at a vertex.

    Edge normals of ``x0`` must be grid directions.  Raises ``ValueError``
    ("non-convex bulge") when ``alpha`` is too small for the arcs to fit.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    n = grid.n
    w = grid.cell_weight
    delta = grid.step
    if x0.dim == 0:
        body = disk(alpha, center=x0.vertices[0], segments=n)
        return body, DiscreteMeasure()

    V = x0.vertices
    E = x0.edges
    k = len(E)
    idx = []
    for e in E:
        i = grid.index(_angle((e[1], -e[0])), atol=1e-9)
        if i is None:
            raise ValueError("edge normals of the container must lie on the grid")
        idx.append(i)

    unit = alpha * w
    ms, Ls = [], []
    for e in E:
        s = float(np.hypot(*e))
        # chord of 2m+1 chain cells: alpha*w*sin((m+1/2)delta)/sin(delta/2)
        m = -1
        while True:
            c_next = unit * math.sin((m + 1.5) * delta) / math.sin(delta / 2)
            if (m + 2) * delta >= math.pi / 2 or c_next > s:
                break
            m += 1
        c_m = 0.0 if m < 0 else unit * math.sin((m + 0.5) * delta) / math.sin(delta / 2)
        ang = (m + 1) * delta
        if ang >= math.pi / 2:
            raise ValueError("non-convex bulge: arc radius too small for the edge")
        L = (s - c_m) / (2.0 * math.cos(ang))
        ms.append(m)
        Ls.append(L)

    # arcs on neighbouring edges must not overlap in normal angle
    for j in range(k):
        ext = (idx[j] - idx[j - 1]) % n
        if ms[j - 1] + ms[j] + 2 > ext:
            raise ValueError("non-convex bulge: neighbouring arcs overlap")

    cells = np.zeros(n)
    chain = np.zeros(n, dtype=bool)
    pts = []
    for j in range(k):
        m, L, i0 = ms[j], Ls[j], idx[j]
        pieces = [((i0 - m - 1) % n, L)]
        pieces += [((i0 + t) % n, unit) for t in range(-m, m + 1)]
        pieces += [((i0 + m + 1) % n, L)]
        for t in range(-m, m + 1):
            chain[(i0 + t) % n] = True
        p = V[j].astype(float).copy()
        pts.append(p.copy())
        for cell, length in pieces:
            cells[cell] += length
            p = p + length * _tangent(cell * delta)
            pts.append(p.copy())
        # the walk must land on the next vertex of x0
        end = V[(j + 1) % k]
        if np.hypot(*(p - end)) > 1e-9 * max(1.0, x0.diameter):
            raise RuntimeError("internal error: arc chain does not close")
    cert = np.where(chain, 0.0, unit - cells)
    if np.any(cert < -1e-9 * unit):
        raise ValueError("non-convex bulge: arc radius too small")
    cert = np.clip(cert, 0.0, None)
    body = ConvexFigure(pts, check=False)
    return body, DiscreteMeasure.from_grid(grid, cert, drop_below=1e-15 * unit)


def arc_centers(x0: ConvexFigure, alpha: float) -> np.ndarray:
    """Centers of the circles of radius ``alpha`` through the endpoints of each edge (inward side)."""
    V = x0.vertices
    E = x0.edges
    out = []
    for p, e in zip(V, E):
        s = float(np.hypot(*e))
        if alpha < s / 2:
            raise ValueError("radius below half the edge length")
        nrm = np.array([e[1], -e[0]]) / s
        out.append(p + e / 2 - math.sqrt(alpha * alpha - s * s / 4) * nrm)
    return np.array(out)


def triangle_bulge_body(side: float, alpha: float, grid: DirectionGrid = DirectionGrid(360)) -> ConvexFigure:
    """Equilateral triangle (centroid at the origin) with three circular slices of radius ``alpha``.

    ``alpha`` equal to the circumradius ``side/sqrt(3)`` gives the circumdisk;
    large ``alpha`` flattens the slices back onto the triangle.
    """
    if side <= 0:
        raise ValueError("side must be positive")
    if alpha < side / math.sqrt(3.0) * (1 - 1e-12):
        raise ValueError("non-convex bulge: alpha below the circumradius")
    if grid.n % 12:
        raise ValueError("triangle edge normals need a grid size divisible by 12")
    return bulge_body(equilateral_triangle(side), alpha, grid)[0]


def lens_2d(a: float, r: float, grid: DirectionGrid = DirectionGrid(360)) -> ConvexFigure:
    """Symmetric lens through ``(-a, 0)`` and ``(a, 0)``: the intersection of two disks of radius ``r``
    centered at ``(0, +-sqrt(r^2 - a^2))``.

    ``r = a`` gives the disk of radius ``a``; ``r -> infinity`` collapses onto the segment.
    """
    if a <= 0:
        raise ValueError("half-width must be positive")
    if r < a * (1 - 1e-12):
        raise ValueError("infeasible radius: r must be at least a")
    if grid.n % 4:
        raise ValueError("lens needs a grid size divisible by 4")
    return bulge_body(segment((-a, 0.0), (a, 0.0)), r, grid)[0]


def stadium(r: float, length: float, grid: DirectionGrid = DirectionGrid(360)) -> ConvexFigure:
    """Minkowski sum of a (grid) disk of radius ``r`` and a horizontal segment of the given length."""
    if r <= 0 or length < 0:
        raise ValueError("need r > 0 and length >= 0")
    d = disk(r, segments=grid.n)
    if length == 0:
        return d
    return minkowski_sum(d, segment((-length / 2, 0.0), (length / 2, 0.0)))
