"""Planar convex figures and their support functions.

A figure is stored as its counterclockwise vertex chain.  Points and segments
are admitted (one or two vertices) so that Minkowski arithmetic stays closed;
operations that need a surface-area measure reject them later on.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .lp import find_feasible

__all__ = [
    "DirectionGrid",
    "ConvexFigure",
    "SupportVector",
    "direction",
    "support_eval",
    "sample_support",
    "minkowski_sum",
    "minkowski_combination",
    "scale",
    "translate",
    "contains",
    "contains_up_to_translation",
    "breadth",
    "integral_breadth",
    "polygon_from_support",
    "regular_polygon",
    "disk",
    "unit_ball",
    "segment",
    "point",
    "square",
    "equilateral_triangle",
    "hausdorff_distance",
]

TWO_PI = 2.0 * math.pi
# relative tolerance for geometric predicates (times instance diameter)
GEOM_TOL = 1e-9
# turns below this angle (radians) count as collinear
ANGLE_TOL = 1e-12


def direction(theta: float) -> np.ndarray:
    """Unit vector at angle ``theta``."""
    return np.array([math.cos(theta), math.sin(theta)])


def _angle(v) -> float:
    a = math.atan2(v[1], v[0])
    if a < 0:
        a += TWO_PI
    if a >= TWO_PI:
        a -= TWO_PI
    return a


def _angles(e: np.ndarray) -> np.ndarray:
    """Vectorized :func:`_angle` over the rows of ``e``."""
    a = np.mod(np.arctan2(e[:, 1], e[:, 0]), TWO_PI)
    a[a >= TWO_PI] -= TWO_PI
    return a


@dataclass(frozen=True)
class DirectionGrid:
    """``n`` equally spaced directions ``2*pi*i/n``; ``n`` even so the grid is antipodally closed."""

    n: int = 360

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 8 or self.n % 2:
            raise ValueError(f"grid size must be an even integer >= 8, got {self.n!r}")

    @property
    def step(self) -> float:
        return TWO_PI / self.n

    @property
    def angles(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n

    @property
    def units(self) -> np.ndarray:
        a = self.angles
        return np.column_stack([np.cos(a), np.sin(a)])

    @property
    def cell_weight(self) -> float:
        """Edge length per cell of the grid unit ball (circumscribed ``n``-gon)."""
        return 2.0 * math.tan(math.pi / self.n)

    def index(self, theta: float, atol: float = 1e-9) -> Optional[int]:
        """Grid index of ``theta``, or ``None`` if it is not a grid direction."""
        k = theta / self.step
        i = round(k)
        if abs(k - i) * self.step > atol:
            return None
        return int(i) % self.n

    def opposite(self, i: int) -> int:
        return (i + self.n // 2) % self.n


class ConvexFigure:
    """Convex polygon (or segment, or point) with counterclockwise vertices.

    The constructor expects an already convex, counterclockwise chain;
    duplicate and collinear vertices are merged.  Use :meth:`hull` for an
    arbitrary point cloud.
    """

    __slots__ = ("_v",)

    def __init__(self, vertices, *, check: bool = True):
        v = np.array(vertices, dtype=float).reshape(-1, 2)
        if len(v) == 0:
            raise ValueError("empty figure")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite vertex coordinates")
        v = _canonical_chain(v, check=check)
        v.setflags(write=False)
        self._v = v

    @classmethod
    def hull(cls, points) -> "ConvexFigure":
        pts = np.array(points, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise ValueError("empty figure")
        return cls(_monotone_chain(pts), check=False)

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    @property
    def dim(self) -> int:
        """0 for a point, 1 for a segment, 2 for a polygon with positive area."""
        return min(len(self._v) - 1, 2)

    @property
    def edges(self) -> np.ndarray:
        """Edge vectors ``v[k+1] - v[k]`` (a segment has two opposite edges)."""
        v = self._v
        if len(v) == 1:
            return np.zeros((0, 2))
        return np.roll(v, -1, axis=0) - v

    @property
    def diameter(self) -> float:
        v = self._v
        if len(v) == 1:
            return 0.0
        sq = (v ** 2).sum(1)
        d2 = sq[:, None] + sq[None, :] - 2.0 * (v @ v.T)
        return float(np.sqrt(max(float(d2.max()), 0.0)))

    @property
    def centroid(self) -> np.ndarray:
        v = self._v
        if len(v) < 3:
            return v.mean(axis=0)
        x, y = v[:, 0], v[:, 1]
        x1, y1 = np.roll(x, -1), np.roll(y, -1)
        cr = x * y1 - x1 * y
        a = cr.sum() / 2.0
        return np.array([((x + x1) * cr).sum(), ((y + y1) * cr).sum()]) / (6.0 * a)

    def area(self) -> float:
        v = self._v
        if len(v) < 3:
            return 0.0
        x, y = v[:, 0], v[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    def perimeter(self) -> float:
        return float(np.hypot(*self.edges.T).sum()) if len(self._v) > 1 else 0.0

    def support(self, u) -> float:
        return float(np.max(self._v @ np.asarray(u, dtype=float)))

    def support_many(self, units: np.ndarray) -> np.ndarray:
        return np.max(units @ self._v.T, axis=1)

    def edge_normals(self) -> np.ndarray:
        """Outward unit normals, one per edge."""
        e = self.edges
        nrm = np.column_stack([e[:, 1], -e[:, 0]])
        return nrm / np.hypot(nrm[:, 0], nrm[:, 1])[:, None]

    def translate(self, t) -> "ConvexFigure":
        return ConvexFigure(self._v + np.asarray(t, dtype=float), check=False)

    def reflect_x(self) -> "ConvexFigure":
        """Mirror image in the vertical axis ``x = 0``."""
        return ConvexFigure.hull(self._v * np.array([-1.0, 1.0]))

    def __len__(self) -> int:
        return len(self._v)

    def __repr__(self) -> str:
        return f"ConvexFigure({self._v.tolist()!r})"

    def __add__(self, other: "ConvexFigure") -> "ConvexFigure":
        return minkowski_sum(self, other)

    def __rmul__(self, lam: float) -> "ConvexFigure":
        return scale(self, lam)

    def allclose(self, other: "ConvexFigure", tol: Optional[float] = None) -> bool:
        if len(self) != len(other):
            return False
        if tol is None:
            tol = GEOM_TOL * max(1.0, self.diameter)
        return bool(np.all(np.abs(self._v - other._v) <= tol))


def _cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


def _monotone_chain(pts: np.ndarray) -> np.ndarray:
    pts = np.unique(pts, axis=0)
    if len(pts) <= 2:
        return pts
    P = [tuple(p) for p in pts]

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(
                (out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                (p[0] - out[-1][0], p[1] - out[-1][1]),
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(P)
    upper = half(reversed(P))
    return np.array(lower[:-1] + upper[:-1])


def _canonical_chain(v: np.ndarray, check: bool) -> np.ndarray:
    """Merge duplicates/collinear vertices, validate convexity, rotate to a canonical start."""
    if len(v) > 1:
        span = float(np.ptp(v, axis=0).max())
        dup = GEOM_TOL * 1e-3 * max(span, 1e-300)
        step = np.hypot(*np.diff(v, axis=0).T)
        v = np.vstack([v[:1], v[1:][step > dup]])
        while len(v) > 1 and np.hypot(*(v[0] - v[-1])) <= dup:
            v = v[:-1]
    if len(v) >= 3:
        while len(v) >= 3:
            e1 = v - np.roll(v, 1, axis=0)
            e2 = np.roll(v, -1, axis=0) - v
            cr = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
            scale_ = np.hypot(*e1.T) * np.hypot(*e2.T)
            # collinear continuations are dropped
            reflex = cr < -1e-9 * scale_
            if check and np.any(reflex):
                raise ValueError("vertex chain is not convex and counterclockwise")
            straight = (cr <= ANGLE_TOL * scale_) & (np.einsum("ij,ij->i", e1, e2) > 0)
            if not straight.any():
                break
            v = v[~straight]
        if len(v) >= 3:
            area2 = float(np.dot(v[:, 0], np.roll(v[:, 1], -1)) - np.dot(np.roll(v[:, 0], -1), v[:, 1]))
            if area2 <= 0:
                if check and area2 < 0:
                    raise ValueError("vertex chain is not convex and counterclockwise")
                v = _monotone_chain(v)
        if len(v) == 2 or (len(v) >= 3 and _flat(v)):
            v = _segment_ends(v)
    if len(v) == 2:
        v = v[np.lexsort((v[:, 0], v[:, 1]))]
        return np.ascontiguousarray(v)
    if len(v) >= 3:
        # start at the vertex whose outgoing edge has the smallest angle
        e = np.roll(v, -1, axis=0) - v
        ang = _angles(e)
        # an edge pointing just below 2*pi is the horizontal edge after rounding
        ang = np.where(ang > TWO_PI - GEOM_TOL, ang - TWO_PI, ang)
        start = int(np.argmin(ang))
        v = np.roll(v, -start, axis=0)
    return np.ascontiguousarray(v)


def _flat(v: np.ndarray) -> bool:
    c = v.mean(axis=0)
    d = v - c
    _, s, _ = np.linalg.svd(d, full_matrices=False)
    return s[-1] <= GEOM_TOL * max(s[0], 1e-300) * 1e-3


def _segment_ends(v: np.ndarray) -> np.ndarray:
    c = v.mean(axis=0)
    d = v - c
    _, _, vt = np.linalg.svd(d, full_matrices=False)
    t = d @ vt[0]
    return np.array([v[int(np.argmin(t))], v[int(np.argmax(t))]])


# --------------------------------------------------------------------- constructors


def point(p=(0.0, 0.0)) -> ConvexFigure:
    return ConvexFigure([p])


def segment(a, b) -> ConvexFigure:
    return ConvexFigure([a, b])


def square(side: float = 1.0, origin=(0.0, 0.0)) -> ConvexFigure:
    x, y = origin
    return ConvexFigure([(x, y), (x + side, y), (x + side, y + side), (x, y + side)])


def equilateral_triangle(side: float = 1.0, center=(0.0, 0.0)) -> ConvexFigure:
    """Equilateral triangle with horizontal base, centroid at ``center``.

    Edge normals point at -90, 30 and 150 degrees, which lie on every grid
    whose size is a multiple of 12.
    """
    R = side / math.sqrt(3.0)
    c = np.asarray(center, dtype=float)
    pts = [c + R * direction(math.radians(a)) for a in (210.0, 330.0, 90.0)]
    return ConvexFigure(pts)


def regular_polygon(n: int, apothem: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> ConvexFigure:
    """Regular ``n``-gon with outward edge normals at ``phase + 2*pi*i/n``."""
    c = np.asarray(center, dtype=float)
    R = apothem / math.cos(math.pi / n)
    ang = phase + (np.arange(n) - 0.5) * TWO_PI / n
    pts = c + R * np.column_stack([np.cos(ang), np.sin(ang)])
    return ConvexFigure(pts, check=False)


def disk(radius: float = 1.0, center=(0.0, 0.0), segments: int = 360) -> ConvexFigure:
    """Polygonal disk: the regular ``segments``-gon circumscribed about the circle.

    Its support function equals ``radius`` exactly on the grid directions
    ``2*pi*i/segments`` and its surface measure is ``radius`` times the grid
    unit-ball measure, so disk terms match grid cells exactly.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius == 0:
        return point(center)
    return regular_polygon(segments, radius, center)


def unit_ball(grid: DirectionGrid) -> ConvexFigure:
    """The grid realization of the unit ball: support value 1 at every grid direction."""
    return disk(1.0, segments=grid.n)


# --------------------------------------------------------------------- operations


def support_eval(x: ConvexFigure, u) -> float:
    """Support function ``max_v <v, u>``."""
    return x.support(u)


@dataclass(frozen=True)
class SupportVector:
    """Support function sampled on a direction grid."""

    grid: DirectionGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} support values, got shape {vals.shape}")
        object.__setattr__(self, "values", vals)

    def figure(self) -> ConvexFigure:
        return polygon_from_support(self.values, self.grid)

    def is_consistent(self, rtol: float = 1e-9) -> bool:
        """True when the values are the support function of their induced polygon."""
        back = self.figure().support_many(self.grid.units)
        scale_ = max(1.0, float(np.abs(self.values).max()))
        return bool(np.all(np.abs(back - self.values) <= rtol * scale_))

    def __add__(self, other: "SupportVector") -> "SupportVector":
        if other.grid != self.grid:
            raise ValueError("grid mismatch")
        return SupportVector(self.grid, self.values + other.values)


def sample_support(x: ConvexFigure, grid: DirectionGrid) -> SupportVector:
    return SupportVector(grid, x.support_many(grid.units))


def _sorted_edges(x: ConvexFigure):
    e = x.edges
    if len(e) == 0:
        return x.vertices[0], e, np.zeros(0)
    ang = _angles(e)
    start = int(np.argmin(ang))
    return x.vertices[start], np.roll(e, -start, axis=0), np.roll(ang, -start)


def minkowski_sum(x: ConvexFigure, y: ConvexFigure) -> ConvexFigure:
    """Minkowski sum by merging the two edge sequences in angular order."""
    p0, ex, ax = _sorted_edges(x)
    q0, ey, ay = _sorted_edges(y)
    order = np.argsort(np.concatenate([ax, ay]), kind="stable")
    edges = np.concatenate([ex, ey])[order]
    pts = (p0 + q0) + np.vstack([np.zeros((1, 2)), np.cumsum(edges, axis=0)[:-1]]) if len(edges) else \
        np.array([p0 + q0])
    return ConvexFigure(pts, check=False)


def scale(x: ConvexFigure, lam: float) -> ConvexFigure:
    if lam < 0:
        raise ValueError("scale factor must be nonnegative")
    if lam == 0:
        return point((0.0, 0.0))
    return ConvexFigure(x.vertices * lam, check=False)


def minkowski_combination(figures: Sequence[ConvexFigure], weights: Sequence[float]) -> ConvexFigure:
    """``sum_k weights[k] * figures[k]`` in the Minkowski structure."""
    if len(figures) != len(weights) or not figures:
        raise ValueError("need matching, nonempty figure and weight lists")
    out = scale(figures[0], weights[0])
    for f, w in zip(figures[1:], weights[1:]):
        out = minkowski_sum(out, scale(f, w))
    return out


def translate(x: ConvexFigure, t) -> ConvexFigure:
    return x.translate(t)


def _halfplanes(x: ConvexFigure):
    """Outward normals ``N`` and offsets ``c`` with ``x = {p : N p <= c}``."""
    v = x.vertices
    if x.dim == 2:
        N = x.edge_normals()
        return N, np.einsum("ij,ij->i", N, v)
    if x.dim == 1:
        d = v[1] - v[0]
        d = d / np.hypot(*d)
        nrm = np.array([d[1], -d[0]])
        N = np.array([d, -d, nrm, -nrm])
    else:
        N = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    return N, (v @ N.T).max(axis=0)


def contains(x: ConvexFigure, y: ConvexFigure, tol: Optional[float] = None) -> bool:
    """True iff every vertex of ``y`` lies in ``x`` (no translation allowed)."""
    if tol is None:
        tol = GEOM_TOL * max(x.diameter, y.diameter, 1.0)
    N, c = _halfplanes(x)
    return bool(np.all(y.vertices @ N.T <= c + tol))


def contains_up_to_translation(x: ConvexFigure, y: ConvexFigure, tol: Optional[float] = None):
    """A translation ``t`` with ``y + t`` inside ``x``, or ``None``.

    Each supporting half-plane ``<n, p> <= h_x(n)`` of ``x`` gives the linear
    constraint ``<n, t> <= h_x(n) - h_y(n)`` on ``t``.
    """
    if tol is None:
        tol = GEOM_TOL * max(x.diameter, y.diameter, 1.0)
    N, c = _halfplanes(x)
    rhs = c - (y.vertices @ N.T).max(axis=0) + tol
    # shift so t = 0 is the centroid offset; keeps the LP well scaled
    t0 = x.centroid - y.centroid
    rhs = rhs - N @ t0
    if np.all(rhs >= 0):
        return t0
    t = find_feasible(N, rhs, free=[0, 1], n=2, tol=1e-12)
    if t is None:
        return None
    t = t0 + t
    return t if contains(x, y.translate(t), tol=2 * tol) else None


def breadth(x: ConvexFigure, z) -> float:
    z = np.asarray(z, dtype=float)
    return x.support(z) + x.support(-z)


def integral_breadth(x: ConvexFigure, grid: DirectionGrid) -> float:
    """Pairing of ``x`` with the grid unit ball measure, ``(1/2) sum_i h_x(u_i) * w``.

    Equal cell weights ``w = 2 tan(pi/n)`` make the unit ball the circumscribed
    ``n``-gon; for a polygon whose normals lie on the grid this equals
    perimeter/2 exactly.
    """
    return 0.5 * grid.cell_weight * float(x.support_many(grid.units).sum())


def polygon_from_support(values, grid: DirectionGrid) -> ConvexFigure:
    """Intersection of the half-planes ``<p, u_i> <= values[i]`` over the grid.

    The support function of the result is the largest support function lying
    below ``values`` on the grid, so this doubles as the projection of an
    arbitrary vector onto valid support vectors.
    """
    h = [float(v) for v in np.asarray(values, dtype=float)]
    U = grid.units
    lines = [(float(U[i, 0]), float(U[i, 1]), h[i]) for i in range(grid.n)]
    scale_ = max(1.0, max(abs(v) for v in h))
    eps = 1e-12 * scale_

    def meet(l1, l2):
        a1, b1, c1 = l1
        a2, b2, c2 = l2
        det = a1 * b2 - a2 * b1
        return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)

    def outside(p, l):
        return l[0] * p[0] + l[1] * p[1] > l[2] + eps

    dq: deque = deque()
    for ln in lines:
        while len(dq) >= 2 and outside(meet(dq[-2], dq[-1]), ln):
            dq.pop()
        while len(dq) >= 2 and outside(meet(dq[0], dq[1]), ln):
            dq.popleft()
        dq.append(ln)
    while len(dq) >= 3 and outside(meet(dq[-2], dq[-1]), dq[0]):
        dq.pop()
    while len(dq) >= 3 and outside(meet(dq[0], dq[1]), dq[-1]):
        dq.popleft()
    L = list(dq)
    if len(L) < 3:
        raise ValueError("support values do not bound a nonempty figure")
    pts = [meet(L[i - 1], L[i]) for i in range(len(L))]
    return ConvexFigure(pts, check=False)


def _point_to_convex(p: np.ndarray, x: ConvexFigure) -> float:
    v = x.vertices
    if len(v) == 1:
        return float(np.hypot(*(p - v[0])))
    if x.dim == 2 and contains(x, ConvexFigure([p]), tol=0.0):
        return 0.0
    a = v
    b = np.roll(v, -1, axis=0)
    ab = b - a
    t = np.clip(np.einsum("ij,ij->i", p - a, ab) / np.einsum("ij,ij->i", ab, ab), 0.0, 1.0)
    proj = a + t[:, None] * ab
    return float(np.hypot(*(proj - p).T).min())


def hausdorff_distance(x: ConvexFigure, y: ConvexFigure) -> float:
    """Hausdorff distance; for convex figures the maxima sit at vertices."""
    d1 = max(_point_to_convex(p, y) for p in x.vertices)
    d2 = max(_point_to_convex(p, x) for p in y.vertices)
    return max(d1, d2)
