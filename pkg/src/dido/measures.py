"""Surface-area measures, Blaschke addition and mixed areas.

Measures on the unit circle are finitely atomic: an atom is a direction
(angle in ``[0, 2*pi)``) with a positive weight.  A polygon's surface
measure has one atom per edge, at the outward normal, weighted by the edge
length.  Atomic measures cannot annihilate singletons the way a genuine
Alexandrov measure does; atoms are read as quadrature cells of a continuum
measure.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .geometry import TWO_PI, ConvexFigure, DirectionGrid

__all__ = [
    "DiscreteMeasure",
    "AlexandrovMeasure",
    "surface_measure",
    "reconstruct",
    "blaschke_sum",
    "mixed_volume",
    "volume",
    "ball_measure",
    "dirac",
    "mixed_volume_with",
    "figure_measure",
]

# atoms whose directions differ by less than this (radians) are merged
MERGE_TOL = 1e-12
CLOSURE_TOL = 1e-9


def _wrap(a: np.ndarray) -> np.ndarray:
    a = np.mod(a, TWO_PI)
    a[a >= TWO_PI] -= TWO_PI
    return a


def _merge(angles: np.ndarray, weights: np.ndarray, tol: float = MERGE_TOL):
    if len(angles) == 0:
        return np.zeros(0), np.zeros(0)
    angles = _wrap(np.asarray(angles, dtype=float).copy())
    weights = np.asarray(weights, dtype=float)
    order = np.argsort(angles, kind="stable")
    angles, weights = angles[order], weights[order]
    out_a = [angles[0]]
    out_w = [weights[0]]
    for a, w in zip(angles[1:], weights[1:]):
        if a - out_a[-1] <= tol:
            out_w[-1] += w
        else:
            out_a.append(a)
            out_w.append(w)
    if len(out_a) > 1 and out_a[0] + TWO_PI - out_a[-1] <= tol:
        out_w[0] += out_w.pop()
        out_a.pop()
    return np.array(out_a), np.array(out_w)


class DiscreteMeasure:
    """Positive atomic measure on the unit circle."""

    __slots__ = ("angles", "weights")

    def __init__(self, angles=(), weights=(), *, drop_below: float = 0.0):
        a, w = _merge(np.asarray(angles, dtype=float), np.asarray(weights, dtype=float))
        if np.any(w < 0):
            raise ValueError("measure weights must be nonnegative")
        keep = w > drop_below
        a, w = a[keep], w[keep]
        a.setflags(write=False)
        w.setflags(write=False)
        self.angles = a
        self.weights = w

    @classmethod
    def from_atoms(cls, atoms: Iterable[tuple[float, float]]) -> "DiscreteMeasure":
        atoms = list(atoms)
        if not atoms:
            return cls()
        a, w = zip(*atoms)
        return cls(a, w)

    @property
    def units(self) -> np.ndarray:
        return np.column_stack([np.cos(self.angles), np.sin(self.angles)])

    @property
    def mass(self) -> float:
        return float(self.weights.sum())

    def resultant(self) -> np.ndarray:
        """``sum_i w_i u_i``; zero exactly when the measure kills linear functionals."""
        if len(self) == 0:
            return np.zeros(2)
        return self.weights @ self.units

    def is_closed(self, tol: float = CLOSURE_TOL) -> bool:
        return float(np.hypot(*self.resultant())) <= tol * max(self.mass, 1e-300)

    def is_degenerate(self) -> bool:
        """All mass on a single antipodal pair of directions."""
        if len(self) == 0:
            return True
        a0 = self.angles[0]
        d = np.mod(self.angles - a0, math.pi)
        d = np.minimum(d, math.pi - d)
        return bool(np.all(d <= 1e-9))

    def integrate(self, f) -> float:
        """``sum_i w_i f(u_i)`` for a callable ``f`` taking an ``(k, 2)`` array of units."""
        if len(self) == 0:
            return 0.0
        return float(np.dot(self.weights, f(self.units)))

    def weight_at(self, theta: float, atol: float = 1e-9) -> float:
        d = np.abs(np.mod(self.angles - theta + math.pi, TWO_PI) - math.pi)
        return float(self.weights[d <= atol].sum())

    def support(self) -> np.ndarray:
        return self.angles.copy()

    def restrict(self, mask) -> "DiscreteMeasure":
        mask = np.asarray(mask, dtype=bool)
        return DiscreteMeasure(self.angles[mask], self.weights[mask])

    def on_grid(self, grid: DirectionGrid, atol: float = 1e-9):
        """Cell weights on ``grid`` plus the part of the measure that is off the grid."""
        cells = np.zeros(grid.n)
        off_a, off_w = [], []
        for a, w in zip(self.angles, self.weights):
            i = grid.index(a, atol)
            if i is None:
                off_a.append(a)
                off_w.append(w)
            else:
                cells[i] += w
        return cells, DiscreteMeasure(off_a, off_w)

    @classmethod
    def from_grid(cls, grid: DirectionGrid, cells, drop_below: float = 0.0) -> "DiscreteMeasure":
        cells = np.asarray(cells, dtype=float)
        keep = cells > drop_below
        return cls(grid.angles[keep], cells[keep])

    def __add__(self, other: "DiscreteMeasure") -> "DiscreteMeasure":
        return DiscreteMeasure(
            np.concatenate([self.angles, other.angles]),
            np.concatenate([self.weights, other.weights]),
        )

    def __mul__(self, lam: float) -> "DiscreteMeasure":
        if lam < 0:
            raise ValueError("measures scale by nonnegative factors only")
        return DiscreteMeasure(self.angles, self.weights * lam)

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.angles)

    def __repr__(self) -> str:
        atoms = ", ".join(f"({a:.6g}, {w:.6g})" for a, w in zip(self.angles, self.weights))
        return f"{type(self).__name__}([{atoms}])"

    def allclose(self, other: "DiscreteMeasure", atol: float = 1e-9) -> bool:
        if len(self) != len(other):
            return False
        da = np.abs(np.mod(self.angles - other.angles + math.pi, TWO_PI) - math.pi)
        return bool(np.all(da <= atol) and np.all(np.abs(self.weights - other.weights) <= atol * max(1.0, self.mass)))


class AlexandrovMeasure(DiscreteMeasure):
    """A closed, nondegenerate atomic measure: the surface measure of some polygon."""

    __slots__ = ()

    def __init__(self, angles=(), weights=(), **kw):
        super().__init__(angles, weights, **kw)
        if not self.is_closed():
            raise ValueError("not translation-invariant: atoms do not sum to zero")
        if self.is_degenerate():
            raise ValueError("great-hypersphere supported: atoms lie on one antipodal pair")

    @classmethod
    def coerce(cls, mu: DiscreteMeasure) -> "AlexandrovMeasure":
        if isinstance(mu, AlexandrovMeasure):
            return mu
        return cls(mu.angles, mu.weights)


def dirac(theta: float, weight: float = 1.0) -> DiscreteMeasure:
    return DiscreteMeasure([theta], [weight])


def ball_measure(grid: DirectionGrid) -> DiscreteMeasure:
    """Surface measure of the grid unit ball: weight ``2 tan(pi/n)`` at every grid direction."""
    return DiscreteMeasure(grid.angles, np.full(grid.n, grid.cell_weight))


def surface_measure(x: ConvexFigure) -> AlexandrovMeasure:
    """One atom per edge: outward normal, edge length."""
    if x.dim < 2:
        raise ValueError("not full-dimensional")
    e = x.edges
    ang = np.arctan2(-e[:, 0], e[:, 1])
    return AlexandrovMeasure(ang, np.hypot(e[:, 0], e[:, 1]))


def figure_measure(x: ConvexFigure) -> DiscreteMeasure:
    """Surface measure allowing lower-dimensional figures.

    A point has the zero measure; a segment of length ``l`` has two opposite
    atoms of weight ``l``.
    """
    if x.dim == 0:
        return DiscreteMeasure()
    e = x.edges
    return DiscreteMeasure(np.arctan2(-e[:, 0], e[:, 1]), np.hypot(e[:, 0], e[:, 1]))


def reconstruct(mu: DiscreteMeasure) -> ConvexFigure:
    """The polygon (centroid at the origin) whose surface measure is ``mu``.

    Edges are laid out in order of their normals, each one the normal turned
    a quarter counterclockwise and scaled by the atom weight.
    """
    mu = AlexandrovMeasure.coerce(mu)
    ang = mu.angles
    w = mu.weights
    edges = w[:, None] * np.column_stack([-np.sin(ang), np.cos(ang)])
    pts = np.vstack([np.zeros((1, 2)), np.cumsum(edges, axis=0)[:-1]])
    fig = ConvexFigure(pts, check=False)
    return fig.translate(-fig.centroid)


def blaschke_sum(x: ConvexFigure, y: ConvexFigure) -> ConvexFigure:
    return reconstruct(surface_measure(x) + surface_measure(y))


def mixed_volume(y: ConvexFigure, x: ConvexFigure) -> float:
    """Mixed area ``V1(y, x) = (1/2) sum h_x(u_i) w_i`` over the atoms of the surface measure of ``y``."""
    mu = surface_measure(y)
    return 0.5 * float(np.dot(x.support_many(mu.units), mu.weights))


def volume(x: ConvexFigure) -> float:
    """Area (shoelace)."""
    return x.area()


def mixed_volume_with(mu: DiscreteMeasure, x: ConvexFigure) -> float:
    """Natural pairing ``(1/2) int h_x d mu`` for an arbitrary atomic measure."""
    if len(mu) == 0:
        return 0.0
    return 0.5 * float(np.dot(x.support_many(mu.units), mu.weights))

