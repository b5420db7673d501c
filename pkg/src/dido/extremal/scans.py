"""Seeded perturbation scans around claimed optima.

A sample perturbs the support vector of the candidate on the direction
grid, projects back to a valid support vector (the largest one below the
perturbed values), and is then repaired to satisfy the constraints of the
problem.  The scan reports how many samples beat the candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..geometry import (
    ConvexFigure,
    DirectionGrid,
    integral_breadth,
    minkowski_combination,
    polygon_from_support,
    scale,
)
from .pareto import objective_vector
from .rotation import rotate_profile, rotation_breadth, rotation_surface, rotation_volume

__all__ = ["ScanResult", "perturb_support", "urysohn_scan", "isoperimetric_scan", "rotation_scan"]


@dataclass
class ScanResult:
    samples: int
    feasible: int
    improved: int
    best_gain: float  # largest improvement seen, in units of the objective scale (negative: none)

    @property
    def passed(self) -> bool:
        return self.improved == 0

    def to_dict(self) -> dict:
        return {"samples": self.samples, "feasible": self.feasible, "improved": self.improved,
                "best_gain": float(self.best_gain), "passed": self.passed}


def perturb_support(h: np.ndarray, rng: np.random.Generator, grid: DirectionGrid, size: float,
                    symmetric: bool = False) -> np.ndarray:
    """``h`` plus a random smooth perturbation.

    The magnitude is log-uniform between ``1e-4 * size`` and ``1e-1 * size``;
    the shape mixes low Fourier modes with a localized bump.
    """
    th = grid.angles
    amp = size * 10.0 ** rng.uniform(-4, -1)
    k = np.arange(1, 9)
    a = rng.normal(size=8) / k
    b = rng.normal(size=8) / k
    noise = (a[:, None] * np.cos(k[:, None] * th) + b[:, None] * np.sin(k[:, None] * th)).sum(0)
    c = rng.uniform(0, 2 * math.pi)
    width = rng.uniform(0.05, 1.0)
    d = np.abs(np.mod(th - c + math.pi, 2 * math.pi) - math.pi)
    noise += rng.normal() * np.exp(-0.5 * (d / width) ** 2)
    noise *= amp / max(np.abs(noise).max(), 1e-300)
    out = h + noise
    if symmetric:
        # average with the mirror image in the vertical axis (theta -> pi - theta)
        j = (grid.n // 2 - np.arange(grid.n)) % grid.n
        out = 0.5 * (out + out[j])
    return out


def urysohn_scan(body: ConvexFigure, container: ConvexFigure, grid: DirectionGrid, samples: int = 1000,
                 seed: int = 0, tol: float = 1e-6) -> ScanResult:
    """Look for bodies containing ``container`` with integral breadth at most that of ``body`` and more area."""
    rng = np.random.default_rng(seed)
    U = grid.units
    h = body.support_many(U)
    h0 = container.support_many(U)
    B = integral_breadth(body, grid)
    V = body.area()
    size = body.diameter
    improved, feasible, best = 0, 0, -math.inf
    for _ in range(samples):
        g = np.maximum(perturb_support(h, rng, grid, size), h0)
        p = polygon_from_support(g, grid)
        b = integral_breadth(p, grid)
        if b > B:
            # pull back toward the container until the breadth constraint holds
            b0 = integral_breadth(container, grid)
            if b - b0 <= 0:
                continue
            t = (b - B) / (b - b0)
            p = minkowski_combination([p, container], [1.0 - t, t])
        feasible += 1
        gain = (p.area() - V) / V
        best = max(best, gain)
        if gain > tol:
            improved += 1
    return ScanResult(samples, feasible, improved, best)


def isoperimetric_scan(body: ConvexFigure, ys: Sequence[ConvexFigure], grid: DirectionGrid, samples: int = 1000,
                       seed: int = 0, tol: float = 1e-6) -> ScanResult:
    """Look for bodies of the same area with every mixed area against ``ys`` strictly smaller."""
    rng = np.random.default_rng(seed)
    h = body.support_many(grid.units)
    V = body.area()
    f0 = objective_vector(body, ys)
    size = body.diameter
    improved, feasible, best = 0, 0, -math.inf
    for _ in range(samples):
        p = polygon_from_support(perturb_support(h, rng, grid, size), grid)
        if p.dim < 2:
            continue
        p = scale(p, math.sqrt(V / p.area()))
        feasible += 1
        gain = float(np.min((f0 - objective_vector(p, ys)) / f0))
        best = max(best, gain)
        if gain > tol:
            improved += 1
    return ScanResult(samples, feasible, improved, best)


def rotation_scan(profile: ConvexFigure, grid: DirectionGrid, samples: int = 500, seed: int = 0,
                  tol: float = 1e-6) -> ScanResult:
    """Look for bodies of rotation about the vertical axis with the same volume and both
    surface area and vertical breadth strictly smaller."""
    rng = np.random.default_rng(seed)
    base = rotate_profile(profile)
    V = rotation_volume(base)
    f0 = np.array([rotation_surface(base), rotation_breadth(base)])
    h = profile.support_many(grid.units)
    size = profile.diameter
    improved, feasible, best = 0, 0, -math.inf
    for _ in range(samples):
        p = polygon_from_support(perturb_support(h, rng, grid, size, symmetric=True), grid)
        if p.dim < 2:
            continue
        # the projection keeps mirror symmetry only up to rounding
        q = _symmetrize(ConvexFigure.hull(np.vstack([p.vertices, p.vertices * [-1.0, 1.0]])))
        q = scale(q, (V / rotation_volume(rotate_profile(q))) ** (1.0 / 3.0))
        rb = rotate_profile(q)
        feasible += 1
        f = np.array([rotation_surface(rb), rotation_breadth(rb)])
        gain = float(np.min((f0 - f) / f0))
        best = max(best, gain)
        if gain > tol:
            improved += 1
    return ScanResult(samples, feasible, improved, best)


def _symmetrize(x: ConvexFigure) -> ConvexFigure:
    """Snap a nearly symmetric figure to an exactly symmetric one (mirror of the right half)."""
    v = x.vertices
    right = v[v[:, 0] > 0]
    axis = v[np.abs(v[:, 0]) <= 0]
    pts = np.vstack([right, right * [-1.0, 1.0], axis]) if len(right) else v
    return ConvexFigure.hull(pts)
