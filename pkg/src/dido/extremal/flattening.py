"""Internal Urysohn problems: flattening in a given direction, and two bodies
split by a hyperplane.

Both optimality criteria say the solution is a Blaschke sum of some figure
touching the container and a multiple of the ball (plus, for flattening, a
segment along the flattening direction).  The checkers compare surface
measures cellwise on the direction grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..geometry import ConvexFigure, DirectionGrid, contains, direction
from ..measures import DiscreteMeasure, ball_measure, figure_measure, surface_measure
from .report import Report
from .urysohn import snap_to_grid

__all__ = [
    "FlatteningCertificate",
    "CurrentHyperplaneCertificate",
    "verify_flattening_optimality",
    "verify_current_hyperplane",
]


@dataclass
class FlatteningCertificate:
    """``mu(body) = residual + alpha * ball + beta * (dirac(zbar) + dirac(-zbar))``."""

    alpha: float
    beta: float
    residual: DiscreteMeasure = field(default_factory=DiscreteMeasure)
    zbar: float = math.pi / 2  # angle of the flattening direction

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")

    def to_dict(self) -> dict:
        return {"alpha": float(self.alpha), "beta": float(self.beta), "zbar": float(self.zbar),
                "residual": {"atoms": [{"angle": float(a), "weight": float(w)}
                                       for a, w in zip(self.residual.angles, self.residual.weights)]}}


@dataclass
class CurrentHyperplaneCertificate:
    """Blaschke components ``x``, ``y`` with ``xbar = x # alpha*ball``, ``ybar = y # alpha*ball``."""

    alpha: float
    beta: float
    x: ConvexFigure
    y: ConvexFigure
    z0: float = 0.0  # angle of the outer normal of the separating line, seen from xbar

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")


def _cellwise(lhs: DiscreteMeasure, rhs: DiscreteMeasure, grid: DirectionGrid, atol: float) -> float:
    """Largest atom discrepancy between two measures, relative to the larger mass."""
    a, a_off = snap_to_grid(lhs, grid, atol).on_grid(grid, atol)
    b, b_off = snap_to_grid(rhs, grid, atol).on_grid(grid, atol)
    d = float(np.max(np.abs(a - b))) if grid.n else 0.0
    # off-grid atoms must match one to one
    if len(a_off) or len(b_off):
        if len(a_off) != len(b_off) or not a_off.allclose(b_off, atol):
            d = max(d, a_off.mass + b_off.mass)
    return d / max(lhs.mass, rhs.mass, 1e-300)


def _contact(body: ConvexFigure, container: ConvexFigure, angles) -> float:
    angles = np.asarray(angles, dtype=float)
    if len(angles) == 0:
        return 0.0
    U = np.column_stack([np.cos(angles), np.sin(angles)])
    d = np.abs(body.support_many(U) - container.support_many(U))
    return float(d.max()) / max(body.diameter, container.diameter, 1e-300)


def verify_flattening_optimality(body: ConvexFigure, container: ConvexFigure, cert: FlatteningCertificate,
                                 grid: DirectionGrid = DirectionGrid(360), tol: float = 1e-7) -> Report:
    """Check ``mu(body) = mu(x) + alpha*ball + beta*(e_z + e_-z)`` and contact of ``body`` with
    ``container`` on the support of ``mu(x)``."""
    rep = Report("flattening")
    scale = max(container.diameter, 1e-300)
    ok = contains(container, body, tol=tol * scale)
    rep.add("containment", ok, 0.0 if ok else 1.0, "body inside container")

    atol = max(1e-9, 1e-12 * scale)
    flats = DiscreteMeasure([cert.zbar, cert.zbar + math.pi], [cert.beta, cert.beta])
    rhs = cert.residual + cert.alpha * ball_measure(grid) + flats
    r1 = _cellwise(surface_measure(body), rhs, grid, atol)
    rep.add("decomposition", r1 <= tol, r1, "mu(body) = mu(x) + alpha*ball + beta*(e_z + e_-z)")

    r2 = _contact(body, container, cert.residual.angles)
    rep.add("contact", r2 <= tol, r2, "h_body = h_container on supp(mu(x))")
    rep.extra.update(alpha=float(cert.alpha), beta=float(cert.beta), residual_atoms=len(cert.residual))
    return rep


def verify_current_hyperplane(xbar: ConvexFigure, ybar: ConvexFigure, container: ConvexFigure,
                              cert: CurrentHyperplaneCertificate, grid: DirectionGrid = DirectionGrid(360),
                              tol: float = 1e-7, literal: bool = True) -> Report:
    """Check the optimality conditions for two bodies separated by a line with normal ``z0``.

    ``literal=True`` checks the contact of ``ybar`` on ``supp(x)``, as the
    criterion is usually stated; ``literal=False`` uses ``supp(y)``.

    Raises ``ValueError`` when the pair is not feasible (outside the container
    or not separated).
    """
    scale = max(container.diameter, 1e-300)
    if not (contains(container, xbar, tol=tol * scale) and contains(container, ybar, tol=tol * scale)):
        raise ValueError("precondition: both bodies must lie in the container")
    z = direction(cert.z0)
    gap = xbar.support(z) + ybar.support(-z)
    if gap > tol * scale:
        raise ValueError(f"precondition: bodies are not separated by a line with normal z0 (overlap {gap:.3g})")

    rep = Report("current-hyperplane")
    atol = max(1e-9, 1e-12 * scale)
    ball = cert.alpha * ball_measure(grid)
    mx, my = figure_measure(cert.x), figure_measure(cert.y)
    r1 = _cellwise(surface_measure(xbar), mx + ball, grid, atol)
    rep.add("xbar = x # alpha*ball", r1 <= tol, r1)
    r2 = _cellwise(surface_measure(ybar), my + ball, grid, atol)
    rep.add("ybar = y # alpha*ball", r2 <= tol, r2)

    ax = mx.weight_at(cert.z0, atol)
    ay = my.weight_at(cert.z0 + math.pi, atol)
    r3 = max(cert.beta - ax, cert.beta - ay, 0.0)
    rep.add("flat mass", r3 <= tol * scale, r3, f"mu(x)(z0)={ax:.12g} mu(y)(-z0)={ay:.12g} beta={cert.beta:.12g}")

    def away(angles, theta):
        d = np.abs(np.mod(np.asarray(angles) - theta + math.pi, 2 * math.pi) - math.pi)
        return np.asarray(angles)[d > atol]

    r4 = _contact(xbar, container, away(mx.angles, cert.z0))
    rep.add("xbar contact", r4 <= tol, r4, "on supp(x) minus z0")
    supp = mx.angles if literal else my.angles
    r5 = _contact(ybar, container, away(supp, cert.z0 + math.pi))
    rep.add("ybar contact", r5 <= tol, r5, f"on supp({'x' if literal else 'y'}) minus -z0")
    rep.extra.update(alpha=float(cert.alpha), beta=float(cert.beta), literal=literal)
    return rep
