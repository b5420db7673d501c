"""External Urysohn problem: the largest area at fixed integral breadth among
bodies containing a given figure.

Only the equilateral-triangle container is solved; certificates for any
container can be checked with :func:`verify_external_optimality`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..geometry import (
    ConvexFigure,
    DirectionGrid,
    contains,
    disk,
    equilateral_triangle,
    integral_breadth,
)
from ..majorization import linear_majorization_residual
from ..measures import DiscreteMeasure, ball_measure, mixed_volume_with, surface_measure
from .bodies import bulge_body
from .report import Report

__all__ = [
    "UrysohnCertificate",
    "solve_external_urysohn_triangle",
    "verify_external_optimality",
    "snap_to_grid",
]

MAX_BISECT = 200


@dataclass
class UrysohnCertificate:
    """Contact multiplier ``mu`` and the Lagrange multiplier ``alpha`` of the breadth constraint."""

    mu: DiscreteMeasure = field(default_factory=DiscreteMeasure)
    alpha: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if np.any(self.mu.weights < 0):
            raise ValueError("contact measure must be nonnegative")

    def to_dict(self) -> dict:
        return {"alpha": float(self.alpha),
                "mu": {"atoms": [{"angle": float(a), "weight": float(w)}
                                 for a, w in zip(self.mu.angles, self.mu.weights)]}}


def snap_to_grid(mu: DiscreteMeasure, grid: DirectionGrid, atol: float = 1e-9) -> DiscreteMeasure:
    """Move atoms within ``atol`` of a grid direction exactly onto it."""
    cells, off = mu.on_grid(grid, atol)
    return DiscreteMeasure.from_grid(grid, cells) + off


def _bulge_breadth(side: float, alpha: float, grid: DirectionGrid) -> float:
    body, _ = bulge_body(equilateral_triangle(side), alpha, grid)
    return integral_breadth(body, grid)


def solve_external_urysohn_triangle(side: float, breadth: float, grid: DirectionGrid = DirectionGrid(360),
                                    tol: float = 1e-8):
    """Largest body around the equilateral triangle (centroid at the origin) with integral breadth ``breadth``.

    Between the triangle and its circumdisk the answer is the triangle with
    three circular slices of a common radius ``alpha``, found by bisection
    (breadth decreases in ``alpha``).  Above the circumdisk the answer is a
    disk about the centroid and the contact measure is empty.

    Returns ``(body, UrysohnCertificate)``.
    """
    if side <= 0:
        raise ValueError("side must be positive")
    if grid.n % 12:
        raise ValueError("triangle edge normals need a grid size divisible by 12")
    x0 = equilateral_triangle(side)
    b_min = integral_breadth(x0, grid)
    if breadth < b_min * (1 - 1e-12):
        raise ValueError(f"infeasible: breadth {breadth!r} is below the triangle's {b_min!r}")

    a_lo = side / math.sqrt(3.0)
    b_lo = _bulge_breadth(side, a_lo, grid)
    if breadth >= b_lo:
        # scaled-disk branch: the grid disk of radius rho has breadth n tan(pi/n) rho
        rho = breadth / (grid.n * math.tan(math.pi / grid.n))
        return disk(rho, segments=grid.n), UrysohnCertificate(DiscreteMeasure(), rho)

    # above side / w every edge is a single flat piece: the body is the triangle itself
    a_hi = side / grid.cell_weight
    b_hi = _bulge_breadth(side, a_hi, grid)
    if not (b_hi <= breadth <= b_lo):
        raise ValueError(f"bisection does not bracket: breadth {breadth!r} not in [{b_hi!r}, {b_lo!r}] "
                         f"for alpha in [{a_lo!r}, {a_hi!r}]")
    if breadth - b_hi <= tol * b_hi:
        alpha = a_hi
    else:
        lo, hi = a_lo, a_hi
        for _ in range(MAX_BISECT):
            mid = 0.5 * (lo + hi)
            if _bulge_breadth(side, mid, grid) > breadth:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * hi:
                break
        alpha = 0.5 * (lo + hi)
    body, mu = bulge_body(x0, alpha, grid)
    achieved = integral_breadth(body, grid)
    if abs(achieved - breadth) > tol * max(1.0, breadth):
        raise RuntimeError(f"bisection stalled: breadth {achieved!r} vs target {breadth!r} at alpha={alpha!r}")
    return body, UrysohnCertificate(mu, alpha)


def verify_external_optimality(body: ConvexFigure, container: ConvexFigure, cert: UrysohnCertificate,
                               grid: DirectionGrid = DirectionGrid(360), tol: float = 1e-7) -> Report:
    """Check the three optimality conditions of the external Urysohn problem.

    1. ``alpha * ball measure`` linearly majorizes ``mu(body) + mu``;
    2. ``V(body) + (1/2) int h_body dmu = alpha * V1(ball, body)``;
    3. ``h_body = h_container`` on the support of ``mu``.

    Also reports whether ``body`` contains ``container``.
    """
    rep = Report("external-urysohn")
    scale = max(body.diameter, 1e-300)
    ok = contains(body, container, tol=tol * scale)
    rep.add("containment", ok, 0.0 if ok else 1.0)

    atol = max(1e-9, 1e-12 * scale)
    mu_body = snap_to_grid(surface_measure(body), grid, atol)
    mu_c = snap_to_grid(cert.mu, grid, atol)
    big = cert.alpha * ball_measure(grid)
    lp_cert, resid = linear_majorization_residual(big, mu_body + mu_c, tol=tol)
    rep.add("majorization", lp_cert is not None, resid,
            "alpha*ball >> mu(body) + mu")

    lhs = body.area() + mixed_volume_with(cert.mu, body)
    rhs = cert.alpha * integral_breadth(body, grid)
    r2 = (lhs - rhs) / max(abs(rhs), 1e-300)
    rep.add("balance", abs(r2) <= tol, r2, f"lhs={lhs:.12g} rhs={rhs:.12g}")

    if len(cert.mu):
        hb = body.support_many(cert.mu.units)
        hc = container.support_many(cert.mu.units)
        r3 = float(np.max(np.abs(hb - hc))) / scale
    else:
        r3 = 0.0
    rep.add("contact", r3 <= tol, r3, "h_body = h_container on supp(mu)")
    rep.extra["alpha"] = float(cert.alpha)
    rep.extra["area"] = float(body.area())
    rep.extra["integral_breadth"] = float(integral_breadth(body, grid))
    return rep
