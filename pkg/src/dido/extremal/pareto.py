"""Vector isoperimetric problem: minimize several mixed areas at a fixed area."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..geometry import ConvexFigure, minkowski_combination, scale
from ..measures import mixed_volume

__all__ = ["ParetoPoint", "pareto_vector_isoperimetric", "objective_vector"]


@dataclass
class ParetoPoint:
    objectives: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.objectives = np.asarray(self.objectives, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")

    def to_dict(self) -> dict:
        return {"objectives": self.objectives.tolist(), "weights": self.weights.tolist()}


def objective_vector(x: ConvexFigure, ys: Sequence[ConvexFigure]) -> np.ndarray:
    """``(V1(x, y_1), ..., V1(x, y_M))``."""
    return np.array([mixed_volume(x, y) for y in ys])


def pareto_vector_isoperimetric(ys: Sequence[ConvexFigure], alphas: Sequence[float], area: float):
    """The Pareto-optimal body ``lambda * sum alpha_k y_k`` of area ``area``.

    Returns ``(body, ParetoPoint)``; the body is centered at its centroid.
    """
    ys = list(ys)
    alphas = [float(a) for a in alphas]
    if len(ys) == 0 or len(ys) != len(alphas):
        raise ValueError("need one positive weight per body")
    if any(a <= 0 for a in alphas):
        raise ValueError("weights must be positive")
    if not area > 0:
        raise ValueError("target area must be positive")
    combo = minkowski_combination(ys, alphas)
    v = combo.area()
    if combo.dim < 2 or v <= 0:
        raise ValueError("degenerate combination: the weighted sum has zero area")
    body = scale(combo, math.sqrt(area / v))
    body = body.translate(-body.centroid)
    return body, ParetoPoint(objective_vector(body, ys), alphas)
