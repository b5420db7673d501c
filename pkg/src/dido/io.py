"""JSON encoding of figures, measures, certificates and reports.

Floats are written with 12 significant digits so output is stable across
platforms and byte-identical between runs.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .geometry import ConvexFigure, DirectionGrid, disk, segment, unit_ball
from .majorization import PointMeasure
from .measures import DiscreteMeasure

__all__ = [
    "InputError",
    "load_json",
    "dumps",
    "figure_from_json",
    "figure_to_json",
    "round_figure",
    "measure_from_json",
    "measure_to_json",
    "point_measure_from_json",
]

DIGITS = 12


class InputError(ValueError):
    """Malformed or invalid input file."""


def _round(x: float) -> float | int:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    r = float(f"{x:.{DIGITS}g}")
    return 0.0 if r == 0 else r


def _clean(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    return obj


def dumps(obj: Any) -> str:
    """Deterministic JSON text (rounded floats, two-space indent, trailing newline)."""
    return json.dumps(_clean(obj), indent=2, ensure_ascii=True) + "\n"


def load_json(path: str | Path) -> Any:
    """Parse a JSON file, reporting syntax errors with line and column."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror or exc})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _point(v, what: str) -> np.ndarray:
    try:
        a = np.asarray(v, dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{what}: expected a point [x, y]") from None
    if a.shape != (2,) or not np.all(np.isfinite(a)):
        raise InputError(f"{what}: expected a point [x, y]")
    return a


def figure_from_json(obj: Any, grid: DirectionGrid = DirectionGrid(360)) -> ConvexFigure:
    """Build a figure from ``{"kind": "polygon" | "disk" | "segment" | "ball", ...}``.

    Polygon vertices may come in any order; the convex hull is taken.
    """
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("figure: expected an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "polygon":
            pts = obj["vertices"]
            if not isinstance(pts, list) or not pts:
                raise InputError("polygon: 'vertices' must be a nonempty list")
            return ConvexFigure.hull([_point(v, "polygon vertex") for v in pts])
        if kind == "disk":
            r = float(obj["radius"])
            if not r > 0:
                raise InputError("disk: radius must be positive")
            n = int(obj.get("segments", grid.n))
            return disk(r, center=_point(obj.get("center", [0.0, 0.0]), "disk center"), segments=n)
        if kind == "segment":
            return segment(_point(obj["a"], "segment end a"), _point(obj["b"], "segment end b"))
        if kind == "ball":
            return unit_ball(grid)
    except KeyError as exc:
        raise InputError(f"{kind}: missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{kind}: {exc}") from None
    raise InputError(f"figure: unknown kind {kind!r}")


def round_figure(x: ConvexFigure) -> ConvexFigure:
    """The figure as it reads back after serialization (coordinates at 12 significant digits)."""
    v = np.vectorize(_round, otypes=[float])(x.vertices)
    return ConvexFigure.hull(v)


def figure_to_json(x: ConvexFigure) -> dict:
    if x.dim == 1:
        a, b = x.vertices
        return {"kind": "segment", "a": a.tolist(), "b": b.tolist()}
    return {"kind": "polygon", "vertices": x.vertices.tolist()}


def measure_from_json(obj: Any) -> DiscreteMeasure:
    """``{"atoms": [{"angle": theta, "weight": w}, ...]}``."""
    if not isinstance(obj, dict) or not isinstance(obj.get("atoms"), list):
        raise InputError("measure: expected an object with an 'atoms' list")
    try:
        a = [float(t["angle"]) for t in obj["atoms"]]
        w = [float(t["weight"]) for t in obj["atoms"]]
    except (KeyError, TypeError, ValueError):
        raise InputError("measure: every atom needs numeric 'angle' and 'weight'") from None
    if any(v < 0 for v in w):
        raise InputError("measure: weights must be nonnegative")
    return DiscreteMeasure(a, w)


def measure_to_json(mu: DiscreteMeasure) -> dict:
    return {"atoms": [{"angle": float(a), "weight": float(w)} for a, w in zip(mu.angles, mu.weights)]}


def _scalar(v):
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            raise InputError(f"not a number: {v!r}") from None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"not a number: {v!r}")
    return v


def point_measure_from_json(obj: Any) -> PointMeasure:
    """``{"points": [[x, y], ...], "weights": [w, ...]}``; strings like ``"1/3"`` are exact rationals."""
    if not isinstance(obj, dict) or "points" not in obj or "weights" not in obj:
        raise InputError("point measure: expected 'points' and 'weights'")
    pts = [[_scalar(c) for c in p] for p in obj["points"]]
    w = [_scalar(v) for v in obj["weights"]]
    if len(pts) != len(w):
        raise InputError("point measure: one weight per point")
    try:
        return PointMeasure(pts, w)
    except ValueError as exc:
        raise InputError(f"point measure: {exc}") from None
