"""Bodies of rotation in space generated by planar profiles symmetric about an axis."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..geometry import ConvexFigure, breadth, direction

__all__ = ["RotationBody", "rotate_profile", "rotation_volume", "rotation_surface", "rotation_breadth"]

SYM_TOL = 1e-9


def _to_axis_frame(v: np.ndarray, zbar: float) -> np.ndarray:
    """Rotate coordinates so the axis direction ``zbar`` becomes ``(0, 1)``."""
    t = math.pi / 2 - zbar
    c, s = math.cos(t), math.sin(t)
    return v @ np.array([[c, s], [-s, c]])


@dataclass(frozen=True)
class RotationBody:
    """Solid swept by ``profile`` about the line through the origin with direction angle ``zbar``."""

    profile: ConvexFigure
    zbar: float = math.pi / 2

    @property
    def half_profile(self) -> np.ndarray:
        """Vertices of the part of the profile on the right of the axis, in the axis frame (axis vertical)."""
        return _clip_right(_to_axis_frame(self.profile.vertices, self.zbar))


def _clip_right(v: np.ndarray) -> np.ndarray:
    out = []
    k = len(v)
    for i in range(k):
        p, q = v[i], v[(i + 1) % k]
        if p[0] >= 0:
            out.append(p)
        if (p[0] >= 0) != (q[0] >= 0):
            t = p[0] / (p[0] - q[0])
            out.append(np.array([0.0, p[1] + t * (q[1] - p[1])]))
    return np.array(out).reshape(-1, 2)


def rotate_profile(profile: ConvexFigure, zbar: float = math.pi / 2) -> RotationBody:
    """Check that ``profile`` is symmetric about the axis and wrap it as a body of rotation."""
    v = _to_axis_frame(profile.vertices, zbar)
    w = v * np.array([-1.0, 1.0])
    tol = SYM_TOL * max(1.0, profile.diameter)
    # every mirrored vertex must be a vertex
    d = np.sqrt(((w[:, None, :] - v[None, :, :]) ** 2).sum(-1)).min(axis=1)
    if np.any(d > tol):
        raise ValueError("asymmetric profile: not symmetric about the rotation axis")
    return RotationBody(profile, zbar)


def rotation_volume(b: RotationBody) -> float:
    """Pappus: ``2 pi`` times the first moment of the right half of the profile about the axis."""
    v = b.half_profile
    if len(v) < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    x1, y1 = np.roll(x, -1), np.roll(y, -1)
    cr = x * y1 - x1 * y
    moment = float(((x + x1) * cr).sum()) / 6.0
    return 2.0 * math.pi * abs(moment)


def rotation_surface(b: RotationBody) -> float:
    """Area swept by the boundary edges off the axis: each edge gives a conical frustum."""
    v = b.half_profile
    if len(v) < 2:
        return 0.0
    q = np.roll(v, -1, axis=0)
    on_axis = (np.abs(v[:, 0]) <= 1e-15) & (np.abs(q[:, 0]) <= 1e-15)
    length = np.hypot(*(q - v).T)
    return float(np.sum(np.where(on_axis, 0.0, math.pi * (v[:, 0] + q[:, 0]) * length)))


def rotation_breadth(b: RotationBody) -> float:
    """Breadth along the axis; equal to the breadth of the profile in that direction."""
    return breadth(b.profile, direction(b.zbar))
