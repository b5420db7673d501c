"""Independent reference computations used by the tests.

Nothing here calls the package's LP or measure code.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def shoelace(points) -> float:
    p = np.asarray(points, dtype=float)
    x, y = p[:, 0], p[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def support_brute(points, u) -> float:
    return float(max(np.dot(p, u) for p in np.asarray(points, dtype=float)))


def circular_segment_area(r: float, chord: float) -> float:
    """Area between a chord and the shorter arc: ``r^2 (phi - sin phi cos phi)``, ``sin phi = chord/(2r)``."""
    phi = math.asin(chord / (2 * r))
    return r * r * (phi - math.sin(phi) * math.cos(phi))


def lens_area(a: float, r: float) -> float:
    """Two circular segments of radius ``r`` on a chord of length ``2a``."""
    return 2.0 * circular_segment_area(r, 2 * a)


def mixed_area_by_polarization(x_pts, y_pts) -> float:
    """``V1(x, y) = (A(x + y) - A(x) - A(y)) / 2`` with the sum built by brute-force hull of pairwise sums."""
    from scipy.spatial import ConvexHull

    def area(p):
        p = np.asarray(p, dtype=float)
        if len(p) < 3:
            return 0.0
        try:
            return float(ConvexHull(p).volume)
        except Exception:
            return 0.0

    s = [np.add(a, b) for a in x_pts for b in y_pts]
    return 0.5 * (area(s) - area(x_pts) - area(y_pts))


# ------------------------------------------------------------ convex-function search


def _barycentric(tri, q):
    a, b, c = (np.asarray(t, dtype=object) for t in tri)
    q = np.asarray(q, dtype=object)
    det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])
    if det == 0:
        return None
    l1 = ((q[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (q[1] - a[1])) / det
    l2 = ((b[0] - a[0]) * (q[1] - a[1]) - (q[0] - a[0]) * (b[1] - a[1])) / det
    lam = (1 - l1 - l2, l1, l2)
    return lam if all(v >= 0 for v in lam) else None


def _on_segment(a, b, q):
    a, b, q = (np.asarray(t, dtype=object) for t in (a, b, q))
    d = b - a
    if (q[0] - a[0]) * d[1] - (q[1] - a[1]) * d[0] != 0:
        return None
    den = d[0] * d[0] + d[1] * d[1]
    if den == 0:
        return None
    t = ((q[0] - a[0]) * d[0] + (q[1] - a[1]) * d[1]) / den
    return (1 - t, t) if 0 <= t <= 1 else None


def representations(points, q):
    """All ways of writing ``q`` as a convex combination of at most three of ``points``
    (exact rational arithmetic).  Returns a list of ``(indices, coefficients)``."""
    out = []
    k = len(points)
    for i in range(k):
        if all(points[i][c] == q[c] for c in range(2)):
            out.append(((i,), (Fraction(1),)))
    for i, j in itertools.combinations(range(k), 2):
        lam = _on_segment(points[i], points[j], q)
        if lam is not None:
            out.append(((i, j), lam))
    for tri in itertools.combinations(range(k), 3):
        lam = _barycentric([points[t] for t in tri], q)
        if lam is not None:
            out.append((tri, lam))
    return out


def convex_violation(mu_pts, mu_w, nu_pts, nu_w, heights=range(4)):
    """Search for a convex function ``f`` with ``int f dmu < int f dnu``.

    Returns a short description of the violation found, or ``None``.

    Constant and linear functions catch a mass or barycenter mismatch; a
    ``nu`` atom outside the convex hull of ``mu`` is separated by a steep
    convex function.  Otherwise it is enough to look at lower convex
    envelopes of heights placed on the ``mu`` points (any convex ``f`` can
    be replaced by the envelope of its values there), evaluated exactly
    through all Caratheodory representations; heights range over a grid.
    """
    mu_pts = [tuple(Fraction(c) for c in p) for p in mu_pts]
    nu_pts = [tuple(Fraction(c) for c in p) for p in nu_pts]
    mu_w = [Fraction(w) for w in mu_w]
    nu_w = [Fraction(w) for w in nu_w]
    if sum(mu_w) != sum(nu_w):
        return "mass"
    for c in range(2):
        if sum(w * p[c] for p, w in zip(mu_pts, mu_w)) != sum(w * p[c] for p, w in zip(nu_pts, nu_w)):
            return "barycenter"
    reps = [representations(mu_pts, q) for q in nu_pts]
    if any(len(r) == 0 for r in reps):
        return "outside hull"
    k = len(mu_pts)
    # vectorized over the height grid: columns of Y are height assignments
    Y = np.array(list(itertools.product(list(heights), repeat=k)), dtype=float).T
    lhs = np.array([float(w) for w in mu_w]) @ Y
    rhs = np.zeros(Y.shape[1])
    for q_reps, w in zip(reps, nu_w):
        env = np.full(Y.shape[1], np.inf)
        for idx, lam in q_reps:
            env = np.minimum(env, np.array([float(v) for v in lam]) @ Y[list(idx)])
        rhs += float(w) * env
    bad = rhs - lhs > 1e-9
    if np.any(bad):
        return f"envelope heights {Y[:, int(np.argmax(bad))].astype(int).tolist()}"
    return None
