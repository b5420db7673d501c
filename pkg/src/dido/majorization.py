"""Majorization of measures via transport certificates.

Three order relations are decided by LP feasibility:

* linear majorization of measures on the circle: ``mu`` splits into pieces,
  one per atom of ``nu`` plus a free piece, and each piece has the same
  resultant vector as the atom it is matched to (the free piece has
  resultant zero);
* affine majorization (Choquet order) of measures on points of a polytope:
  each piece matches mass *and* barycenter of its atom;
* the finite decomposition theorem for positive functionals on ``R^n``.

Only the finest partition (one cell per atom of ``nu``) is checked; any
coarser partition is served by summing the pieces of the finest one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence

import numpy as np

from .lp import linprog
from .measures import DiscreteMeasure

__all__ = [
    "SublinearFunction",
    "ConvexTestFunction",
    "PointMeasure",
    "TransportCertificate",
    "linearly_majorizes",
    "linear_majorization_residual",
    "reshetnyak_gap",
    "affinely_majorizes",
    "cfm_check",
    "decomposition_complete",
    "decomposition_hypothesis",
    "random_sublinear",
    "random_convex",
]

SNAP = 1e-12
GAP_TOL = 1e-9


@dataclass(frozen=True)
class SublinearFunction:
    """``p(u) = max_k <a_k, u>``."""

    generators: np.ndarray

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generators, dtype=float))
        if g.size == 0:
            raise ValueError("a sublinear function needs at least one generator")
        object.__setattr__(self, "generators", g)

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return (np.atleast_2d(u) @ self.generators.T).max(axis=1)


@dataclass(frozen=True)
class ConvexTestFunction:
    """``f(q) = max_k (<a_k, q> + b_k)``."""

    slopes: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.slopes, dtype=float))
        b = np.asarray(self.offsets, dtype=float).ravel()
        if a.size == 0 or len(a) != len(b):
            raise ValueError("need a nonempty list of affine pieces")
        object.__setattr__(self, "slopes", a)
        object.__setattr__(self, "offsets", b)

    def __call__(self, q: np.ndarray) -> np.ndarray:
        return (np.atleast_2d(q) @ self.slopes.T + self.offsets).max(axis=1)


class PointMeasure:
    """Positive atomic measure on points of ``R^d`` (the affine setting)."""

    def __init__(self, points, weights):
        self.points = np.atleast_2d(np.array(points, dtype=object if _rational(points) else float))
        self.weights = np.array(weights, dtype=object if _rational(weights) else float).ravel()
        if len(self.points) != len(self.weights):
            raise ValueError("points and weights differ in length")
        if any(w < 0 for w in self.weights):
            raise ValueError("measure weights must be nonnegative")

    @property
    def exact(self) -> bool:
        return self.points.dtype == object and self.weights.dtype == object

    @property
    def mass(self):
        return sum(self.weights)

    def barycenter(self) -> np.ndarray:
        return (self.weights @ self.points) / self.mass

    def integrate(self, f) -> float:
        return float(np.dot(np.asarray(self.weights, dtype=float), f(np.asarray(self.points, dtype=float))))

    def __len__(self) -> int:
        return len(self.weights)


def _rational(data) -> bool:
    flat = np.ravel(np.array(data, dtype=object))
    return len(flat) > 0 and all(isinstance(v, Rational) for v in flat)


@dataclass
class TransportCertificate:
    """``plan[j, i]`` is the mass of ``mu``-atom ``i`` assigned to ``nu``-atom ``j``.

    ``free[i]`` is the mass sent to the part of the circle where ``nu``
    vanishes (linear case only; its resultant is zero).
    """

    plan: np.ndarray
    free: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def to_dict(self) -> dict:
        return {"plan": np.asarray(self.plan, dtype=float).tolist(),
                "free": np.asarray(self.free, dtype=float).tolist()}


# ------------------------------------------------------------------ linear (circle)


def _cancel_common(a_mu, w_mu, a_nu, w_nu, same):
    """Move the shared mass at coincident atoms onto the diagonal.

    Routing the common part of two atoms at the same location to each other
    never hurts feasibility (an exchange argument), so it is removed before
    the LP.  Returns reduced weights and the diagonal pairs.
    """
    w_mu = np.array(w_mu, dtype=float)
    w_nu = np.array(w_nu, dtype=float)
    diag = []
    for j in range(len(w_nu)):
        for i in range(len(w_mu)):
            if w_mu[i] > 0 and w_nu[j] > 0 and same(i, j):
                m = min(w_mu[i], w_nu[j])
                w_mu[i] -= m
                w_nu[j] -= m
                diag.append((j, i, m))
    return w_mu, w_nu, diag


def _linear_lp(mu: DiscreteMeasure, nu: DiscreteMeasure, tol: float):
    total = max(mu.mass, nu.mass, 1e-300)
    if len(nu) == 0 and len(mu) == 0:
        return TransportCertificate(np.zeros((0, 0)), np.zeros(0)), 0.0

    def same(i, j):
        d = abs((mu.angles[i] - nu.angles[j] + np.pi) % (2 * np.pi) - np.pi)
        return d <= 1e-12

    w_mu, w_nu, diag = _cancel_common(mu.angles, mu.weights, nu.angles, nu.weights, same)
    snap = SNAP * total
    I = np.nonzero(w_mu > snap)[0]
    J = np.nonzero(w_nu > snap)[0]
    plan = np.zeros((len(nu), len(mu)))
    free = np.zeros(len(mu))
    for j, i, m in diag:
        plan[j, i] += m

    U = mu.units
    V = nu.units
    # mass needed by the remaining nu-atoms can never exceed what is left of mu
    if w_nu[J].sum() > w_mu[I].sum() + tol * total:
        return None, float(w_nu[J].sum() - w_mu[I].sum()) / total

    if len(J) == 0:
        res = float(np.hypot(*(w_mu[I] @ U[I]))) if len(I) else 0.0
        if res <= tol * total:
            free[I] = w_mu[I]
            return TransportCertificate(plan, free), res / total
        return None, res / total

    nI, nJ = len(I), len(J) + 1  # last column: the free piece
    nvar = nI * nJ

    def var(jj, ii):
        return jj * nI + ii

    rows, rhs = [], []
    for ii, i in enumerate(I):
        r = np.zeros(nvar)
        for jj in range(nJ):
            r[var(jj, ii)] = 1.0
        rows.append(r)
        rhs.append(w_mu[i] / total)
    for jj in range(nJ):
        target = (w_nu[J[jj]] / total) * V[J[jj]] if jj < len(J) else np.zeros(2)
        for c in range(2):
            r = np.zeros(nvar)
            for ii, i in enumerate(I):
                r[var(jj, ii)] = U[i, c]
            rows.append(r)
            rhs.append(target[c])
    res = linprog(None, A_eq=np.array(rows), b_eq=np.array(rhs), n=nvar, tol=tol)
    if not res.success:
        return None, res.infeasibility
    x = res.x * total
    for jj in range(nJ):
        for ii, i in enumerate(I):
            if jj < len(J):
                plan[J[jj], i] += x[var(jj, ii)]
            else:
                free[i] += x[var(jj, ii)]
    return TransportCertificate(plan, free), res.infeasibility


def linearly_majorizes(mu: DiscreteMeasure, nu: DiscreteMeasure, tol: float = 1e-9) -> Optional[TransportCertificate]:
    """Certificate that ``mu`` linearly majorizes ``nu``, or ``None``."""
    cert, _ = _linear_lp(mu, nu, tol)
    return cert


def linear_majorization_residual(mu: DiscreteMeasure, nu: DiscreteMeasure, tol: float = 1e-9):
    """``(certificate or None, phase-I infeasibility relative to total mass)``."""
    return _linear_lp(mu, nu, tol)


def reshetnyak_gap(mu: DiscreteMeasure, nu: DiscreteMeasure, p: SublinearFunction) -> float:
    """``int p dmu - int p dnu``."""
    return mu.integrate(p) - nu.integrate(p)


def random_sublinear(rng: np.random.Generator, k: Optional[int] = None) -> SublinearFunction:
    k = int(rng.integers(1, 6)) if k is None else k
    return SublinearFunction(rng.normal(size=(k, 2)))


# ------------------------------------------------------------------ affine (Choquet)


def affinely_majorizes(mu: PointMeasure, nu: PointMeasure, tol: float = 1e-9) -> Optional[TransportCertificate]:
    """Certificate that ``mu`` dominates ``nu`` in the Choquet order, or ``None``.

    Rational inputs are decided in exact arithmetic.
    """
    exact = mu.exact and nu.exact
    if exact:
        if mu.mass != nu.mass:
            return None
    elif abs(float(mu.mass) - float(nu.mass)) > tol * max(float(mu.mass), 1.0):
        return None
    if len(nu) == 0:
        return TransportCertificate(np.zeros((0, len(mu))))

    P, Q = mu.points, nu.points

    def same(i, j):
        return all(P[i] == Q[j]) if exact else bool(np.all(np.abs(P[i] - Q[j]) <= 1e-12))

    if exact:
        w_mu = list(mu.weights)
        w_nu = list(nu.weights)
        diag = []
        for j in range(len(w_nu)):
            for i in range(len(w_mu)):
                if w_mu[i] > 0 and w_nu[j] > 0 and same(i, j):
                    m = min(w_mu[i], w_nu[j])
                    w_mu[i] -= m
                    w_nu[j] -= m
                    diag.append((j, i, m))
        I = [i for i in range(len(w_mu)) if w_mu[i] > 0]
        J = [j for j in range(len(w_nu)) if w_nu[j] > 0]
        zero = Fraction(0)
    else:
        w_mu, w_nu, diag = _cancel_common(None, mu.weights, None, nu.weights, same)
        snap = SNAP * float(mu.mass)
        I = list(np.nonzero(w_mu > snap)[0])
        J = list(np.nonzero(w_nu > snap)[0])
        zero = 0.0

    plan = np.full((len(nu), len(mu)), zero, dtype=object if exact else float)
    for j, i, m in diag:
        plan[j, i] += m
    if not J:
        return TransportCertificate(plan)

    d = P.shape[1]
    nI, nJ = len(I), len(J)
    nvar = nI * nJ
    rows, rhs = [], []
    for ii, i in enumerate(I):
        r = [zero] * nvar
        for jj in range(nJ):
            r[jj * nI + ii] = 1
        rows.append(r)
        rhs.append(w_mu[i])
    for jj, j in enumerate(J):
        r = [zero] * nvar
        for ii in range(nI):
            r[jj * nI + ii] = 1
        rows.append(r)
        rhs.append(w_nu[j])
        for c in range(d):
            r = [zero] * nvar
            for ii, i in enumerate(I):
                r[jj * nI + ii] = P[i, c]
            rows.append(r)
            rhs.append(w_nu[j] * Q[j, c])
    res = linprog(None, A_eq=rows, b_eq=rhs, n=nvar, exact=exact, tol=tol)
    if not res.success:
        return None
    for jj, j in enumerate(J):
        for ii, i in enumerate(I):
            plan[j, i] += res.x[jj * nI + ii]
    return TransportCertificate(plan)


def cfm_check(mu: PointMeasure, nu: PointMeasure, family: Sequence[ConvexTestFunction], tol: float = GAP_TOL) -> bool:
    """True iff ``int f dmu >= int f dnu - tol`` for every ``f`` in ``family``."""
    return all(mu.integrate(f) - nu.integrate(f) >= -tol for f in family)


def random_convex(rng: np.random.Generator, dim: int = 2, k: Optional[int] = None) -> ConvexTestFunction:
    k = int(rng.integers(1, 6)) if k is None else k
    return ConvexTestFunction(rng.normal(size=(k, dim)), rng.normal(size=k))


# ------------------------------------------------------------------ decomposition theorem


def _coerce(v, exact):
    if exact:
        return np.array([Fraction(x) for x in np.ravel(v)], dtype=object)
    return np.asarray(v, dtype=float).ravel()


def decomposition_complete(f, g_parts, cones, tol: float = 1e-9):
    """Split ``f`` into positive ``f_k`` with ``f_k(h) >= g_k(h)`` on each sampled cone.

    ``g_parts`` is the given decomposition ``g = g_1 + ... + g_N``; ``cones[k]``
    lists generators of ``H_k``.  Returns the list ``[f_1, ..., f_N]`` or
    ``None``.  Rational data is solved exactly.
    """
    n = len(np.ravel(f))
    N = len(g_parts)
    if len(cones) != N:
        raise ValueError("need one cone per summand of g")
    exact = _rational(f) and all(_rational(g) for g in g_parts) and all(_rational(H) for H in cones)
    f = _coerce(f, exact)
    g_parts = [_coerce(g, exact) for g in g_parts]
    if any(len(g) != n for g in g_parts):
        raise ValueError("dimension mismatch between f and the parts of g")
    if any(v < 0 for g in g_parts for v in g) or any(v < 0 for v in f):
        raise ValueError("f and the parts of g must be positive functionals")
    H = []
    for Hk in cones:
        Hk = np.atleast_2d(np.array(Hk, dtype=object if exact else float))
        if Hk.shape[1] != n:
            raise ValueError("dimension mismatch between f and a cone sample")
        H.append(Hk)
    zero = Fraction(0) if exact else 0.0
    nvar = N * n
    A_eq, b_eq = [], []
    for c in range(n):
        r = [zero] * nvar
        for k in range(N):
            r[k * n + c] = 1
        A_eq.append(r)
        b_eq.append(f[c])
    A_ub, b_ub = [], []
    for k in range(N):
        for h in H[k]:
            r = [zero] * nvar
            for c in range(n):
                r[k * n + c] = -h[c]
            A_ub.append(r)
            b_ub.append(-sum(g_parts[k][c] * h[c] for c in range(n)))
    res = linprog(None, A_ub=A_ub or None, b_ub=b_ub or None, A_eq=A_eq, b_eq=b_eq,
                  n=nvar, exact=exact, tol=tol)
    if not res.success:
        return None
    return [res.x[k * n:(k + 1) * n] for k in range(N)]


def decomposition_hypothesis(f, g, cones, mode: str = "cone", tol: float = 1e-12) -> bool:
    """Brute-force check of ``f(h_1 v ... v h_N) >= g(h_1 v ... v h_N)``.

    ``mode="samples"`` checks every tuple of sample vectors.  ``mode="cone"``
    (default) checks all of ``H_1 x ... x H_N`` with ``H_k`` the convex cone
    spanned by the samples: the join is piecewise linear in the cone
    coefficients, so its minimum over the normalized coefficient simplex is
    attained at a vertex of the hyperplane arrangement ``{a_s = 0}`` and
    ``{(h_k)_c = (h_l)_c}``; all such vertices are enumerated.
    """
    f = np.asarray(f, dtype=float).ravel()
    g = np.asarray(g, dtype=float).ravel()
    d = f - g
    H = [np.atleast_2d(np.asarray(Hk, dtype=float)) for Hk in cones]
    scale = max(1.0, float(np.abs(d).max()) * max(float(np.abs(Hk).max()) for Hk in H))

    def J(hs):
        return float(d @ np.max(np.array(hs), axis=0))

    if mode == "samples":
        return all(J(t) >= -tol * scale for t in itertools.product(*H))
    if mode != "cone":
        raise ValueError(f"unknown mode {mode!r}")

    sizes = [len(Hk) for Hk in H]
    S = sum(sizes)
    offs = np.cumsum([0] + sizes)
    n = len(f)
    # linear forms in the stacked coefficient vector a (length S)
    forms = [np.eye(S)[s] for s in range(S)]
    for c in range(n):
        for k, l in itertools.combinations(range(len(H)), 2):
            r = np.zeros(S)
            r[offs[k]:offs[k + 1]] = H[k][:, c]
            r[offs[l]:offs[l + 1]] -= H[l][:, c]
            if np.any(r):
                forms.append(r)
    forms = np.array(forms)
    ones = np.ones(S)

    def hs_of(a):
        return [a[offs[k]:offs[k + 1]] @ H[k] for k in range(len(H))]

    for combo in itertools.combinations(range(len(forms)), S - 1):
        M = np.vstack([forms[list(combo)], ones])
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        rhs = np.zeros(S)
        rhs[-1] = 1.0
        a = np.linalg.solve(M, rhs)
        if np.any(a < -1e-12):
            continue
        a = np.clip(a, 0.0, None)
        if J(hs_of(a)) < -tol * scale:
            return False
    return True
