"""Small dense two-phase simplex solver.

Feasibility is what most callers need: majorization certificates, the
translation search in ``contains_up_to_translation`` and the decomposition
theorem all reduce to "does this polyhedron have a point".  Instances are a
few hundred variables at most, so a dense tableau is fine.

Two arithmetic modes share the same code path:

* floats (default), with absolute pivot/feasibility tolerances;
* exact ``fractions.Fraction`` arithmetic (``exact=True``), used when the
  data is rational and a clean yes/no answer matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

__all__ = ["LPResult", "linprog", "find_feasible"]


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[np.ndarray]
    objective: Optional[float]
    infeasibility: float
    iterations: int = 0

    @property
    def success(self) -> bool:
        return self.status == "optimal"


def _as_matrix(A, ncols: int, exact: bool) -> np.ndarray:
    if A is None:
        return np.zeros((0, ncols), dtype=object if exact else float)
    if exact:
        A = np.array([[Fraction(v) for v in row] for row in np.atleast_2d(A)], dtype=object)
        return A.reshape(-1, ncols)
    return np.asarray(A, dtype=float).reshape(-1, ncols)


def _as_vector(b, exact: bool) -> np.ndarray:
    if b is None:
        return np.zeros(0, dtype=object if exact else float)
    if exact:
        return np.array([Fraction(v) for v in np.ravel(b)], dtype=object)
    return np.asarray(b, dtype=float).ravel()


class _Tableau:
    """Tableau over ``A x = b, x >= 0`` with ``b >= 0`` and an artificial basis."""

    def __init__(self, A: np.ndarray, b: np.ndarray, exact: bool, tol: float):
        m, n = A.shape
        self.exact = exact
        self.tol = 0 if exact else tol
        zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
        dtype = object if exact else float
        T = np.empty((m, n + m + 1), dtype=dtype)
        T[:, :n] = A
        T[:, n:n + m] = zero
        for i in range(m):
            T[i, n + i] = one
        T[:, -1] = b
        self.T = T
        self.n = n
        self.m = m
        self.basis = list(range(n, n + m))
        self.iterations = 0

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        T[r] = T[r] / T[r, c]
        col = T[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0] if self.exact else np.nonzero(np.abs(col) > 0)[0]
        if len(nz):
            T[nz] -= np.outer(col[nz], T[r])
        self.basis[r] = c
        self.iterations += 1

    def run(self, cost: np.ndarray, allowed: np.ndarray, max_iter: int) -> str:
        """Minimize ``cost . x`` over the current basis; ``allowed`` masks entering columns."""
        T = self.T
        tol = self.tol
        degenerate = 0
        while self.iterations < max_iter:
            cb = cost[self.basis]
            reduced = cost[:-1] - cb @ T[:, :-1]
            cand = np.nonzero(allowed & (reduced < -tol))[0] if not self.exact else \
                [j for j in np.nonzero(allowed)[0] if reduced[j] < 0]
            if len(cand) == 0:
                return "optimal"
            # Dantzig's rule, falling back to Bland's after a run of degenerate pivots.
            if degenerate > 50 or self.exact:
                c = int(cand[0])
            else:
                c = int(cand[np.argmin(reduced[cand])])
            colv = T[:, c]
            rows = [i for i in range(self.m) if colv[i] > (tol if not self.exact else 0)]
            if not rows:
                return "unbounded"
            ratios = [T[i, -1] / colv[i] for i in rows]
            best = min(ratios)
            if self.exact:
                ties = [rows[k] for k, v in enumerate(ratios) if v == best]
            else:
                ties = [rows[k] for k, v in enumerate(ratios) if v <= best + tol]
            r = min(ties, key=lambda i: self.basis[i])
            degenerate = degenerate + 1 if (best == 0 or (not self.exact and best <= tol)) else 0
            self.pivot(r, c)
        raise RuntimeError("simplex iteration limit reached")


def linprog(
    c: Sequence[float] | None,
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
    *,
    n: Optional[int] = None,
    free: Optional[Sequence[int]] = None,
    exact: bool = False,
    tol: float = 1e-9,
    max_iter: int = 50_000,
) -> LPResult:
    """Minimize ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Variables listed in ``free`` are unrestricted in sign.  With ``c=None`` only
    phase I runs and any feasible point is returned.  ``infeasibility`` is the
    phase-I optimum (sum of artificial variables), a useful residual when the
    problem is infeasible.
    """
    if n is None:
        for M in (A_ub, A_eq):
            if M is not None and np.size(M):
                n = np.atleast_2d(M).shape[1]
                break
        else:
            n = len(c) if c is not None else 0
    A_ub = _as_matrix(A_ub, n, exact)
    A_eq = _as_matrix(A_eq, n, exact)
    b_ub = _as_vector(b_ub, exact)
    b_eq = _as_vector(b_eq, exact)
    free = sorted(set(free or ()))
    zero = Fraction(0) if exact else 0.0

    # split free variables x_j = x_j+ - x_j-
    def expand(M):
        if not free:
            return M
        return np.hstack([M, -M[:, free]])

    A_ub, A_eq = expand(A_ub), expand(A_eq)
    nv = n + len(free)
    n_slack = A_ub.shape[0]
    rows = []
    rhs = []
    for i in range(A_ub.shape[0]):
        slack = np.full(n_slack, zero, dtype=object if exact else float)
        slack[i] = 1
        rows.append(np.concatenate([A_ub[i], slack]))
        rhs.append(b_ub[i])
    for i in range(A_eq.shape[0]):
        rows.append(np.concatenate([A_eq[i], np.full(n_slack, zero, dtype=object if exact else float)]))
        rhs.append(b_eq[i])
    ntot = nv + n_slack
    if not rows:
        x = np.zeros(n)
        if c is not None and any((np.asarray(c, dtype=float) < 0)):
            return LPResult("unbounded", None, None, 0.0)
        return LPResult("optimal", x, 0.0 if c is not None else None, 0.0)
    A = np.array(rows, dtype=object if exact else float).reshape(len(rows), ntot)
    b = np.array(rhs, dtype=object if exact else float)
    neg = b < 0
    A[neg] = -A[neg]
    b[neg] = -b[neg]

    tab = _Tableau(A, b, exact, tol)
    m = tab.m
    one = Fraction(1) if exact else 1.0
    cost1 = np.array([zero] * ntot + [one] * m + [zero], dtype=object if exact else float)
    allowed = np.ones(ntot + m, dtype=bool)
    tab.run(cost1, allowed, max_iter)
    infeas = sum(tab.T[i, -1] for i in range(m) if tab.basis[i] >= ntot)
    scale = 1.0 + (float(max(abs(v) for v in b)) if len(b) else 0.0)
    if (exact and infeas > 0) or (not exact and float(infeas) > tol * scale):
        return LPResult("infeasible", None, None, float(infeas), tab.iterations)

    # drive artificials out of the basis
    for i in range(m):
        if tab.basis[i] >= ntot:
            row = tab.T[i, :ntot]
            cand = [j for j in range(ntot) if (row[j] != 0 if exact else abs(row[j]) > tol)]
            if cand:
                tab.pivot(i, cand[0])
    allowed = np.zeros(ntot + m, dtype=bool)
    allowed[:ntot] = True

    if c is not None:
        cfull = np.full(ntot + m + 1, zero, dtype=object if exact else float)
        cv = _as_vector(c, exact)
        cfull[:n] = cv
        if free:
            cfull[n:nv] = -cv[free]
        # artificial columns stay basic only on redundant rows; keep them out of pricing
        status = tab.run(cfull, allowed, max_iter)
        if status == "unbounded":
            return LPResult("unbounded", None, None, float(infeas), tab.iterations)

    xfull = np.full(ntot + m, zero, dtype=object if exact else float)
    for i, bj in enumerate(tab.basis):
        xfull[bj] = tab.T[i, -1]
    x = xfull[:n].copy()
    if free:
        x[free] = x[free] - xfull[n:nv]
    if not exact:
        x = x.astype(float)
    obj = None
    if c is not None:
        obj = sum(ci * xi for ci, xi in zip(_as_vector(c, exact), x))
        obj = obj if exact else float(obj)
    return LPResult("optimal", x, obj, float(infeas), tab.iterations)


def find_feasible(A_ub=None, b_ub=None, A_eq=None, b_eq=None, **kw) -> Optional[np.ndarray]:
    """Return a point of the polyhedron, or ``None`` when it is empty."""
    res = linprog(None, A_ub, b_ub, A_eq, b_eq, **kw)
    return res.x if res.success else None
