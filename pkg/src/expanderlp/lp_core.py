"""A dense-tableau two-phase primal simplex for equality-form LPs.

Problems are   maximize c.x   subject to   A x = b,  x >= 0.

Phase 1 starts from an all-artificial basis and maximizes minus the sum of
the artificials; a row whose artificial cannot be driven out afterwards is
redundant and gets dropped.  The artificial columns stay in the tableau the
whole time — they start as the identity, so they always hold the current
basis inverse — but an artificial that left the basis can never come back,
because the entering rule only looks at real columns.

The decoding LPs this solver exists for are extremely degenerate (most
right-hand sides are zero), which makes plain Dantzig pivoting stall and
Bland's rule crawl.  Degeneracy is handled with the lexicographic ratio
test instead: ties in the minimum ratio are broken by comparing the rows of
the basis inverse, scaled by the pivot column, left to right.  Rows of the
inverse are independent, so the winner is unique, cycling is impossible,
and the entering rule stays Dantzig (most positive reduced cost, lowest
index on ties).  All choices are deterministic, so identical inputs give
identical iterates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError

_PIVOT_TOL = 1e-9
DEFAULT_FEAS_TOL = 1e-8
DEFAULT_OPT_TOL = 1e-9


@dataclass
class LpProblem:
    """maximize objective . x  s.t.  eq_coeffs @ x = eq_rhs,  x >= 0."""

    objective: np.ndarray
    eq_coeffs: np.ndarray
    eq_rhs: np.ndarray

    def __post_init__(self) -> None:
        self.objective = np.asarray(self.objective, dtype=float)
        self.eq_coeffs = np.asarray(self.eq_coeffs, dtype=float)
        self.eq_rhs = np.asarray(self.eq_rhs, dtype=float)
        if self.eq_coeffs.ndim != 2:
            raise ValueError("eq_coeffs must be a matrix")
        m, n = self.eq_coeffs.shape
        if self.objective.shape != (n,):
            raise ValueError(f"objective must have length {n}")
        if self.eq_rhs.shape != (m,):
            raise ValueError(f"eq_rhs must have length {m}")
        for arr, name in ((self.objective, "objective"),
                          (self.eq_coeffs, "eq_coeffs"),
                          (self.eq_rhs, "eq_rhs")):
            if not np.isfinite(arr).all():
                raise ValueError(f"{name} contains non-finite entries")

    @property
    def num_vars(self) -> int:
        return self.eq_coeffs.shape[1]


@dataclass
class LpSolution:
    """status is 'optimal', 'infeasible' or 'unbounded'.

    values and objective_value are set only for 'optimal'.  At an optimum
    every equality holds within the feasibility tolerance and no nonbasic
    column has reduced cost above the optimality tolerance.
    """

    status: str
    values: np.ndarray | None = None
    objective_value: float | None = None
    iterations: int = field(default=0)


class _Tableau:
    """Mutable simplex state.

    T has shape (rows, n + m + 1): the n real columns, then the m columns
    that started as the identity (artificials, later the basis inverse),
    then the right-hand side.  basis[r] is the column index basic in row r;
    an index >= n means row r still carries its artificial.
    """

    def __init__(self, T: np.ndarray, n_real: int, basis: list[int],
                 opt_tol: float, max_iters: int):
        self.T = T
        self.n = n_real
        self.basis = basis
        self.z = np.zeros(T.shape[1])  # reduced costs; last slot = -objective
        self.opt_tol = opt_tol
        self.max_iters = max_iters
        self.iterations = 0

    def pivot(self, row: int, col: int) -> None:
        T = self.T
        piv_row = T[row] / T[row, col]
        body_col = T[:, col].copy()
        T -= np.outer(body_col, piv_row)
        T[row] = piv_row
        T[:, col] = 0.0
        T[row, col] = 1.0
        self.z -= self.z[col] * piv_row
        self.z[col] = 0.0
        self.basis[row] = col
        self.iterations += 1

    def _entering(self) -> int | None:
        rc = self.z[:self.n]
        j = int(np.argmax(rc))
        return j if rc[j] > self.opt_tol else None

    def _leaving(self, col: int) -> int | None:
        colvals = self.T[:, col]
        pos = np.nonzero(colvals > _PIVOT_TOL)[0]
        if len(pos) == 0:
            return None
        ratios = self.T[pos, -1] / colvals[pos]
        tied = pos[ratios == ratios.min()]
        j = self.n
        last = self.T.shape[1] - 1
        while len(tied) > 1 and j < last:
            vals = self.T[tied, j] / colvals[tied]
            tied = tied[vals == vals.min()]
            j += 1
        if len(tied) > 1:
            raise NumericError(
                "lexicographic ratio test could not separate candidate rows")
        return int(tied[0])

    def run(self) -> str:
        """Pivot to optimality; returns 'optimal' or 'unbounded'."""
        while True:
            if self.iterations > self.max_iters:
                raise NumericError(
                    f"simplex exceeded {self.max_iters} iterations; "
                    "likely numeric trouble")
            col = self._entering()
            if col is None:
                return "optimal"
            row = self._leaving(col)
            if row is None:
                return "unbounded"
            self.pivot(row, col)


def solve(problem: LpProblem,
          feas_tol: float = DEFAULT_FEAS_TOL,
          opt_tol: float = DEFAULT_OPT_TOL,
          max_iters: int | None = None) -> LpSolution:
    """Two-phase primal simplex.  See the module docstring for the rules."""
    A0 = problem.eq_coeffs
    b0 = problem.eq_rhs
    c = problem.objective
    m, n = A0.shape
    if max_iters is None:
        max_iters = 500 * (m + n) + 2000

    # sign-normalize so b >= 0; aux block starts as the identity
    signs = np.where(b0 < 0, -1.0, 1.0)
    T = np.zeros((m, n + m + 1))
    T[:, :n] = A0 * signs[:, None]
    T[:, n:n + m] = np.eye(m)
    T[:, -1] = b0 * signs
    basis = list(range(n, n + m))
    tab = _Tableau(T, n, basis, opt_tol, max_iters)
    # phase-1 reduced costs for maximizing -(sum of artificials)
    tab.z[:n] = T[:, :n].sum(axis=0)
    tab.z[-1] = T[:, -1].sum()             # negative of the phase-1 objective

    status = tab.run()
    if status == "unbounded":
        raise NumericError("phase-1 objective reported unbounded; cannot happen")
    if tab.z[-1] > feas_tol:
        return LpSolution(status="infeasible", iterations=tab.iterations)

    # drive leftover artificials out of the basis, dropping redundant rows
    drop: list[int] = []
    for r in range(m):
        if tab.basis[r] < n:
            continue
        row = tab.T[r, :n]
        candidates = np.nonzero(np.abs(row) > _PIVOT_TOL)[0]
        if len(candidates) == 0:
            drop.append(r)
        else:
            tab.pivot(r, int(candidates[0]))
    if drop:
        keep = [r for r in range(m) if r not in set(drop)]
        tab.T = tab.T[keep]
        tab.basis = [tab.basis[r] for r in keep]

    # phase 2: fresh reduced costs for the real objective
    basis_arr = np.array(tab.basis)
    if (basis_arr >= n).any():
        raise NumericError("artificial variable left in the basis after cleanup")
    cb = c[basis_arr]
    tab.z[:n] = c - cb @ tab.T[:, :n]
    tab.z[n:-1] = -(cb @ tab.T[:, n:-1])
    tab.z[-1] = -(cb @ tab.T[:, -1])

    status = tab.run()
    if status == "unbounded":
        return LpSolution(status="unbounded", iterations=tab.iterations)

    x = np.zeros(n)
    for r, bv in enumerate(tab.basis):
        x[bv] = tab.T[r, -1]
    if x.min() < -feas_tol:
        raise NumericError(f"optimal basis has a negative variable: {x.min()}")
    np.clip(x, 0.0, None, out=x)
    resid = np.abs(A0 @ x - b0).max() if m else 0.0
    if resid > feas_tol * (1.0 + np.abs(b0).max(initial=0.0)):
        raise NumericError(f"constraint residual {resid} exceeds tolerance")
    return LpSolution(status="optimal", values=x,
                      objective_value=float(c @ x), iterations=tab.iterations)
