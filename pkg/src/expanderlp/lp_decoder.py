"""Primal LP relaxation of nearest-neighbor decoding, and its solver wrapper.

Variables: one f[e, alpha] per edge e and symbol alpha (the relaxed indicator
that edge e carries alpha), plus one w[v, j] per vertex v and local codeword
j (the relaxed indicator that v's neighborhood equals that local codeword).

Constraints: the w block of every vertex sums to 1, and for both endpoints
of every edge, f[e, alpha] equals the total w mass of local codewords whose
symbol at that edge is alpha.  Objective: maximize sum(-cost * f) where
cost[e, alpha] is -1 when alpha matches the received symbol and +1 otherwise.
For the indicator embedding of a word z this objective evaluates to
|E| - 2*dist(y, z), so over embedded codewords the LP ranks exactly by
Hamming distance from the received word y.

Every codeword's embedding is feasible, and any feasible integral point is a
codeword's embedding, so an integral LP optimum is a nearest codeword.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp_core
from .errors import InternalInvariantError, NotIntegralError
from .expander_code import ExpanderCode, hamming_distance
from .lp_core import LpProblem, LpSolution

DEFAULT_INT_TOL = 1e-6


def embed(word, q: int) -> np.ndarray:
    """The 0/1 indicator array of a word, shape (len(word), q)."""
    w = np.asarray(word, dtype=np.int64)
    if w.size and (w.min() < 0 or w.max() >= q):
        raise ValueError(f"symbols must be element indices in [0, {q})")
    out = np.zeros((w.shape[0], q))
    out[np.arange(w.shape[0]), w] = 1.0
    return out


def unembed(blocks) -> np.ndarray:
    """Invert :func:`embed`; every row must be exactly a one-hot indicator."""
    f = np.asarray(blocks, dtype=float)
    if f.ndim != 2:
        raise NotIntegralError("expected a (length, q) block array")
    is_one = f == 1.0
    is_zero = f == 0.0
    if not np.all(is_one | is_zero) or not np.all(is_one.sum(axis=1) == 1):
        raise NotIntegralError("blocks are not one-hot indicators")
    return np.argmax(is_one, axis=1).astype(np.int64)


def cost_from_received(y, q: int) -> np.ndarray:
    """The (len(y), q) cost array: -1 at the received symbol, +1 elsewhere."""
    w = np.asarray(y, dtype=np.int64)
    cost = np.ones((w.shape[0], q))
    cost[np.arange(w.shape[0]), w] = -1.0
    return cost


@dataclass
class PrimalLayout:
    """Index bookkeeping for the primal LP's flat variable vector."""

    q: int
    num_edges: int
    n: int
    block_a: int     # local codewords per A vertex
    block_b: int

    @property
    def f_count(self) -> int:
        return self.num_edges * self.q

    @property
    def w_start_a(self) -> int:
        return self.f_count

    @property
    def w_start_b(self) -> int:
        return self.f_count + self.n * self.block_a

    @property
    def num_vars(self) -> int:
        return self.w_start_b + self.n * self.block_b

    def f_index(self, e: int, alpha: int) -> int:
        return e * self.q + alpha

    def w_slice(self, side: str, v: int) -> slice:
        if side == "a":
            start = self.w_start_a + v * self.block_a
            return slice(start, start + self.block_a)
        start = self.w_start_b + v * self.block_b
        return slice(start, start + self.block_b)

    def marg_row(self, e: int, side: str, alpha: int) -> int:
        return 2 * self.n + e * 2 * self.q + (0 if side == "a" else self.q) + alpha


def build_primal(code: ExpanderCode, y) -> tuple[LpProblem, PrimalLayout]:
    """Assemble the decoding LP for the received word y."""
    q = code.field.q
    graph = code.graph
    n, num_edges = graph.n, graph.num_edges
    w = np.asarray(y, dtype=np.int64)
    if w.shape != (num_edges,):
        raise ValueError(f"received word must have length {num_edges}")
    if w.min() < 0 or w.max() >= q:
        raise ValueError(f"symbols must be element indices in [0, {q})")

    cw_a = code.code_a.codewords()
    cw_b = code.code_b.codewords()
    layout = PrimalLayout(q=q, num_edges=num_edges, n=n,
                          block_a=cw_a.shape[0], block_b=cw_b.shape[0])
    rows = 2 * n + 2 * q * num_edges
    A = np.zeros((rows, layout.num_vars))
    b = np.zeros(rows)
    b[: 2 * n] = 1.0

    for v in range(n):
        A[v, layout.w_slice("a", v)] = 1.0
        A[n + v, layout.w_slice("b", v)] = 1.0

    # f coefficients: +1 in the marginalization row of both endpoints
    e_ids = np.repeat(np.arange(num_edges), 2 * q)
    alphas = np.tile(np.concatenate([np.arange(q), np.arange(q)]), num_edges)
    A[2 * n + np.arange(2 * q * num_edges), e_ids * q + alphas] = 1.0

    # w coefficients: -1 wherever a local codeword pins this edge to alpha
    for v in range(n):
        sl = layout.w_slice("a", v)
        cols = np.arange(sl.start, sl.stop)
        for t in range(graph.delta):
            e = int(graph.a_edges[v, t])
            A[2 * n + e * 2 * q + cw_a[:, t], cols] = -1.0
    for v in range(n):
        sl = layout.w_slice("b", v)
        cols = np.arange(sl.start, sl.stop)
        for t in range(graph.delta):
            e = int(graph.b_edges[v, t])
            A[2 * n + e * 2 * q + q + cw_b[:, t], cols] = -1.0

    objective = np.zeros(layout.num_vars)
    objective[: layout.f_count] = (-cost_from_received(w, q)).ravel()
    return LpProblem(objective=objective, eq_coeffs=A, eq_rhs=b), layout


def build_reduced(code: ExpanderCode, y) -> tuple[LpProblem, PrimalLayout]:
    """The equivalent w-only system that decode() actually hands the solver.

    The marginalization rows pin every f[e, alpha] to the w mass at either
    endpoint, so f can be eliminated: keep one convexity row per vertex and,
    per edge, the q-1 constraints that the two endpoints' marginals agree
    (the last symbol's agreement is implied by the convexity rows).  The
    objective moves onto the A-side w blocks.  Cuts the row count roughly
    fourfold and the variable count by q per edge, which the dense simplex
    repays directly; the f part of any solution is recovered as the A-side
    marginals.
    """
    q = code.field.q
    graph = code.graph
    n, num_edges = graph.n, graph.num_edges
    w = np.asarray(y, dtype=np.int64)
    if w.shape != (num_edges,):
        raise ValueError(f"received word must have length {num_edges}")
    if w.min() < 0 or w.max() >= q:
        raise ValueError(f"symbols must be element indices in [0, {q})")

    cw_a = code.code_a.codewords()
    cw_b = code.code_b.codewords()
    layout = PrimalLayout(q=q, num_edges=num_edges, n=n,
                          block_a=cw_a.shape[0], block_b=cw_b.shape[0])
    num_w = layout.num_vars - layout.f_count
    rows = 2 * n + (q - 1) * num_edges
    A = np.zeros((rows, num_w))
    b = np.zeros(rows)
    b[: 2 * n] = 1.0

    def w_cols(side: str, v: int) -> np.ndarray:
        sl = layout.w_slice(side, v)
        return np.arange(sl.start - layout.f_count, sl.stop - layout.f_count)

    objective = np.zeros(num_w)
    negc = -cost_from_received(w, q)
    for v in range(n):
        cols = w_cols("a", v)
        A[v, cols] = 1.0
        objective[cols] = negc[graph.a_edges[v][:, None], cw_a.T].sum(axis=0)
        for t in range(graph.delta):
            e = int(graph.a_edges[v, t])
            keep = cw_a[:, t] < q - 1
            A[2 * n + e * (q - 1) + cw_a[keep, t], cols[keep]] = 1.0
    for v in range(n):
        cols = w_cols("b", v)
        A[n + v, cols] = 1.0
        for t in range(graph.delta):
            e = int(graph.b_edges[v, t])
            keep = cw_b[:, t] < q - 1
            A[2 * n + e * (q - 1) + cw_b[keep, t], cols[keep]] = -1.0

    return LpProblem(objective=objective, eq_coeffs=A, eq_rhs=b), layout


@dataclass
class DecodeResult:
    """Outcome of one LP decode.

    status 'codeword' means the LP optimum was integral; the decoded word is
    then a certified nearest codeword.  status 'fractional-failure' keeps
    the raw optimizer state for inspection.
    """

    status: str
    codeword: np.ndarray | None
    raw_f: np.ndarray
    raw_w: dict[tuple[str, int], np.ndarray]
    objective: float
    lp_iterations: int = 0

    def distance_to(self, y) -> int | None:
        if self.codeword is None:
            return None
        return hamming_distance(self.codeword, y)


def decode(code: ExpanderCode, y,
           int_tol: float = DEFAULT_INT_TOL,
           feas_tol: float = lp_core.DEFAULT_FEAS_TOL,
           opt_tol: float = lp_core.DEFAULT_OPT_TOL) -> DecodeResult:
    """Solve the decoding LP and round if the optimum is integral.

    The LP is always feasible (embed any codeword) and its objective is
    bounded by |E|, so any other solver status is an internal error.  For
    speed the solver is given the equivalent w-only system from
    build_reduced; f is lifted back as the A-side marginals, which the
    retained constraints force to agree with the B-side ones.
    """
    problem, layout = build_reduced(code, y)
    sol: LpSolution = lp_core.solve(problem, feas_tol=feas_tol, opt_tol=opt_tol)
    if sol.status != "optimal":
        raise InternalInvariantError(
            f"decoding LP reported {sol.status}; it is feasible and bounded by design")
    graph = code.graph
    cw_a = code.code_a.codewords()
    f = np.zeros((layout.num_edges, layout.q))
    raw_w: dict[tuple[str, int], np.ndarray] = {}
    for v in range(layout.n):
        sl_a = layout.w_slice("a", v)
        sl_b = layout.w_slice("b", v)
        wa = sol.values[sl_a.start - layout.f_count: sl_a.stop - layout.f_count]
        wb = sol.values[sl_b.start - layout.f_count: sl_b.stop - layout.f_count]
        raw_w[("a", v)] = wa.copy()
        raw_w[("b", v)] = wb.copy()
        for t in range(graph.delta):
            e = int(graph.a_edges[v, t])
            f[e] = np.bincount(cw_a[:, t], weights=wa, minlength=layout.q)

    near_one = np.abs(f - 1.0) <= int_tol
    near_zero = np.abs(f) <= int_tol
    if np.all(near_one | near_zero) and np.all(near_one.sum(axis=1) == 1):
        word = unembed(np.where(near_one, 1.0, 0.0))
        if not code.is_codeword(word):
            raise InternalInvariantError(
                "integral LP optimum is not a codeword; the polytope is broken")
        return DecodeResult(status="codeword", codeword=word, raw_f=f, raw_w=raw_w,
                            objective=sol.objective_value, lp_iterations=sol.iterations)
    return DecodeResult(status="fractional-failure", codeword=None, raw_f=f,
                        raw_w=raw_w, objective=sol.objective_value,
                        lp_iterations=sol.iterations)
