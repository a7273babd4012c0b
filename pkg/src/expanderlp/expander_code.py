"""The global code cut out by local codes on the edges of a bipartite graph.

A word assigns one GF(q) symbol to every edge.  It is a codeword when its
restriction to the edge neighborhood of every A vertex lies in the A-side
local code and likewise on the B side.  This module also carries the
analytic machinery: the spectral distance bound, the correctable-fraction
formulas (both the error-core route and the orientation route), the theta
quantity used by the orientation route, and the two published rate/fraction
tables' generating formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import gflinalg
from .errors import DomainError, EnumerationCapError, NoValidThetaError
from .gf import GF
from .linear_code import LocalCode
from .tanner_graph import TannerGraph

DEFAULT_GLOBAL_ENUMERATION_CAP = 2 ** 16


# -- words ---------------------------------------------------------------------

def parse_word(text: str, q: int, expected_length: int | None = None) -> np.ndarray:
    """One line of space-separated element indices."""
    parts = text.split()
    word = np.array([int(x) for x in parts], dtype=np.int64)
    if expected_length is not None and word.shape[0] != expected_length:
        raise ValueError(f"expected {expected_length} symbols, got {word.shape[0]}")
    if word.size and (word.min() < 0 or word.max() >= q):
        raise ValueError(f"symbols must be element indices in [0, {q})")
    return word


def format_word(word) -> str:
    return " ".join(str(int(x)) for x in np.asarray(word)) + "\n"


def hamming_distance(x, y) -> int:
    a = np.asarray(x)
    b = np.asarray(y)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


# -- the global code -------------------------------------------------------------

class ExpanderCode:
    """Local codes attached to both sides of a Tanner graph.

    The symbol order of global words is the graph's global edge order; the
    restriction to a vertex uses that vertex's ascending incident-edge list,
    matching the local code's coordinate order.
    """

    def __init__(self, graph: TannerGraph, code_a: LocalCode, code_b: LocalCode):
        if code_a.length != graph.delta or code_b.length != graph.delta:
            raise ValueError(
                f"local code lengths ({code_a.length}, {code_b.length}) "
                f"must equal the graph degree {graph.delta}")
        if code_a.field != code_b.field:
            raise ValueError("both local codes must live over the same field")
        self.graph = graph
        self.code_a = code_a
        self.code_b = code_b
        self.field: GF = code_a.field
        self._parity: np.ndarray | None = None
        self._basis: np.ndarray | None = None

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges

    def restriction(self, word, side: str, v: int) -> np.ndarray:
        """The subword on the edges at vertex v (side 'a' or 'b')."""
        w = np.asarray(word, dtype=np.int64)
        inc = self.graph.a_edges if side == "a" else self.graph.b_edges
        return w[inc[v]]

    def is_codeword(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64)
        if w.shape != (self.num_edges,):
            raise ValueError(f"word must have length {self.num_edges}")
        if w.size and (w.min() < 0 or w.max() >= self.field.q):
            raise ValueError(f"symbols must be element indices in [0, {self.field.q})")
        for side, code, inc in (("a", self.code_a, self.graph.a_edges),
                                ("b", self.code_b, self.graph.b_edges)):
            H = code.parity_check
            if H.shape[0] == 0:
                continue
            for v in range(self.graph.n):
                if gflinalg.mat_vec(H, w[inc[v]], self.field).any():
                    return False
        return True

    def parity_check_matrix(self) -> np.ndarray:
        """Global parity-check matrix: every local check row, scattered to edge columns."""
        if self._parity is None:
            ha = self.code_a.parity_check
            hb = self.code_b.parity_check
            rows = self.graph.n * (ha.shape[0] + hb.shape[0])
            H = np.zeros((rows, self.num_edges), dtype=np.int64)
            r = 0
            for v in range(self.graph.n):
                cols = self.graph.a_edges[v]
                H[r:r + ha.shape[0], cols] = ha
                r += ha.shape[0]
            for v in range(self.graph.n):
                cols = self.graph.b_edges[v]
                H[r:r + hb.shape[0], cols] = hb
                r += hb.shape[0]
            self._parity = H
        return self._parity

    def codeword_basis(self) -> np.ndarray:
        """A basis of the global code (one codeword per row)."""
        if self._basis is None:
            self._basis = gflinalg.null_space(self.parity_check_matrix(), self.field)
        return self._basis

    @property
    def dimension(self) -> int:
        return self.codeword_basis().shape[0]

    def random_codeword(self, rng: np.random.Generator) -> np.ndarray:
        basis = self.codeword_basis()
        word = np.zeros(self.num_edges, dtype=np.int64)
        if basis.shape[0] == 0:
            return word
        coeffs = rng.integers(0, self.field.q, size=basis.shape[0])
        for coeff, row in zip(coeffs, basis):
            if coeff:
                word = self.field.add_table[word, self.field.mul_table[int(coeff), row]]
        return word

    def enumerate_codewords(self, cap: int = DEFAULT_GLOBAL_ENUMERATION_CAP) -> np.ndarray:
        basis = self.codeword_basis()
        total = self.field.q ** basis.shape[0]
        if total > cap:
            raise EnumerationCapError(f"{total} global codewords exceed cap {cap}")
        gf = self.field
        words = np.zeros((1, self.num_edges), dtype=np.int64)
        for row in basis:
            scaled = [gf.mul_table[lam, row] for lam in range(gf.q)]
            words = np.concatenate([gf.add_table[words, s[None, :]] for s in scaled], axis=0)
        return words

    def brute_force_min_distance(self, cap: int = DEFAULT_GLOBAL_ENUMERATION_CAP) -> int:
        cw = self.enumerate_codewords(cap)
        weights = np.count_nonzero(cw, axis=1)
        nonzero = weights[weights > 0]
        if len(nonzero) == 0:
            raise ValueError("the global code is trivial (only the zero word)")
        return int(nonzero.min())

    def rate_lower_bound(self) -> Fraction:
        """r_A + r_B - 1, a floor on the global rate dimension/num_edges."""
        return self.code_a.rate + self.code_b.rate - 1

    def __repr__(self) -> str:
        return (f"ExpanderCode(n={self.graph.n}, delta={self.graph.delta}, "
                f"q={self.field.q})")


# -- exact square roots of rationals ----------------------------------------------

def sqrt_fraction(x: Fraction) -> Fraction:
    """Exact square root of a rational, or ValueError if it is irrational."""
    if x < 0:
        raise ValueError("cannot take the square root of a negative rational")
    num = math.isqrt(x.numerator)
    den = math.isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        raise ValueError(f"{x} has no rational square root")
    return Fraction(num, den)


# -- distance and correctable-fraction bounds --------------------------------------

class DistanceBound(NamedTuple):
    value: float
    positive: bool


def distance_bound_eq1(delta_a: float, delta_b: float, gamma: float) -> DistanceBound:
    """Spectral lower bound on the relative distance of the global code:

        (delta_a*delta_b - gamma*sqrt(delta_a*delta_b)) / (1 - gamma).

    The value may be nonpositive when gamma exceeds sqrt(delta_a*delta_b);
    it is returned as computed, with a positivity flag.
    """
    _check_rel_distance(delta_a, "delta_a")
    _check_rel_distance(delta_b, "delta_b")
    if not 0 <= gamma < 1:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    prod = delta_a * delta_b
    value = (prod - gamma * math.sqrt(prod)) / (1 - gamma)
    return DistanceBound(value=value, positive=value > 0)


def distance_bound_eq1_exact(delta_a: Fraction, delta_b: Fraction,
                             gamma: Fraction) -> Fraction:
    """Exact-rational spectral distance bound; sqrt(delta_a*delta_b) must be rational."""
    if not 0 <= gamma < 1:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    prod = delta_a * delta_b
    return (prod - gamma * sqrt_fraction(prod)) / (1 - gamma)


def correctable_fraction_core(delta_a: float, delta_b: float, gamma: float) -> float:
    """Correctable fraction of edges via the error-core argument:

        (delta_a*delta_b/16 - gamma*sqrt(delta_a*delta_b/16)) / (1 - gamma),

    valid when gamma <= sqrt(delta_a*delta_b)/4.
    """
    _check_rel_distance(delta_a, "delta_a")
    _check_rel_distance(delta_b, "delta_b")
    limit = math.sqrt(delta_a * delta_b) / 4
    if not 0 <= gamma <= limit:
        raise DomainError(
            f"gamma={gamma} outside [0, sqrt(delta_a*delta_b)/4] = [0, {limit}]")
    prod16 = delta_a * delta_b / 16
    return (prod16 - gamma * math.sqrt(prod16)) / (1 - gamma)


def correctable_fraction_core_exact(delta_a: Fraction, delta_b: Fraction,
                                    gamma: Fraction) -> Fraction:
    prod16 = delta_a * delta_b / 16
    root = sqrt_fraction(prod16)   # equals sqrt(delta_a*delta_b)/4
    if not 0 <= gamma <= root:
        raise DomainError("gamma outside the core-bound hypothesis")
    return (prod16 - gamma * root) / (1 - gamma)


def compute_theta(delta: Fraction, degree: int) -> Fraction:
    """The largest theta with 0 < theta < delta and theta*degree/4 integral.

    theta = 4m/degree for the largest integer m >= 1 with m < delta*degree/4.
    Raises when no such m exists (local distance too small for the degree).
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    if not isinstance(delta, Fraction):
        raise TypeError("delta must be a Fraction for exact comparison")
    if not 0 < delta <= 1:
        raise DomainError(f"relative distance must lie in (0, 1], got {delta}")
    cutoff = delta * degree / 4
    m = (cutoff.numerator - 1) // cutoff.denominator   # largest integer < cutoff
    if m < 1:
        raise NoValidThetaError(
            f"no positive multiple of 4/{degree} lies below delta={delta}")
    return Fraction(4 * m, degree)


def correctable_fraction_orientation(theta_a: float, theta_b: float,
                                     gamma: float) -> float:
    """Correctable fraction of edges via the orientation argument:

        (theta_a*theta_b - 2*gamma*sqrt(theta_a*theta_b)) / (4*(1 - gamma)),

    valid when gamma <= sqrt(theta_a*theta_b)/2.
    """
    _check_rel_distance(theta_a, "theta_a")
    _check_rel_distance(theta_b, "theta_b")
    limit = math.sqrt(theta_a * theta_b) / 2
    if not 0 <= gamma <= limit:
        raise DomainError(
            f"gamma={gamma} outside [0, sqrt(theta_a*theta_b)/2] = [0, {limit}]")
    prod = theta_a * theta_b
    return (prod - 2 * gamma * math.sqrt(prod)) / (4 * (1 - gamma))


def correctable_fraction_orientation_exact(theta_a: Fraction, theta_b: Fraction,
                                           gamma: Fraction) -> Fraction:
    prod = theta_a * theta_b
    root = sqrt_fraction(prod)
    if not 0 <= gamma <= root / 2:
        raise DomainError("gamma outside the orientation-bound hypothesis")
    return (prod - 2 * gamma * root) / (4 * (1 - gamma))


def _check_rel_distance(x: float, name: str) -> None:
    if not 0 < x <= 1:
        raise DomainError(f"{name} must lie in (0, 1], got {x}")


# -- published-table formulas ---------------------------------------------------------

def binary_entropy(x: float) -> float:
    if not 0 <= x <= 1:
        raise ValueError(f"entropy argument must lie in [0, 1], got {x}")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def binary_entropy_inverse(y: float, tol: float = 1e-12) -> float:
    """The x in [0, 1/2] with H2(x) = y, by bisection."""
    if not 0 <= y <= 1:
        raise ValueError(f"entropy value must lie in [0, 1], got {y}")
    lo, hi = 0.0, 0.5
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if binary_entropy(mid) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def table_fraction(rate: float, regime: str) -> float:
    """Correctable fraction delta^2/4 at overall rate R for the two regimes.

    'binary': local rate r = (1+R)/2 and local distance at the entropy bound,
    delta = H2^{-1}(1 - r).  'grs': MDS locals, delta = (1-R)/2, giving the
    closed form (1-R)^2/16.
    """
    if not 0 < rate < 1:
        raise ValueError(f"overall rate must lie in (0, 1), got {rate}")
    if regime == "binary":
        local_rate = (1 + rate) / 2
        delta = binary_entropy_inverse(1 - local_rate)
    elif regime == "grs":
        delta = (1 - rate) / 2
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return delta * delta / 4


# -- report bundle --------------------------------------------------------------------

@dataclass
class BoundReport:
    """Every analytic bound for one (graph, code_a, code_b) triple.

    Fields that require a hypothesis the instance fails are None, with the
    reason recorded in notes under the field name.
    """

    gamma: float
    delta_a: Fraction
    delta_b: Fraction
    rate_lower_bound: Fraction
    distance_lower_bound: float
    distance_bound_positive: bool
    core_fraction: float | None
    orientation_fraction: float | None
    theta_a: Fraction | None
    theta_b: Fraction | None
    notes: dict[str, str]
