"""Peeling, error cores, and exact dual witnesses."""

import copy
from fractions import Fraction

import numpy as np
import pytest

from expanderlp import (
    DualWitness,
    OrientedEdgeSet,
    build_witness_from_orientation,
    build_witness_from_peeling,
    check_witness,
    decode,
    find_error_core,
    find_witness,
    peel,
)

EPS = Fraction(1, 10**6)


# -- peeling ------------------------------------------------------------------------


def test_peel_clean_word(k66_rep2):
    c = np.zeros(36, dtype=np.int64)
    trace = peel(k66_rep2, c, c)
    assert trace.terminated_empty
    assert trace.final_index == 1
    assert trace.edge_sets == [frozenset()]
    assert trace.error_edges == frozenset()


def test_peel_single_error_empties(k66_rep2):
    # one bad edge: its A endpoint holds 1 < 6/4 of its local distance, so
    # round 2 drops it and the edge set empties immediately
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[5] = 1
    trace = peel(k66_rep2, c, y)
    assert trace.terminated_empty
    assert trace.final_index == 2
    assert trace.error_edges == frozenset([5])
    assert trace.edge_sets[-1] == frozenset()


def test_peel_stagnates_on_weak_instance(four_cycle_rep3):
    # local distance 2 on a degree-2 graph: the survival threshold is
    # 4*deg >= 2, which a single error edge always meets at both endpoints
    c = np.zeros(4, dtype=np.int64)
    y = c.copy()
    y[0] = 1
    trace = peel(four_cycle_rep3, c, y)
    assert not trace.terminated_empty
    assert trace.edge_sets[-1] == frozenset([0])


def test_peel_all_errors_keep_everything(k33_parity2):
    c = np.zeros(9, dtype=np.int64)
    y = np.ones(9, dtype=np.int64)
    # flipping every symbol of the zero word is not a codeword move, but y
    # differs from c on all 9 edges either way
    trace = peel(k33_parity2, c, y)
    assert not trace.terminated_empty
    assert trace.edge_sets[-1] == frozenset(range(9))


def test_peel_sets_shrink(k66_rep2, rng):
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[rng.choice(36, size=8, replace=False)] = 1
    trace = peel(k66_rep2, c, y)
    for later, earlier in zip(trace.edge_sets[1:], trace.edge_sets):
        assert later <= earlier
    for i in range(2, len(trace.vertex_sets)):
        assert trace.vertex_sets[i] <= trace.vertex_sets[i - 2]


def test_peel_requires_codeword(four_cycle_rep3):
    with pytest.raises(ValueError):
        peel(four_cycle_rep3, [0, 0, 0, 1], [0, 0, 0, 0])


# -- error cores --------------------------------------------------------------------


def test_core_of_emptied_trace_is_none(k66_rep2):
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[0] = 1
    trace = peel(k66_rep2, c, y)
    assert find_error_core(k66_rep2.graph, trace, Fraction(1, 4), Fraction(1, 4)) is None


def test_core_all_errors(k33_parity2):
    c = np.zeros(9, dtype=np.int64)
    y = np.ones(9, dtype=np.int64)
    trace = peel(k33_parity2, c, y)
    core = find_error_core(k33_parity2.graph, trace, Fraction(1, 6), Fraction(1, 6))
    assert core.edges == frozenset(range(9))
    assert core.vertices_a == frozenset([0, 1, 2])
    assert core.vertices_b == frozenset([3, 4, 5])
    assert core.zeta_a == Fraction(1, 6)


def test_find_witness_reports_core(four_cycle_rep3):
    result = find_witness(four_cycle_rep3, [0, 0, 0, 0], [1, 0, 0, 0], mode="peel")
    assert not result.witness_found
    assert result.core is not None
    assert result.core.edges == frozenset([0])
    assert "stagnated" in result.reason


# -- witness construction from a peeling trace ---------------------------------------


def test_peeling_witness_tau_values(k66_rep2):
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[5] = 1
    trace = peel(k66_rep2, c, y)
    w = build_witness_from_peeling(k66_rep2, c, y, trace, EPS)

    # error edge, matched symbol: +1/2 at both endpoints
    assert w.tau_a[5][0] == Fraction(1, 2)
    assert w.tau_b[5][0] == Fraction(1, 2)
    # the A endpoint was peeled first: it gets the released row
    assert w.tau_a[5][1] == Fraction(-5, 2) - EPS
    assert w.tau_b[5][1] == Fraction(3, 2)

    # a correct edge: -1/2 at its symbol, 1/2 - eps elsewhere
    assert w.tau_a[0][0] == Fraction(-1, 2)
    assert w.tau_b[0][0] == Fraction(-1, 2)
    assert w.tau_a[0][1] == Fraction(1, 2) - EPS

    # sigma = Delta/2 - local error count
    a5 = int(k66_rep2.graph.a_of[5])
    b5 = int(k66_rep2.graph.b_of[5])
    assert w.sigma[a5] == Fraction(2)
    assert w.sigma[6 + b5] == Fraction(2)
    clean = next(v for v in range(6) if v != a5)
    assert w.sigma[clean] == Fraction(3)

    assert check_witness(k66_rep2, c, y, w).ok


def test_witness_found_end_to_end(k66_rep2):
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[[1, 14, 30]] = 1
    result = find_witness(k66_rep2, c, y, mode="peel")
    assert result.witness_found
    assert result.epsilon == EPS
    assert check_witness(k66_rep2, c, y, result.witness).ok


def test_tau_float_mirrors_fractions(k66_rep2):
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[3] = 1
    result = find_witness(k66_rep2, c, y, mode="peel")
    ta, tb = result.witness.tau_float()
    assert ta.shape == (36, 2)
    assert ta[3][0] == pytest.approx(0.5)
    assert tb[3][1] == pytest.approx(1.5)


# -- the exact checker catches every kind of tampering --------------------------------


def valid_single_error_witness(code):
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[5] = 1
    trace = peel(code, c, y)
    return c, y, build_witness_from_peeling(code, c, y, trace, EPS)


def test_checker_flags_strict_edge_violation(k66_rep2):
    c, y, w = valid_single_error_witness(k66_rep2)
    w = copy.deepcopy(w)
    w.tau_a[0][1] = Fraction(3, 2)  # off-symbol sums to 2 - eps > 1 - eps
    result = check_witness(k66_rep2, c, y, w)
    assert not result.ok
    assert result.violation.startswith("strict edge constraint at edge 0")


def test_checker_flags_weak_edge_violation(k66_rep2):
    c, y, w = valid_single_error_witness(k66_rep2)
    w = copy.deepcopy(w)
    w.tau_a[0][0] = Fraction(0)  # matched-symbol sum rises above cost -1
    result = check_witness(k66_rep2, c, y, w)
    assert not result.ok
    assert result.violation.startswith("weak edge constraint at edge 0")


def test_checker_flags_sigma_mismatch(k66_rep2):
    c, y, w = valid_single_error_witness(k66_rep2)
    w = copy.deepcopy(w)
    w.sigma[0] += 1
    result = check_witness(k66_rep2, c, y, w)
    assert not result.ok
    assert "sigma mismatch" in result.violation


def test_checker_flags_vertex_violation(k66_rep2):
    c, y, w = valid_single_error_witness(k66_rep2)
    w = copy.deepcopy(w)
    a0 = [int(e) for e in k66_rep2.graph.a_edges[0]]
    for e in a0:
        w.tau_a[e][0] = Fraction(-10)
    result = check_witness(k66_rep2, c, y, w)
    assert not result.ok
    assert "vertex constraint at a0" in result.violation


def test_checker_rejects_nonpositive_epsilon(k66_rep2):
    c, y, w = valid_single_error_witness(k66_rep2)
    w = copy.deepcopy(w)
    w.epsilon = Fraction(0)
    assert not check_witness(k66_rep2, c, y, w).ok


def test_all_zero_witness_fails(four_cycle_rep3):
    zeros = [[Fraction(0)] * 3 for _ in range(4)]
    w = DualWitness(tau_a=copy.deepcopy(zeros), tau_b=copy.deepcopy(zeros),
                    sigma=[Fraction(0)] * 4, epsilon=EPS)
    result = check_witness(four_cycle_rep3, [0, 0, 0, 0], [0, 0, 0, 0], w)
    assert not result.ok


# -- witnesses from orientations -----------------------------------------------------


def test_orientation_witness_end_to_end(k66_rep2):
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[[0, 13]] = 1
    result = find_witness(k66_rep2, c, y, mode="orient")
    assert result.witness_found
    assert check_witness(k66_rep2, c, y, result.witness).ok


def test_orientation_witness_rejects_heavy_heads(k66_rep2):
    # two error edges oriented into one A vertex: 4*2 >= d_A = 6 breaks the
    # builder's precondition even though the caps themselves allow it
    graph = k66_rep2.graph
    edges = sorted([int(np.nonzero((graph.a_of == 0) & (graph.b_of == b))[0][0])
                    for b in (0, 1)])
    oriented = OrientedEdgeSet(graph=graph, edges=tuple(edges),
                               head_side={e: "a" for e in edges},
                               cap_a=2, cap_b=2)
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[edges] = 1
    with pytest.raises(ValueError):
        build_witness_from_orientation(k66_rep2, c, y, oriented, EPS)


def test_orient_mode_needs_theta(four_cycle_rep3):
    # repetition distance 2 on a degree-2 graph leaves no valid theta
    result = find_witness(four_cycle_rep3, [0, 0, 0, 0], [1, 0, 0, 0], mode="orient")
    assert not result.witness_found
    assert result.reason is not None


def test_unknown_mode_rejected(k66_rep2):
    c = np.zeros(36, dtype=np.int64)
    with pytest.raises(ValueError):
        find_witness(k66_rep2, c, c, mode="guess")


# -- epsilon schedule ----------------------------------------------------------------


def test_epsilon_schedule_exhaustion(k66_rep2):
    c = np.zeros(36, dtype=np.int64)
    y = c.copy()
    y[0] = 1
    result = find_witness(k66_rep2, c, y, mode="peel",
                          epsilon_start=Fraction(1, 10**15),
                          epsilon_floor=Fraction(1, 10**12))
    assert not result.witness_found
    assert "no feasible epsilon" in result.reason


def test_witness_certifies_decode_agreement(k66_rep2, rng):
    # whenever a witness exists the LP must land exactly on c
    c = np.zeros(36, dtype=np.int64)
    for _ in range(10):
        weight = int(rng.integers(1, 4))
        y = c.copy()
        y[rng.choice(36, size=weight, replace=False)] = 1
        for mode in ("peel", "orient"):
            result = find_witness(k66_rep2, c, y, mode=mode)
            if not result.witness_found:
                continue
            decoded = decode(k66_rep2, y)
            assert decoded.status == "codeword"
            assert np.array_equal(decoded.codeword, c)
