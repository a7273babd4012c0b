"""Bounded-in-degree orientation by path reversal, vs brute force."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from expanderlp import (
    DomainError,
    OrientationFailure,
    OrientedEdgeSet,
    complete_bipartite,
    cycle_graph,
    orient,
    verify_orientation,
)

from oracles import orientation_exists_brute_force


def test_single_edge():
    g = complete_bipartite(2)
    result = orient(g, [0], 1, 1)
    assert isinstance(result, OrientedEdgeSet)
    assert verify_orientation(result) == []


def test_star_forced_to_point_outward():
    # three edges at one A vertex, cap 1 each side: at most one may point
    # at the center, so at least two land on distinct B vertices
    g = complete_bipartite(3)
    star = [int(e) for e in g.a_edges[0]]
    result = orient(g, star, 1, 1)
    assert isinstance(result, OrientedEdgeSet)
    assert verify_orientation(result) == []
    indeg = result.indegrees()
    assert all(d <= 1 for d in indeg.values())


def test_overloaded_star_fails_with_blocking_set():
    g = complete_bipartite(3)
    star = [int(e) for e in g.a_edges[0]]
    result = orient(g, star, 1, 0)
    assert isinstance(result, OrientationFailure)
    assert result.induced_edges > result.capacity
    assert 0 in result.blocking_set  # the A-side center is trapped
    # the reported numbers must describe the actual blocking set
    blocked = result.blocking_set
    induced = sum(1 for e in star
                  if int(g.a_of[e]) in blocked and (3 + int(g.b_of[e])) in blocked)
    assert induced == result.induced_edges
    assert result.capacity == sum(1 for v in blocked if v < 3)


def test_saturated_cycle_needs_reversals():
    # all four edges of the 4-cycle with caps 1/1: only the two directed
    # cycles work, and the all-B start must be repaired by path flipping
    g = cycle_graph(2)
    result = orient(g, [0, 1, 2, 3], 1, 1)
    assert isinstance(result, OrientedEdgeSet)
    assert sorted(result.indegrees().values()) == [1, 1, 1, 1]


def test_brute_force_equivalence_exhaustive():
    g = cycle_graph(3)
    all_edges = list(range(g.num_edges))
    for size in range(len(all_edges) + 1):
        for subset in itertools.combinations(all_edges, size):
            for cap_a in (0, 1, 2):
                for cap_b in (0, 1):
                    got = orient(g, list(subset), cap_a, cap_b)
                    expected = orientation_exists_brute_force(g, subset, cap_a, cap_b)
                    if expected:
                        assert isinstance(got, OrientedEdgeSet)
                        assert verify_orientation(got) == []
                    else:
                        assert isinstance(got, OrientationFailure)


def test_failure_blocking_sets_check_out(rng):
    # every reported failure must carry a genuinely over-capacity closure
    g = complete_bipartite(4)
    found_failure = False
    for _ in range(200):
        size = int(rng.integers(1, 10))
        subset = rng.choice(16, size=size, replace=False)
        result = orient(g, [int(e) for e in subset], 1, 0)
        if isinstance(result, OrientedEdgeSet):
            assert verify_orientation(result) == []
            continue
        found_failure = True
        blocked = result.blocking_set
        induced = sum(
            1 for e in subset
            if int(g.a_of[e]) in blocked and (4 + int(g.b_of[e])) in blocked)
        assert induced == result.induced_edges
        assert result.capacity == sum(
            1 if v < 4 else 0 for v in blocked)  # cap_a=1, cap_b=0
        assert induced > result.capacity
    assert found_failure


def test_fractional_caps_floor_with_warning():
    g = complete_bipartite(2)
    with pytest.warns(UserWarning):
        result = orient(g, [0, 1], Fraction(3, 2), 1)
    assert isinstance(result, OrientedEdgeSet)
    assert result.cap_a == 1


def test_negative_cap_rejected():
    g = complete_bipartite(2)
    with pytest.raises(DomainError):
        orient(g, [0], -1, 1)


def test_bad_edge_ids_rejected():
    g = complete_bipartite(2)
    with pytest.raises(ValueError):
        orient(g, [99], 1, 1)


def test_head_tail_bookkeeping():
    g = complete_bipartite(2)
    oriented = OrientedEdgeSet(graph=g, edges=(0,), head_side={0: "b"},
                               cap_a=1, cap_b=1)
    assert oriented.head(0) == 2 + int(g.b_of[0])
    assert oriented.tail(0) == int(g.a_of[0])
    assert oriented.indegrees() == {oriented.head(0): 1}
    flipped = OrientedEdgeSet(graph=g, edges=(0,), head_side={0: "a"},
                              cap_a=1, cap_b=1)
    assert flipped.head(0) == oriented.tail(0)


def test_oriented_set_validates_head_side():
    g = complete_bipartite(2)
    with pytest.raises(ValueError):
        OrientedEdgeSet(graph=g, edges=(0, 1), head_side={0: "a"}, cap_a=1, cap_b=1)
    with pytest.raises(ValueError):
        OrientedEdgeSet(graph=g, edges=(0,), head_side={0: "up"}, cap_a=1, cap_b=1)


def test_verify_orientation_reports_violations():
    g = complete_bipartite(2)
    both_at_a0 = [int(e) for e in g.a_edges[0]]
    oriented = OrientedEdgeSet(graph=g, edges=tuple(both_at_a0),
                               head_side={e: "a" for e in both_at_a0},
                               cap_a=1, cap_b=1)
    assert verify_orientation(oriented) == [(0, 2, 1)]


def test_orientation_deterministic():
    g = complete_bipartite(4)
    edges = [0, 3, 5, 9, 12]
    a = orient(g, edges, 1, 1)
    b = orient(g, edges, 1, 1)
    assert isinstance(a, OrientedEdgeSet)
    assert a.head_side == b.head_side


def test_empty_edge_set():
    g = complete_bipartite(2)
    result = orient(g, [], 0, 0)
    assert isinstance(result, OrientedEdgeSet)
    assert result.edges == ()
