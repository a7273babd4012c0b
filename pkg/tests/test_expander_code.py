"""Global codes on bipartite graphs, plus the analytic bound formulas."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expanderlp import (
    GF,
    DomainError,
    ExpanderCode,
    NoValidThetaError,
    binary_entropy,
    binary_entropy_inverse,
    complete_bipartite,
    compute_theta,
    correctable_fraction_core,
    correctable_fraction_core_exact,
    correctable_fraction_orientation,
    correctable_fraction_orientation_exact,
    cycle_graph,
    distance_bound_eq1,
    distance_bound_eq1_exact,
    format_word,
    generalized_reed_solomon,
    hamming_distance,
    parse_word,
    repetition,
    single_parity_check,
    sqrt_fraction,
    table_fraction,
)


# -- word helpers ------------------------------------------------------------------


def test_parse_format_round_trip():
    word = [0, 2, 1, 2]
    assert parse_word(format_word(word), 3).tolist() == word
    assert format_word(word) == "0 2 1 2\n"


def test_parse_word_validates():
    with pytest.raises(ValueError):
        parse_word("0 1 2", 2)
    with pytest.raises(ValueError):
        parse_word("0 1", 3, expected_length=3)


def test_hamming_distance():
    assert hamming_distance([0, 1, 2], [0, 1, 2]) == 0
    assert hamming_distance([0, 1, 2], [1, 1, 0]) == 2
    with pytest.raises(ValueError):
        hamming_distance([0, 1], [0, 1, 2])


# -- global code structure ---------------------------------------------------------


def test_product_code_dimensions(k33_parity2, k66_grs, four_cycle_rep3):
    # complete-bipartite instances are product codes: dimension k_a * k_b
    assert k33_parity2.dimension == 4
    assert k66_grs.dimension == 4
    # on the 4-cycle with repetition locals only the constant words survive
    assert four_cycle_rep3.dimension == 1


def test_product_code_min_distances(k33_parity2, k66_grs, four_cycle_rep3):
    assert k33_parity2.brute_force_min_distance() == 4      # 2 * 2
    assert k66_grs.brute_force_min_distance() == 25         # 5 * 5
    assert four_cycle_rep3.brute_force_min_distance() == 4  # all edges


def test_rate_lower_bound(k33_parity2, k66_rep2):
    # r_A + r_B - 1
    assert k33_parity2.rate_lower_bound() == Fraction(1, 3)
    # repetition rate 1/6 twice: bound is negative, actual dimension is 1
    assert k66_rep2.rate_lower_bound() == Fraction(-2, 3)
    assert k66_rep2.dimension == 1


def test_dimension_never_below_rate_bound(k33_parity2, k66_grs):
    for code in (k33_parity2, k66_grs):
        bound = code.rate_lower_bound() * code.num_edges
        assert code.dimension >= bound


def test_enumerate_codewords_complete(four_cycle_rep3):
    words = four_cycle_rep3.enumerate_codewords()
    assert words.shape == (3, 4)
    assert {tuple(w) for w in words} == {(0, 0, 0, 0), (1, 1, 1, 1), (2, 2, 2, 2)}


def test_enumeration_count_matches_dimension(k33_parity2):
    words = k33_parity2.enumerate_codewords()
    assert words.shape[0] == 2**4
    assert len({tuple(w) for w in words}) == 2**4


def test_codewords_satisfy_parity_checks(k33_parity2):
    h = k33_parity2.parity_check_matrix()
    f = k33_parity2.field
    for w in k33_parity2.enumerate_codewords():
        # accumulate H @ w over GF(2)
        acc = np.zeros(h.shape[0], dtype=np.int64)
        for j, s in enumerate(w):
            if s:
                acc = f.add_table[acc, h[:, j]]
        assert not acc.any()


def test_is_codeword_matches_local_membership(k66_grs):
    rng = np.random.default_rng(2)
    w = k66_grs.random_codeword(rng)
    assert k66_grs.is_codeword(w)
    for v in range(6):
        assert k66_grs.code_a.contains(k66_grs.restriction(w, "a", v))
        assert k66_grs.code_b.contains(k66_grs.restriction(w, "b", v))
    w2 = w.copy()
    w2[0] = (w2[0] + 3) % 7
    assert not k66_grs.is_codeword(w2)


def test_codeword_basis_spans(k33_parity2):
    basis = k33_parity2.codeword_basis()
    assert basis.shape == (4, 9)
    for row in basis:
        assert k33_parity2.is_codeword(row)


def test_random_codeword_deterministic(k66_grs):
    a = k66_grs.random_codeword(np.random.default_rng(5))
    b = k66_grs.random_codeword(np.random.default_rng(5))
    assert np.array_equal(a, b)


def test_mixed_fields_rejected():
    g = complete_bipartite(3)
    with pytest.raises(ValueError):
        ExpanderCode(g, single_parity_check(GF(2), 3), single_parity_check(GF(3), 3))


def test_local_length_must_match_degree():
    g = complete_bipartite(3)
    with pytest.raises(ValueError):
        ExpanderCode(g, repetition(GF(2), 4), repetition(GF(2), 3))


# -- exact square roots ------------------------------------------------------------


def test_sqrt_fraction():
    assert sqrt_fraction(Fraction(4, 9)) == Fraction(2, 3)
    assert sqrt_fraction(Fraction(0)) == 0
    assert sqrt_fraction(Fraction(25, 16)) == Fraction(5, 4)
    with pytest.raises(ValueError):
        sqrt_fraction(Fraction(2))
    with pytest.raises(ValueError):
        sqrt_fraction(Fraction(-1, 4))


# -- distance bound ----------------------------------------------------------------


def test_distance_bound_hand_values():
    db = distance_bound_eq1(2 / 3, 2 / 3, 0.0)
    assert db.value == pytest.approx(4 / 9)
    assert db.positive
    # gamma at sqrt(prod) kills the bound
    db0 = distance_bound_eq1(1.0, 1.0, 0.5)
    assert db0.value == pytest.approx(1.0)
    tight = distance_bound_eq1(0.25, 0.25, 0.25)
    assert tight.value == pytest.approx(0.0, abs=1e-12)
    assert not tight.positive


def test_distance_bound_exact_rational():
    got = distance_bound_eq1_exact(Fraction(2, 3), Fraction(2, 3), Fraction(1, 3))
    assert got == Fraction(1, 3)
    assert distance_bound_eq1_exact(Fraction(1), Fraction(1), Fraction(0)) == 1


def test_distance_bound_matches_exact():
    approx = distance_bound_eq1(2 / 3, 2 / 3, 1 / 3).value
    exact = distance_bound_eq1_exact(Fraction(2, 3), Fraction(2, 3), Fraction(1, 3))
    assert approx == pytest.approx(float(exact))


def test_distance_bound_domain():
    with pytest.raises(DomainError):
        distance_bound_eq1(0.5, 0.5, 1.0)
    with pytest.raises(DomainError):
        distance_bound_eq1(0.0, 0.5, 0.1)


def test_distance_bound_is_valid_on_instances(k33_parity2, k66_grs, four_cycle_rep3):
    # the analytic bound never exceeds the true relative distance
    for code in (k33_parity2, k66_grs, four_cycle_rep3):
        gamma = code.graph.spectral_gamma().gamma
        da = float(code.code_a.relative_distance)
        db = float(code.code_b.relative_distance)
        bound = distance_bound_eq1(da, db, gamma)
        actual = code.brute_force_min_distance() / code.num_edges
        assert bound.value <= actual + 1e-9


# -- core and orientation fractions -------------------------------------------------


def test_core_fraction_hand_values():
    assert correctable_fraction_core(1.0, 1.0, 0.0) == pytest.approx(1 / 16)
    # at the hypothesis edge the fraction vanishes
    assert correctable_fraction_core(1.0, 1.0, 0.25) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        correctable_fraction_core(1.0, 1.0, 0.3)


def test_core_fraction_exact():
    got = correctable_fraction_core_exact(Fraction(1), Fraction(1), Fraction(1, 8))
    # (1/16 - 1/8 * 1/4) / (7/8) = (1/32) * (8/7) = 1/28
    assert got == Fraction(1, 28)
    with pytest.raises(DomainError):
        correctable_fraction_core_exact(Fraction(1), Fraction(1), Fraction(1, 2))


def test_orientation_fraction_hand_values():
    assert correctable_fraction_orientation(2 / 3, 2 / 3, 0.0) == pytest.approx(1 / 9)
    assert correctable_fraction_orientation(2 / 3, 2 / 3, 1 / 3) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        correctable_fraction_orientation(2 / 3, 2 / 3, 0.4)


def test_orientation_fraction_exact():
    got = correctable_fraction_orientation_exact(
        Fraction(2, 3), Fraction(2, 3), Fraction(1, 6))
    # (4/9 - 2/6 * 2/3) / (4 * 5/6) = (2/9) / (10/3) = 1/15
    assert got == Fraction(1, 15)


def test_theta_quantization():
    assert compute_theta(Fraction(1), 6) == Fraction(2, 3)
    assert compute_theta(Fraction(5, 6), 6) == Fraction(2, 3)
    assert compute_theta(Fraction(1), 8) == Fraction(1, 2)
    assert compute_theta(Fraction(1), 12) == Fraction(2, 3)
    # theta*degree/4 is always a positive integer below delta*degree/4
    # (delta*degree/4 must exceed 1 for a theta to exist at all)
    for delta in (Fraction(1), Fraction(5, 6), Fraction(2, 3)):
        for degree in (8, 12, 20) if delta == Fraction(2, 3) else (6, 8, 12, 20):
            theta = compute_theta(delta, degree)
            m = theta * degree / 4
            assert m.denominator == 1 and m >= 1
            assert theta < delta


def test_theta_needs_enough_distance():
    with pytest.raises(NoValidThetaError):
        compute_theta(Fraction(2, 3), 3)
    with pytest.raises(NoValidThetaError):
        compute_theta(Fraction(1), 4)
    with pytest.raises(TypeError):
        compute_theta(0.5, 6)


# -- entropy and the published-table formulas ---------------------------------------


def test_binary_entropy_known_points():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(0.4999, abs=5e-4)


@given(st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=80)
def test_entropy_inverse_round_trip(y):
    x = binary_entropy_inverse(y)
    assert 0.0 <= x <= 0.5
    assert binary_entropy(x) == pytest.approx(y, abs=1e-9)


def test_table_fraction_grs_closed_form():
    # MDS locals at overall rate R correct ((1-R)/2)^2 / 4 of the edges
    for rate in (0.1, 0.3, 0.5, 0.7, 0.9):
        expected = ((1 - rate) / 2) ** 2 / 4
        assert table_fraction(rate, "grs") == pytest.approx(expected, rel=1e-12)


def test_table_fraction_binary_consistent_with_entropy():
    for rate in (0.2, 0.5, 0.8):
        delta = binary_entropy_inverse(1 - (1 + rate) / 2)
        assert table_fraction(rate, "binary") == pytest.approx(delta**2 / 4, rel=1e-9)


def test_table_fraction_monotone_decreasing_in_rate():
    for regime in ("binary", "grs"):
        values = [table_fraction(r / 10, regime) for r in range(1, 10)]
        assert all(a > b for a, b in zip(values, values[1:]))


def test_table_fraction_rejects_degenerate_rates():
    with pytest.raises(ValueError):
        table_fraction(0.0, "grs")
    with pytest.raises(ValueError):
        table_fraction(1.0, "binary")
    with pytest.raises(ValueError):
        table_fraction(0.5, "hamming")
