import doctest

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bopcalc import conjecture as conjecture_mod
from bopcalc.catalog import BP, homotopy_profile
from bopcalc.conjecture import (
    EpsilonContext,
    bop_cohomology_series,
    conjectured_bopn_cohomology,
    conjectured_coarse_companion,
    epsilon,
    epsilon_context,
    first_appearance,
    milnor_quotient_series,
    milnor_sq2_quotient_series,
    square_degree_check,
    square_monomial,
    steenrod_series,
    summand_suspensions,
    verify_conjecture_shape,
    verify_epsilon_partition,
    verify_first_appearance,
    verify_square_decompositions,
    verify_stable_limit,
)
from bopcalc.errors import InvalidParameter, NotApplicable
from bopcalc.series import TruncatedSeries, make_polynomial


def test_doctests():
    failures, _ = doctest.testmod(conjecture_mod)
    assert failures == 0


def test_steenrod_series_matches_monomial_count():
    n = 24
    series = steenrod_series(n)
    want = oracles.steenrod_dims(n)
    assert list(series.coefficients) == want
    assert want[:5] == oracles.STEENROD_DIMS_0_4


def test_milnor_quotient_frozen_rows():
    row = milnor_quotient_series(1, 8)
    assert list(row.coefficients) == oracles.MILNOR_1_DIMS_0_8
    row2 = milnor_sq2_quotient_series(1, 8)
    assert list(row2.coefficients) == oracles.MILNOR_SQ2_1_DIMS_0_8


def test_milnor_quotient_recursion():
    n = 48
    for k in (1, 2, 3):
        dropped = make_polynomial({0: 1, 2 ** (k + 1) - 1: 1}, n)
        assert milnor_quotient_series(k, n) * dropped == \
            milnor_quotient_series(k - 1, n)
        two_cell = make_polynomial({0: 1, 2: 1}, n)
        assert milnor_sq2_quotient_series(k, n) * two_cell == \
            milnor_quotient_series(k, n)


def test_full_quotient_equals_bp_free_ranks():
    n = 64
    quotient = milnor_quotient_series(None, n)
    prof = homotopy_profile(BP, n)
    assert list(quotient.coefficients) == \
        [prof.free_rank(d) for d in range(n + 1)]


def test_quotient_by_exterior_oracle_agreement():
    n = 40
    dims = oracles.steenrod_dims(n)
    for k in range(4):
        dims = oracles.quotient_by_exterior(dims, 2 ** (k + 1) - 1)
    assert list(milnor_quotient_series(3, n).coefficients) == dims


def test_epsilon_context_frozen():
    assert (epsilon_context(5).power, epsilon_context(5).offset) == (2, 0)
    assert (epsilon_context(16).power, epsilon_context(16).offset) == (3, 7)
    assert (epsilon_context(33).power, epsilon_context(33).offset) == (5, 0)
    with pytest.raises(InvalidParameter):
        epsilon_context(2)


def test_epsilon_band_structure():
    ctx = epsilon_context(6)
    # n=6: power 2, offset 1; raised band at both ends of the strip
    assert [epsilon(ctx, s) for s in range(1, 6)] == [1, 0, 0, 0, 1]
    for bad in (0, 6):
        with pytest.raises(InvalidParameter):
            epsilon(ctx, bad)


def test_summand_suspensions_bounds():
    with pytest.raises(InvalidParameter):
        list(summand_suspensions(1, 32))
    # the two-cell stage has one strip position and no raised band
    rows = list(summand_suspensions(2, 64))
    assert rows and all(s == 1 for s, _, _, _ in rows)
    assert all(eps == 0 for _, _, eps, _ in rows)
    assert sorted(susp for _, _, _, susp in rows) == [0, 8, 24, 56]


def test_conjectured_series_frozen_height_five():
    series = conjectured_bopn_cohomology(5, 10)
    assert list(series.coefficients) == oracles.CONJECTURED_HEIGHT5_0_10
    with pytest.raises(InvalidParameter):
        conjectured_bopn_cohomology(2, 10)
    with pytest.raises(InvalidParameter):
        conjectured_coarse_companion(2, 10)


def test_companion_relation():
    n = 64
    two_cell = make_polynomial({0: 1, 2: 1}, n)
    for height in range(3, 11):
        fine = conjectured_bopn_cohomology(height, n)
        assert fine * two_cell == conjectured_coarse_companion(height, n)


def test_limit_series_is_eight_fold_periodic_sum():
    n = 48
    limit = bop_cohomology_series(n)
    base = milnor_sq2_quotient_series(None, n)
    total = TruncatedSeries([0] * (n + 1), n)
    shift = 0
    while shift <= n:
        shifted = [0] * shift + list(base.coefficients)[: n + 1 - shift]
        total = total + TruncatedSeries(shifted, n)
        shift += 8
    assert limit == total


def test_first_appearance_frozen():
    assert [first_appearance(q) for q in range(1, 9)] == \
        oracles.FIRST_APPEARANCE_1_8
    with pytest.raises(InvalidParameter):
        first_appearance(0)


def test_square_monomial_frozen_cases():
    assert square_monomial(3).factors == ((0, 2), (0, 4))
    assert square_monomial(5).factors == ((0, 2), (1, 4))
    assert square_monomial(6).factors == ((1, 2), (1, 4))
    assert square_monomial(7).factors == ((0, 2), (0, 4), (0, 8))
    assert square_monomial(12).factors == ((2, 2), (2, 4))
    for j in (1, 2, 4, 64):
        with pytest.raises(NotApplicable):
            square_monomial(j)
    with pytest.raises(InvalidParameter):
        square_monomial(0)


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=3, max_value=1 << 14))
def test_square_monomial_degree_doubles(j):
    if j & (j - 1) == 0:
        return
    mono = square_monomial(j)
    assert mono.total_degree == 2 * mono.source_degree == 4 * j
    assert square_degree_check(j)
    bases = [b for b, _ in mono.factors]
    assert all(b >= 0 for b in bases)
    assert [m for _, m in mono.factors] == [2 ** i for i in
                                            range(1, len(bases) + 1)]


def test_verifiers_pass_at_reference_scales():
    assert verify_epsilon_partition(32).passed
    assert verify_stable_limit(heights=(16, 20), limit_degree=48).passed
    assert verify_first_appearance(32).passed
    assert verify_square_decompositions(512).passed
    assert verify_conjecture_shape(8, 64).passed
