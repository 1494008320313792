import doctest
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bopcalc import series as series_mod
from bopcalc.errors import NotInvertible, TruncationError, ZeroDegreeFactor
from bopcalc.series import (
    INVERSE_ONE_MINUS,
    ONE_PLUS,
    TruncatedSeries,
    geometric,
    make_polynomial,
    one,
    product_over,
)

# Small sparse integer polynomials, as degree -> coefficient dicts.
coeff_dicts = st.dictionaries(st.integers(0, 12), st.integers(-9, 9),
                              max_size=6)


def from_dict(d, n=12):
    return make_polynomial({k: v for k, v in d.items() if v}, n)


def as_dict(s):
    return {d: c for d, c in enumerate(s.coefficients) if c}


def test_doctests():
    failures, _ = doctest.testmod(series_mod)
    assert failures == 0


def test_construction_and_queries():
    s = make_polynomial({0: 1, 3: -2}, 5)
    assert s.truncation == 5
    assert s.coefficients == (1, 0, 0, -2, 0, 0)
    assert s.coefficient(3) == -2
    with pytest.raises(TruncationError):
        s.coefficient(6)
    with pytest.raises(TruncationError):
        s.coefficient(-1)
    with pytest.raises(TruncationError):
        make_polynomial({9: 1}, 4)
    with pytest.raises(TruncationError):
        TruncatedSeries([1, 2], 3)
    with pytest.raises(TruncationError):
        TruncatedSeries([], -1)


def test_immutable_hashable():
    s = one(4)
    with pytest.raises(AttributeError):
        s.truncation = 7
    assert hash(s) == hash(one(4))
    assert s == one(4)
    assert s != one(5)
    assert s != "not a series"


def test_str_forms():
    assert str(make_polynomial({}, 3)) == "0"
    assert str(make_polynomial({0: 1, 1: 1, 4: -3}, 4)) == "1 + x - 3*x^4"


def test_mixed_truncation_rejected():
    with pytest.raises(TruncationError):
        one(4) + one(5)
    with pytest.raises(TruncationError):
        one(4) * one(5)
    with pytest.raises(TypeError):
        one(4) * 3


@given(coeff_dicts, coeff_dicts)
def test_mul_matches_naive(a, b):
    got = as_dict(from_dict(a) * from_dict(b))
    assert got == oracles.naive_mul(a, b, 12)


@given(coeff_dicts, coeff_dicts)
def test_add_sub_roundtrip(a, b):
    sa, sb = from_dict(a), from_dict(b)
    assert (sa + sb) - sb == sa


@given(coeff_dicts, coeff_dicts, coeff_dicts)
def test_mul_commutative_associative(a, b, c):
    sa, sb, sc = from_dict(a), from_dict(b), from_dict(c)
    assert sa * sb == sb * sa
    assert (sa * sb) * sc == sa * (sb * sc)


@given(coeff_dicts, st.sampled_from([1, -1]))
def test_invert_roundtrip(a, unit):
    a[0] = unit
    s = from_dict(a)
    assert s * s.invert() == one(12)
    assert as_dict(s.invert()) == oracles.naive_invert(
        {k: v for k, v in a.items() if v}, 12)


def test_invert_requires_unit():
    with pytest.raises(NotInvertible):
        make_polynomial({0: 2}, 4).invert()
    with pytest.raises(NotInvertible):
        make_polynomial({1: 1}, 4).invert()


@given(coeff_dicts, st.integers(0, 12))
def test_truncate_consistent(a, n):
    s = from_dict(a)
    t = s.truncate(n)
    assert t.truncation == n
    assert t.coefficients == s.coefficients[: n + 1]
    with pytest.raises(TruncationError):
        t.truncate(13)


def test_check_nonnegative():
    assert one(4).check_nonnegative() is None
    assert make_polynomial({3: -1}, 4).check_nonnegative() == 3


def test_geometric_is_partition_series():
    n = 30
    for d in (1, 2, 5, 8):
        got = geometric(d, n)
        assert list(got.coefficients) == oracles.partition_counts([d], n)
    with pytest.raises(ZeroDegreeFactor):
        geometric(0, 8)


def test_product_over_inverse_form_matches_partitions():
    n = 40
    factors = [(2, 1, INVERSE_ONE_MINUS), (4, 2, INVERSE_ONE_MINUS),
               (6, 1, INVERSE_ONE_MINUS)]
    got = product_over(factors, n)
    parts = oracles.repeated([2], 1) + oracles.repeated([4], 2) + [6]
    assert list(got.coefficients) == oracles.partition_counts(parts, n)


def test_product_over_one_plus_matches_subsets():
    n = 8
    got = product_over([(3, 1, ONE_PLUS), (5, 1, ONE_PLUS)], n)
    assert list(got.coefficients) == oracles.EXTERIOR_3_5_COEFFS
    n = 20
    got = product_over([(2, 3, ONE_PLUS), (5, 2, ONE_PLUS)], n)
    parts = oracles.repeated([2], 3) + oracles.repeated([5], 2)
    assert list(got.coefficients) == oracles.subset_sum_counts(parts, n)


def test_product_over_lazy_and_validating():
    def infinite():
        d = 2
        while True:
            yield (d, 1, INVERSE_ONE_MINUS)
            d *= 2

    got = product_over(infinite(), 10)
    assert list(got.coefficients) == oracles.partition_counts([2, 4, 8], 10)

    with pytest.raises(ZeroDegreeFactor):
        product_over([(0, 1, INVERSE_ONE_MINUS)], 4)
    with pytest.raises(ValueError):
        product_over([(4, 1, ONE_PLUS), (2, 1, ONE_PLUS)], 8)
    with pytest.raises(ValueError):
        product_over([(2, -1, ONE_PLUS)], 8)
    with pytest.raises(ValueError):
        product_over([(2, 1, "bogus")], 8)
    # count 0 factors contribute nothing and do not break monotonicity
    assert product_over([(2, 0, ONE_PLUS), (2, 1, ONE_PLUS)], 4) == \
        make_polynomial({0: 1, 2: 1}, 4)


@given(coeff_dicts)
def test_json_roundtrip(a):
    s = from_dict(a)
    again = TruncatedSeries.from_json(json.loads(json.dumps(s.to_json())))
    assert again == s


def test_from_json_rejects_garbage():
    with pytest.raises(TruncationError):
        TruncatedSeries.from_json({"coefficients": ["1"]})
    with pytest.raises(TruncationError):
        TruncatedSeries.from_json({"truncation": 1, "coefficients": ["x"]})


def test_csv_rows():
    s = make_polynomial({0: 1, 2: 5}, 3)
    assert list(s.csv_rows()) == [(0, 1), (1, 0), (2, 5), (3, 0)]


@settings(max_examples=30)
@given(st.integers(1, 6), st.integers(1, 40), st.integers(10, 60))
def test_binomial_fast_path_matches_repeated_mul(degree, count, n):
    # the closed-form expansion for (1 - x^d)^c and its inverse must
    # agree with literal repeated multiplication
    base = make_polynomial({0: 1, degree: -1}, n) if degree <= n else one(n)
    direct = one(n)
    for _ in range(count):
        direct = direct * base
    assert product_over([(degree, count, INVERSE_ONE_MINUS)], n) == \
        direct.invert()
    plus = make_polynomial({0: 1, degree: 1}, n) if degree <= n else one(n)
    direct_plus = one(n)
    for _ in range(count):
        direct_plus = direct_plus * plus
    assert product_over([(degree, count, ONE_PLUS)], n) == direct_plus
