"""Experimental checks around the conjectured mod-2 cohomology of the
truncated BoP analogues.

Everything here is generating-function arithmetic over the Steenrod
algebra's graded dimensions.  The conjectured answer for the n-th
truncation is a sum of suspended quotient-algebra series, indexed by a
pair (s, K') with a parity correction epsilon that splits 1..n-1 into
a lower, middle, and upper band.  As n grows the suspensions of all but
the lead terms escape any fixed degree range, and the sums stabilize to
the known cohomology of BoP itself; the verifiers pin down that shape,
the stabilization, the first-appearance bookkeeping for each summand,
and the Sq^2-annihilated monomial decompositions feeding the whole
computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from .errors import ConjectureShapeError, InvalidParameter, NotApplicable
from .reports import VerificationReport, first_mismatch, run_check
from .series import TruncatedSeries, make_polynomial, one

__all__ = [
    "steenrod_series",
    "milnor_quotient_series",
    "milnor_sq2_quotient_series",
    "EpsilonContext",
    "epsilon_context",
    "epsilon",
    "summand_suspensions",
    "conjectured_bopn_cohomology",
    "conjectured_coarse_companion",
    "bop_cohomology_series",
    "first_appearance",
    "SquareMonomial",
    "square_monomial",
    "square_degree_check",
    "verify_epsilon_partition",
    "verify_stable_limit",
    "verify_first_appearance",
    "verify_square_decompositions",
    "verify_conjecture_shape",
]


# -- graded dimension series -------------------------------------------------

def steenrod_series(truncation: int) -> TruncatedSeries:
    """Graded dimensions of the mod-2 Steenrod algebra: the Milnor basis
    is monomials in generators of degree 2^i - 1, each of infinite
    height, so the series is a product of geometric factors.

    >>> [steenrod_series(8).coefficient(d) for d in range(5)]
    [1, 1, 1, 2, 2]
    """
    acc = one(truncation)
    i = 1
    while 2 ** i - 1 <= truncation:
        acc = acc * make_polynomial({0: 1, 2 ** i - 1: -1},
                                    truncation).invert()
        i += 1
    return acc


def milnor_quotient_series(n: Optional[int],
                           truncation: int) -> TruncatedSeries:
    """Dimensions of the Steenrod algebra modulo its n-th Milnor
    subalgebra, as a left module: divide out one exterior factor of
    degree 2^(i+1) - 1 for each 0 <= i <= n.  n=None divides out every
    factor in range, the stable quotient.

    >>> [milnor_quotient_series(1, 8).coefficient(d) for d in range(9)]
    [1, 0, 1, 0, 1, 0, 2, 1, 2]
    """
    if n is not None and n < 0:
        raise InvalidParameter(f"subalgebra index {n} must be >= 0")
    acc = steenrod_series(truncation)
    i = 0
    while (n is None or i <= n) and 2 ** (i + 1) - 1 <= truncation:
        acc = acc * make_polynomial({0: 1, 2 ** (i + 1) - 1: 1},
                                    truncation).invert()
        i += 1
    bad = acc.check_nonnegative()
    if bad is not None:
        raise ConjectureShapeError(
            f"quotient series negative at degree {bad}")
    return acc


def milnor_sq2_quotient_series(k: Optional[int],
                               truncation: int) -> TruncatedSeries:
    """The same quotient with an extra degree-2 exterior factor divided
    out, matching cohomology of the k-th truncated tower summand.

    >>> [milnor_sq2_quotient_series(1, 8).coefficient(d) for d in range(9)]
    [1, 0, 0, 0, 1, 0, 1, 1, 1]
    """
    acc = milnor_quotient_series(k, truncation)
    acc = acc * make_polynomial({0: 1, 2: 1}, truncation).invert()
    bad = acc.check_nonnegative()
    if bad is not None:
        raise ConjectureShapeError(
            f"quotient series negative at degree {bad}")
    return acc


# -- the epsilon bands -------------------------------------------------------

@dataclass(frozen=True)
class EpsilonContext:
    """Band data for truncation height n: power is the exponent of the
    largest 2-power at most n-1, offset = n - 1 - 2^power measures how
    far n-1 sits past it.  Offsets bound the two epsilon=1 bands."""

    n: int
    power: int
    offset: int


def _band_data(n: int) -> Tuple[int, int]:
    power = (n - 1).bit_length() - 1
    return power, n - 1 - 2 ** power


def epsilon_context(n: int) -> EpsilonContext:
    if n <= 2:
        raise InvalidParameter(f"truncation height {n} must exceed 2")
    power, offset = _band_data(n)
    return EpsilonContext(n=n, power=power, offset=offset)


def epsilon(ctx: EpsilonContext, s: int) -> int:
    """1 on the lower band (s <= offset) and the upper band
    (s >= n - offset), 0 on the middle band between them."""
    if not 1 <= s <= ctx.n - 1:
        raise InvalidParameter(
            f"summand index {s} outside 1..{ctx.n - 1}")
    if s <= ctx.offset or s >= ctx.n - ctx.offset:
        return 1
    return 0


def summand_suspensions(n: int,
                        cap: int) -> Iterator[Tuple[int, int, int, int]]:
    """All (s, level, eps, suspension) with suspension <= cap, where
    suspension = 2^(level + 3 + eps) - 8s and level runs upward from the
    band power.  Heights down to 2 are accepted so scans can cover the
    degenerate single-summand case.  A negative suspension would mean
    the conjectured shape is broken, so it raises instead of being
    skipped."""
    if n < 2:
        raise InvalidParameter(f"truncation height {n} must be >= 2")
    power, offset = _band_data(n)
    for s in range(1, n):
        eps = 1 if s <= offset or s >= n - offset else 0
        level = power
        while True:
            suspension = 2 ** (level + 3 + eps) - 8 * s
            if suspension > cap:
                break
            if suspension < 0:
                raise ConjectureShapeError(
                    f"summand (s={s}, level={level}) suspends to "
                    f"{suspension} < 0 at height {n}")
            yield s, level, eps, suspension
            level += 1


def _shift(series: TruncatedSeries, amount: int) -> TruncatedSeries:
    return make_polynomial({amount: 1}, series.truncation) * series


def conjectured_bopn_cohomology(n: int, truncation: int) -> TruncatedSeries:
    """Conjectured graded dimensions for the n-th truncation: one copy
    of the doubly-quotiented series at quotient index level + 2 + eps,
    suspended by 2^(level + 3 + eps) - 8s, for each summand."""
    if n <= 2:
        raise InvalidParameter(f"truncation height {n} must exceed 2")
    quotients: Dict[int, TruncatedSeries] = {}
    acc = make_polynomial({}, truncation)
    for s, level, eps, suspension in summand_suspensions(n, truncation):
        index = level + 2 + eps
        if index not in quotients:
            quotients[index] = milnor_sq2_quotient_series(index, truncation)
        acc = acc + _shift(quotients[index], suspension)
    return acc


def conjectured_coarse_companion(n: int, truncation: int) -> TruncatedSeries:
    """Same indexed sum built from the singly-quotiented series; equals
    the conjectured answer times (1 + x^2) term by term."""
    if n <= 2:
        raise InvalidParameter(f"truncation height {n} must exceed 2")
    quotients: Dict[int, TruncatedSeries] = {}
    acc = make_polynomial({}, truncation)
    for s, level, eps, suspension in summand_suspensions(n, truncation):
        index = level + 2 + eps
        if index not in quotients:
            quotients[index] = milnor_quotient_series(index, truncation)
        acc = acc + _shift(quotients[index], suspension)
    return acc


def bop_cohomology_series(truncation: int) -> TruncatedSeries:
    """Graded dimensions of the cohomology of BoP itself: one stable
    quotient copy suspended by each nonnegative multiple of 8."""
    stable = milnor_sq2_quotient_series(None, truncation)
    acc = make_polynomial({}, truncation)
    shift = 0
    while shift <= truncation:
        acc = acc + _shift(stable, shift)
        shift += 8
    return acc


def first_appearance(q: int) -> int:
    """Smallest truncation height whose conjectured answer contains a
    summand suspended by exactly 8q: writing q = 2^J + u with
    0 <= u < 2^J, the height is 2^J + 1 - u.

    >>> [first_appearance(q) for q in range(1, 9)]
    [2, 3, 2, 5, 4, 3, 2, 9]
    """
    if q < 1:
        raise InvalidParameter(f"summand residue {q} must be >= 1")
    j = q.bit_length() - 1
    return 2 ** j + 1 - (q - 2 ** j)


# -- Sq^2-annihilated monomial decompositions --------------------------------

@dataclass(frozen=True)
class SquareMonomial:
    """Decomposition of the j-th squared polynomial generator, j not a
    2-power, into generators b(m) of degree 2^(m+1): factors pairs each
    exponent base m with its multiplicity."""

    index: int
    factors: Tuple[Tuple[int, int], ...]

    @property
    def source_degree(self) -> int:
        return 2 * self.index

    @property
    def total_degree(self) -> int:
        return sum(count * 2 ** (m + 1) for m, count in self.factors)


def square_monomial(j: int) -> SquareMonomial:
    """Write j as a sum of distinct 2-powers 2^(s_1) < ... < 2^(s_k);
    for k >= 2 the square of the j-th generator is detected by the
    monomial with factors b(s_i - (i - 1)) to the power 2^i.  Ascending
    bit order keeps every base nonnegative (s_i >= i - 1), and the
    powers 2^i make the total degree come out to exactly 4j.

    >>> square_monomial(3).factors
    ((0, 2), (0, 4))
    >>> square_monomial(5).factors
    ((0, 2), (1, 4))
    """
    if j <= 0:
        raise InvalidParameter(f"generator index {j} must be positive")
    bits = [m for m in range(j.bit_length()) if j >> m & 1]
    if len(bits) < 2:
        raise NotApplicable(
            f"index {j} is a 2-power; its square is not decomposable")
    factors = tuple((s - i, 2 ** (i + 1)) for i, s in enumerate(bits))
    return SquareMonomial(index=j, factors=factors)


def square_degree_check(j: int) -> bool:
    """The decomposition's total degree must be twice the source degree
    (squaring doubles degree)."""
    mono = square_monomial(j)
    return mono.total_degree == 2 * mono.source_degree


# -- verifiers ---------------------------------------------------------------

def verify_epsilon_partition(n_max: int = 64) -> VerificationReport:
    """The three epsilon bands partition 1..n-1 for every height, and
    out-of-range summand indices are rejected."""
    if n_max <= 2:
        raise InvalidParameter(f"n_max {n_max} must exceed 2")
    params = {"n_max": n_max}

    def body():
        for n in range(3, n_max + 1):
            ctx = epsilon_context(n)
            lower = middle = upper = 0
            for s in range(1, n):
                in_lower = s <= ctx.offset
                in_upper = s >= n - ctx.offset
                in_middle = ctx.offset < s < n - ctx.offset
                if in_lower + in_middle + in_upper != 1:
                    return False, s, {"height": n, "stage": "overlap"}
                lower += in_lower
                middle += in_middle
                upper += in_upper
                want = 1 if (in_lower or in_upper) else 0
                if epsilon(ctx, s) != want:
                    return False, s, {"height": n, "stage": "value"}
            if lower + middle + upper != n - 1:
                return False, n, {"height": n, "stage": "count"}
            for s in (0, n):
                try:
                    epsilon(ctx, s)
                except InvalidParameter:
                    continue
                return False, s, {"height": n, "stage": "range"}
        return True, None, None

    return run_check("epsilon-partition", params, body)


def verify_stable_limit(heights: Tuple[int, ...] = (16, 20, 24, 33, 48, 64),
                        limit_degree: int = 64) -> VerificationReport:
    """For heights >= 16 the conjectured series agrees with the
    cohomology of BoP through the limit degree."""
    params = {"heights": list(heights), "max_degree": limit_degree}

    def body():
        target = bop_cohomology_series(limit_degree)
        for n in heights:
            got = conjectured_bopn_cohomology(n, limit_degree)
            bad = first_mismatch(got, target)
            if bad is not None:
                return False, bad, {"height": n}
        return True, None, None

    return run_check("conjecture-limit", params, body)


def verify_first_appearance(q_max: int = 64) -> VerificationReport:
    """The closed form for the first height containing each summand
    residue matches a direct scan over heights."""
    params = {"q_max": q_max}

    def body():
        cap = 8 * q_max
        seen: Dict[int, int] = {}
        for n in range(2, q_max + 2):
            for s, level, eps, suspension in summand_suspensions(n, cap):
                q = suspension // 8
                if 1 <= q <= q_max:
                    seen.setdefault(q, n)
        for q in range(1, q_max + 1):
            if seen.get(q) != first_appearance(q):
                return False, q, {"scanned": seen.get(q),
                                  "formula": first_appearance(q)}
        return True, None, None

    return run_check("first-appearance", params, body)


def verify_square_decompositions(bound: int = 4096) -> VerificationReport:
    """Every non-2-power index decomposes with the right total degree;
    2-power indices are rejected as indecomposable."""
    params = {"bound": bound}

    def body():
        for j in range(2, bound + 1):
            if j & (j - 1) == 0:
                try:
                    square_monomial(j)
                except NotApplicable:
                    continue
                return False, j, {"stage": "indecomposable"}
            if not square_degree_check(j):
                return False, j, {"stage": "degree"}
            mono = square_monomial(j)
            if any(m < 0 or count <= 0 for m, count in mono.factors):
                return False, j, {"stage": "factors"}
        return True, None, None

    return run_check("squares", params, body)


def verify_conjecture_shape(n_max: int = 16,
                            truncation: int = 128) -> VerificationReport:
    """Every summand suspension is nonnegative and the conjectured
    series has nonnegative coefficients for each height in range."""
    params = {"n_max": n_max, "max_degree": truncation}

    def body():
        for n in range(3, n_max + 1):
            try:
                series = conjectured_bopn_cohomology(n, truncation)
            except ConjectureShapeError as exc:
                return False, n, {"height": n, "error": str(exc)}
            bad = series.check_nonnegative()
            if bad is not None:
                return False, bad, {"height": n}
        return True, None, None

    return run_check("conjecture-shape", params, body)
