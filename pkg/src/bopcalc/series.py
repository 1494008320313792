"""Exact truncated power series over the integers.

A TruncatedSeries stores the coefficients of a formal power series in one
variable x through a fixed truncation degree N.  Coefficients are plain
Python ints, so all arithmetic is exact at every degree; there is no float
anywhere in this package.  A series of truncation N knows nothing about
degrees above N, and every binary operation insists both operands share
the same N rather than silently extending one of them.

The free constructor of interest is product_over, which multiplies out a
family of standard factors 1/(1-x^d)^c or (1+x^d)^c.  These are exactly
the shapes that Poincare series of free graded-commutative algebras are
made of, and the family may be an infinite generator as long as its
degrees never decrease: factors beyond the truncation degree are 1 up to
truncation, so enumeration stops at the first degree above N.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import (
    NotInvertible,
    TruncationError,
    ZeroDegreeFactor,
)

__all__ = [
    "TruncatedSeries",
    "make_polynomial",
    "product_over",
    "geometric",
    "one",
    "INVERSE_ONE_MINUS",
    "ONE_PLUS",
]

# Factor forms accepted by product_over.
INVERSE_ONE_MINUS = "inverse_one_minus"
ONE_PLUS = "one_plus"

Factor = Tuple[int, int, str]


class TruncatedSeries:
    """Formal power series with int coefficients, exact through degree N.

    >>> a = make_polynomial({0: 1, 2: -1}, 6)
    >>> print(a.invert())
    1 + x^2 + x^4 + x^6
    >>> a * a.invert() == one(6)
    True
    """

    __slots__ = ("truncation", "coefficients")

    def __init__(self, coefficients: Iterable[int], truncation: int):
        if truncation < 0:
            raise TruncationError("truncation degree must be >= 0")
        coeffs = tuple(int(c) for c in coefficients)
        if len(coeffs) != truncation + 1:
            raise TruncationError(
                f"expected {truncation + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "coefficients", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- basic queries ----------------------------------------------------

    def coefficient(self, degree: int) -> int:
        """Coefficient of x^degree; out-of-range degrees are an error."""
        if not 0 <= degree <= self.truncation:
            raise TruncationError(
                f"degree {degree} outside stored range 0..{self.truncation}")
        return self.coefficients[degree]

    def check_nonnegative(self) -> Optional[int]:
        """None if every coefficient is >= 0, else the first bad degree."""
        for d, c in enumerate(self.coefficients):
            if c < 0:
                return d
        return None

    def truncate(self, truncation: int) -> "TruncatedSeries":
        """Forget coefficients above a smaller truncation degree."""
        if truncation > self.truncation:
            raise TruncationError(
                f"cannot extend truncation {self.truncation} to {truncation}")
        return TruncatedSeries(self.coefficients[: truncation + 1], truncation)

    # -- ring operations --------------------------------------------------

    def _match(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.truncation != self.truncation:
            raise TruncationError(
                f"mixed truncations {self.truncation} and {other.truncation}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._match(other)
        return TruncatedSeries(
            (a + b for a, b in zip(self.coefficients, other.coefficients)),
            self.truncation)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._match(other)
        return TruncatedSeries(
            (a - b for a, b in zip(self.coefficients, other.coefficients)),
            self.truncation)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._match(other)
        # Convolve over the sparser operand; partition-type series are often
        # dense but the two-term factors of the splitting identities are not.
        a, b = self.coefficients, other.coefficients
        if _nnz(b) < _nnz(a):
            a, b = b, a
        return TruncatedSeries(
            _mul_pairs(b, _pairs(a), self.truncation), self.truncation)

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; constant term must be +1 or -1.

        >>> print(make_polynomial({0: 1, 1: 1}, 3).invert())
        1 - x + x^2 - x^3
        """
        a = self.coefficients
        if a[0] not in (1, -1):
            raise NotInvertible(f"constant term {a[0]} is not a unit")
        n = self.truncation
        unit = a[0]
        support = [k for k in range(1, n + 1) if a[k]]
        b = [0] * (n + 1)
        b[0] = unit
        for m in range(1, n + 1):
            s = 0
            for k in support:
                if k > m:
                    break
                s += a[k] * b[m - k]
            b[m] = -unit * s
        return TruncatedSeries(b, n)

    # -- comparisons, hashing, display ------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncatedSeries)
                and self.truncation == other.truncation
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash((self.truncation, self.coefficients))

    def __repr__(self):
        return f"TruncatedSeries({list(self.coefficients)!r}, {self.truncation})"

    def __str__(self):
        terms = []
        for d, c in enumerate(self.coefficients):
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                x = "x" if d == 1 else f"x^{d}"
                body = x if mag == 1 else f"{mag}*{x}"
            terms.append(("- " if c < 0 else "+ ") + body)
        if not terms:
            return "0"
        head = terms[0].replace("+ ", "", 1).replace("- ", "-", 1)
        return " ".join([head] + terms[1:])

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        """Schema: {"truncation": N, "coefficients": [decimal strings]}."""
        return {
            "truncation": self.truncation,
            "coefficients": [str(c) for c in self.coefficients],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        try:
            n = int(data["truncation"])
            coeffs = [int(c) for c in data["coefficients"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise TruncationError(f"malformed series JSON: {exc}") from exc
        return cls(coeffs, n)

    def csv_rows(self) -> Iterator[Tuple[int, int]]:
        """Rows (degree, coefficient), one per stored degree."""
        return iter(enumerate(self.coefficients))


# -- constructors ----------------------------------------------------------

def make_polynomial(terms: Mapping[int, int], truncation: int) -> TruncatedSeries:
    """Series with the given degree -> coefficient support.

    Degrees above the truncation are rejected rather than dropped, so a
    typo in a test cannot silently vanish.

    >>> print(make_polynomial({0: 1, 8: 5}, 10))
    1 + 5*x^8
    """
    coeffs = [0] * (truncation + 1)
    for d, c in terms.items():
        if not 0 <= d <= truncation:
            raise TruncationError(
                f"term degree {d} outside 0..{truncation}")
        coeffs[d] += int(c)
    return TruncatedSeries(coeffs, truncation)


def one(truncation: int) -> TruncatedSeries:
    """The constant series 1."""
    return make_polynomial({0: 1}, truncation)


def geometric(degree: int, truncation: int) -> TruncatedSeries:
    """1/(1 - x^degree)."""
    return product_over([(degree, 1, INVERSE_ONE_MINUS)], truncation)


def product_over(factors: Iterable[Factor], truncation: int) -> TruncatedSeries:
    """Product of factors (degree, count, form) truncated at N.

    Form is one of INVERSE_ONE_MINUS for 1/(1-x^d)^c or ONE_PLUS for
    (1+x^d)^c.  The family may be infinite provided its degrees are
    non-decreasing; enumeration stops at the first degree beyond N.

    >>> evens = ((d, 1, INVERSE_ONE_MINUS) for d in itertools.count(2, 2))
    >>> product_over(evens, 8).coefficient(8)
    5
    """
    acc = [0] * (truncation + 1)
    acc[0] = 1
    last = 0
    for degree, count, form in factors:
        if degree <= 0:
            raise ZeroDegreeFactor(f"factor degree {degree} must be positive")
        if degree < last:
            raise ValueError(
                f"factor degrees must be non-decreasing, saw {degree} after {last}")
        last = degree
        if degree > truncation:
            break
        if count < 0:
            raise ValueError(f"factor count {count} must be >= 0")
        if count == 0:
            continue
        if form == INVERSE_ONE_MINUS:
            pairs = _power_pairs(degree, count, -1, True, truncation)
        elif form == ONE_PLUS:
            pairs = _power_pairs(degree, count, 1, False, truncation)
        else:
            raise ValueError(f"unknown factor form {form!r}")
        acc = _mul_pairs(acc, pairs, truncation)
    return TruncatedSeries(acc, truncation)


# -- internal helpers --------------------------------------------------------

def _nnz(coeffs) -> int:
    return sum(1 for c in coeffs if c)


def _pairs(coeffs):
    return [(d, c) for d, c in enumerate(coeffs) if c]


def _mul_pairs(coeffs, pairs, truncation):
    """Multiply a dense coefficient list by a sparse (degree, coeff) list."""
    out = [0] * (truncation + 1)
    for d, c in pairs:
        if d > truncation:
            break
        for j in range(truncation - d + 1):
            v = coeffs[j]
            if v:
                out[j + d] += c * v
    return out


def _power_pairs(degree, count, sign, inverse, truncation):
    """Sparse expansion of (1 + sign*x^degree)^(+-count).

    Direct power:   sum_m C(count, m) sign^m x^(degree*m), m <= count.
    Inverse power:  sum_m C(count-1+m, m) (-sign)^m x^(degree*m).
    Exact binomials keep this correct for any multiplicity, which matters
    because generator counts grow quickly in high degree.
    """
    pairs = []
    m = 0
    while degree * m <= truncation:
        if inverse:
            c = comb(count - 1 + m, m) * ((-sign) ** m)
        else:
            if m > count:
                break
            c = comb(count, m) * (sign ** m)
        pairs.append((degree * m, c))
        m += 1
    return pairs


def _scaled_binomial_mul(coeffs, degree, count, sign, inverse, truncation):
    """Multiply coeffs by (1 + sign*x^degree)^(+-count); used by peeling."""
    return _mul_pairs(
        coeffs, _power_pairs(degree, count, sign, inverse, truncation), truncation)
