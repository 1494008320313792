"""Free graded-commutative algebras presented by generator counts.

Over the field with two elements, the homology Hopf algebras this package
manipulates are free on families of generators, so a generator table
(kind, degree -> count, component rank) is a complete presentation.  Kinds:

* ``polynomial``      polynomial generators, series factor 1/(1-x^d)
* ``exterior``        exterior generators, series factor (1+x^d)
* ``divided_power``   divided-power generators; same series as polynomial,
                      but multiplicative extensions are unresolved
* ``even_unresolved`` even-degree generators of unknown multiplicative
                      structure; series treated as polynomial

The component rank counts degree-0 generators coming from a free abelian
group of components; the group ring of one such component behaves like a
polynomial algebra on one degree-0 generator.  Component generators never
contribute to the Poincare series (which describes one component), but
each one suspends to a degree-1 generator of the next delooping.

The bar-construction step is tor_suspend: polynomial tables on even
generators give exterior tables one degree up, exterior tables on odd
generators give divided-power tables one degree up, and the spectral
sequence collapses, so counts carry over verbatim.  Whether a
divided-power answer is actually polynomial is a genuine extension
question; resolve_extensions records the caller's explicit choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional, Tuple

from .errors import (
    InvalidKind,
    InvalidParameter,
    NegativeDimension,
    TruncationError,
    UnresolvedExtension,
)
from .series import (
    INVERSE_ONE_MINUS,
    ONE_PLUS,
    TruncatedSeries,
    _scaled_binomial_mul,
    product_over,
)

__all__ = [
    "KINDS",
    "GeneratorTable",
    "ParityReport",
    "poincare_series",
    "tor_suspend",
    "resolve_extensions",
    "extract_generators",
    "tensor",
    "parity_check",
]

KINDS = ("polynomial", "exterior", "divided_power", "even_unresolved")

# Kinds whose series uses the polynomial factor shape.
_POLYNOMIAL_SHAPE = ("polynomial", "divided_power", "even_unresolved")


class GeneratorTable:
    """Counts of free algebra generators per degree, up to a truncation.

    counts maps degree -> number of generators; only degrees 1..truncation
    with a positive count are stored.  Treat instances as immutable.
    """

    __slots__ = ("kind", "counts", "component_rank", "truncation")

    def __init__(self, kind: str, counts: Mapping[int, int],
                 component_rank: int = 0, truncation: int = 0):
        if kind not in KINDS:
            raise InvalidKind(f"unknown kind {kind!r}")
        if truncation < 0:
            raise TruncationError("truncation degree must be >= 0")
        if component_rank < 0:
            raise InvalidParameter("component rank must be >= 0")
        clean: Dict[int, int] = {}
        for d, c in counts.items():
            if not 1 <= d <= truncation:
                raise TruncationError(
                    f"generator degree {d} outside 1..{truncation}")
            if c < 0:
                raise NegativeDimension(d, f"negative count {c} at degree {d}")
            if c:
                clean[d] = int(c)
        self.kind = kind
        self.counts = clean
        self.component_rank = int(component_rank)
        self.truncation = truncation

    def count(self, degree: int) -> int:
        return self.counts.get(degree, 0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GeneratorTable)
                and self.kind == other.kind
                and self.counts == other.counts
                and self.component_rank == other.component_rank
                and self.truncation == other.truncation)

    __hash__ = None

    def __repr__(self):
        return (f"GeneratorTable({self.kind!r}, {self.counts!r}, "
                f"component_rank={self.component_rank}, "
                f"truncation={self.truncation})")

    def to_json(self) -> dict:
        """Schema: kind, component_rank, generators (sorted), truncation."""
        return {
            "kind": self.kind,
            "component_rank": self.component_rank,
            "generators": [
                {"degree": d, "count": self.counts[d]}
                for d in sorted(self.counts)
            ],
            "truncation": self.truncation,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GeneratorTable":
        try:
            counts = {int(g["degree"]): int(g["count"])
                      for g in data["generators"]}
            return cls(str(data["kind"]), counts,
                       int(data["component_rank"]), int(data["truncation"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParameter(f"malformed table JSON: {exc}") from exc

    def csv_rows(self) -> Iterator[Tuple[int, int]]:
        """Rows (degree, count) in degree order."""
        return iter(sorted(self.counts.items()))


@dataclass(frozen=True)
class ParityReport:
    """Outcome of a generator-degree parity scan."""

    all_even: bool
    all_odd: bool
    offending: Tuple[int, ...]


def poincare_series(table: GeneratorTable) -> TruncatedSeries:
    """Poincare series of the free algebra a table presents.

    >>> from .series import make_polynomial
    >>> t = GeneratorTable("exterior", {3: 1, 5: 1}, truncation=8)
    >>> poincare_series(t) == make_polynomial({0: 1, 3: 1, 5: 1, 8: 1}, 8)
    True
    """
    form = ONE_PLUS if table.kind == "exterior" else INVERSE_ONE_MINUS
    factors = ((d, table.counts[d], form) for d in sorted(table.counts))
    return product_over(factors, table.truncation)


def tor_suspend(table: GeneratorTable, next_component_rank: int = 0) -> GeneratorTable:
    """One bar-construction step: generators move up one degree.

    Polynomial input yields an exterior table, exterior input yields a
    divided-power table.  Each degree-0 component generator suspends to a
    degree-1 generator.  Generators at the truncation degree fall off the
    end; the result is still exact through the same truncation.
    """
    if table.kind == "polynomial":
        kind = "exterior"
    elif table.kind == "exterior":
        kind = "divided_power"
    else:
        raise UnresolvedExtension(
            f"cannot suspend a table of kind {table.kind!r}; "
            "resolve extensions first")
    counts = {d + 1: c for d, c in table.counts.items()
              if d + 1 <= table.truncation}
    if table.component_rank:
        if table.truncation >= 1:
            counts[1] = counts.get(1, 0) + table.component_rank
    return GeneratorTable(kind, counts, next_component_rank, table.truncation)


def resolve_extensions(table: GeneratorTable, assert_polynomial: bool) -> GeneratorTable:
    """Commit a divided-power table to polynomial, or mark it unresolved.

    The series is unchanged either way; only the multiplicative structure
    label moves.  Callers assert polynomial when an independent argument
    (a catalogued space, an evenness constraint) backs it.
    """
    if table.kind != "divided_power":
        raise InvalidKind(
            f"only divided_power tables can be resolved, got {table.kind!r}")
    kind = "polynomial" if assert_polynomial else "even_unresolved"
    return GeneratorTable(kind, table.counts, table.component_rank,
                          table.truncation)


def extract_generators(series: TruncatedSeries, kind: str) -> GeneratorTable:
    """Recover generator counts from a series known to be free of a kind.

    Peels ascending degrees: the residual coefficient at degree d is the
    generator count there, and its factor is divided out before moving on.
    A negative residual means the series is not free of this kind, reported
    as NegativeDimension at the offending degree.

    >>> from .series import geometric
    >>> t = extract_generators(geometric(2, 8), "polynomial")
    >>> t.counts
    {2: 1}
    """
    if kind not in KINDS:
        raise InvalidKind(f"unknown kind {kind!r}")
    if series.coefficient(0) != 1:
        raise InvalidParameter(
            f"series has constant term {series.coefficient(0)}, expected 1")
    n = series.truncation
    cur = list(series.coefficients)
    counts: Dict[int, int] = {}
    exterior = kind == "exterior"
    for d in range(1, n + 1):
        c = cur[d]
        if c < 0:
            raise NegativeDimension(d)
        if c == 0:
            continue
        counts[d] = c
        if exterior:
            cur = _scaled_binomial_mul(cur, d, c, 1, True, n)
        else:
            cur = _scaled_binomial_mul(cur, d, c, -1, False, n)
    return GeneratorTable(kind, counts, 0, n)


def tensor(left: GeneratorTable, right: GeneratorTable) -> GeneratorTable:
    """Tensor product of two presentations of the same kind."""
    if left.kind != right.kind:
        raise InvalidKind(
            f"cannot tensor kinds {left.kind!r} and {right.kind!r}")
    if left.truncation != right.truncation:
        raise TruncationError(
            f"mixed truncations {left.truncation} and {right.truncation}")
    counts = dict(left.counts)
    for d, c in right.counts.items():
        counts[d] = counts.get(d, 0) + c
    return GeneratorTable(left.kind, counts,
                          left.component_rank + right.component_rank,
                          left.truncation)


def parity_check(table: GeneratorTable) -> ParityReport:
    """Do all generators sit in even degrees, or all in odd degrees?

    On a mixed table every generator degree is reported as offending,
    since neither parity claim survives.
    """
    degrees = sorted(table.counts)
    all_even = all(d % 2 == 0 for d in degrees)
    all_odd = all(d % 2 == 1 for d in degrees)
    offending = () if (all_even or all_odd) else tuple(degrees)
    return ParityReport(all_even, all_odd, offending)
