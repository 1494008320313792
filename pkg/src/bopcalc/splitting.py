"""Series identities behind the stable splitting of BoP.

The free part of BoP decomposes, away from torsion, into a copy of bo
and a regiment of suspended truncated Brown-Peterson spectra BPn(k),
one for each level k >= 2 and offset 0 <= u < 2^(k-2), suspended by
2^(k+1) + 8u - 2.  Three families of alternating products organize the
inclusion-exclusion bookkeeping for that decomposition:

* head_series(s): the product of (1 - x^(2^(j+1) - 2)) over j >= s,
  with one extra vanishing factor (1 - x^(2^(s+1)));
* layer_series(s): the piece added when passing from level s to s+1,
  carried by x^(2^(s+1) - 2) (1 + x^2);
* tail_series(s): the sum of all layers from level s up.

They satisfy head(s+1) = head(s) + layer(s) and tail(s) = layer(s) +
tail(s+1), and the master identity head(2) + tail(2) = 1, which is the
generating-function form of the statement that the decomposition covers
every free summand exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .catalog import BO, BOP, bpn, homotopy_profile
from .errors import InvalidParameter
from .reports import VerificationReport, first_mismatch, run_check
from .series import TruncatedSeries, make_polynomial, one

__all__ = [
    "SplittingIndex",
    "splitting_indices",
    "head_series",
    "layer_series",
    "tail_series",
    "verify_head_induction",
    "verify_rhs_one",
    "verify_rational_splitting",
    "verify_irreducibility",
    "verify_index_bijection",
    "verify_bpn_rank_recursion",
    "verify_bop6_homotopy_splitting",
]


@dataclass(frozen=True)
class SplittingIndex:
    """One summand of the splitting: level k >= 2, offset u < 2^(k-2).

    connectivity is the space index 2^(k+1) + 8u + 4 at which the
    summand's bottom space appears in the sixth BoP space; it always
    lands strictly inside the level's irreducibility window
    (2^(k+1) - 2, 2^(k+2) - 2].
    """

    level: int
    offset: int

    def __post_init__(self):
        if self.level < 2:
            raise InvalidParameter(f"level {self.level} must be >= 2")
        if not 0 <= self.offset < 2 ** (self.level - 2):
            raise InvalidParameter(
                f"offset {self.offset} outside 0..{2 ** (self.level - 2) - 1} "
                f"at level {self.level}")

    @property
    def connectivity(self) -> int:
        return 2 ** (self.level + 1) + 8 * self.offset + 4

    @property
    def suspension(self) -> int:
        """Suspension degree of the summand inside the spectrum BoP."""
        return 2 ** (self.level + 1) + 8 * self.offset - 2

    def in_window(self) -> bool:
        lo, hi = 2 ** (self.level + 1) - 2, 2 ** (self.level + 2) - 2
        return lo < self.connectivity <= hi


def splitting_indices(limit: int) -> Iterable[SplittingIndex]:
    """All splitting indices with connectivity at most `limit`."""
    k = 2
    while 2 ** (k + 1) + 4 <= limit:
        for u in range(2 ** (k - 2)):
            idx = SplittingIndex(k, u)
            if idx.connectivity > limit:
                break
            yield idx
        k += 1


# -- the three series families ----------------------------------------------

def _check_level(s: int) -> None:
    if s < 2:
        raise InvalidParameter(f"series level {s} must be >= 2")


def _one_minus(degree: int, truncation: int) -> TruncatedSeries:
    if degree > truncation:
        return one(truncation)
    return make_polynomial({0: 1, degree: -1}, truncation)


def _level_product(j_min: int, truncation: int) -> TruncatedSeries:
    """Product of (1 - x^(2(2^j - 1))) for j >= j_min, up to truncation."""
    acc = one(truncation)
    j = j_min
    while 2 * (2 ** j - 1) <= truncation:
        acc = acc * _one_minus(2 * (2 ** j - 1), truncation)
        j += 1
    return acc


def head_series(s: int, truncation: int) -> TruncatedSeries:
    """(1 - x^(2^(s+1))) * product of (1 - x^(2(2^j-1))) over j >= s."""
    _check_level(s)
    return _one_minus(2 ** (s + 1), truncation) * _level_product(s, truncation)


def layer_series(s: int, truncation: int) -> TruncatedSeries:
    """x^(2^(s+1)-2) (1+x^2) (1 - x^(2^(s+1))) * product over j > s."""
    return _layer(s, truncation, omit_even_factor=False)


def _layer(s: int, truncation: int, omit_even_factor: bool) -> TruncatedSeries:
    _check_level(s)
    lead = 2 ** (s + 1) - 2
    if lead > truncation:
        return make_polynomial({}, truncation)
    acc = make_polynomial({lead: 1}, truncation)
    if not omit_even_factor:
        acc = acc * make_polynomial({0: 1, 2: 1}, truncation)
    acc = acc * _one_minus(2 ** (s + 1), truncation)
    return acc * _level_product(s + 1, truncation)


def tail_series(s: int, truncation: int) -> TruncatedSeries:
    """Sum of layer_series(k) over k >= s; finite after truncation."""
    _check_level(s)
    acc = make_polynomial({}, truncation)
    k = s
    while 2 ** (k + 1) - 2 <= truncation:
        acc = acc + layer_series(k, truncation)
        k += 1
    return acc


def _tail(s: int, truncation: int, omit_even_factor: bool) -> TruncatedSeries:
    acc = make_polynomial({}, truncation)
    k = s
    while 2 ** (k + 1) - 2 <= truncation:
        acc = acc + _layer(k, truncation, omit_even_factor)
        k += 1
    return acc


# -- verifiers ---------------------------------------------------------------

def verify_head_induction(s_min: int = 2, s_max: int = 9,
                          truncation: int = 512,
                          inject_fault: bool = False) -> VerificationReport:
    """head(s+1) = head(s) + layer(s) for each level in the sweep."""
    if s_min < 2 or s_max < s_min:
        raise InvalidParameter("need 2 <= s_min <= s_max")
    params = {"s_min": s_min, "s_max": s_max, "max_degree": truncation}
    if inject_fault:
        params["inject_fault"] = "layer missing its (1+x^2) factor"

    def body():
        for s in range(s_min, s_max + 1):
            lhs = head_series(s + 1, truncation)
            rhs = head_series(s, truncation) + _layer(s, truncation,
                                                      inject_fault)
            bad = first_mismatch(lhs, rhs)
            if bad is not None:
                return False, bad, {"level": s}
        return True, None, None

    return run_check("head-induction", params, body)


def verify_rhs_one(truncation: int = 512,
                   inject_fault: bool = False) -> VerificationReport:
    """head(2) + tail(2) = 1, plus the telescope tail(s) = layer(s) +
    tail(s+1) at every level visible below the truncation."""
    params = {"max_degree": truncation}
    if inject_fault:
        params["inject_fault"] = "layer missing its (1+x^2) factor"

    def body():
        total = head_series(2, truncation) + _tail(2, truncation, inject_fault)
        bad = first_mismatch(total, one(truncation))
        if bad is not None:
            return False, bad, {"stage": "master"}
        s = 2
        while 2 ** (s + 1) - 2 <= truncation:
            lhs = _tail(s, truncation, inject_fault)
            rhs = (_layer(s, truncation, inject_fault)
                   + _tail(s + 1, truncation, inject_fault))
            bad = first_mismatch(lhs, rhs)
            if bad is not None:
                return False, bad, {"stage": "telescope", "level": s}
            s += 1
        return True, None, None

    return run_check("rhs-one", params, body)


def _shift(series: TruncatedSeries, amount: int) -> TruncatedSeries:
    return make_polynomial({amount: 1}, series.truncation) * series


def verify_rational_splitting(truncation: int = 256) -> VerificationReport:
    """Free ranks of BoP match bo plus the suspended BPn(k) regiment,
    and the torsion patterns agree outright."""
    params = {"max_degree": truncation}

    def body():
        bop = homotopy_profile(BOP, truncation)
        bo = homotopy_profile(BO, truncation)
        rhs = bo.free_ranks
        k = 2
        while 2 ** (k + 1) - 2 <= truncation:
            level = homotopy_profile(bpn(k), truncation).free_ranks
            for u in range(2 ** (k - 2)):
                shift = 2 ** (k + 1) + 8 * u - 2
                if shift > truncation:
                    break
                rhs = rhs + _shift(level, shift)
            k += 1
        bad = first_mismatch(bop.free_ranks, rhs)
        if bad is not None:
            return False, bad, {"side": "free"}
        for d in range(truncation + 1):
            if bop.torsion(d) != bo.torsion(d):
                return False, d, {"side": "torsion"}
        return True, None, None

    return run_check("rational-splitting", params, body)


def verify_irreducibility(k_max: int = 12) -> VerificationReport:
    """Every admissible connectivity lands inside its level's window,
    and the first offset past the window is rejected."""
    if k_max > 21:
        raise InvalidParameter(
            f"level bound {k_max} enumerates over 2^{k_max - 2} offsets; "
            "capped at 21")
    params = {"k_max": k_max}

    def body():
        for k in range(2, k_max + 1):
            for u in range(2 ** (k - 2)):
                idx = SplittingIndex(k, u)
                if not idx.in_window():
                    return False, idx.connectivity, {"level": k, "offset": u}
            try:
                SplittingIndex(k, 2 ** (k - 2))
            except InvalidParameter:
                pass
            else:
                return False, 2 ** (k + 2) + 4, {"level": k,
                                                 "offset": 2 ** (k - 2),
                                                 "stage": "boundary"}
        return True, None, None

    return run_check("irreducibility", params, body)


def verify_index_bijection(bound: int = 8192) -> VerificationReport:
    """The connectivities, across all levels, are exactly the arithmetic
    progression 12, 20, 28, ... with no repeats."""
    params = {"bound": bound}

    def body():
        progression = list(range(12, bound + 1, 8))
        connectivities = sorted(idx.connectivity
                                for idx in splitting_indices(bound))
        for a, b in zip(progression, connectivities):
            if a != b:
                return False, min(a, b), None
        if len(progression) != len(connectivities):
            longer = max(progression, connectivities, key=len)
            return False, longer[min(len(progression), len(connectivities))], {
                "progression": len(progression),
                "connectivities": len(connectivities)}
        return True, None, None

    return run_check("index-bijection", params, body)


def verify_bpn_rank_recursion(j_min: int = 2, j_max: int = 6,
                              truncation: int = 128) -> VerificationReport:
    """rank BPn(j)_m = rank BPn(j-1)_m + rank BPn(j)_(m - (2^(j+1)-2)):
    a monomial either avoids the top generator or divides by it once."""
    params = {"j_min": j_min, "j_max": j_max, "max_degree": truncation}

    def body():
        for j in range(j_min, j_max + 1):
            whole = homotopy_profile(bpn(j), truncation).free_ranks
            below = homotopy_profile(bpn(j - 1), truncation).free_ranks
            step = 2 ** (j + 1) - 2
            rhs = below + _shift(whole, step) if step <= truncation else below
            bad = first_mismatch(whole, rhs)
            if bad is not None:
                return False, bad, {"level": j}
        return True, None, None

    return run_check("bpn-rank-recursion", params, body)


def verify_bop6_homotopy_splitting(truncation: int = 256) -> VerificationReport:
    """Homotopy of the sixth BoP space splits as the sixth bo space plus
    the bottom space of each summand at its connectivity."""
    params = {"max_degree": truncation}

    def body():
        bop = homotopy_profile(BOP, truncation)
        bo = homotopy_profile(BO, truncation)
        levels = {}
        summands = list(splitting_indices(truncation))
        for idx in summands:
            if idx.level not in levels:
                levels[idx.level] = homotopy_profile(bpn(idx.level),
                                                     truncation)
            if idx.connectivity != idx.suspension + 6:
                return False, idx.connectivity, {"stage": "index-shift"}
        for d in range(truncation + 1):
            lhs = bop.free_rank(d - 6)
            rhs = bo.free_rank(d - 6)
            for idx in summands:
                m = d - idx.connectivity
                if m >= 0:
                    rhs += levels[idx.level].free_rank(m)
            if lhs != rhs:
                return False, d, {"side": "free"}
            if bop.torsion(d - 6) != bo.torsion(d - 6):
                return False, d, {"side": "torsion"}
        return True, None, None

    return run_check("bop6-splitting", params, body)
