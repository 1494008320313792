"""Structured pass/fail reports shared by all verifiers.

Every verifier returns a VerificationReport rather than a bare bool, so
the CLI and the test suite can both show what was checked, with which
parameters, and where the first discrepancy sits when something breaks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Tuple

from .series import TruncatedSeries

__all__ = ["VerificationReport", "run_check", "first_mismatch"]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one named check.

    first_failure_degree is present exactly when the check failed; for
    sweeps over something other than series degree it holds the first
    failing sweep position, and detail says what that position means.
    """

    check: str
    parameters: Mapping
    passed: bool
    first_failure_degree: Optional[int] = None
    elapsed_ms: float = 0.0
    detail: Optional[Mapping] = None

    def __post_init__(self):
        if self.passed and self.first_failure_degree is not None:
            raise ValueError("a passing report cannot carry a failure degree")
        if not self.passed and self.first_failure_degree is None:
            raise ValueError("a failing report must locate its first failure")

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "parameters": dict(self.parameters),
            "pass": self.passed,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.first_failure_degree is not None:
            out["first_failure_degree"] = self.first_failure_degree
        if self.detail:
            out["detail"] = dict(self.detail)
        return out

    def one_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = ("" if self.first_failure_degree is None
                 else f" first_failure_degree={self.first_failure_degree}")
        return f"{status} {self.check}{where} ({self.elapsed_ms:.1f} ms)"


def run_check(check: str, parameters: Mapping,
              body: Callable[[], Tuple[bool, Optional[int], Optional[Mapping]]],
              ) -> VerificationReport:
    """Time a check body returning (passed, first_failure_degree, detail)."""
    start = time.perf_counter()
    passed, failure_degree, detail = body()
    elapsed = (time.perf_counter() - start) * 1000.0
    return VerificationReport(check, dict(parameters), passed,
                              failure_degree, elapsed, detail)


def first_mismatch(left: TruncatedSeries, right: TruncatedSeries) -> Optional[int]:
    """First degree where two series disagree, or None if equal."""
    diff = left - right
    for d, c in enumerate(diff.coefficients):
        if c:
            return d
    return None
