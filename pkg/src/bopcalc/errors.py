"""Exception types shared across the package.

Everything derives from BopcalcError so callers can catch the whole family
at once.  Errors that point at a specific degree carry it in ``.degree``.
"""

__all__ = [
    "BopcalcError",
    "TruncationError",
    "NotInvertible",
    "ZeroDegreeFactor",
    "InvalidKind",
    "UnresolvedExtension",
    "NegativeDimension",
    "RankRuleInapplicable",
    "InvalidParameter",
    "ConjectureShapeError",
    "NotApplicable",
]


class BopcalcError(Exception):
    """Base class for all package errors."""


class TruncationError(BopcalcError):
    """Mixed truncation degrees, or a degree outside the stored range."""


class NotInvertible(BopcalcError):
    """Series inversion needs a unit (+1 or -1) constant term."""


class ZeroDegreeFactor(BopcalcError):
    """A product factor must sit in strictly positive degree."""


class InvalidKind(BopcalcError):
    """Operation applied to a generator table of the wrong kind."""


class UnresolvedExtension(BopcalcError):
    """A divided-power table was used where polynomial input is required."""


class NegativeDimension(BopcalcError):
    """A computation produced a negative count where a dimension belongs."""

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"negative count at degree {degree}")


class RankRuleInapplicable(BopcalcError):
    """The homotopy-to-homology rank rule does not cover this space."""


class InvalidParameter(BopcalcError):
    """Argument outside the documented range."""


class ConjectureShapeError(BopcalcError):
    """The conjectured sum produced a structurally impossible term."""


class NotApplicable(BopcalcError):
    """The requested decomposition does not exist for this input."""
