"""Exception hierarchy.

Every error raised on purpose by moyalex derives from MoyalexError so that
the CLI can map it to exit code 2 with a one-line message.
"""

from typing import Optional


class MoyalexError(Exception):
    """Base class for all moyalex errors."""


# Algebra


class NotDivisible(MoyalexError):
    """Division in the Laurent ring is not exact."""


class DivisionByZero(MoyalexError, ZeroDivisionError):
    """Division of a rational function by zero."""


class PolynomialParseError(MoyalexError):
    """Canonical polynomial text could not be parsed."""


# Diagrams


class DiagramValidationError(MoyalexError):
    """A diagram violates one or more structural invariants."""

    def __init__(self, report):
        self.report = report
        first = report.issues[0] if report.issues else None
        detail = f"{first.element}: {first.message}" if first else "invalid diagram"
        more = f" (+{len(report.issues) - 1} more)" if len(report.issues) > 1 else ""
        super().__init__(detail + more)


class UnknownEdge(MoyalexError):
    """An edge id does not exist in the diagram."""


class BasepointOnBridge(MoyalexError):
    """The basepoint edge has the same region on both sides."""


class InconsistentIndices(MoyalexError):
    """Region index propagation found a contradiction."""


class BasepointMissing(MoyalexError):
    """An operation needs a basepoint but none is set."""


class ZeroColorBasepoint(MoyalexError):
    """The basepoint lies on an edge of color zero."""


# State sums


class NotPlanar(MoyalexError):
    """A planar-only operation received a diagram with double points."""


class NoVertices(MoyalexError):
    """An operation needs at least one MOY vertex."""


class StateLimitExceeded(MoyalexError):
    """State enumeration exceeded the configured safety cap."""


class WeightTableError(MoyalexError):
    """The corner weight table is malformed."""


# Normalization


class NoLegalBasepoint(MoyalexError):
    """Every edge is zero-colored or a bridge."""


class NotALink(MoyalexError):
    """A link-only operation received a diagram with vertices."""


# Rewriting


class UnknownCrossing(MoyalexError):
    """The crossing id does not exist."""


class UnknownTwist(MoyalexError):
    """The edge has no half twist at the given index."""


class NoReducibleEdge(MoyalexError):
    """The maximal color is at most 2."""


class NonPositiveColor(MoyalexError):
    """The rewriting evaluator needs positive colors everywhere."""


class RewriteBudgetExceeded(MoyalexError):
    """A formal sum grew beyond the configured term cap."""


class MeasureNotLowered(MoyalexError, RuntimeError):
    """A rewrite rule produced a term whose measure is not smaller."""


# Verification


class IllegalColors(MoyalexError):
    """Colors violate a relation's side conditions."""


# Files and CLI


class ParseError(MoyalexError):
    """A diagram file could not be read."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class UnboundColor(MoyalexError):
    """A symbolic edge color has no binding."""


class SymbolicFitError(MoyalexError):
    """State weights could not be written as +-t^L [K] with L and K linear in the colors."""
