"""Exception types shared across the package."""


class NestquotError(Exception):
    """Base class for all package-specific errors."""


class NotCommuting(NestquotError):
    """Action matrices fail to commute pairwise."""


class NotStable(NestquotError):
    """Framing vectors do not generate the module under the actions."""


class IrrationalSupport(NestquotError):
    """A characteristic polynomial does not split over the rationals."""


class OverlappingSupports(NestquotError):
    """Direct-sum inputs whose top-level supports are not pairwise disjoint."""


class TruncationTooSmall(NestquotError):
    """Jet order too small for the requested kernel/Hom computation."""


class ResourceBoundExceeded(NestquotError):
    """A configured size bound (jet dimension, fixed-point count) was hit."""


class InvalidPoint(NestquotError):
    """A framed point or chain violates its structural invariants."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class ParseError(NestquotError):
    """Malformed point file."""


class Unsupported(NestquotError):
    """Requested witness construction is not covered."""


class SmoothCase(NestquotError):
    """Witness requested for parameters classified as smooth."""
