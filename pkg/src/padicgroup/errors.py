"""Exception types shared across the package."""


class PadicGroupError(Exception):
    """Base class for all package errors."""


class NotPrimeError(PadicGroupError, ValueError):
    """A prime was required and the argument is not one."""


class NotPAdicIntegerError(PadicGroupError, ValueError):
    """Residue reduction was asked of a rational with a negative valuation."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class EnumerationRangeError(PadicGroupError, ValueError):
    """An enumeration index fell outside the valid range."""


class CapacityExceededError(PadicGroupError, RuntimeError):
    """A scan or residue set would exceed the configured capacity cap."""

    def __init__(self, message, required=None, cap=None):
        super().__init__(message)
        self.required = required
        self.cap = cap


class WrongPrimeError(PadicGroupError, ValueError):
    """The prime is not eligible for the requested witness."""


class NoQuotientContentError(PadicGroupError, ValueError):
    """A divisibility witness was requested for an element of the integer axis."""


class NotInGroupError(PadicGroupError, ValueError):
    """An element that must lie in the group failed the membership test."""


class SpanMeetsAxisError(PadicGroupError):
    """The rational span of the generators meets the integer axis Z x {0}.

    Carries a nonzero witness element of the intersection; freeness
    certification does not apply to such spans.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class FingerprintMismatchError(PadicGroupError, ValueError):
    """A persisted artifact was produced under different conventions."""
