"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FrobtraceError(Exception):
    """Base class for computational errors (CLI exit code 1)."""


class ParseError(FrobtraceError):
    """Malformed polynomial, divisor or session text (CLI exit code 2)."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class UnknownVariable(ParseError):
    pass


class RingMismatch(FrobtraceError):
    pass


class NotDivisible(FrobtraceError, ArithmeticError):
    pass


class ResourceExceeded(FrobtraceError):
    """A step cap or Frobenius-level cap was hit before an answer was certain.

    ``diagnostics`` carries whatever partial state is useful to a user, e.g.
    the last two values of a chain that did not stabilise.
    """

    def __init__(self, message: str, diagnostics: object = None):
        self.diagnostics = diagnostics
        super().__init__(message)


class UncoveredFactor(FrobtraceError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"factor not covered by the prime table: {residual}")


class NonIntegral(FrobtraceError):
    def __init__(self, message: str, valid_e: int | None = None):
        self.valid_e = valid_e
        super().__init__(message)


class NonMonogenic(FrobtraceError):
    pass


class ZeroTrace(FrobtraceError):
    """The trace-like map is zero (e.g. the field trace of an inseparable extension)."""


class NeedTestElement(FrobtraceError):
    pass


class PreconditionError(FrobtraceError):
    pass


class Inconclusive(FrobtraceError):
    pass
