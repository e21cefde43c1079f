"""Exception hierarchy shared by all ctstat modules.

Two error families matter to callers (and to the CLI exit-code map):
domain errors (bad arguments, unsupported combinations) and numeric
errors (a computation ran but could not meet its accuracy contract).
"""


class CtstatError(Exception):
    """Base class for all ctstat-specific errors."""


class DomainError(CtstatError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class CapabilityError(DomainError):
    """The requested combination has no closed form; use a grid-based path."""


class NumericError(CtstatError, ArithmeticError):
    """A numeric routine could not reach its accuracy target."""


class AccuracyError(NumericError):
    """Best-effort result available but the accuracy target was missed.

    Carries the best value computed and an estimate of its error so a
    caller can decide whether the result is still usable.
    """

    def __init__(self, message: str, value: float, est_error: float):
        super().__init__(message)
        self.value = value
        self.est_error = est_error


class InversionError(NumericError):
    """Numeric Laplace inversion failed its internal consistency check."""
