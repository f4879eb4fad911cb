"""Exception types shared across the package."""


class WrightSteinError(Exception):
    """Base class for all library-specific failures."""


class DomainError(WrightSteinError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(WrightSteinError, ValueError):
    """An argument is inside the domain but outside the supported numerical range."""


class NonFiniteError(WrightSteinError, ArithmeticError):
    """An integrand or intermediate quantity evaluated to NaN/inf.

    Carries the offending abscissa in ``x`` when known.
    """

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class ToleranceNotMetError(WrightSteinError, RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget.

    ``result`` holds the best available IntegralResult (value, honest error
    estimate, evaluation count).
    """

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class SolverAccuracyError(WrightSteinError, RuntimeError):
    """A Stein solution failed its residual tolerance; diagnostics attached."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class AiryOverflowError(WrightSteinError, OverflowError):
    """Unscaled Bi would overflow; use the scaled fields instead."""
