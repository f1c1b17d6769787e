"""Exception hierarchy shared by every module in the package.

Callers that only care about "the math failed" can catch :class:`FracGeoError`;
the CLI additionally distinguishes expression *parse* failures (bad input
syntax, a usage problem) from runtime domain failures.
"""

from __future__ import annotations


class FracGeoError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FracGeoError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ExpressionError(FracGeoError, ValueError):
    """Base class for expression parsing and evaluation failures."""


class ExprSyntaxError(ExpressionError):
    """Malformed expression source; ``offset`` is the byte position."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(expected)
        super().__init__(f"{message} (byte offset {offset})")


class UnknownIdentifierError(ExprSyntaxError):
    """An identifier that is not the variable ``t`` or a builtin function."""


class ArityError(ExprSyntaxError):
    """A builtin function called with the wrong number of arguments."""


class EvalDomainError(ExpressionError):
    """Evaluation hit a domain violation or produced a non-finite value.

    ``subexpression`` is the pretty-printed subtree that failed, so error
    messages point at ``sqrt(t)`` rather than at the whole expression.
    """

    def __init__(self, message: str, subexpression: str):
        self.subexpression = subexpression
        super().__init__(f"{message} in {subexpression!r}")


class NonFiniteSampleError(FracGeoError):
    """A sampled function value came back NaN or infinite."""


class MonotonicityError(FracGeoError):
    """The integrator function g decreased between two sample points."""


class ToleranceNotMetError(FracGeoError):
    """Panel budget exhausted; carries the best value seen and its estimate."""

    def __init__(self, message: str, value: float, error_estimate: float, panels: int):
        self.value = value
        self.error_estimate = error_estimate
        self.panels = panels
        super().__init__(
            f"{message} (best value {value!r}, estimate {error_estimate:.3e}, {panels} panels)"
        )


class DegenerateDenominatorError(FracGeoError):
    """Every difference of g stayed below the degeneracy threshold (g locally flat)."""


class NonConvergenceError(FracGeoError):
    """Derivative estimates failed to stabilize; carries the diagnostic sequence."""

    def __init__(self, message: str, sequence: tuple[tuple[float, float], ...]):
        self.sequence = tuple(sequence)
        super().__init__(message)
