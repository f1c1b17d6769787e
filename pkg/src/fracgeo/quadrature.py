"""Adaptive composite-midpoint integration, classical and measure-weighted.

Both integrators double the panel count from 16 until the Richardson-style
estimate ``|S_2n - S_n|`` meets the requested tolerance.  The Stieltjes
integrator weights midpoint values of ``f`` with *exact* increments of ``g``,
so a weakly singular ``dg`` (the fractional kernel below order one) is
integrated exactly in the measure and only the smooth factor is approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    DomainError,
    MonotonicityError,
    NonFiniteSampleError,
    ToleranceNotMetError,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "INITIAL_PANELS",
    "QuadratureResult",
    "Tolerance",
    "riemann_integral",
    "stieltjes_integral",
]

INITIAL_PANELS = 16
_MAX_PANEL_LIMIT = 1 << 24

# Slack allowed before a decrease of g between sample points counts as a
# genuine monotonicity violation rather than rounding noise.
MONOTONE_SLACK = 1e-13


@dataclass(frozen=True)
class Tolerance:
    """Stopping rule: relative and absolute targets plus a panel budget."""

    rel: float = 1e-8
    abs: float = 1e-12
    max_panels: int = 1 << 20

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rel) and self.rel >= 1e-14):
            raise DomainError(f"rel tolerance must be >= 1e-14, got {self.rel!r}")
        if not (math.isfinite(self.abs) and self.abs >= 1e-300):
            raise DomainError(f"abs tolerance must be >= 1e-300, got {self.abs!r}")
        if not isinstance(self.max_panels, int) or not 0 < self.max_panels <= _MAX_PANEL_LIMIT:
            raise DomainError(
                f"max_panels must be a positive integer <= 2^24, got {self.max_panels!r}"
            )

    def threshold(self, value: float) -> float:
        return max(self.abs, self.rel * abs(value))


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value with its a-posteriori estimate and final panel count."""

    value: float
    error_estimate: float
    panels: int


def _sample(fn: Callable[[float], float], x: float) -> float:
    y = fn(x)
    if not math.isfinite(y):
        raise NonFiniteSampleError(f"function returned non-finite value {y!r} at t={x!r}")
    return y


def _check_interval(a: float, b: float) -> None:
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"integration limits must be finite, got [{a!r}, {b!r}]")
    if a > b:
        raise DomainError(f"integration requires a <= b, got a={a!r}, b={b!r}")


def _midpoint_sum(f: Callable[[float], float], a: float, b: float, n: int) -> float:
    h = (b - a) / n
    values = [_sample(f, a + (i + 0.5) * h) for i in range(n)]
    # fsum keeps the panel accumulation in a fixed left-to-right order
    return math.fsum(values) * h


def riemann_integral(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` by adaptive composite midpoint sums."""
    _check_interval(a, b)
    if a == b:
        return QuadratureResult(0.0, 0.0, INITIAL_PANELS)
    previous = _midpoint_sum(f, a, b, INITIAL_PANELS)
    n = INITIAL_PANELS
    current = previous
    estimate = math.inf
    while 2 * n <= tol.max_panels:
        n *= 2
        current = _midpoint_sum(f, a, b, n)
        estimate = abs(current - previous)
        if estimate <= tol.threshold(current):
            return QuadratureResult(current, estimate, n)
        previous = current
    raise ToleranceNotMetError(
        "panel budget exhausted before the error estimate met the tolerance",
        value=current,
        error_estimate=estimate,
        panels=n,
    )


def _stieltjes_sum(
    f: Callable[[float], float],
    g: Callable[[float], float],
    a: float,
    b: float,
    n: int,
    monotone_scale: float,
) -> float:
    h = (b - a) / n
    nodes = [a + i * h for i in range(n + 1)]
    nodes[-1] = b  # keep the telescoped total pinned to g(b) - g(a)
    g_values = [_sample(g, x) for x in nodes]
    slack = MONOTONE_SLACK * monotone_scale
    for i in range(n):
        if g_values[i + 1] - g_values[i] < -slack:
            raise MonotonicityError(
                f"g decreases between t={nodes[i]!r} and t={nodes[i + 1]!r} "
                f"({g_values[i]!r} -> {g_values[i + 1]!r})"
            )
    terms = [
        _sample(f, a + (i + 0.5) * h) * (g_values[i + 1] - g_values[i]) for i in range(n)
    ]
    return math.fsum(terms)


def stieltjes_integral(
    f: Callable[[float], float],
    g: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> QuadratureResult:
    """Integrate ``f`` against the increments of ``g`` over ``[a, b]``.

    ``g`` must be continuous and monotone non-decreasing; this is verified on
    every sample grid up to rounding slack.  With ``g`` the identity the
    result agrees with :func:`riemann_integral` within combined tolerances.
    """
    _check_interval(a, b)
    if a == b:
        return QuadratureResult(0.0, 0.0, INITIAL_PANELS)
    g_a = _sample(g, a)
    g_b = _sample(g, b)
    monotone_scale = abs(g_a) + abs(g_b) + 1.0
    previous = _stieltjes_sum(f, g, a, b, INITIAL_PANELS, monotone_scale)
    n = INITIAL_PANELS
    current = previous
    estimate = math.inf
    while 2 * n <= tol.max_panels:
        n *= 2
        current = _stieltjes_sum(f, g, a, b, n, monotone_scale)
        estimate = abs(current - previous)
        if estimate <= tol.threshold(current):
            return QuadratureResult(current, estimate, n)
        previous = current
    raise ToleranceNotMetError(
        "panel budget exhausted before the error estimate met the tolerance",
        value=current,
        error_estimate=estimate,
        panels=n,
    )
