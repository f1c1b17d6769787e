"""Pointwise Stieltjes, path and fractal derivatives by shrinking-step limits.

All three operators evaluate the same kind of limit: a ratio of increments
over a geometric step sequence ``h_k = h0 / 2^k`` with ``h0 = max(|t|, 1) *
1e-2``, declared converged when two consecutive estimates agree within the
requested relative tolerance.  Central sampling ``(t-h, t+h)`` is the default;
near a domain boundary the driver falls back to one-sided sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    DegenerateDenominatorError,
    DomainError,
    NonConvergenceError,
    NonFiniteSampleError,
)
from .expr import identity_function, power_function
from .quadrature import Tolerance, riemann_integral
from .special import Order, as_order

__all__ = [
    "DerivativeResult",
    "MAX_HALVINGS",
    "PathLength",
    "arc_length",
    "classical_derivative",
    "fractal_derivative",
    "path_derivative",
    "stieltjes_derivative",
]

MAX_HALVINGS = 40
DEGENERACY_FACTOR = 1e-13

# Pure-relative stopping for arc increments: their absolute size shrinks with
# the step, so a fixed absolute floor would destroy the ratio's accuracy.
_INCREMENT_TOL = Tolerance(rel=1e-9, abs=1e-300)

# Step for the fallback numerical derivative of g inside arc-length speeds.
_SPEED_DIFF_STEP = 1e-6


@dataclass(frozen=True)
class DerivativeResult:
    """Converged limit value plus the diagnostic (step, estimate) sequence."""

    value: float
    step_used: float
    converged: bool
    sequence: tuple[tuple[float, float], ...]


def _initial_step(t: float) -> float:
    return max(abs(t), 1.0) * 1e-2


def _value_at(fn: Callable[[float], float], x: float) -> float:
    y = fn(x)
    if not math.isfinite(y):
        raise NonFiniteSampleError(f"function returned non-finite value {y!r} at t={x!r}")
    return y


def _pick_mode(t: float, h0: float, domain: tuple[float | None, float | None] | None):
    """Choose central or one-sided sampling given the available room."""
    if domain is None:
        return "central", h0
    lo, hi = domain
    room_left = math.inf if lo is None else t - lo
    room_right = math.inf if hi is None else hi - t
    if room_left < 0.0 or room_right < 0.0:
        raise DomainError(f"t={t!r} lies outside the domain {domain!r}")
    if room_left >= h0 and room_right >= h0:
        return "central", h0
    if room_right >= room_left:
        if room_right <= 0.0:
            raise DomainError(f"no room to differentiate at t={t!r} within {domain!r}")
        return "right", min(h0, room_right)
    if room_left <= 0.0:
        raise DomainError(f"no room to differentiate at t={t!r} within {domain!r}")
    return "left", min(h0, room_left)


def _ratio_limit(
    pair: Callable[[float], tuple[float, float]],
    h0: float,
    tol: float,
    degeneracy_scale: float,
) -> DerivativeResult:
    """Drive the increment ratio ``pair(h) = (num, den)`` down the step sequence."""
    if not (math.isfinite(tol) and tol > 0.0):
        raise DomainError(f"tolerance must be a positive real, got {tol!r}")
    threshold = DEGENERACY_FACTOR * degeneracy_scale
    sequence: list[tuple[float, float]] = []
    previous: float | None = None
    saw_usable_denominator = False
    h = h0
    for _ in range(MAX_HALVINGS + 1):
        numerator, denominator = pair(h)
        if abs(denominator) >= threshold:
            saw_usable_denominator = True
            estimate = numerator / denominator
            if not math.isfinite(estimate):
                raise NonFiniteSampleError(
                    f"increment ratio became non-finite at step {h!r}"
                )
            sequence.append((h, estimate))
            # relative agreement, with a unit floor so limits of zero (where
            # no relative criterion can ever fire) still terminate
            if previous is not None and abs(estimate - previous) <= tol * max(
                abs(estimate), abs(previous), 1.0
            ):
                return DerivativeResult(estimate, h, True, tuple(sequence))
            previous = estimate
        h *= 0.5
    if not saw_usable_denominator:
        raise DegenerateDenominatorError(
            "denominator stayed below the degeneracy threshold at every step "
            "(the generator function is locally flat)"
        )
    raise NonConvergenceError(
        f"estimates did not stabilize within {MAX_HALVINGS} halvings",
        sequence=tuple(sequence),
    )


def stieltjes_derivative(
    f: Callable[[float], float],
    g: Callable[[float], float],
    t: float,
    tol: float = 1e-8,
    domain: tuple[float | None, float | None] | None = None,
) -> DerivativeResult:
    """Limit of ``[f(t1) - f(t2)] / [g(t1) - g(t2)]`` as the points coalesce at ``t``.

    Geometrically: the slope of ``f`` plotted against ``g``.  Where ``g`` is
    locally flat the limit does not exist and a
    :class:`~fracgeo.errors.DegenerateDenominatorError` is raised.
    """
    if not math.isfinite(t):
        raise DomainError(f"evaluation point must be finite, got {t!r}")
    g_t = _value_at(g, t)
    mode, h0 = _pick_mode(t, _initial_step(t), domain)
    if mode == "central":
        def pair(h: float) -> tuple[float, float]:
            return (
                _value_at(f, t + h) - _value_at(f, t - h),
                _value_at(g, t + h) - _value_at(g, t - h),
            )
    elif mode == "right":
        f_t = _value_at(f, t)

        def pair(h: float) -> tuple[float, float]:
            return _value_at(f, t + h) - f_t, _value_at(g, t + h) - g_t
    else:
        f_t = _value_at(f, t)

        def pair(h: float) -> tuple[float, float]:
            return f_t - _value_at(f, t - h), g_t - _value_at(g, t - h)

    return _ratio_limit(pair, h0, tol, abs(g_t) + 1.0)


def _speed(g: Callable[[float], float], u: float) -> float:
    """``sqrt(1 + g'(u)^2)``, using the analytic derivative when ``g`` carries one."""
    deriv = getattr(g, "deriv", None)
    if deriv is not None:
        slope = deriv(u)
    else:
        step = max(abs(u), 1.0) * _SPEED_DIFF_STEP
        slope = (_value_at(g, u + step) - _value_at(g, u - step)) / (2.0 * step)
    if not math.isfinite(slope):
        raise NonFiniteSampleError(f"curve slope became non-finite at t={u!r}")
    return math.hypot(1.0, slope)


@dataclass(frozen=True)
class PathLength:
    """Cumulative arc length of the curve ``tau = g(t)`` from a base point.

    ``increment(t1, t2)`` integrates the speed over ``[t1, t2]`` directly, so
    tiny differences ``s(t+h) - s(t-h)`` keep full relative accuracy instead
    of cancelling two large totals.
    """

    g: Callable[[float], float]
    a: float

    def increment(self, t1: float, t2: float) -> float:
        return riemann_integral(
            lambda u: _speed(self.g, u), t1, t2, _INCREMENT_TOL
        ).value

    def __call__(self, t: float) -> float:
        if t < self.a:
            raise DomainError(f"arc length is defined for t >= {self.a!r}, got {t!r}")
        if t == self.a:
            return 0.0
        return self.increment(self.a, t)


def arc_length(
    g: Callable[[float], float],
    a: float,
    t: float,
    tol: Tolerance | None = None,
) -> float:
    """Length of the curve ``tau = g(u)`` for ``a <= u <= t``.

    Computed as the integral of ``sqrt(1 + g'(u)^2)``; the derivative of ``g``
    is taken analytically when available, otherwise by central differences
    with step ``max(|u|, 1) * 1e-6``.
    """
    if not (math.isfinite(a) and math.isfinite(t)):
        raise DomainError(f"arc-length limits must be finite, got [{a!r}, {t!r}]")
    if t < a:
        raise DomainError(f"arc length requires t >= a, got a={a!r}, t={t!r}")
    if t == a:
        return 0.0
    effective = tol if tol is not None else Tolerance()
    return riemann_integral(lambda u: _speed(g, u), a, t, effective).value


def path_derivative(
    f: Callable[[float], float],
    g: Callable[[float], float],
    a: float,
    t: float,
    tol: float = 1e-8,
    domain: tuple[float | None, float | None] | None = None,
) -> DerivativeResult:
    """Limit of ``[f(t1) - f(t2)] / [s(t1) - s(t2)]`` with ``s`` the arc length.

    This is the slope of the tangent on the ruled surface erected along the
    curve ``tau = g(t)``; for smooth inputs it equals
    ``f'(t) / sqrt(1 + g'(t)^2)``.
    """
    if not (math.isfinite(a) and math.isfinite(t)):
        raise DomainError(f"arguments must be finite, got a={a!r}, t={t!r}")
    if t <= a:
        raise DomainError(f"path derivative requires t > a, got a={a!r}, t={t!r}")
    if domain is None:
        effective_domain: tuple[float | None, float | None] = (a, None)
    else:
        lo, hi = domain
        effective_domain = (a if lo is None else max(a, lo), hi)
    length = PathLength(g, a)
    s_t = length(t)
    mode, h0 = _pick_mode(t, _initial_step(t), effective_domain)
    if mode == "central":
        def pair(h: float) -> tuple[float, float]:
            return (
                _value_at(f, t + h) - _value_at(f, t - h),
                length.increment(t - h, t + h),
            )
    elif mode == "right":
        f_t = _value_at(f, t)

        def pair(h: float) -> tuple[float, float]:
            return _value_at(f, t + h) - f_t, length.increment(t, t + h)
    else:
        f_t = _value_at(f, t)

        def pair(h: float) -> tuple[float, float]:
            return f_t - _value_at(f, t - h), length.increment(t - h, t)

    return _ratio_limit(pair, h0, tol, abs(s_t) + 1.0)


def fractal_derivative(
    f: Callable[[float], float],
    alpha: Order | float,
    t: float,
    tol: float = 1e-8,
) -> DerivativeResult:
    """Limit of ``[f(t1) - f(t)] / [t1^a - t^a]``: the slope of ``f`` against ``t^a``.

    Delegates to :func:`stieltjes_derivative` with ``g(t) = t^a`` over the
    domain ``t >= 0`` -- the same code path, so results are bitwise identical
    to the explicit Stieltjes call.
    """
    order = as_order(alpha)
    if not (math.isfinite(t) and t > 0.0):
        if order.alpha < 1.0:
            raise DomainError(
                f"fractal derivative requires t > 0 (curve slope unbounded at 0 "
                f"for order {order.alpha!r}), got t={t!r}"
            )
        raise DomainError(f"fractal derivative requires t > 0, got t={t!r}")
    return stieltjes_derivative(
        f, power_function(order.alpha), t, tol, domain=(0.0, None)
    )


def classical_derivative(
    f: Callable[[float], float],
    t: float,
    tol: float = 1e-8,
    domain: tuple[float | None, float | None] | None = None,
) -> DerivativeResult:
    """Ordinary derivative: the Stieltjes derivative against the identity."""
    return stieltjes_derivative(f, identity_function(), t, tol, domain)
