"""Fractional-order integration via two independent numerical routes.

The Stieltjes route sums ``f`` against the increments of the self-scaling
curve anchored at the evaluation point; the kernel route integrates
``(t-tau)^(a-1) f(tau)`` after the substitution ``u = (t-tau)^a`` flattens
the endpoint singularity.  The two share no quadrature path, so their
agreement is a meaningful cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .expr import RealFunction
from .quadrature import DEFAULT_TOLERANCE, QuadratureResult, Tolerance, stieltjes_integral, riemann_integral
from .special import Order, as_order, gamma

__all__ = [
    "FractionalIntegralSpec",
    "anchored_scaling_curve",
    "power_rule_oracle",
    "rl_integral_kernel",
    "rl_integral_stieltjes",
]


@dataclass(frozen=True)
class FractionalIntegralSpec:
    """Order, limits and integrand of one fractional-integral evaluation."""

    alpha: Order
    a: float
    t: float
    f: RealFunction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", as_order(self.alpha))
        if not (math.isfinite(self.a) and math.isfinite(self.t)):
            raise DomainError(f"limits must be finite, got a={self.a!r}, t={self.t!r}")
        if self.t <= self.a:
            raise DomainError(
                f"evaluation point must exceed the lower limit, got a={self.a!r}, t={self.t!r}"
            )


def anchored_scaling_curve(alpha: Order | float, a: float, t: float) -> RealFunction:
    """Self-scaling curve re-anchored so its measure lives on ``[a, t]``.

    The returned function maps ``tau`` to the curve height at ``tau - a`` for
    the horizon ``t - a``; its increments reproduce the fractional kernel.
    """
    order = as_order(alpha)
    horizon = t - a
    if not (math.isfinite(horizon) and horizon > 0.0):
        raise DomainError(f"anchoring requires t > a, got a={a!r}, t={t!r}")

    # Hot path: quadrature samples this curve hundreds of thousands of times,
    # so the constants of special.scaling_curve are hoisted out of the call.
    # The series switch below 1e-8 * horizon mirrors that function exactly.
    power = order.alpha
    inv_norm = 1.0 / gamma(power + 1.0)
    top = horizon ** power
    slope_at_zero = power * horizon ** (power - 1.0) * inv_norm
    inv_gamma_power = 1.0 / gamma(power)
    switch = 1e-8 * horizon

    def fn(tau: float) -> float:
        x = tau - a
        if not 0.0 <= x <= horizon:
            raise DomainError(
                f"curve is anchored on [{a!r}, {t!r}], got tau={tau!r}"
            )
        if x < switch:
            return slope_at_zero * x
        return (top - (horizon - x) ** power) * inv_norm

    def deriv(tau: float) -> float:
        x = tau - a
        if not 0.0 <= x < horizon:
            raise DomainError(
                f"curve slope exists on [{a!r}, {t!r}), got tau={tau!r}"
            )
        return (horizon - x) ** (power - 1.0) * inv_gamma_power

    return RealFunction(
        fn=fn,
        source=f"scaling_curve(alpha={order.alpha:g}, horizon={horizon:g})",
        kind="builtin",
        deriv=deriv,
    )


def rl_integral_stieltjes(
    spec: FractionalIntegralSpec, tol: Tolerance = DEFAULT_TOLERANCE
) -> QuadratureResult:
    """Fractional integral as a Stieltjes sum along the anchored curve."""
    g = anchored_scaling_curve(spec.alpha, spec.a, spec.t)
    return stieltjes_integral(spec.f, g, spec.a, spec.t, tol)


def rl_integral_kernel(
    spec: FractionalIntegralSpec, tol: Tolerance = DEFAULT_TOLERANCE
) -> QuadratureResult:
    """Fractional integral in kernel form, regularized by ``u = (t-tau)^a``.

    After the substitution the value is ``(1/Gamma(a+1)) * int_0^{(t-a)^a}
    f(t - u^{1/a}) du``, an ordinary integral with no endpoint singularity
    for orders below one.
    """
    alpha = spec.alpha.alpha
    a, t, f = spec.a, spec.t, spec.f
    upper = (t - a) ** alpha
    inv_alpha = 1.0 / alpha

    def integrand(u: float) -> float:
        return f(t - u ** inv_alpha)

    norm = 1.0 / gamma(alpha + 1.0)
    # the absolute target applies to the *scaled* value
    inner_tol = Tolerance(
        rel=tol.rel, abs=max(1e-300, tol.abs / norm), max_panels=tol.max_panels
    )
    result = riemann_integral(integrand, 0.0, upper, inner_tol)
    return QuadratureResult(
        value=norm * result.value,
        error_estimate=norm * result.error_estimate,
        panels=result.panels,
    )


def power_rule_oracle(p: float, alpha: Order | float, t: float) -> float:
    """Closed form ``Gamma(p+1)/Gamma(p+1+a) * t^(p+a)`` for the integral of ``t^p``."""
    order = as_order(alpha)
    if not (math.isfinite(p) and p >= 0.0):
        raise DomainError(f"power must satisfy p >= 0, got {p!r}")
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"evaluation point must satisfy t > 0, got {t!r}")
    return gamma(p + 1.0) / gamma(p + 1.0 + order.alpha) * t ** (p + order.alpha)
