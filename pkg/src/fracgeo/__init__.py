"""Fractional-order and Stieltjes-type operators with their fence/shadow geometry."""

from .derivatives import (
    DerivativeResult,
    PathLength,
    arc_length,
    classical_derivative,
    fractal_derivative,
    path_derivative,
    stieltjes_derivative,
)
from .errors import (
    DegenerateDenominatorError,
    DomainError,
    EvalDomainError,
    ExprSyntaxError,
    FracGeoError,
    MonotonicityError,
    NonConvergenceError,
    NonFiniteSampleError,
    ToleranceNotMetError,
)
from .expr import RealFunction, evaluate, function_from_source, parse, to_source
from .fractional import (
    FractionalIntegralSpec,
    anchored_scaling_curve,
    power_rule_oracle,
    rl_integral_kernel,
    rl_integral_stieltjes,
)
from .geometry import FenceAnimation, FenceScene, build_rl_animation, build_scene
from .quadrature import QuadratureResult, Tolerance, riemann_integral, stieltjes_integral
from .special import Order, gamma, scaling_curve, scaling_curve_derivative

__version__ = "0.1.0"

__all__ = [
    "DegenerateDenominatorError",
    "DerivativeResult",
    "DomainError",
    "EvalDomainError",
    "ExprSyntaxError",
    "FenceAnimation",
    "FenceScene",
    "FracGeoError",
    "FractionalIntegralSpec",
    "MonotonicityError",
    "NonConvergenceError",
    "NonFiniteSampleError",
    "Order",
    "PathLength",
    "QuadratureResult",
    "RealFunction",
    "Tolerance",
    "ToleranceNotMetError",
    "anchored_scaling_curve",
    "arc_length",
    "build_rl_animation",
    "build_scene",
    "classical_derivative",
    "evaluate",
    "fractal_derivative",
    "function_from_source",
    "gamma",
    "parse",
    "path_derivative",
    "power_rule_oracle",
    "riemann_integral",
    "rl_integral_kernel",
    "rl_integral_stieltjes",
    "scaling_curve",
    "scaling_curve_derivative",
    "stieltjes_derivative",
    "stieltjes_integral",
    "to_source",
]
