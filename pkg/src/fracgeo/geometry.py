"""Fence surfaces, their two shadow polygons, and the three tangent segments.

A scene erects a ruled "fence" of height ``f(t)`` along the plane curve
``tau = g(t)``.  Its projection onto the ``(t, y)`` plane bounds the classical
integral of ``f``; the projection onto the ``(tau, y)`` plane bounds the
Stieltjes integral of ``f`` against ``g``.  Tangent slopes at a marked point
carry the classical, path and Stieltjes derivatives.  An animation strings
together one scene per evaluation time, each along the self-scaling curve
anchored at that time, so the moving shadow tracks the fractional integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .derivatives import (
    DerivativeResult,
    classical_derivative,
    path_derivative,
    stieltjes_derivative,
)
from .errors import (
    DegenerateDenominatorError,
    DomainError,
    MonotonicityError,
    NonFiniteSampleError,
)
from .fractional import FractionalIntegralSpec, anchored_scaling_curve, rl_integral_stieltjes
from .quadrature import DEFAULT_TOLERANCE, MONOTONE_SLACK, Tolerance
from .special import Order, as_order

__all__ = [
    "FenceAnimation",
    "FenceScene",
    "Tangent",
    "build_rl_animation",
    "build_scene",
    "shoelace_area",
]


def _sample(fn: Callable[[float], float], x: float) -> float:
    y = fn(x)
    if not math.isfinite(y):
        raise NonFiniteSampleError(f"function returned non-finite value {y!r} at t={x!r}")
    return y


def shoelace_area(loop) -> float:
    """Signed polygon area of an ordered vertex loop (closes last to first).

    Oriented so that a fence loop listed top-edge-first comes out with the
    sign of the integral it bounds: positive heights give positive area.
    """
    terms = []
    m = len(loop)
    for i in range(m):
        x0, y0 = loop[i]
        x1, y1 = loop[(i + 1) % m]
        terms.append((x1 - x0) * (y1 + y0))
    return 0.5 * math.fsum(terms)


@dataclass(frozen=True)
class Tangent:
    """One tangent segment: anchor point, slope, and the limit that built it.

    ``slope`` is ``None`` when the underlying derivative is degenerate (for
    example the Stieltjes tangent where ``g`` is flat); the segment is then an
    explicit absent-marker rather than a fabricated number.
    """

    plane: str  # "ty" | "fence" | "tau_y"
    point: tuple[float, ...]
    slope: float | None
    detail: DerivativeResult | None


@dataclass(frozen=True)
class FenceScene:
    """Sampled fence with its shadow loops and tangents on one parameter grid."""

    a: float
    b: float
    n: int
    t_star: float
    alpha: float | None
    fence_top: tuple[tuple[float, float, float], ...]  # (t, tau, y); base at y=0
    shadow_ty: tuple[tuple[float, float], ...]
    shadow_tau_y: tuple[tuple[float, float], ...]
    tangents: tuple[Tangent, ...]

    def area_ty(self) -> float:
        return shoelace_area(self.shadow_ty)

    def area_tau_y(self) -> float:
        return shoelace_area(self.shadow_tau_y)


def _grid(a: float, b: float, n: int) -> list[float]:
    h = (b - a) / n
    ts = [a + i * h for i in range(n + 1)]
    ts[0] = a
    ts[-1] = b
    return ts


def build_scene(
    f: Callable[[float], float],
    g: Callable[[float], float],
    a: float,
    b: float,
    n: int = 256,
    t_star: float | None = None,
    alpha: float | None = None,
    derivative_tol: float = 1e-8,
) -> FenceScene:
    """Sample the fence of ``f`` along ``g`` over ``[a, b]`` on ``n`` panels.

    The shadow loops reuse the grid samples verbatim, so every fence-top
    vertex projects bitwise onto its shadow vertices.  Tangents are computed
    at ``t_star`` (default: the interval midpoint) with one-sided sampling at
    the interval ends.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise DomainError(f"scene requires finite a < b, got a={a!r}, b={b!r}")
    if not isinstance(n, int) or n < 8:
        raise DomainError(f"scene requires an integer n >= 8, got {n!r}")
    if t_star is None:
        t_star = 0.5 * (a + b)
    if not (a <= t_star <= b):
        raise DomainError(f"t_star must lie in [{a!r}, {b!r}], got {t_star!r}")

    ts = _grid(a, b, n)
    fs = [_sample(f, t) for t in ts]
    gs = [_sample(g, t) for t in ts]
    slack = MONOTONE_SLACK * (abs(gs[0]) + abs(gs[-1]) + 1.0)
    for i in range(n):
        if gs[i + 1] - gs[i] < -slack:
            raise MonotonicityError(
                f"g decreases between t={ts[i]!r} and t={ts[i + 1]!r}"
            )

    f_star = _sample(f, t_star)
    g_star = _sample(g, t_star)
    bounds = (a, b)

    def tangent(plane: str, point: tuple[float, ...], compute) -> Tangent:
        try:
            result = compute()
        except DegenerateDenominatorError:
            return Tangent(plane, point, None, None)
        return Tangent(plane, point, result.value, result)

    red = tangent(
        "ty",
        (t_star, f_star),
        lambda: classical_derivative(f, t_star, derivative_tol, domain=bounds),
    )
    if t_star == a:
        # the path derivative needs t > a; mark the fence tangent absent at
        # the left endpoint instead of failing the whole scene
        green = Tangent("fence", (t_star, g_star, f_star), None, None)
    else:
        green = tangent(
            "fence",
            (t_star, g_star, f_star),
            lambda: path_derivative(f, g, a, t_star, derivative_tol, domain=bounds),
        )
    blue = tangent(
        "tau_y",
        (g_star, f_star),
        lambda: stieltjes_derivative(f, g, t_star, derivative_tol, domain=bounds),
    )

    fence_top = tuple((ts[i], gs[i], fs[i]) for i in range(n + 1))
    shadow_ty = tuple((ts[i], fs[i]) for i in range(n + 1)) + ((ts[n], 0.0), (ts[0], 0.0))
    shadow_tau_y = tuple((gs[i], fs[i]) for i in range(n + 1)) + ((gs[n], 0.0), (gs[0], 0.0))

    return FenceScene(
        a=a,
        b=b,
        n=n,
        t_star=t_star,
        alpha=alpha,
        fence_top=fence_top,
        shadow_ty=shadow_ty,
        shadow_tau_y=shadow_tau_y,
        tangents=(red, green, blue),
    )


@dataclass(frozen=True)
class FenceAnimation:
    """One fence scene per evaluation time, along the self-scaling curve."""

    alpha: float
    a: float
    b: float
    frames: int
    n: int
    times: tuple[float, ...]
    scenes: tuple[FenceScene, ...]
    rl_values: tuple[float, ...]


def build_rl_animation(
    f: Callable[[float], float],
    alpha: Order | float,
    a: float,
    b: float,
    frames: int = 24,
    n: int = 256,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> FenceAnimation:
    """Build the moving-fence animation of the fractional integral of ``f``.

    Frame ``k`` lives at time ``t_k`` on a uniform grid of ``frames`` points in
    ``(a, b]`` and uses the scaling curve anchored at ``t_k``, so each frame's
    ``(tau, y)`` shadow area tracks the fractional integral up to that time
    (the reference values are computed alongside and stored per frame).
    """
    order = as_order(alpha)
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise DomainError(f"animation requires finite a < b, got a={a!r}, b={b!r}")
    if not isinstance(frames, int) or frames < 1:
        raise DomainError(f"animation requires an integer frames >= 1, got {frames!r}")
    times = []
    scenes = []
    rl_values = []
    for k in range(frames):
        t_k = a + (b - a) * (k + 1) / frames
        curve = anchored_scaling_curve(order, a, t_k)
        scene = build_scene(f, curve, a, t_k, n=n, alpha=order.alpha)
        reference = rl_integral_stieltjes(
            FractionalIntegralSpec(order, a, t_k, f), tol
        ).value
        times.append(t_k)
        scenes.append(scene)
        rl_values.append(reference)
    return FenceAnimation(
        alpha=order.alpha,
        a=a,
        b=b,
        frames=frames,
        n=n,
        times=tuple(times),
        scenes=tuple(scenes),
        rl_values=tuple(rl_values),
    )
