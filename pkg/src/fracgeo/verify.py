"""Cross-formulation and oracle suites runnable from the CLI and the API.

Each suite exercises one family of consistency checks (two independent
fractional-integral routes, derivative ratio identities, shadow areas against
quadrature values, ...) over a deterministic random sample and reports the
worst error seen against its tolerance.  ``quick`` runs reduced grids,
``full`` the complete ones.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from scipy.interpolate import PchipInterpolator

from .derivatives import fractal_derivative, path_derivative, stieltjes_derivative
from .errors import ExprSyntaxError
from .expr import (
    Binary,
    Call,
    Const,
    ExprAst,
    RealFunction,
    Unary,
    Var,
    identity_function,
    parse,
    power_function,
    to_source,
)
from .fractional import (
    FractionalIntegralSpec,
    power_rule_oracle,
    rl_integral_kernel,
    rl_integral_stieltjes,
)
from .geometry import build_rl_animation, build_scene
from .quadrature import Tolerance, riemann_integral, stieltjes_integral
from .special import Order, gamma

__all__ = [
    "PRECEDENCE_GOLDENS",
    "SYNTAX_ERROR_CORPUS",
    "SuiteResult",
    "gamma_reference_values",
    "random_ast",
    "random_monotone_function",
    "random_smooth_function",
    "run_suites",
    "semigroup_compose",
    "stencil_derivative",
]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    max_error: float
    tolerance: float
    passed: bool


# ---------------------------------------------------------------------------
# deterministic random test material

def random_smooth_function(rng: random.Random) -> RealFunction:
    """Quadratic-plus-sine test function with an analytic derivative."""
    c0 = rng.uniform(-2.0, 2.0)
    c1 = rng.uniform(-2.0, 2.0)
    c2 = rng.uniform(-1.0, 1.0)
    amp = rng.uniform(-1.0, 1.0)
    freq = rng.uniform(0.5, 2.5)
    phase = rng.uniform(0.0, 2.0 * math.pi)

    def fn(t: float) -> float:
        return c0 + c1 * t + c2 * t * t + amp * math.sin(freq * t + phase)

    def deriv(t: float) -> float:
        return c1 + 2.0 * c2 * t + amp * freq * math.cos(freq * t + phase)

    label = f"{c0:.3f}+{c1:.3f}*t+{c2:.3f}*t^2+{amp:.3f}*sin({freq:.3f}*t+{phase:.3f})"
    return RealFunction(fn=fn, source=label, kind="builtin", deriv=deriv)


def random_monotone_function(rng: random.Random) -> RealFunction:
    """Strictly increasing smooth function: slope ``a0 + b0*(1 + cos)`` > 0."""
    a0 = rng.uniform(0.2, 1.5)
    b0 = rng.uniform(0.0, 1.0)
    freq = rng.uniform(0.5, 2.0)
    c = rng.uniform(-1.0, 1.0)

    def fn(t: float) -> float:
        return c + a0 * t + b0 * (t + math.sin(freq * t) / freq)

    def deriv(t: float) -> float:
        return a0 + b0 * (1.0 + math.cos(freq * t))

    label = f"{c:.3f}+{a0:.3f}*t+{b0:.3f}*(t+sin({freq:.3f}*t)/{freq:.3f})"
    return RealFunction(fn=fn, source=label, kind="builtin", deriv=deriv)


def random_ast(rng: random.Random, max_depth: int = 6) -> ExprAst:
    """Random expression tree; constants are non-negative so printing round-trips."""
    if max_depth <= 0:
        return rng.choice([Const(round(rng.uniform(0.0, 10.0), 4)), Var()])
    kind = rng.randrange(6)
    if kind == 0:
        return Const(round(rng.uniform(0.0, 10.0), 4))
    if kind == 1:
        return Var()
    if kind == 2:
        return Unary("-", random_ast(rng, max_depth - 1))
    if kind <= 4:
        op = rng.choice(["+", "-", "*", "/", "^"])
        return Binary(op, random_ast(rng, max_depth - 1), random_ast(rng, max_depth - 1))
    name = rng.choice(["sin", "cos", "exp", "sqrt", "abs", "pow"])
    if name == "pow":
        return Call(name, (random_ast(rng, max_depth - 1), random_ast(rng, max_depth - 1)))
    return Call(name, (random_ast(rng, max_depth - 1),))


def stencil_derivative(fn, t: float, step: float | None = None) -> float:
    """Fourth-order central difference, independent of the limit drivers."""
    h = step if step is not None else max(abs(t), 1.0) * 1e-3
    return (-fn(t + 2 * h) + 8 * fn(t + h) - 8 * fn(t - h) + fn(t - 2 * h)) / (12 * h)


# ---------------------------------------------------------------------------
# parser corpora (shared with the test suite)

PRECEDENCE_GOLDENS: tuple[tuple[str, str], ...] = (
    ("2*t^3", "(2.0*(t^3.0))"),
    ("2^t^3", "(2.0^(t^3.0))"),
    ("2^-t", "(2.0^(-t))"),
    ("-t^2", "(-(t^2.0))"),
    ("(-t)^2", "((-t)^2.0)"),
    ("1+2*t", "(1.0+(2.0*t))"),
    ("(1+2)*t", "((1.0+2.0)*t)"),
    ("1-2-3", "((1.0-2.0)-3.0)"),
    ("1-2+3", "((1.0-2.0)+3.0)"),
    ("6/2/3", "((6.0/2.0)/3.0)"),
    ("6/2*3", "((6.0/2.0)*3.0)"),
    ("1+2-3*t", "((1.0+2.0)-(3.0*t))"),
    ("-t*2", "((-t)*2.0)"),
    ("-t+2", "((-t)+2.0)"),
    ("2*-t", "(2.0*(-t))"),
    ("sin(t)^2", "(sin(t)^2.0)"),
    ("sin(t^2)", "sin((t^2.0))"),
    ("pow(t,2)*3", "(pow(t,2.0)*3.0)"),
    ("1/2^t", "(1.0/(2.0^t))"),
    ("t^2^3^2", "(t^(2.0^(3.0^2.0)))"),
)

#: (source, byte offset of the reported error)
SYNTAX_ERROR_CORPUS: tuple[tuple[str, int], ...] = (
    ("t^^2", 2),
    ("", 0),
    ("2t", 1),
    ("1+", 2),
    ("*t", 0),
    ("(1+2", 4),
    ("1+2)", 3),
    ("foo(1)", 0),
    ("pow(1)", 0),
    ("sin(1,2)", 0),
    ("sin 1", 4),
    ("1..2", 2),
    ("2e", 2),
    # lexical scan runs first, so the non-ASCII byte is reported even though
    # the juxtaposition at offset 1 would also be rejected
    ("1shadow+é", 8),
    ("pow(1 2)", 6),
)


# ---------------------------------------------------------------------------
# semigroup protocol

def semigroup_compose(
    f: RealFunction,
    inner_alpha: float,
    outer_alpha: float,
    t: float = 1.0,
    grid_points: int = 513,
    tol: Tolerance = Tolerance(rel=1e-7, abs=1e-12),
) -> float:
    """Apply the outer integral to a grid interpolant of the inner one.

    The inner operator is evaluated on a uniform grid of ``grid_points`` over
    ``[0, t]``, interpolated by a monotone piecewise cubic, and the outer
    operator is applied to the interpolant at ``t``.
    """
    step = t / (grid_points - 1)
    grid = [j * step for j in range(grid_points)]
    grid[-1] = t
    inner_values = [0.0]
    inner_order = Order(inner_alpha)
    for tau in grid[1:]:
        spec = FractionalIntegralSpec(inner_order, 0.0, tau, f)
        inner_values.append(rl_integral_kernel(spec, tol).value)
    interpolant = PchipInterpolator(grid, inner_values)
    wrapped = RealFunction(
        fn=lambda u: float(interpolant(u)),
        source=f"interpolated inner integral of {f.source}",
        kind="builtin",
    )
    outer = FractionalIntegralSpec(Order(outer_alpha), 0.0, t, wrapped)
    return rl_integral_kernel(outer, tol).value


# ---------------------------------------------------------------------------
# reference data

def gamma_reference_values() -> list[tuple[float, float]]:
    """30 reference pairs: integers, half-integers, recurrence-propagated."""
    pairs: list[tuple[float, float]] = []
    for n in range(1, 11):
        pairs.append((float(n), float(math.factorial(n - 1))))
    sqrt_pi = math.sqrt(math.pi)
    for n in range(10):
        # Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
        pairs.append(
            (n + 0.5, math.factorial(2 * n) * sqrt_pi / (4.0 ** n * math.factorial(n)))
        )
    base_x, base_value = 0.7, 1.2980553326475577  # 40-digit reference, rounded
    value = base_value
    for k in range(1, 11):
        value *= base_x + k - 1.0
        pairs.append((base_x + k, value))
    return pairs


# ---------------------------------------------------------------------------
# suites

def _rel_err(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


def _suite_gamma(level: str) -> SuiteResult:
    worst = 0.0
    pairs = gamma_reference_values()
    for x, reference in pairs:
        worst = max(worst, _rel_err(gamma(x), reference))
    return SuiteResult("gamma accuracy", len(pairs), worst, 1e-12, worst <= 1e-12)


_QUAD_TOL = Tolerance(rel=5e-7, abs=1e-12)


def _power_grid(level: str):
    if level == "full":
        return (0.25, 0.5, 0.75, 1.0, 1.5, 2.0), (0.0, 1.0, 2.0), (0.5, 1.0, 2.0)
    return (0.5, 1.0, 1.5), (0.0, 1.0), (1.0,)


def _suite_power_rule(level: str) -> SuiteResult:
    alphas, powers, times = _power_grid(level)
    worst = 0.0
    cases = 0
    for alpha in alphas:
        for p in powers:
            f = power_function(p)
            for t in times:
                spec = FractionalIntegralSpec(Order(alpha), 0.0, t, f)
                reference = power_rule_oracle(p, alpha, t)
                worst = max(worst, _rel_err(rl_integral_stieltjes(spec, _QUAD_TOL).value, reference))
                worst = max(worst, _rel_err(rl_integral_kernel(spec, _QUAD_TOL).value, reference))
                cases += 2
    return SuiteResult("power-rule oracle", cases, worst, 1e-6, worst <= 1e-6)


def _equivalence_functions() -> list[RealFunction]:
    return [
        RealFunction(lambda t: 1.0, "1", deriv=lambda t: 0.0),
        identity_function(),
        RealFunction(lambda t: t * t, "t^2", deriv=lambda t: 2.0 * t),
        RealFunction(math.sin, "sin(t)", deriv=math.cos),
    ]


def _suite_equivalence(level: str) -> SuiteResult:
    functions = _equivalence_functions()
    if level == "full":
        alphas = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0)
        times = (0.5, 1.0, 2.0)
    else:
        alphas = (0.5, 1.0, 1.5)
        times = (1.0,)
        functions = [functions[0], functions[1], functions[3]]
    worst = 0.0
    cases = 0
    for alpha in alphas:
        for f in functions:
            for t in times:
                spec = FractionalIntegralSpec(Order(alpha), 0.0, t, f)
                via_curve = rl_integral_stieltjes(spec, _QUAD_TOL).value
                via_kernel = rl_integral_kernel(spec, _QUAD_TOL).value
                scale = max(abs(via_curve), abs(via_kernel), 1e-300)
                worst = max(worst, abs(via_curve - via_kernel) / scale)
                cases += 1
    return SuiteResult("formulation equivalence", cases, worst, 2e-6, worst <= 2e-6)


def _suite_semigroup(level: str) -> SuiteResult:
    functions = [
        RealFunction(lambda t: 1.0, "1"),
        identity_function(),
    ]
    if level != "full":
        functions = functions[:1]
    worst = 0.0
    for f in functions:
        composed = semigroup_compose(f, inner_alpha=0.4, outer_alpha=0.3)
        direct = rl_integral_kernel(
            FractionalIntegralSpec(Order(0.7), 0.0, 1.0, f), _QUAD_TOL
        ).value
        worst = max(worst, _rel_err(composed, direct))
    return SuiteResult("semigroup", len(functions), worst, 1e-4, worst <= 1e-4)


def _suite_classical(level: str) -> SuiteResult:
    count = 20 if level == "full" else 5
    rng = random.Random(20240709)
    worst = 0.0
    cases = 0
    flat = RealFunction(lambda t: 0.0, "0", deriv=lambda t: 0.0)
    for _ in range(count):
        f = random_smooth_function(rng)
        t = rng.uniform(0.5, 2.0)

        spec = FractionalIntegralSpec(Order(1.0), 0.0, t, f)
        reference = riemann_integral(f, 0.0, t, _QUAD_TOL).value
        worst = max(worst, _rel_err(rl_integral_stieltjes(spec, _QUAD_TOL).value, reference))

        via_stieltjes = stieltjes_integral(f, identity_function(), 0.0, t, _QUAD_TOL).value
        worst = max(worst, _rel_err(via_stieltjes, reference))

        slope = f.deriv(t)
        worst = max(worst, _rel_err(stieltjes_derivative(f, identity_function(), t).value, slope))
        worst = max(worst, _rel_err(fractal_derivative(f, 1.0, t).value, slope))
        worst = max(worst, _rel_err(path_derivative(f, flat, 0.0, t).value, slope))
        cases += 5
    return SuiteResult("classical reductions", cases, worst, 1e-6, worst <= 1e-6)


def _suite_ratio_path(level: str) -> SuiteResult:
    count = 50 if level == "full" else 10
    rng = random.Random(20240710)
    worst = 0.0
    cases = 0
    produced = 0
    while produced < count:
        f = random_smooth_function(rng)
        g = random_smooth_function(rng)
        t = rng.uniform(0.5, 2.0)
        g_slope = g.deriv(t)
        if abs(g_slope) <= 0.1:
            continue
        produced += 1
        ratio = stieltjes_derivative(f, g, t).value
        worst = max(worst, _rel_err(ratio, f.deriv(t) / g_slope))
        monotone = random_monotone_function(rng)
        along = path_derivative(f, monotone, 0.0, t).value
        expected = f.deriv(t) / math.hypot(1.0, monotone.deriv(t))
        worst = max(worst, _rel_err(along, expected))
        cases += 2
    return SuiteResult("ratio/path identities", cases, worst, 1e-5, worst <= 1e-5)


def _suite_specialization(level: str) -> SuiteResult:
    count = 100 if level == "full" else 20
    rng = random.Random(20240711)
    mismatches = 0
    for _ in range(count):
        f = random_smooth_function(rng)
        alpha = rng.uniform(0.25, 2.0)
        t = rng.uniform(0.5, 2.0)
        via_fractal = fractal_derivative(f, alpha, t)
        via_stieltjes = stieltjes_derivative(
            f, power_function(alpha), t, domain=(0.0, None)
        )
        if via_fractal != via_stieltjes:
            mismatches += 1
    return SuiteResult(
        "specialization identity", count, float(mismatches), 0.0, mismatches == 0
    )


_REFERENCE_TOL = Tolerance(rel=1e-10, abs=1e-13)


def _observed_order(errors: list[float]) -> float:
    # least-squares slope of log2(error) against the doubling index; clamps
    # keep an accidental exact hit from producing -inf
    ys = [math.log2(max(e, 1e-18)) for e in errors]
    m = len(ys)
    xs = list(range(m))
    x_mean = sum(xs) / m
    y_mean = sum(ys) / m
    slope = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys)) / sum(
        (x - x_mean) ** 2 for x in xs
    )
    return -slope


def _suite_duality(level: str) -> SuiteResult:
    count = 30 if level == "full" else 5
    sizes = (64, 128, 256, 512, 1024) if level == "full" else (64, 128, 256)
    rng = random.Random(20240712)
    worst_final = 0.0
    min_order = math.inf
    cases = 0
    for _ in range(count):
        f = random_smooth_function(rng)
        g = random_monotone_function(rng)
        a = rng.uniform(-0.5, 0.5)
        b = a + rng.uniform(1.0, 2.0)
        ref_ty = riemann_integral(f, a, b, _REFERENCE_TOL).value
        ref_tau = stieltjes_integral(f, g, a, b, _REFERENCE_TOL).value
        scale_ty = max(abs(ref_ty), 1.0)
        scale_tau = max(abs(ref_tau), 1.0)
        errors_ty = []
        errors_tau = []
        for n in sizes:
            scene = build_scene(f, g, a, b, n=n)
            errors_ty.append(abs(scene.area_ty() - ref_ty) / scale_ty)
            errors_tau.append(abs(scene.area_tau_y() - ref_tau) / scale_tau)
        min_order = min(min_order, _observed_order(errors_ty), _observed_order(errors_tau))
        worst_final = max(worst_final, errors_ty[-1], errors_tau[-1])
        cases += 1
    passed = min_order >= 1.9 and worst_final <= 1e-3
    return SuiteResult("shadow-integral duality", cases, worst_final, 1e-3, passed)


def _suite_animation(level: str) -> SuiteResult:
    grid = ((0.5, "1"), (0.5, "t"), (1.0, "1"), (1.0, "t")) if level == "full" else (
        (0.5, "1"),
        (1.0, "1"),
    )
    frames = 8 if level == "full" else 4
    # the per-frame reference only has to beat the 1e-2 area tolerance
    reference_tol = Tolerance(rel=1e-6, abs=1e-12)
    worst = 0.0
    cases = 0
    for alpha, label in grid:
        f = RealFunction(lambda t: 1.0, "1") if label == "1" else identity_function()
        animation = build_rl_animation(
            f, alpha, 0.0, 1.0, frames=frames, n=256, tol=reference_tol
        )
        for scene, reference in zip(animation.scenes, animation.rl_values):
            worst = max(worst, _rel_err(scene.area_tau_y(), reference))
            cases += 1
        if alpha == 1.0 and label == "1":
            for scene, t_k in zip(animation.scenes, animation.times):
                worst = max(worst, abs(scene.area_tau_y() - t_k) / 1.0)
    return SuiteResult("rl animation", cases, worst, 1e-2, worst <= 1e-2)


def _suite_parser(level: str) -> SuiteResult:
    count = 1000 if level == "full" else 200
    rng = random.Random(20240713)
    failures = 0
    cases = 0
    for source, expected in PRECEDENCE_GOLDENS:
        cases += 1
        if to_source(parse(source)) != expected:
            failures += 1
    for source, offset in SYNTAX_ERROR_CORPUS:
        cases += 1
        try:
            parse(source)
        except ExprSyntaxError as exc:
            if exc.offset != offset:
                failures += 1
        else:
            failures += 1
    for _ in range(count):
        cases += 1
        tree = random_ast(rng)
        if parse(to_source(tree)) != tree:
            failures += 1
    return SuiteResult("parser round-trip", cases, float(failures), 0.0, failures == 0)


_SUITES = (
    _suite_gamma,
    _suite_power_rule,
    _suite_equivalence,
    _suite_semigroup,
    _suite_classical,
    _suite_ratio_path,
    _suite_specialization,
    _suite_duality,
    _suite_animation,
    _suite_parser,
)


def run_suites(level: str = "quick") -> list[SuiteResult]:
    """Run every verification suite at the given level ("quick" or "full")."""
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    return [suite(level) for suite in _SUITES]
