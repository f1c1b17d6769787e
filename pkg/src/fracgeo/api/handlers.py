"""Request handlers: the single compute layer behind HTTP routes and the CLI."""

from __future__ import annotations

from .. import __version__
from ..derivatives import (
    classical_derivative,
    fractal_derivative,
    path_derivative,
    stieltjes_derivative,
)
from ..expr import function_from_source
from ..fractional import FractionalIntegralSpec, rl_integral_kernel, rl_integral_stieltjes
from ..geometry import build_rl_animation, build_scene
from ..quadrature import Tolerance, riemann_integral, stieltjes_integral
from ..sceneio import animation_document, scene_document
from ..special import Order
from ..verify import run_suites
from .models import (
    AnimateRequest,
    AnimationModel,
    DeriveRequest,
    DeriveResponse,
    IntegrateRequest,
    IntegrateResponse,
    SceneModel,
    SceneRequest,
    SuiteRow,
    VerifyRequest,
    VerifyResponse,
)


def integrate(request: IntegrateRequest) -> IntegrateResponse:
    tol = Tolerance(rel=request.tol_rel, abs=request.tol_abs)
    f = function_from_source(request.f)
    if request.kind == "riemann":
        result = riemann_integral(f, request.a, request.b, tol)
    elif request.kind == "stieltjes":
        g = function_from_source(request.g)
        result = stieltjes_integral(f, g, request.a, request.b, tol)
    else:
        spec = FractionalIntegralSpec(Order(request.alpha), request.a, request.t, f)
        if request.method == "kernel":
            result = rl_integral_kernel(spec, tol)
        else:
            result = rl_integral_stieltjes(spec, tol)
    return IntegrateResponse(
        value=result.value, error_estimate=result.error_estimate, panels=result.panels
    )


def derive(request: DeriveRequest) -> DeriveResponse:
    f = function_from_source(request.f)
    if request.kind == "classical":
        result = classical_derivative(f, request.t, request.tol)
    elif request.kind == "stieltjes":
        g = function_from_source(request.g)
        result = stieltjes_derivative(f, g, request.t, request.tol)
    elif request.kind == "path":
        g = function_from_source(request.g)
        result = path_derivative(f, g, request.a, request.t, request.tol)
    else:
        result = fractal_derivative(f, request.alpha, request.t, request.tol)
    return DeriveResponse(
        value=result.value,
        step_used=result.step_used,
        converged=result.converged,
        sequence=list(result.sequence),
    )


def scene(request: SceneRequest) -> SceneModel:
    f = function_from_source(request.f)
    g = function_from_source(request.g)
    built = build_scene(f, g, request.a, request.b, n=request.n, t_star=request.t_star)
    return SceneModel.model_validate(scene_document(built, __version__))


def animate(request: AnimateRequest) -> AnimationModel:
    f = function_from_source(request.f)
    tol = Tolerance(rel=request.tol_rel, abs=request.tol_abs)
    built = build_rl_animation(
        f, request.alpha, request.a, request.b, frames=request.frames, n=request.n, tol=tol
    )
    return AnimationModel.model_validate(animation_document(built, __version__))


def verify(request: VerifyRequest) -> VerifyResponse:
    rows = [
        SuiteRow(
            suite=result.name,
            cases=result.cases,
            max_error=result.max_error,
            tolerance=result.tolerance,
            passed=result.passed,
        )
        for result in run_suites(request.level)
    ]
    return VerifyResponse(
        level=request.level, rows=rows, all_passed=all(row.passed for row in rows)
    )
