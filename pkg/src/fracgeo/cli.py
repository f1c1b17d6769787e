"""Command-line front end: a thin client over the service-layer handlers.

Each subcommand builds the same pydantic request the HTTP API accepts, calls
the handler in process, and formats the response: human-readable text on
stdout (10 significant digits) or a machine format chosen by the ``--out``
extension (JSON scene, OBJ mesh, CSV area report; 17 significant digits).

Exit codes: 0 success, 1 mathematical/domain failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .api import handlers
from .api.models import (
    AnimateRequest,
    DeriveRequest,
    IntegrateRequest,
    SceneRequest,
    VerifyRequest,
)
from .errors import ExprSyntaxError, FracGeoError
from .expr import parse as parse_expression

USAGE_EXIT = 2
MATH_EXIT = 1


class UsageError(Exception):
    """Bad flags or malformed flag values; reported with the usage line."""


def _fmt(value: float) -> str:
    return format(value, ".10g")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracgeo",
        description=(
            "Fractional-order and Stieltjes-type integrals and derivatives with "
            "their fence/shadow geometry."
        ),
    )
    parser.add_argument("--version", action="version", version=f"fracgeo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    integrate = sub.add_parser("integrate", help="evaluate an integral operator")
    integrate.add_argument("--kind", required=True, choices=("riemann", "stieltjes", "rl"))
    integrate.add_argument("--method", choices=("stieltjes", "kernel"), default="stieltjes",
                           help="route for --kind rl")
    integrate.add_argument("--f", required=True, help="integrand expression in t")
    integrate.add_argument("--g", help="integrator expression (stieltjes)")
    integrate.add_argument("--alpha", type=float, help="order (rl)")
    integrate.add_argument("--a", type=float, default=0.0, help="lower limit")
    integrate.add_argument("--b", type=float, help="upper limit (riemann/stieltjes)")
    integrate.add_argument("--t", type=float, help="evaluation point (rl)")
    integrate.add_argument("--tol-rel", type=float, default=1e-8)
    integrate.add_argument("--tol-abs", type=float, default=1e-12)

    derive = sub.add_parser("derive", help="evaluate a derivative operator")
    derive.add_argument("--kind", required=True,
                        choices=("classical", "stieltjes", "path", "fractal"))
    derive.add_argument("--f", required=True, help="function expression in t")
    derive.add_argument("--g", help="generator expression (stieltjes/path)")
    derive.add_argument("--alpha", type=float, help="order (fractal)")
    derive.add_argument("--t", type=float, required=True, help="evaluation point")
    derive.add_argument("--a", type=float, default=0.0, help="path base point")
    derive.add_argument("--tol", type=float, default=1e-8)

    scene = sub.add_parser("scene", help="build one fence/shadow scene")
    scene.add_argument("--f", required=True)
    scene.add_argument("--g", required=True)
    scene.add_argument("--a", type=float, default=0.0)
    scene.add_argument("--b", type=float, required=True)
    scene.add_argument("--n", type=int, default=256)
    scene.add_argument("--t-star", type=float, default=None)
    scene.add_argument("--out", help="output path (.json scene, .obj mesh)")

    animate = sub.add_parser("animate", help="build the moving-fence animation")
    animate.add_argument("--f", required=True)
    animate.add_argument("--alpha", type=float, required=True)
    animate.add_argument("--a", type=float, default=0.0)
    animate.add_argument("--b", type=float, required=True)
    animate.add_argument("--frames", type=int, default=24)
    animate.add_argument("--n", type=int, default=256)
    animate.add_argument("--tol-rel", type=float, default=1e-8)
    animate.add_argument("--tol-abs", type=float, default=1e-12)
    animate.add_argument("--out", help="output path (.json, .obj, .csv areas)")

    verify = sub.add_parser("verify", help="run the consistency suites")
    level = verify.add_mutually_exclusive_group()
    level.add_argument("--quick", dest="level", action="store_const", const="quick")
    level.add_argument("--full", dest="level", action="store_const", const="full")
    verify.set_defaults(level="quick")

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _check_expressions(args: argparse.Namespace) -> None:
    """Surface malformed expressions as usage errors naming the flag."""
    for flag in ("f", "g"):
        source = getattr(args, flag, None)
        if source is not None:
            try:
                parse_expression(source)
            except ExprSyntaxError as exc:
                raise UsageError(f"--{flag}: {exc}") from exc


def _cmd_integrate(args: argparse.Namespace) -> int:
    request = IntegrateRequest(
        kind=args.kind,
        method=args.method,
        f=args.f,
        g=args.g,
        alpha=args.alpha,
        a=args.a,
        b=args.b,
        t=args.t,
        tol_rel=args.tol_rel,
        tol_abs=args.tol_abs,
    )
    response = handlers.integrate(request)
    print(f"value = {_fmt(response.value)}")
    print(f"error_estimate = {_fmt(response.error_estimate)}")
    print(f"panels = {response.panels}")
    return 0


def _cmd_derive(args: argparse.Namespace) -> int:
    request = DeriveRequest(
        kind=args.kind,
        f=args.f,
        g=args.g,
        alpha=args.alpha,
        t=args.t,
        a=args.a,
        tol=args.tol,
    )
    response = handlers.derive(request)
    print(f"value = {_fmt(response.value)}")
    print(f"step_used = {_fmt(response.step_used)}")
    print(f"converged = {'true' if response.converged else 'false'}")
    return 0


def _write_output(path: str, text: str) -> None:
    Path(path).write_bytes(text.encode("utf-8"))


def _cmd_scene(args: argparse.Namespace) -> int:
    from .sceneio import dumps_json, scene_obj

    request = SceneRequest(
        f=args.f, g=args.g, a=args.a, b=args.b, n=args.n, t_star=args.t_star
    )
    response = handlers.scene(request)
    document = response.model_dump(exclude_none=True)
    if args.out:
        suffix = Path(args.out).suffix.lower()
        if suffix == ".json":
            _write_output(args.out, dumps_json(document))
        elif suffix == ".obj":
            _write_output(args.out, scene_obj(document))
        else:
            raise UsageError(
                f"--out: unsupported extension {suffix!r} for scene (use .json or .obj)"
            )
        return 0
    meta = document["meta"]
    print(f"n = {meta['n']}")
    print(f"t_star = {_fmt(meta['t_star'])}")
    from .geometry import shoelace_area

    print(f"area_ty = {_fmt(shoelace_area(document['shadow_ty']))}")
    print(f"area_tau_y = {_fmt(shoelace_area(document['shadow_tau_y']))}")
    for tangent in document["tangents"]:
        slope = tangent.get("slope")
        slope_text = _fmt(slope) if slope is not None else "degenerate"
        print(f"tangent[{tangent['plane']}] slope = {slope_text}")
    return 0


def _cmd_animate(args: argparse.Namespace) -> int:
    from .sceneio import animation_csv, animation_obj, dumps_json

    request = AnimateRequest(
        f=args.f,
        alpha=args.alpha,
        a=args.a,
        b=args.b,
        frames=args.frames,
        n=args.n,
        tol_rel=args.tol_rel,
        tol_abs=args.tol_abs,
    )
    response = handlers.animate(request)
    document = response.model_dump(exclude_none=True)
    if args.out:
        suffix = Path(args.out).suffix.lower()
        if suffix == ".json":
            _write_output(args.out, dumps_json(document))
        elif suffix == ".obj":
            _write_output(args.out, animation_obj(document))
        elif suffix == ".csv":
            _write_output(args.out, animation_csv(document))
        else:
            raise UsageError(
                f"--out: unsupported extension {suffix!r} for animate "
                "(use .json, .obj or .csv)"
            )
        return 0
    print("frame,t,area_tau_y,rl_value")
    for row in document["areas"]:
        print(
            f"{row['frame']},{_fmt(row['t'])},{_fmt(row['area_tau_y'])},"
            f"{_fmt(row['rl_value'])}"
        )
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    response = handlers.verify(VerifyRequest(level=args.level))
    header = f"{'suite':28s} {'cases':>5s} {'max_error':>12s} {'tolerance':>10s} {'status':>6s}"
    print(header)
    for row in response.rows:
        status = "pass" if row.passed else "FAIL"
        print(
            f"{row.suite:28s} {row.cases:5d} {row.max_error:12.3e} "
            f"{row.tolerance:10.1e} {status:>6s}"
        )
    passed = sum(1 for row in response.rows if row.passed)
    verdict = "PASS" if response.all_passed else "FAIL"
    print(f"result: {verdict} ({passed}/{len(response.rows)} suites)")
    return 0 if response.all_passed else MATH_EXIT


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "integrate": _cmd_integrate,
    "derive": _cmd_derive,
    "scene": _cmd_scene,
    "animate": _cmd_animate,
    "verify": _cmd_verify,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_expressions(args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"usage: fracgeo {args.command} ...", file=sys.stderr)
        return USAGE_EXIT
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(piece) for piece in first.get("loc", ()))
        message = first.get("msg", str(exc))
        flag = f"--{location}" if location else "arguments"
        print(f"error: {flag}: {message}", file=sys.stderr)
        print(f"usage: fracgeo {args.command} ...", file=sys.stderr)
        return USAGE_EXIT
    except (FracGeoError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MATH_EXIT


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
