"""FastAPI application wrapping the compute handlers."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import FracGeoError
from . import handlers
from .models import (
    AnimateRequest,
    AnimationModel,
    DeriveRequest,
    DeriveResponse,
    HealthResponse,
    IntegrateRequest,
    IntegrateResponse,
    SceneModel,
    SceneRequest,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="fracgeo",
        version=__version__,
        description=(
            "Fractional-order and Stieltjes-type integrals and derivatives, "
            "plus the fence/shadow scenes that interpret them."
        ),
    )

    @app.exception_handler(FracGeoError)
    async def computational_error(request: Request, exc: FracGeoError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": str(exc), "error_type": type(exc).__name__},
        )

    @app.exception_handler(OverflowError)
    async def overflow_error(request: Request, exc: OverflowError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": str(exc), "error_type": "OverflowError"},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/integrate", response_model=IntegrateResponse)
    def integrate(request: IntegrateRequest) -> IntegrateResponse:
        return handlers.integrate(request)

    @app.post("/derive", response_model=DeriveResponse)
    def derive(request: DeriveRequest) -> DeriveResponse:
        return handlers.derive(request)

    @app.post("/scene", response_model=SceneModel)
    def scene(request: SceneRequest) -> SceneModel:
        return handlers.scene(request)

    @app.post("/animate", response_model=AnimationModel)
    def animate(request: AnimateRequest) -> AnimationModel:
        return handlers.animate(request)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(request: VerifyRequest) -> VerifyResponse:
        return handlers.verify(request)

    return app


app = create_app()
