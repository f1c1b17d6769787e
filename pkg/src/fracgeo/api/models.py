"""Pydantic request/response models shared by the HTTP service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class IntegrateRequest(BaseModel):
    kind: Literal["riemann", "stieltjes", "rl"]
    f: str
    g: Optional[str] = None
    alpha: Optional[float] = Field(default=None, gt=0.0)
    method: Literal["stieltjes", "kernel"] = "stieltjes"
    a: float = 0.0
    b: Optional[float] = None
    t: Optional[float] = None
    tol_rel: float = 1e-8
    tol_abs: float = 1e-12

    @model_validator(mode="after")
    def _check_kind_arguments(self) -> "IntegrateRequest":
        if self.kind == "rl":
            if self.alpha is None:
                raise ValueError("alpha is required for the fractional integral")
            if self.t is None:
                raise ValueError("t (evaluation point) is required for the fractional integral")
            if self.t <= self.a:
                raise ValueError("t must exceed the lower limit a")
        else:
            if self.b is None:
                raise ValueError(f"b (upper limit) is required for kind={self.kind!r}")
            if self.b < self.a:
                raise ValueError("interval must be ordered: a <= b")
            if self.kind == "stieltjes" and self.g is None:
                raise ValueError("g is required for the Stieltjes integral")
        return self


class IntegrateResponse(BaseModel):
    value: float
    error_estimate: float
    panels: int


class DeriveRequest(BaseModel):
    kind: Literal["classical", "stieltjes", "path", "fractal"]
    f: str
    g: Optional[str] = None
    alpha: Optional[float] = Field(default=None, gt=0.0)
    t: float
    a: float = 0.0
    tol: float = Field(default=1e-8, gt=0.0)

    @model_validator(mode="after")
    def _check_kind_arguments(self) -> "DeriveRequest":
        if self.kind in ("stieltjes", "path") and self.g is None:
            raise ValueError(f"g is required for kind={self.kind!r}")
        if self.kind == "fractal":
            if self.alpha is None:
                raise ValueError("alpha is required for the fractal derivative")
            if self.t <= 0.0:
                raise ValueError("the fractal derivative requires t > 0")
        if self.kind == "path" and self.t <= self.a:
            raise ValueError("the path derivative requires t > a")
        return self


class DeriveResponse(BaseModel):
    value: float
    step_used: float
    converged: bool
    sequence: list[tuple[float, float]]


class SceneRequest(BaseModel):
    f: str
    g: str
    a: float
    b: float
    n: int = Field(default=256, ge=8)
    t_star: Optional[float] = None

    @model_validator(mode="after")
    def _check_interval(self) -> "SceneRequest":
        if self.b <= self.a:
            raise ValueError("scene requires a < b")
        if self.t_star is not None and not self.a <= self.t_star <= self.b:
            raise ValueError("t_star must lie inside [a, b]")
        return self


class SceneMeta(BaseModel):
    alpha: Optional[float] = None
    a: float
    b: float
    n: int
    t_star: float
    tool_version: str


class TangentModel(BaseModel):
    plane: Literal["ty", "fence", "tau_y"]
    point: list[float]
    slope: Optional[float] = None


class SceneModel(BaseModel):
    meta: SceneMeta
    fence: list[list[float]]
    shadow_ty: list[list[float]]
    shadow_tau_y: list[list[float]]
    tangents: list[TangentModel]


class AnimateRequest(BaseModel):
    f: str
    alpha: float = Field(gt=0.0)
    a: float = 0.0
    b: float
    frames: int = Field(default=24, ge=1)
    n: int = Field(default=256, ge=8)
    tol_rel: float = 1e-8
    tol_abs: float = 1e-12

    @model_validator(mode="after")
    def _check_interval(self) -> "AnimateRequest":
        if self.b <= self.a:
            raise ValueError("animation requires a < b")
        return self


class AnimationMeta(BaseModel):
    alpha: float
    a: float
    b: float
    frames: int
    n: int
    tool_version: str


class AreaRow(BaseModel):
    frame: int
    t: float
    area_ty: float
    area_tau_y: float
    rl_value: float


class AnimationModel(BaseModel):
    meta: AnimationMeta
    frames: list[SceneModel]
    areas: list[AreaRow]


class VerifyRequest(BaseModel):
    level: Literal["quick", "full"] = "quick"


class SuiteRow(BaseModel):
    suite: str
    cases: int
    max_error: float
    tolerance: float
    passed: bool


class VerifyResponse(BaseModel):
    level: Literal["quick", "full"]
    rows: list[SuiteRow]
    all_passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str
