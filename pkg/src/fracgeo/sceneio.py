"""Deterministic scene serialization: JSON documents, OBJ meshes, CSV areas.

Every number is written with 17 significant digits so it reparses to the
exact same double; all output uses LF line endings and fixed key order, which
makes repeated runs byte-identical.
"""

from __future__ import annotations

import json
import math

from .geometry import FenceAnimation, FenceScene

__all__ = [
    "animation_csv",
    "animation_document",
    "animation_obj",
    "dumps_json",
    "format_number",
    "scene_document",
    "scene_obj",
]


def format_number(x: float) -> str:
    """17-significant-digit decimal form; round-trips to the same double."""
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    return format(float(x), ".17g")


def scene_document(scene: FenceScene, tool_version: str) -> dict:
    """Plain-data form of a scene, in the fixed key order of the file format."""
    meta: dict = {}
    if scene.alpha is not None:
        meta["alpha"] = scene.alpha
    meta.update(
        {
            "a": scene.a,
            "b": scene.b,
            "n": scene.n,
            "t_star": scene.t_star,
            "tool_version": tool_version,
        }
    )
    tangents = []
    for tangent in scene.tangents:
        entry: dict = {"plane": tangent.plane, "point": list(tangent.point)}
        if tangent.slope is not None:
            entry["slope"] = tangent.slope
        tangents.append(entry)
    return {
        "meta": meta,
        "fence": [list(v) for v in scene.fence_top],
        "shadow_ty": [list(v) for v in scene.shadow_ty],
        "shadow_tau_y": [list(v) for v in scene.shadow_tau_y],
        "tangents": tangents,
    }


def animation_document(animation: FenceAnimation, tool_version: str) -> dict:
    frames = [scene_document(scene, tool_version) for scene in animation.scenes]
    areas = [
        {
            "frame": k,
            "t": animation.times[k],
            "area_ty": animation.scenes[k].area_ty(),
            "area_tau_y": animation.scenes[k].area_tau_y(),
            "rl_value": animation.rl_values[k],
        }
        for k in range(animation.frames)
    ]
    return {
        "meta": {
            "alpha": animation.alpha,
            "a": animation.a,
            "b": animation.b,
            "frames": animation.frames,
            "n": animation.n,
            "tool_version": tool_version,
        },
        "frames": frames,
        "areas": areas,
    }


def _is_scalar(value) -> bool:
    return isinstance(value, (int, float, str))


def _emit(value, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, bool):
        raise ValueError("booleans do not appear in scene documents")
    if isinstance(value, (int, float)):
        return format_number(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f"{pad}  {json.dumps(key)}: {_emit(item, indent + 1)}"
            for key, item in value.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if all(_is_scalar(item) for item in value):
            return "[" + ", ".join(_emit(item, indent) for item in value) + "]"
        inner = ",\n".join(f"{pad}  {_emit(item, indent + 1)}" for item in value)
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_json(document: dict) -> str:
    """Serialize a scene/animation document; LF endings, trailing newline."""
    return _emit(document, 0) + "\n"


def _obj_lines(doc: dict, name: str, offset: int) -> tuple[list[str], int]:
    # two vertices per grid point: base (y=0) below the top edge vertex
    lines = [f"o {name}"]
    fence = doc["fence"]
    for t, tau, y in fence:
        lines.append(f"v {format_number(t)} {format_number(tau)} {format_number(0.0)}")
        lines.append(f"v {format_number(t)} {format_number(tau)} {format_number(y)}")
    for i in range(len(fence) - 1):
        base0 = offset + 2 * i + 1
        top0 = base0 + 1
        base1 = base0 + 2
        top1 = base0 + 3
        lines.append(f"f {base0} {base1} {top1} {top0}")
    return lines, offset + 2 * len(fence)


def scene_obj(doc: dict) -> str:
    """Wavefront OBJ mesh of one scene's fence (axis order t, tau, y)."""
    lines, _ = _obj_lines(doc, "fence", 0)
    return "\n".join(lines) + "\n"


def animation_obj(doc: dict) -> str:
    """Wavefront OBJ with one object per animation frame."""
    lines: list[str] = []
    offset = 0
    for k, frame in enumerate(doc["frames"]):
        frame_lines, offset = _obj_lines(frame, f"frame_{k:03d}", offset)
        lines.extend(frame_lines)
    return "\n".join(lines) + "\n"


def animation_csv(doc: dict) -> str:
    """Per-frame area report with the fractional-integral reference column."""
    lines = ["frame,t,area_ty,area_tau_y,rl_value"]
    for row in doc["areas"]:
        lines.append(
            ",".join(
                (
                    str(row["frame"]),
                    format_number(row["t"]),
                    format_number(row["area_ty"]),
                    format_number(row["area_tau_y"]),
                    format_number(row["rl_value"]),
                )
            )
        )
    return "\n".join(lines) + "\n"
