"""JSON file formats and loaders."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .assembler import AdmissibleCoverData
from .curvebackend import RamifiedP1Cover, default_positions, smallest_field_degree
from .errors import InputError
from .fields import gf
from .graphcover import CoverSpec
from .padic import DigitContext, MarkedDivisor
from .semigraph import CurveModel, SemiGraph

__all__ = [
    "CURVE_SCHEMA",
    "COVER_SCHEMA",
    "DIVISOR_SCHEMA",
    "NODE_DATA_SCHEMA",
    "COMPONENT_SCHEMA",
    "read_json",
    "load_curve",
    "load_cover",
    "load_divisor",
    "load_node_data",
    "load_component",
    "curve_from_json",
    "component_from_json",
]

_ID = {"type": "string", "minLength": 1}
_NONNEG = {"type": "integer", "minimum": 0}
_INT_MAP = {"type": "object", "additionalProperties": {"type": "integer"}}

CURVE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["p", "vertices"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "require_stable": {"type": "boolean"},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id"],
                "additionalProperties": False,
                "properties": {"id": _ID, "genus": _NONNEG, "p_rank": _NONNEG},
            },
        },
        "closed_edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "ends"],
                "additionalProperties": False,
                "properties": {"id": _ID, "ends": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2}},
            },
        },
        "open_edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "vertex"],
                "additionalProperties": False,
                "properties": {"id": _ID, "vertex": _ID},
            },
        },
    },
}

COVER_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["n"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "vertex_stab": _INT_MAP,
        "edge_stab": _INT_MAP,
        "voltage": _INT_MAP,
    },
}

DIVISOR_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["p", "t", "coeffs"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "t": {"type": "integer", "minimum": 1},
        "coeffs": _INT_MAP,
    },
}

NODE_DATA_SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "properties": {"branch_exps": _INT_MAP, "voltage": _INT_MAP, "component_gammas": _INT_MAP},
}

COMPONENT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["p", "t", "exps"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "t": {"type": "integer", "minimum": 1},
        "field_degree": {"type": "integer", "minimum": 1},
        "points": {"type": "array", "items": {"type": "string"}},
        "exps": {"type": "array", "items": _NONNEG},
    },
}


def read_json(path: str | Path, schema: dict[str, Any] | None = None) -> Any:
    """Parse a JSON file; errors carry the line and column of the problem."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if schema is not None:
        try:
            jsonschema.validate(data, schema)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
            raise InputError(f"{path}: {where}: {exc.message}") from exc
    return data


def curve_from_json(data: dict) -> CurveModel:
    jsonschema.validate(data, CURVE_SCHEMA)
    vertices = [v["id"] for v in data["vertices"]]
    closed = {}
    for e in data.get("closed_edges", []):
        if e["id"] in closed:
            raise InputError(f"duplicate closed edge id {e['id']!r}")
        closed[e["id"]] = tuple(e["ends"])
    opened = {}
    for e in data.get("open_edges", []):
        if e["id"] in opened:
            raise InputError(f"duplicate open edge id {e['id']!r}")
        opened[e["id"]] = e["vertex"]
    graph = SemiGraph(vertices, closed, opened)
    genus = {v["id"]: v.get("genus", 0) for v in data["vertices"]}
    ranks = {v["id"]: v.get("p_rank", genus[v["id"]]) for v in data["vertices"]}
    return CurveModel(graph, genus, data["p"], ranks, data.get("require_stable", True))


def load_curve(path: str | Path) -> CurveModel:
    return curve_from_json(read_json(path, CURVE_SCHEMA))


def load_cover(path: str | Path, base: SemiGraph) -> CoverSpec:
    data = read_json(path, COVER_SCHEMA)
    return CoverSpec(base, data["n"], data.get("vertex_stab"), data.get("edge_stab"), data.get("voltage"))


def load_divisor(path: str | Path) -> MarkedDivisor:
    data = read_json(path, DIVISOR_SCHEMA)
    return MarkedDivisor(DigitContext(data["p"], data["t"]), data["coeffs"])


def load_node_data(
    path: str | Path, curve: CurveModel, divisor: MarkedDivisor
) -> tuple[AdmissibleCoverData, dict[str, int] | None]:
    """Admissible data from a divisor plus node exponents; also returns supplied component invariants."""
    data = read_json(path, NODE_DATA_SCHEMA)
    if set(divisor.coeffs) != set(curve.graph.open_edges):
        raise InputError("the divisor must list exactly the marked points of the curve")
    exps = dict(divisor.coeffs)
    for b, x in data.get("branch_exps", {}).items():
        if b in exps:
            raise InputError(f"branch {b!r} is a marked point; set it in the divisor file")
        exps[b] = x
    return AdmissibleCoverData(curve, divisor.ctx, exps, data.get("voltage")), data.get("component_gammas")


def load_component(path: str | Path) -> RamifiedP1Cover:
    data = read_json(path, COMPONENT_SCHEMA)
    return component_from_json(data)


def component_from_json(data: dict) -> RamifiedP1Cover:
    p, exps = data["p"], data["exps"]
    ctx = DigitContext(p, data["t"])
    names = data.get("points")
    if names is None:
        if "field_degree" in data:
            raise InputError("field_degree needs explicit points")
        field, points = default_positions(p, len(exps))
        return RamifiedP1Cover(ctx, field, points, exps)
    if len(names) != len(exps):
        raise InputError("points and exps must have the same length")
    field = gf(p, data.get("field_degree", smallest_field_degree(p, len(names))))
    return RamifiedP1Cover(ctx, field, [field.parse_point(s) for s in names], exps)
