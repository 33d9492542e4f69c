"""JSON file formats for fixed data, skeletons, structures and class tables."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Union

import jsonschema

from .classify import (
    FourPointStructure,
    ThreePointStructure,
    generate_four,
    generate_three,
)
from .errors import InputError
from .f2algebra import Character, CharMultiset
from .skeleton import ColoredSkeleton, FixedData

_BITS = {"type": "string", "pattern": "^[01]+$"}

FIXED_DATA_SCHEMA = {
    "type": "object",
    "required": ["k", "n", "vertices"],
    "additionalProperties": False,
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 0},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "chars"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string", "minLength": 1},
                    "chars": {"type": "array", "items": _BITS},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["u", "v", "color"],
                "additionalProperties": False,
                "properties": {"u": {"type": "string"}, "v": {"type": "string"}, "color": _BITS},
            },
        },
    },
}

STRUCTURE_SCHEMA = {
    "type": "object",
    "required": ["kind", "k", "ell", "basis"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["three", "four"]},
        "k": {"type": "integer", "minimum": 1},
        "ell": {"type": "integer", "minimum": 0},
        "basis": {"type": "array", "items": _BITS},
        "v": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

CLASS_TABLE_SCHEMA = {
    "type": "object",
    "required": ["k", "n", "classes"],
    "additionalProperties": False,
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 0},
        "classes": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "array", "items": _BITS}},
        },
    },
}


class FileFormatError(InputError):
    """A data file does not match its schema; the message names the field."""


Structure = Union[ThreePointStructure, FourPointStructure]


def _where(path) -> str:
    return "/".join(str(p) for p in path) or "<root>"


def _check(obj: Any, schema: dict, source: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        raise FileFormatError(f"{source}: field {_where(first.absolute_path)}: {first.message}")


def _parse_text(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _char(text: str, k: int, source: str, where: str) -> Character:
    if len(text) != k:
        raise FileFormatError(f"{source}: field {where}: bitstring {text!r} has length {len(text)}, expected k={k}")
    if "1" not in text:
        raise FileFormatError(f"{source}: field {where}: zero character is not allowed")
    return Character.parse(text)


# ---------------------------------------------------------------- conversion


def fixed_data_from_json(obj: Any, source: str = "<data>") -> FixedData:
    _check(obj, FIXED_DATA_SCHEMA, source)
    k, n = obj["k"], obj["n"]
    vertices = []
    for i, vertex in enumerate(obj["vertices"]):
        chars = [
            _char(t, k, source, f"vertices/{i}/chars/{j}") for j, t in enumerate(vertex["chars"])
        ]
        if len(chars) != n:
            raise FileFormatError(f"{source}: field vertices/{i}/chars: {len(chars)} characters, expected n={n}")
        vertices.append((vertex["label"], CharMultiset(chars, k)))
    try:
        return FixedData(k, n, vertices)
    except InputError as exc:
        raise FileFormatError(f"{source}: {exc}") from None


def fixed_data_to_json(D: FixedData) -> dict:
    return {
        "k": D.k,
        "n": D.n,
        "vertices": [{"label": label, "chars": S.to_strings()} for label, S in D.vertices],
    }


def skeleton_from_json(obj: Any, source: str = "<data>") -> ColoredSkeleton:
    D = fixed_data_from_json(obj, source)
    if "edges" not in obj:
        raise FileFormatError(f"{source}: field edges: missing")
    edges = []
    for i, e in enumerate(obj["edges"]):
        color = _char(e["color"], D.k, source, f"edges/{i}/color")
        for end in ("u", "v"):
            if e[end] not in D.labels:
                raise FileFormatError(f"{source}: field edges/{i}/{end}: unknown label {e[end]!r}")
        edges.append((e["u"], e["v"], color))
    return ColoredSkeleton(D, edges)


def skeleton_to_json(G: ColoredSkeleton) -> dict:
    out = fixed_data_to_json(G.fixed_data)
    out["edges"] = [{"u": e.u, "v": e.v, "color": str(e.color)} for e in G.edges]
    return out


def structure_from_json(obj: Any, source: str = "<data>") -> Structure:
    _check(obj, STRUCTURE_SCHEMA, source)
    k = obj["k"]
    basis = [_char(t, k, source, f"basis/{i}") for i, t in enumerate(obj["basis"])]
    try:
        if obj["kind"] == "three":
            if "v" in obj:
                raise FileFormatError(f"{source}: field v: not allowed for kind three")
            return ThreePointStructure(k, obj["ell"], tuple(basis))
        return FourPointStructure(k, obj["ell"], tuple(basis), tuple(obj.get("v", ())))
    except FileFormatError:
        raise
    except InputError as exc:
        raise FileFormatError(f"{source}: {exc}") from None


def class_table_from_json(obj: Any, source: str = "<data>") -> list[FixedData]:
    _check(obj, CLASS_TABLE_SCHEMA, source)
    k, n = obj["k"], obj["n"]
    out = []
    for i, row in enumerate(obj["classes"]):
        vertices = []
        for j, chars in enumerate(row):
            parsed = [_char(t, k, source, f"classes/{i}/{j}/{c}") for c, t in enumerate(chars)]
            if len(parsed) != n:
                raise FileFormatError(f"{source}: field classes/{i}/{j}: expected {n} characters")
            vertices.append(("pqrstuvw"[j], CharMultiset(parsed, k)))
        out.append(FixedData(k, n, vertices))
    return out


def to_json(value) -> dict:
    if isinstance(value, ColoredSkeleton):
        return skeleton_to_json(value)
    if isinstance(value, FixedData):
        return fixed_data_to_json(value)
    if isinstance(value, (ThreePointStructure, FourPointStructure)):
        return value.to_json()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(value) -> str:
    """Canonical text: one top-level key per line, one list entry per line."""
    doc = to_json(value)
    lines = ["{"]
    for i, (key, item) in enumerate(doc.items()):
        comma = "," if i < len(doc) - 1 else ""
        if isinstance(item, list) and item and isinstance(item[0], dict):
            lines.append(f"  {json.dumps(key)}: [")
            for j, entry in enumerate(item):
                tail = "," if j < len(item) - 1 else ""
                lines.append(f"    {json.dumps(entry)}{tail}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(item)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- files


def read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror}") from None
    return _parse_text(text, str(path))


def load_any(path):
    """Skeleton if the file has edges, structure if it has a kind, else fixed data."""
    obj = read_json(path)
    source = str(path)
    if isinstance(obj, dict) and "kind" in obj:
        return structure_from_json(obj, source)
    if isinstance(obj, dict) and "edges" in obj:
        return skeleton_from_json(obj, source)
    return fixed_data_from_json(obj, source)


def load_fixed_data(path) -> FixedData:
    """Fixed data from a data, skeleton or structure file."""
    value = load_any(path)
    if isinstance(value, ColoredSkeleton):
        return value.fixed_data
    if isinstance(value, ThreePointStructure):
        return generate_three(value)
    if isinstance(value, FourPointStructure):
        return generate_four(value)
    return value


def load_skeleton(path) -> ColoredSkeleton:
    return skeleton_from_json(read_json(path), str(path))


def load_structure(path) -> Structure:
    return structure_from_json(read_json(path), str(path))


def load_class_table(path) -> list[FixedData]:
    return class_table_from_json(read_json(path), str(path))


def store(path, value) -> None:
    Path(path).write_text(dumps(value))


def fixture_path(name: str) -> Path:
    """Path of a bundled sample file."""
    path = Path(str(resources.files("z2actions") / "fixtures" / name))
    if not path.exists():
        raise FileNotFoundError(name)
    return path
