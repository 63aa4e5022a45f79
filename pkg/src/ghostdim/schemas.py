"""Published JSON schemas for command output."""

from __future__ import annotations

import jsonschema

from .errors import InvariantViolation
from .io import ALGEBRA_SCHEMA

_INTS = {"type": "array", "items": {"type": "integer"}}

ENVELOPE = {
    "type": "object",
    "required": ["schema_version", "command", "result"],
    "properties": {
        "schema_version": {"const": 1},
        "command": {"type": "string"},
        "config": {"type": "object"},
        "result": {"type": "object"},
    },
}

BOUND_REPORT = {
    "type": "object",
    "required": ["schema_version", "kind", "algebra", "digest", "lines", "data", "flags"],
    "properties": {
        "schema_version": {"const": 1},
        "kind": {"const": "bound-report"},
        "algebra": ALGEBRA_SCHEMA,
        "digest": {"type": "string"},
        "lines": {"type": "array", "items": {
            "type": "object", "required": ["claim", "value", "backing"]}},
        "data": {"type": "object"},
        "flags": {"type": "object", "properties": {
            "noetherian_source": {"enum": ["preset-theorem", "user-asserted", "unverified"]}}},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

GHOST_CERTIFICATE = {
    "type": "object",
    "required": ["schema_version", "kind", "algebra", "G", "Y", "elements", "s", "window", "tail",
                 "m_min", "condition1", "condition2", "evidence", "verdict"],
    "properties": {
        "schema_version": {"const": 1},
        "kind": {"const": "ghost-certificate"},
        "algebra": ALGEBRA_SCHEMA,
        "elements": {"type": "array", "items": {"type": "object", "required": ["degree", "coords"]}},
        "s": {"type": "integer", "minimum": 1},
        "window": _INTS, "tail": _INTS,
        "condition1": {"type": "array", "items": {"type": "object", "required": ["i", "ranks"],
                                                  "properties": {"ranks": _INTS}}},
        "condition2": {"type": "object", "required": ["ranks", "count"], "properties": {"ranks": _INTS}},
        "evidence": {"enum": ["window", "periodicity-witnessed"]},
        "verdict": {"type": "boolean"},
    },
}

LEVEL_BOUND = {
    "type": "object",
    "required": ["schema_version", "kind", "certified_c", "certificates", "attempts"],
    "properties": {
        "kind": {"const": "level-bound"},
        "certified_c": {"type": "integer", "minimum": 0},
        "certificates": {"type": "array", "items": GHOST_CERTIFICATE},
    },
}

BY_KIND = {"bound-report": BOUND_REPORT, "ghost-certificate": GHOST_CERTIFICATE, "level-bound": LEVEL_BOUND}


def validate_output(doc: dict) -> None:
    """Validate a command envelope and, when typed, its result."""
    try:
        jsonschema.validate(doc, ENVELOPE)
        kind = doc["result"].get("kind")
        if kind in BY_KIND:
            jsonschema.validate(doc["result"], BY_KIND[kind])
    except jsonschema.ValidationError as e:
        raise InvariantViolation(f"output does not match schema: {e.message}") from None
