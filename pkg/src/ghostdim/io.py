"""JSON ingestion and serialization of algebras and modules."""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import numpy as np

from .algebra import (
    Algebra, Module, QuiverPresentation, from_quiver, from_structure, parse_preset, preset,
    regular_module, simple_module, simple_top,
)
from .errors import InputError, InvariantViolation

_TERM = {"type": "array", "prefixItems": [{"type": "integer"}, {"oneOf": [
    {"type": "string"}, {"type": "array", "items": {"type": "string"}}]}],
    "minItems": 2, "maxItems": 2}

ALGEBRA_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "oneOf": [
        {"type": "object", "required": ["kind", "name"], "properties": {
            "kind": {"const": "preset"}, "name": {"type": "string"},
            "params": {"type": "array"}}},
        {"type": "object", "required": ["kind", "vertices", "arrows"], "properties": {
            "kind": {"const": "quiver"},
            "vertices": {"type": "array", "items": {"type": "string"}, "minItems": 1},
            "arrows": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3,
                                                  "items": {"type": "string"}}},
            "relations": {"type": "array", "items": {"type": "array", "items": _TERM}},
            "characteristic": {"type": "integer", "minimum": 0},
            "path_length_bound": {"type": "integer", "minimum": 1},
            "name": {"type": "string"}}},
        {"type": "object", "required": ["kind", "structure_constants", "unit"], "properties": {
            "kind": {"const": "structure"},
            "characteristic": {"type": "integer", "minimum": 0},
            "structure_constants": {"type": "array"},
            "unit": {"type": "array", "items": {"type": "integer"}},
            "radical_basis": {"type": "array"},
            "idempotents": {"type": "array"},
            "labels": {"type": "array", "items": {"type": "string"}},
            "name": {"type": "string"}}},
    ],
}

MODULE_SCHEMA = {
    "oneOf": [
        {"type": "object", "required": ["kind"], "properties": {"kind": {"enum": ["top", "regular"]}}},
        {"type": "object", "required": ["kind", "vertex"], "properties": {
            "kind": {"const": "simple"}, "vertex": {"type": "integer", "minimum": 0}}},
        {"type": "object", "required": ["kind", "action"], "properties": {
            "kind": {"const": "action"}, "action": {"type": "array"}, "label": {"type": "string"},
            "grading": {"type": "array", "items": {"type": "integer"}}}},
    ],
}


def _validate(doc, schema, what: str):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InputError(f"invalid {what} description at {where}: {e.message}") from None


def algebra_from_json(doc: dict) -> Algebra:
    _validate(doc, ALGEBRA_SCHEMA, "algebra")
    try:
        return _algebra_from_json(doc)
    except InvariantViolation as e:
        raise InputError(f"algebra description is invalid: {e}") from None


def _algebra_from_json(doc: dict) -> Algebra:
    kind = doc["kind"]
    if kind == "preset":
        return preset(doc["name"], *doc.get("params", []))
    if kind == "quiver":
        pres = QuiverPresentation(
            vertices=doc["vertices"], arrows=[tuple(a) for a in doc["arrows"]],
            relations=[[(int(c), p) for c, p in rel] for rel in doc.get("relations", [])],
            characteristic=doc.get("characteristic", 2), path_length_bound=doc.get("path_length_bound", 12),
            name=doc.get("name", "quiver algebra"))
        return from_quiver(pres)
    return from_structure(doc)


def load_algebra(path) -> Algebra:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return algebra_from_json(doc)


def algebra_to_json(A: Algebra) -> dict:
    """Preset reference when available, otherwise full structure constants."""
    if "preset" in A.flags:
        return {"kind": "preset", "name": A.flags["preset"], "params": list(A.flags["preset_params"])}
    out = {
        "kind": "structure", "characteristic": A.field.p, "name": A.name,
        "structure_constants": np.asarray(A.mult).astype(int).tolist(),
        "unit": np.asarray(A.unit).astype(int).tolist(),
        "radical_basis": np.asarray(A.radical).T.astype(int).tolist(),
        "idempotents": [np.asarray(e).astype(int).tolist() for e in A.idempotents],
    }
    if A.labels:
        out["labels"] = list(A.labels)
    return out


def module_from_json(A: Algebra, doc: dict) -> Module:
    _validate(doc, MODULE_SCHEMA, "module")
    kind = doc["kind"]
    if kind == "top":
        return simple_top(A)
    if kind == "regular":
        return regular_module(A)
    if kind == "simple":
        if doc["vertex"] >= A.num_vertices:
            raise InputError(f"vertex {doc['vertex']} out of range")
        return simple_module(A, doc["vertex"])
    try:
        grading = np.array(doc["grading"]) if "grading" in doc else None
        return Module(A, A.field.array(doc["action"]), label=doc.get("label", "M"), grading=grading).validate()
    except InvariantViolation as e:
        raise InputError(f"module description is not an A-module: {e}") from None


def module_to_json(m: Module) -> dict:
    A = m.algebra
    for v in range(A.num_vertices):
        if m.dim == 1 and np.array_equal(m.action, simple_module(A, v).action):
            return {"kind": "simple", "vertex": v}
    doc = {"kind": "action", "action": np.asarray(m.action).astype(int).tolist(), "label": m.label}
    if m.grading is not None:
        doc["grading"] = [int(g) for g in m.grading]
    return doc


def parse_module_spec(A: Algebra, text: str) -> Module:
    """``top``, ``regular``, ``simple:v`` or a path to a JSON module description."""
    if text == "top":
        return simple_top(A)
    if text == "regular":
        return regular_module(A)
    if text.startswith("simple:"):
        try:
            return module_from_json(A, {"kind": "simple", "vertex": int(text.split(":", 1)[1])})
        except ValueError:
            raise InputError(f"bad module spec {text!r}") from None
    p = Path(text)
    if not p.exists():
        raise InputError(f"unknown module spec {text!r}")
    try:
        return module_from_json(A, json.loads(p.read_text()))
    except json.JSONDecodeError as e:
        raise InputError(f"{p}: JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None


def algebra_from_args(preset_text: str | None, path: str | None) -> Algebra:
    if bool(preset_text) == bool(path):
        raise InputError("give exactly one of --preset or --algebra")
    return parse_preset(preset_text) if preset_text else load_algebra(path)


def dumps(doc) -> str:
    """Deterministic JSON rendering."""
    return json.dumps(doc, sort_keys=True, indent=2)
