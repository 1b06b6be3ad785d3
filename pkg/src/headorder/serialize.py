"""JSON schemas for the typed values and their round-trip (de)serialization.

Every document carries a "type" discriminator and a "schema_version".
Serialization is deterministic: keys are emitted in sorted order and all
values are plain integers, strings, lists and objects.
"""

from __future__ import annotations

import json

from .amalgam import AmalgamBlock, GluingConstraint, validate_amalgam
from .brauer import PlanarBrauerTree, validate_tree
from .circulant import CirculantState
from .errors import HeadOrderError, SchemaError
from .exponent import ExponentOrder, validate_order

SCHEMA_VERSION = 1


def _need(doc, key, path):
    if key not in doc:
        raise SchemaError(f"{path}.{key}", "missing field")
    return doc[key]


def _int_list(x, path):
    if not isinstance(x, list) or not all(isinstance(v, int) for v in x):
        raise SchemaError(path, "expected a list of integers")
    return x


def _int_matrix(x, path):
    if not isinstance(x, list):
        raise SchemaError(path, "expected a list of rows")
    return [_int_list(row, f"{path}[{i}]") for i, row in enumerate(x)]


def to_document(value) -> dict:
    if isinstance(value, ExponentOrder):
        return {
            "schema_version": SCHEMA_VERSION,
            "type": "exponent",
            "dims": list(value.dims),
            "matrix": [list(r) for r in value.M],
            "ram": value.ram,
        }
    if isinstance(value, CirculantState):
        return {
            "schema_version": SCHEMA_VERSION,
            "type": "circulant",
            "n": value.n,
            "dims": list(value.dims),
            "v": list(value.v),
            "depth": value.f,
            "ram": value.ram,
        }
    if isinstance(value, AmalgamBlock):
        doc = {
            "schema_version": SCHEMA_VERSION,
            "type": "amalgam",
            "components": [to_document(c) for c in value.components],
            "gluings": [
                {
                    "left": list(g.left),
                    "right": list(g.right),
                    "depth": g.depth,
                    "kinds": list(g.kinds),
                }
                for g in value.gluings
            ],
        }
        if value.params is not None:
            doc["params"] = list(value.params)
        return doc
    if isinstance(value, PlanarBrauerTree):
        return {
            "schema_version": SCHEMA_VERSION,
            "type": "tree",
            "exceptional": value.exceptional,
            "edges": [list(e) for e in value.edges],
            "dims": list(value.dims),
            "rotations": [list(r) for r in value.rotations],
            "p": value.p,
            "a": value.a,
            "e": value.e,
            "m": value.m,
            "r": value.galois_r,
        }
    raise TypeError(f"cannot serialize {type(value).__name__}")


def from_document(doc, path="$"):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    version = _need(doc, "schema_version", path)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"{path}.schema_version", f"unsupported version {version}")
    kind = _need(doc, "type", path)
    if kind == "exponent":
        dims = _int_list(_need(doc, "dims", path), f"{path}.dims")
        matrix = _int_matrix(_need(doc, "matrix", path), f"{path}.matrix")
        try:
            return validate_order(matrix, dims, ram=doc.get("ram", 1))
        except (ValueError, HeadOrderError) as exc:
            raise SchemaError(path, str(exc)) from exc
    if kind == "circulant":
        dims = _int_list(_need(doc, "dims", path), f"{path}.dims")
        v = _int_list(_need(doc, "v", path), f"{path}.v")
        n = _need(doc, "n", path)
        if n != len(v):
            raise SchemaError(f"{path}.n", "n must equal len(v)")
        try:
            return CirculantState(
                tuple(dims), tuple(v), f=doc.get("depth", 0), ram=doc.get("ram", 1)
            )
        except (ValueError, HeadOrderError) as exc:
            raise SchemaError(path, str(exc)) from exc
    if kind == "amalgam":
        comps = [
            from_document(c, f"{path}.components[{i}]")
            for i, c in enumerate(_need(doc, "components", path))
        ]
        gluings = []
        for i, g in enumerate(_need(doc, "gluings", path)):
            gpath = f"{path}.gluings[{i}]"
            left = _int_list(_need(g, "left", gpath), f"{gpath}.left")
            right = _int_list(_need(g, "right", gpath), f"{gpath}.right")
            kinds = g.get("kinds", ["diagonal", "diagonal"])
            gluings.append(
                GluingConstraint(
                    tuple(left), tuple(right), _need(g, "depth", gpath), tuple(kinds)
                )
            )
        params = tuple(doc["params"]) if "params" in doc else None
        try:
            return validate_amalgam(comps, gluings, params)
        except (ValueError, HeadOrderError) as exc:
            raise SchemaError(path, str(exc)) from exc
    if kind == "tree":
        edges = _int_matrix(_need(doc, "edges", path), f"{path}.edges")
        if "e" in doc and doc["e"] != len(edges):
            raise SchemaError(f"{path}.e", "e must equal the number of edges")
        tree = PlanarBrauerTree(
            exceptional=_need(doc, "exceptional", path),
            edges=tuple(tuple(e) for e in edges),
            dims=tuple(_int_list(_need(doc, "dims", path), f"{path}.dims")),
            rotations=tuple(
                tuple(r)
                for r in _int_matrix(_need(doc, "rotations", path), f"{path}.rotations")
            ),
            p=_need(doc, "p", path),
            a=_need(doc, "a", path),
            m=doc.get("m", 1),
            galois_r=doc.get("r", 1),
        )
        try:
            return validate_tree(tree)
        except (ValueError, HeadOrderError) as exc:
            raise SchemaError(path, str(exc)) from exc
    raise SchemaError(f"{path}.type", f"unknown type {kind!r}")


def dumps(value) -> str:
    return json.dumps(to_document(value), sort_keys=True, indent=1)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return from_document(doc)
