"""JSON documents for matroids, fans and maps.

Matroid::

    {"schema": "tropfan/matroid/v1", "ground": 6, "kind": "matrix", "field": "Q",
     "data": [["1", "0", ...], ...]}

``kind`` is ``matrix`` (rows of canonical strings: ``"-1"``, ``"2/3"`` over Q,
residues ``"0"`` .. ``"p-1"`` over ``GF(p)``), ``bases`` or ``circuits`` (lists of
element lists). ``field`` is only meaningful for matrices.

Fan::

    {"schema": "tropfan/fan/v1", "n": 6, "lineality_dim": 1, "rays": [[0, -1, ...]],
     "cones": [{"rays": [0, 3], "flats": [[0], [0, 1, 3], [0, 1, 2, 3, 4, 5]]}]}

Bergman cones carry ``"chains"`` and ``"bases"`` instead of ``"flats"``.

Map::

    {"schema": "tropfan/map/v1", "n": 6, "matrix": [[1, 0, ...], ...], "lambda": ...}

``lambda`` (a translation datum) is carried along untouched and never read.
"""
from __future__ import annotations

import json
from typing import Any

from .endo import IntegerLinearMap
from .errors import MatroidError
from .fans import BergmanCone, Fan, SimplicialCone
from .matroid import ExactMatrix, Matroid, from_bases, from_circuits, from_matrix, lex_key

MATROID_SCHEMA = "tropfan/matroid/v1"
FAN_SCHEMA = "tropfan/fan/v1"
MAP_SCHEMA = "tropfan/map/v1"

__all__ = [
    "dumps",
    "matroid_from_json",
    "matroid_to_json",
    "matrix_to_json",
    "fan_to_json",
    "fan_from_json",
    "map_from_json",
    "map_to_json",
]


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def _sets(xs) -> list[list[int]]:
    return [list(lex_key(x)) for x in xs]


def _check_schema(doc: Any, schema: str) -> None:
    if not isinstance(doc, dict):
        raise MatroidError("document must be a JSON object")
    got = doc.get("schema", schema)
    if got != schema:
        raise MatroidError(f"expected schema {schema!r}, got {got!r}")


def _int_lists(data: Any, what: str) -> list[list[int]]:
    if not isinstance(data, list) or not all(
        isinstance(s, list) and all(isinstance(e, int) and not isinstance(e, bool) for e in s) for s in data
    ):
        raise MatroidError(f"{what} must be a list of integer lists")
    return data


def matroid_from_json(doc: Any, cap: int | None = None) -> Matroid:
    _check_schema(doc, MATROID_SCHEMA)
    unknown = set(doc) - {"schema", "ground", "kind", "field", "data"}
    if unknown:
        raise MatroidError(f"unknown keys {sorted(unknown)}")
    try:
        ground, kind, data = doc["ground"], doc["kind"], doc["data"]
    except KeyError as exc:
        raise MatroidError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(ground, int) or isinstance(ground, bool) or ground < 1:
        raise MatroidError("ground must be a positive integer")
    if kind == "matrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise MatroidError("matrix data must be a list of rows")
        mat = ExactMatrix.from_strings(data, doc.get("field", "Q"))
        if mat.shape[1] != ground:
            raise MatroidError(f"matrix has {mat.shape[1]} columns but ground is {ground}")
        return from_matrix(mat, cap)
    if kind == "bases":
        return from_bases(ground, _int_lists(data, "bases"), cap)
    if kind == "circuits":
        return from_circuits(ground, _int_lists(data, "circuits"), cap)
    raise MatroidError(f"unknown kind {kind!r}")


def matroid_to_json(m: Matroid) -> dict[str, Any]:
    return {"schema": MATROID_SCHEMA, "ground": m.size, "kind": "bases", "data": _sets(m.bases)}


def matrix_to_json(mat: ExactMatrix) -> dict[str, Any]:
    return {
        "schema": MATROID_SCHEMA,
        "ground": mat.shape[1],
        "kind": "matrix",
        "field": mat.field_name,
        "data": mat.to_strings(),
    }


def fan_to_json(fan: Fan) -> dict[str, Any]:
    cones = []
    for c in fan.cones:
        if isinstance(c, BergmanCone):
            cones.append({"rays": list(c.rays), "chains": [_sets(ch) for ch in c.member_chains], "bases": _sets(c.bases)})
        else:
            cones.append({"rays": list(c.rays), "flats": _sets(c.flats)})
    return {
        "schema": FAN_SCHEMA,
        "n": fan.n,
        "lineality_dim": fan.lineality_dim,
        "rays": [list(r) for r in fan.rays],
        "cones": cones,
    }


def _fs(xs) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(x) for x in xs)


def fan_from_json(doc: Any) -> Fan:
    _check_schema(doc, FAN_SCHEMA)
    cones = []
    for c in doc["cones"]:
        if "chains" in c:
            cones.append(BergmanCone(tuple(_fs(ch) for ch in c["chains"]), _fs(c["bases"]), tuple(c["rays"])))
        else:
            cones.append(SimplicialCone(_fs(c["flats"]), tuple(c["rays"])))
    return Fan(doc["n"], tuple(tuple(r) for r in doc["rays"]), tuple(cones), doc["lineality_dim"])


def map_from_json(doc: Any) -> tuple[IntegerLinearMap, Any]:
    _check_schema(doc, MAP_SCHEMA)
    try:
        n, matrix = doc["n"], doc["matrix"]
    except KeyError as exc:
        raise MatroidError(f"missing key {exc.args[0]!r}") from None
    rows = _int_lists(matrix, "matrix")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MatroidError(f"matrix must be {n}x{n}")
    return IntegerLinearMap(tuple(tuple(r) for r in rows)), doc.get("lambda")


def map_to_json(a: IntegerLinearMap, lam: Any = None) -> dict[str, Any]:
    doc = {"schema": MAP_SCHEMA, "n": a.size, "matrix": [list(r) for r in a.matrix]}
    if lam is not None:
        doc["lambda"] = lam
    return doc
