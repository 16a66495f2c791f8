"""JSON encodings of the library's values.

Complex scalars are ``[re, im]`` pairs, points are arrays of scalars and
unitary matrices are nested row-major arrays of scalars.
"""

from __future__ import annotations

import json

import jsonschema
import numpy as np

from .ball import Automorphism
from .embedding import EmbeddingCoords, multi_indices
from .errors import DimensionError, SchemaError
from .induced import InducedMap, TupleMap
from .sympower import OrderedConfig, Partition, SymConfig

_COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_POINT = {"type": "array", "items": _COMPLEX, "minItems": 1}
_POINTS = {"type": "array", "items": _POINT, "minItems": 1}
_POS_INT = {"type": "integer", "minimum": 1}

SCHEMAS = {
    "complex": _COMPLEX,
    "point": _POINT,
    "partition": {"type": "array", "items": _POS_INT, "minItems": 1},
    "automorphism": {
        "type": "object",
        "properties": {
            "unitary": {"type": "array", "items": _POINT, "minItems": 1},
            "center": _POINT,
        },
        "required": ["unitary", "center"],
    },
    "ordered_config": {
        "type": "object",
        "properties": {"m": _POS_INT, "s": _POS_INT, "points": _POINTS},
        "required": ["points"],
    },
    "sym_config": {
        "type": "object",
        "properties": {"m": _POS_INT, "s": _POS_INT, "points": _POINTS},
        "required": ["points"],
    },
    "embedding": {
        "type": "object",
        "properties": {
            "m": _POS_INT,
            "s": _POS_INT,
            "coeffs": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "mu": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                        "value": _COMPLEX,
                    },
                    "required": ["mu", "value"],
                },
            },
        },
        "required": ["m", "s", "coeffs"],
    },
}
SCHEMAS["induced_map"] = {
    "type": "object",
    "properties": {"m": _POS_INT, "generator": SCHEMAS["automorphism"]},
    "required": ["m", "generator"],
}
SCHEMAS["tuple_map"] = {
    "type": "object",
    "properties": {
        "sigma": {"type": "array", "items": _POS_INT, "minItems": 1},
        "components": {"type": "array", "items": SCHEMAS["automorphism"], "minItems": 1},
    },
    "required": ["sigma", "components"],
}


def validate(doc, kind: str, path=()):
    """Raise SchemaError unless ``doc`` matches the schema named ``kind``."""
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = tuple(path) + tuple(exc.absolute_path)
        raise SchemaError(f"invalid {kind}: {exc.message}", path=where) from None


def encode_complex(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def encode_vector(v) -> list:
    return [encode_complex(x) for x in np.asarray(v).ravel()]


def _decode_vector(doc):
    return np.array([complex(re, im) for re, im in doc], dtype=np.complex128)


def decode_point(doc):
    validate(doc, "point")
    return _decode_vector(doc)


def encode_automorphism(g: Automorphism) -> dict:
    return {"unitary": [encode_vector(row) for row in g.unitary],
            "center": encode_vector(g.center)}


def decode_automorphism(doc) -> Automorphism:
    validate(doc, "automorphism")
    u = [_decode_vector(row) for row in doc["unitary"]]
    if len({len(r) for r in u}) != 1:
        raise SchemaError("unitary rows have different lengths", path=("unitary",))
    return Automorphism(np.array(u), _decode_vector(doc["center"]))


def _encode_config(c) -> dict:
    return {"m": c.m, "s": c.s, "points": [encode_vector(p) for p in c.points]}


def _decode_points(doc):
    pts = [_decode_vector(p) for p in doc["points"]]
    if len({len(p) for p in pts}) != 1:
        raise SchemaError("points have different dimensions", path=("points",))
    arr = np.array(pts)
    for key, val in (("m", arr.shape[0]), ("s", arr.shape[1])):
        if key in doc and doc[key] != val:
            raise SchemaError(f"declared {key}={doc[key]} but points give {val}", path=(key,))
    return arr


encode_sym_config = _encode_config
encode_ordered_config = _encode_config


def decode_sym_config(doc) -> SymConfig:
    validate(doc, "sym_config")
    return SymConfig(_decode_points(doc))


def decode_ordered_config(doc) -> OrderedConfig:
    validate(doc, "ordered_config")
    return OrderedConfig(_decode_points(doc))


def encode_partition(p) -> list:
    return list(Partition(p))


def decode_partition(doc) -> Partition:
    validate(doc, "partition")
    try:
        return Partition(doc)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def encode_embedding(e: EmbeddingCoords) -> dict:
    return {"m": e.m, "s": e.s,
            "coeffs": [{"mu": list(mu), "value": encode_complex(v)}
                       for mu, v in zip(e.indices, e.values)]}


def decode_embedding(doc) -> EmbeddingCoords:
    validate(doc, "embedding")
    m, s = doc["m"], doc["s"]
    expected = [list(mu) for mu in multi_indices(m, s)]
    got = [item["mu"] for item in doc["coeffs"]]
    if got != expected:
        raise SchemaError("multi-indices are missing or not in canonical order", path=("coeffs",))
    vals = [complex(*item["value"]) for item in doc["coeffs"]]
    return EmbeddingCoords(m, s, np.array(vals))


def encode_induced_map(f: InducedMap) -> dict:
    return {"m": f.power, "generator": encode_automorphism(f.generator)}


def decode_induced_map(doc) -> InducedMap:
    validate(doc, "induced_map")
    return InducedMap(decode_automorphism(doc["generator"]), doc["m"])


def encode_tuple_map(h: TupleMap) -> dict:
    return {"sigma": [i + 1 for i in h.sigma],
            "components": [encode_automorphism(g) for g in h.components]}


def decode_tuple_map(doc) -> TupleMap:
    validate(doc, "tuple_map")
    if len(doc["sigma"]) != len(doc["components"]):
        raise SchemaError("sigma and components differ in length", path=("sigma",))
    comps = [decode_automorphism(g) for g in doc["components"]]
    try:
        return TupleMap(comps, [i - 1 for i in doc["sigma"]])
    except DimensionError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc), path=("sigma",)) from None


def dumps(doc) -> str:
    return json.dumps(doc, allow_nan=False)
