"""JSON reading and writing for fields, matrices, relations, pencils and perturbations.

Scalars are strings: ``"a/b"`` over Q and GF(p) (reduced mod p), ``"a/b+c/di"``
over Qi.  Documents carry a ``"field"`` entry: ``"Q"``, ``"Qi"`` or ``{"GF": p}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .fieldkit import Field, Matrix, PrimeField, field_from_tag
from .pencil import Pencil, RankOnePencil
from .relation import LinearRelation


class FormatError(ValueError):
    """Malformed input document."""


def parse_field(obj) -> Field:
    if obj in ("Q", "Qi"):
        return field_from_tag(obj)
    if isinstance(obj, dict) and set(obj) == {"GF"}:
        try:
            return field_from_tag("GF", int(obj["GF"]))
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
    if isinstance(obj, str) and obj.upper().startswith("GF"):
        try:
            return field_from_tag("GF", int(obj[2:].strip("()")))
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
    raise FormatError(f"unknown field {obj!r}")


def dump_field(f: Field):
    if isinstance(f, PrimeField):
        return {"GF": f.p}
    return f.kind


def _scalar(f: Field, s):
    if not isinstance(s, (str, int)):
        raise FormatError(f"scalar must be a string, got {s!r}")
    try:
        return f.parse(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad scalar {s!r}: {exc}") from exc


def _vector(f: Field, obj, length: int | None = None) -> tuple:
    if not isinstance(obj, list):
        raise FormatError(f"vector must be a list, got {obj!r}")
    if length is not None and len(obj) != length:
        raise FormatError(f"vector of length {len(obj)}, expected {length}")
    return tuple(_scalar(f, s) for s in obj)


def _matrix(f: Field, rows) -> Matrix:
    if not isinstance(rows, list) or not rows:
        raise FormatError("matrix must be a nonempty list of rows")
    data = [_vector(f, r) for r in rows]
    if len({len(r) for r in data}) != 1:
        raise FormatError("ragged matrix")
    return Matrix(f, tuple(data), len(data[0]))


def _field_of(doc: dict, default: Field | None) -> Field:
    if "field" in doc:
        return parse_field(doc["field"])
    if default is None:
        raise FormatError("missing 'field'")
    return default


def parse_matrix(doc: dict, field: Field | None = None) -> Matrix:
    return _matrix(_field_of(doc, field), doc.get("matrix"))


def parse_relation(doc: dict, field: Field | None = None) -> LinearRelation:
    f = _field_of(doc, field)
    try:
        d = int(doc["d"])
        pairs = doc["pairs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError("relation needs integer 'd' and list 'pairs'") from exc
    vecs = [_vector(f, v, 2 * d) for v in pairs]
    return LinearRelation.from_vectors(f, d, vecs)


def parse_pencil(doc: dict, field: Field | None = None) -> Pencil:
    f = _field_of(doc, field)
    try:
        return Pencil(_matrix(f, doc["E"]), _matrix(f, doc["F"]))
    except KeyError as exc:
        raise FormatError("pencil needs 'E' and 'F'") from exc


def parse_rank_one(doc: dict, field: Field | None = None) -> RankOnePencil:
    f = _field_of(doc, field)
    try:
        u, v, w = (_vector(f, doc[k]) for k in ("u", "v", "w"))
    except KeyError as exc:
        raise FormatError("perturbation needs 'u', 'v' and 'w'") from exc
    return RankOnePencil(u, v, w)


def dump_matrix(m: Matrix) -> list[list[str]]:
    return [[m.field.format(x) for x in row] for row in m.rows]


def dump_vector(f: Field, v) -> list[str]:
    return [f.format(x) for x in v]


def dump_relation(a: LinearRelation) -> dict:
    return {
        "field": dump_field(a.field),
        "d": a.d,
        "pairs": [dump_vector(a.field, v) for v in a.space.basis],
    }


def dump_pencil(p: Pencil) -> dict:
    return {"field": dump_field(p.field), "E": dump_matrix(p.E), "F": dump_matrix(p.F)}


def dump_rank_one(f: Field, q: RankOnePencil) -> dict:
    return {"field": dump_field(f), "u": dump_vector(f, q.u), "v": dump_vector(f, q.v), "w": dump_vector(f, q.w)}


def load_json(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
