"""JSON interchange for matrices, problems and systems.

One canonical structured text format: JSON objects with explicit
``rows``/``cols``/``scalar_kind``/``entries`` fields.  Rational entries
are strings ``"p"`` or ``"p/q"`` (never floats), so serialization is
bit-exact; float entries are plain JSON numbers.  Parsing is strict:
unknown fields, malformed scalars and shape mismatches are rejected
with the offending location in the message.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .approx import FloatMat, FloatRealizationProblem
from .exact import Mat, format_scalar, parse_scalar
from .realization import RealizationProblem

__all__ = [
    "ParseError",
    "MatrixDocument",
    "ProblemDocument",
    "SystemDocument",
    "parse_matrix",
    "serialize_matrix",
    "parse_problem",
    "serialize_problem",
    "parse_system",
    "serialize_system",
    "matrix_document_from_exact",
    "matrix_document_from_float",
    "exact_from_document",
    "float_from_document",
    "matrix_to_obj",
    "problem_to_obj",
    "system_to_obj",
    "exact_problem",
    "float_problem",
    "dumps_canonical",
    "sha256_hex",
]

SCALAR_KINDS = ("rational", "float")


class ParseError(ValueError):
    """Malformed document; the message starts with the field location."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


@dataclass(frozen=True)
class MatrixDocument:
    """Serialized matrix: canonical rational strings or finite floats."""

    rows: int
    cols: int
    scalar_kind: str
    entries: tuple[tuple[Any, ...], ...]


@dataclass(frozen=True)
class ProblemDocument:
    """Serialized pair (V, W) with its block structure."""

    V: MatrixDocument
    W: MatrixDocument
    p: int
    q: int
    k: int
    m: int


@dataclass(frozen=True)
class SystemDocument:
    """Serialized state-space triple (A, B, C)."""

    A: MatrixDocument
    B: MatrixDocument
    C: MatrixDocument


def dumps_canonical(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, newline end."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _reject_constant(token: str) -> Any:
    raise ValueError(f"non-finite number {token!r} is not allowed")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as exc:
        raise ParseError("$", f"invalid JSON: {exc}") from exc


def _require_object(obj: Any, keys: tuple[str, ...], location: str) -> dict:
    if not isinstance(obj, dict):
        raise ParseError(location, f"expected an object, got {type(obj).__name__}")
    missing = [key for key in keys if key not in obj]
    if missing:
        raise ParseError(location, f"missing fields: {', '.join(missing)}")
    unknown = [key for key in obj if key not in keys]
    if unknown:
        raise ParseError(location, f"unknown fields: {', '.join(sorted(unknown))}")
    return obj


def _require_int(value: Any, location: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(location, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ParseError(location, f"must be >= {minimum}, got {value}")
    return value


def _matrix_from_obj(obj: Any, location: str) -> MatrixDocument:
    data = _require_object(obj, ("rows", "cols", "scalar_kind", "entries"), location)
    rows = _require_int(data["rows"], f"{location}.rows", 0)
    cols = _require_int(data["cols"], f"{location}.cols", 0)
    kind = data["scalar_kind"]
    if kind not in SCALAR_KINDS:
        raise ParseError(
            f"{location}.scalar_kind",
            f"expected one of {SCALAR_KINDS}, got {kind!r}",
        )
    raw = data["entries"]
    if not isinstance(raw, list) or len(raw) != rows:
        raise ParseError(
            f"{location}.entries", f"expected a list of {rows} rows"
        )
    out_rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(
                f"{location}.entries[{i}]", f"expected a list of {cols} entries"
            )
        out_row = []
        for j, entry in enumerate(row):
            where = f"{location}.entries[{i}][{j}]"
            if kind == "rational":
                if not isinstance(entry, str):
                    raise ParseError(
                        where, f"rational entries must be strings, got {entry!r}"
                    )
                try:
                    value = parse_scalar(entry)
                except ValueError as exc:
                    raise ParseError(where, str(exc)) from exc
                out_row.append(format_scalar(value))
            else:
                if isinstance(entry, bool) or not isinstance(entry, (int, float)):
                    raise ParseError(
                        where, f"float entries must be numbers, got {entry!r}"
                    )
                value = float(entry)
                if not math.isfinite(value):
                    raise ParseError(where, "float entries must be finite")
                out_row.append(value)
        out_rows.append(tuple(out_row))
    return MatrixDocument(rows, cols, kind, tuple(out_rows))


def matrix_to_obj(doc: MatrixDocument) -> dict:
    return {
        "rows": doc.rows,
        "cols": doc.cols,
        "scalar_kind": doc.scalar_kind,
        "entries": [list(row) for row in doc.entries],
    }


def parse_matrix(text: str) -> MatrixDocument:
    return _matrix_from_obj(_load_json(text), "$")


def serialize_matrix(doc: MatrixDocument) -> str:
    return dumps_canonical(matrix_to_obj(doc))


def matrix_document_from_exact(mat: Mat) -> MatrixDocument:
    entries = tuple(
        tuple(format_scalar(entry) for entry in row) for row in mat.to_rows()
    )
    return MatrixDocument(mat.rows, mat.cols, "rational", entries)


def matrix_document_from_float(mat: FloatMat) -> MatrixDocument:
    entries = tuple(tuple(float(x) for x in row) for row in mat.array)
    return MatrixDocument(mat.rows, mat.cols, "float", entries)


def exact_from_document(doc: MatrixDocument) -> Mat:
    if doc.scalar_kind != "rational":
        raise ParseError(
            "$.scalar_kind", "an exact matrix requires scalar_kind 'rational'"
        )
    flat = [entry for row in doc.entries for entry in row]
    return Mat(doc.rows, doc.cols, flat)


def float_from_document(doc: MatrixDocument) -> FloatMat:
    """Float view of a document; rational entries are cast to float64."""
    arr = np.zeros((doc.rows, doc.cols))
    for i, row in enumerate(doc.entries):
        for j, entry in enumerate(row):
            arr[i, j] = (
                float(parse_scalar(entry)) if isinstance(entry, str) else entry
            )
    return FloatMat(arr)


def _problem_from_obj(obj: Any, location: str) -> ProblemDocument:
    data = _require_object(obj, ("V", "W", "p", "q", "k", "m"), location)
    v = _matrix_from_obj(data["V"], f"{location}.V")
    w = _matrix_from_obj(data["W"], f"{location}.W")
    p = _require_int(data["p"], f"{location}.p", 1)
    q = _require_int(data["q"], f"{location}.q", 1)
    k = _require_int(data["k"], f"{location}.k", 1)
    m = _require_int(data["m"], f"{location}.m", 1)
    if v.scalar_kind != w.scalar_kind:
        raise ParseError(location, "V and W must share scalar_kind")
    if v.cols != p * k:
        raise ParseError(
            f"{location}.V", f"has {v.cols} columns, expected p*k = {p * k}"
        )
    if w.rows != q * m:
        raise ParseError(
            f"{location}.W", f"has {w.rows} rows, expected q*m = {q * m}"
        )
    if v.rows < 1:
        raise ParseError(f"{location}.V", "must have at least one row")
    if w.cols != v.rows:
        raise ParseError(
            f"{location}.W", f"has {w.cols} columns but V has {v.rows} rows"
        )
    return ProblemDocument(V=v, W=w, p=p, q=q, k=k, m=m)


def problem_to_obj(doc: ProblemDocument) -> dict:
    return {
        "V": matrix_to_obj(doc.V),
        "W": matrix_to_obj(doc.W),
        "p": doc.p,
        "q": doc.q,
        "k": doc.k,
        "m": doc.m,
    }


def parse_problem(text: str) -> ProblemDocument:
    return _problem_from_obj(_load_json(text), "$")


def serialize_problem(doc: ProblemDocument) -> str:
    return dumps_canonical(problem_to_obj(doc))


def exact_problem(doc: ProblemDocument) -> RealizationProblem:
    return RealizationProblem(
        V=exact_from_document(doc.V),
        W=exact_from_document(doc.W),
        p=doc.p,
        q=doc.q,
        k=doc.k,
        m=doc.m,
    )


def float_problem(doc: ProblemDocument) -> FloatRealizationProblem:
    return FloatRealizationProblem(
        V=float_from_document(doc.V),
        W=float_from_document(doc.W),
        p=doc.p,
        q=doc.q,
        k=doc.k,
        m=doc.m,
    )


def _system_from_obj(obj: Any, location: str) -> SystemDocument:
    data = _require_object(obj, ("A", "B", "C"), location)
    a = _matrix_from_obj(data["A"], f"{location}.A")
    b = _matrix_from_obj(data["B"], f"{location}.B")
    c = _matrix_from_obj(data["C"], f"{location}.C")
    if a.rows != a.cols:
        raise ParseError(f"{location}.A", f"must be square, got {a.rows}x{a.cols}")
    if b.rows != a.rows:
        raise ParseError(
            f"{location}.B", f"has {b.rows} rows but A is {a.rows}x{a.cols}"
        )
    if c.cols != a.rows:
        raise ParseError(
            f"{location}.C", f"has {c.cols} columns but A is {a.rows}x{a.cols}"
        )
    if len({a.scalar_kind, b.scalar_kind, c.scalar_kind}) != 1:
        raise ParseError(location, "A, B and C must share scalar_kind")
    return SystemDocument(A=a, B=b, C=c)


def system_to_obj(doc: SystemDocument) -> dict:
    return {
        "A": matrix_to_obj(doc.A),
        "B": matrix_to_obj(doc.B),
        "C": matrix_to_obj(doc.C),
    }


def parse_system(text: str) -> SystemDocument:
    return _system_from_obj(_load_json(text), "$")


def serialize_system(doc: SystemDocument) -> str:
    return dumps_canonical(system_to_obj(doc))
