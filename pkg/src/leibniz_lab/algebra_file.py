"""JSON structure-constant files: loading, canonical serialization, transplanting to GF(p)."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import LeibnizAlgebra, LeibnizIdentityError, validate_leibniz
from .fields import FieldError, GaussianRational, GaussianRationals, GF, Rationals, field_from_spec, field_to_spec


class AlgebraFileError(ValueError):
    """A structure-constant file could not be turned into a Leibniz algebra."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None,
                 column: int | None = None, witness: tuple | None = None):
        self.path, self.line, self.column, self.witness = path, line, column, witness
        where = path or "<input>"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}")


def _require(cond: bool, message: str, path):
    if not cond:
        raise AlgebraFileError(message, path)


def algebra_from_data(data: Any, path: str | None = None, validate: bool = True) -> LeibnizAlgebra:
    _require(isinstance(data, dict), "top level must be a JSON object", path)
    for key in ("field", "dim", "products"):
        _require(key in data, f"missing key {key!r}", path)
    unknown = set(data) - {"field", "dim", "basis", "products"}
    _require(not unknown, f"unknown keys {sorted(unknown)}", path)
    try:
        field = field_from_spec(data["field"])
    except FieldError as exc:
        raise AlgebraFileError(str(exc), path) from None
    dim = data["dim"]
    _require(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1,
             f"dim must be a positive integer, got {dim!r}", path)
    labels = data.get("basis") or [f"e{i}" for i in range(dim)]
    _require(isinstance(labels, list) and all(isinstance(s, str) for s in labels),
             "basis must be a list of strings", path)
    _require(len(labels) == dim, f"basis has {len(labels)} labels for dim {dim}", path)
    _require(len(set(labels)) == dim, "basis labels must be distinct", path)
    _require(isinstance(data["products"], list), "products must be a list", path)

    table: dict = {}
    for n, entry in enumerate(data["products"]):
        _require(isinstance(entry, dict) and set(entry) == {"left", "right", "result"},
                 f"product #{n} must have exactly the keys left, right, result", path)
        i, j, result = entry["left"], entry["right"], entry["result"]
        for idx in (i, j):
            _require(isinstance(idx, int) and not isinstance(idx, bool),
                     f"product #{n}: index {idx!r} is not an integer", path)
            _require(0 <= idx < dim, f"product #{n}: index {idx} out of range for dim {dim}", path)
        _require((i, j) not in table, f"product #{n}: duplicate entry for ({i}, {j})", path)
        _require(isinstance(result, dict), f"product #{n}: result must be an object", path)
        row = [field.zero] * dim
        for k, text in result.items():
            try:
                kk = int(k)
            except ValueError:
                raise AlgebraFileError(f"product #{n}: result key {k!r} is not an index", path) from None
            _require(0 <= kk < dim, f"product #{n}: result index {kk} out of range for dim {dim}", path)
            _require(isinstance(text, str), f"product #{n}: scalar {text!r} must be a string", path)
            try:
                row[kk] = field.parse(text)
            except (FieldError, ValueError, ZeroDivisionError) as exc:
                raise AlgebraFileError(f"product #{n}: scalar {text!r} is not in {field}: {exc}", path) from None
        table[(i, j)] = tuple(row)
    A = LeibnizAlgebra(field, dim, table, tuple(labels))
    if validate:
        check = validate_leibniz(A)
        if not check.ok:
            i, j, k = check.witness
            raise AlgebraFileError(
                f"Leibniz identity fails on basis triple ({labels[i]}, {labels[j]}, {labels[k]})",
                path, witness=check.witness)
    return A


def loads_algebra(text: str, path: str | None = None, validate: bool = True) -> LeibnizAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(exc.msg, path, exc.lineno, exc.colno) from None
    return algebra_from_data(data, path, validate)


def load_algebra(path, validate: bool = True) -> LeibnizAlgebra:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise AlgebraFileError(f"cannot read file: {exc.strerror}", str(p)) from None
    return loads_algebra(text, str(p), validate)


def algebra_to_data(A: LeibnizAlgebra) -> dict:
    f = A.field
    products = []
    for (i, j) in sorted(A.table):
        row = A.table[(i, j)]
        products.append({"left": i, "right": j,
                         "result": {str(k): f.format(c) for k, c in enumerate(row) if not f.is_zero(c)}})
    return {"field": field_to_spec(f), "dim": A.dim, "basis": list(A.labels), "products": products}


def dumps_algebra(A: LeibnizAlgebra) -> str:
    return json.dumps(algebra_to_data(A), indent=2, ensure_ascii=False) + "\n"


def save_algebra(A: LeibnizAlgebra, path) -> None:
    Path(path).write_text(dumps_algebra(A), encoding="utf-8")


def _reduce_scalar(c, p: int, where: str) -> int:
    if isinstance(c, GaussianRational):
        if c.im != 0:
            raise AlgebraFileError(f"{where}: coefficient {c} has a nonzero imaginary part")
        c = c.re
    q = Fraction(c)
    if q.denominator % p == 0:
        raise AlgebraFileError(f"{where}: denominator of {q} is divisible by {p}")
    return q.numerator * pow(q.denominator, -1, p) % p


def transplant(A: LeibnizAlgebra, p: int) -> LeibnizAlgebra:
    """Reduce rational (or real Gaussian) structure constants modulo the prime p."""
    if not isinstance(A.field, (Rationals, GaussianRationals)):
        raise AlgebraFileError(f"can only transplant from Q or Q(i), not {A.field}")
    F = GF(p)
    table = {ij: tuple(_reduce_scalar(c, p, f"product {ij}") for c in row) for ij, row in A.table.items()}
    B = LeibnizAlgebra(F, A.dim, table, A.labels)
    check = validate_leibniz(B)
    if not check.ok:
        raise LeibnizIdentityError(check.witness)
    return B
