"""Exact dense linear algebra over the rationals.

Matrices are immutable and stored row-major as canonical fractions
(numerator and positive denominator in lowest terms), so equality is
structural and every result is reproducible bit for bit.  Zero-row and
zero-column matrices are first class throughout: a product over an
empty inner dimension is a zero matrix, an empty matrix has rank 0, and
the {1}-inverse of an n x 0 matrix is the 0 x n matrix.

The two hot kernels (matrix product, reduced row echelon form) are
routed through :mod:`reachobs._backend`, which picks the compiled
extension when available.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Sequence, Union

from ._backend import mat_mul as _mat_mul
from ._backend import rref_decompose as _rref_decompose
from ._pykernels import rat_add, rat_sub

__all__ = [
    "Scalar",
    "ScalarLike",
    "DimensionError",
    "Mat",
    "RrefResult",
    "parse_scalar",
    "format_scalar",
    "as_scalar",
    "matmul",
    "add",
    "sub",
    "identity",
    "zeros",
    "transpose",
    "hstack",
    "vstack",
    "slice_rows",
    "slice_cols",
    "rref",
    "rank",
    "kernel_basis",
    "g1_inverse",
    "is_g1_inverse",
    "random_int_matrix",
]

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


# Text form of an exact scalar: "p" or "p/q" with q > 0, optionally with
# a leading minus (ASCII or U+2212).  No floats, no whitespace.
_SCALAR_RE = re.compile(r"\A[−-]?\d+(?:/\d+)?\Z")


def parse_scalar(text: str) -> Fraction:
    """Parse the exact text form ``"p"`` or ``"p/q"`` into a canonical fraction.

    Raises:
        ValueError: on anything else, including ``"1/0"`` and decimal
            literals like ``"1.5"``.
    """
    if not isinstance(text, str) or _SCALAR_RE.match(text) is None:
        raise ValueError(f"not an exact rational literal: {text!r}")
    body = text.replace("−", "-", 1)
    num_text, _, den_text = body.partition("/")
    if not den_text:
        return Fraction(int(num_text))
    den = int(den_text)
    if den == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Fraction(int(num_text), den)


def format_scalar(value: Fraction) -> str:
    """Canonical text form: ``"p"`` or ``"p/q"`` with q > 1."""
    return str(value)


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or exact text literal to a canonical fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(
        f"cannot use a {type(value).__name__} as an exact scalar"
        " (floats are inexact; see reachobs.approx for float data)"
    )


class Mat:
    """Immutable dense matrix of exact rationals.

    Entries are passed row-major and may be ints, Fractions or exact
    text literals.  ``rows`` and ``cols`` may be zero.
    """

    __slots__ = ("rows", "cols", "_num", "_den")

    rows: int
    cols: int

    def __init__(self, rows: int, cols: int, entries: Sequence[ScalarLike]):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative dimensions: {rows}x{cols}")
        flat = list(entries)
        if len(flat) != rows * cols:
            raise DimensionError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix,"
                f" got {len(flat)}"
            )
        num = []
        den = []
        for entry in flat:
            f = as_scalar(entry)
            num.append(f.numerator)
            den.append(f.denominator)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_num", tuple(num))
        object.__setattr__(self, "_den", tuple(den))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Mat is immutable")

    @classmethod
    def _raw(cls, rows: int, cols: int, num: tuple, den: tuple) -> "Mat":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "_num", num)
        object.__setattr__(m, "_den", den)
        return m

    @classmethod
    def from_rows(
        cls, data: Sequence[Sequence[ScalarLike]], cols: int | None = None
    ) -> "Mat":
        """Build from a list of rows; ``cols`` disambiguates the empty list."""
        rows_data = [list(r) for r in data]
        if rows_data:
            widths = {len(r) for r in rows_data}
            if len(widths) != 1:
                raise DimensionError(f"ragged rows: widths {sorted(widths)}")
            width = widths.pop()
            if cols is not None and cols != width:
                raise DimensionError(f"rows have width {width}, expected {cols}")
            cols = width
        elif cols is None:
            cols = 0
        flat = [entry for row in rows_data for entry in row]
        return cls(len(rows_data), cols, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative dimensions: {rows}x{cols}")
        n = rows * cols
        return cls._raw(rows, cols, (0,) * n, (1,) * n)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        if n < 0:
            raise DimensionError(f"negative dimension: {n}")
        num = [0] * (n * n)
        for i in range(n):
            num[i * n + i] = 1
        return cls._raw(n, n, tuple(num), (1,) * (n * n))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self.rows}x{self.cols}")
        idx = i * self.cols + j
        return Fraction(self._num[idx], self._den[idx])

    def to_rows(self) -> list[list[Fraction]]:
        """Entries as a list of rows of Fractions."""
        cols = self.cols
        return [
            [
                Fraction(self._num[i * cols + j], self._den[i * cols + j])
                for j in range(cols)
            ]
            for i in range(self.rows)
        ]

    def is_zero(self) -> bool:
        return not any(self._num)

    def transpose(self) -> "Mat":
        rows, cols = self.rows, self.cols
        num = self._num
        den = self._den
        tn = []
        td = []
        for j in range(cols):
            for i in range(rows):
                idx = i * cols + j
                tn.append(num[idx])
                td.append(den[idx])
        return Mat._raw(cols, rows, tuple(tn), tuple(td))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._num == other._num
            and self._den == other._den
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._num, self._den))

    def __matmul__(self, other: "Mat") -> "Mat":
        return matmul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        return add(self, other)

    def __sub__(self, other: "Mat") -> "Mat":
        return sub(self, other)

    def __neg__(self) -> "Mat":
        return Mat._raw(self.rows, self.cols, tuple(-n for n in self._num), self._den)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_scalar(entry) for entry in row) for row in self.to_rows()
        )
        return f"Mat({self.rows}x{self.cols} [{body}])"


def matmul(a: Mat, b: Mat) -> Mat:
    """Exact matrix product; empty inner dimension gives the zero matrix."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    num, den = _mat_mul(a._num, a._den, a.rows, a.cols, b._num, b._den, b.cols)
    return Mat._raw(a.rows, b.cols, tuple(num), tuple(den))


def _elementwise(a: Mat, b: Mat, op) -> Mat:
    if a.rows != b.rows or a.cols != b.cols:
        raise DimensionError(
            f"shape mismatch: {a.rows}x{a.cols} versus {b.rows}x{b.cols}"
        )
    num = []
    den = []
    for n1, d1, n2, d2 in zip(a._num, a._den, b._num, b._den):
        n, d = op(n1, d1, n2, d2)
        num.append(n)
        den.append(d)
    return Mat._raw(a.rows, a.cols, tuple(num), tuple(den))


def add(a: Mat, b: Mat) -> Mat:
    return _elementwise(a, b, rat_add)


def sub(a: Mat, b: Mat) -> Mat:
    return _elementwise(a, b, rat_sub)


def identity(n: int) -> Mat:
    return Mat.identity(n)


def zeros(rows: int, cols: int) -> Mat:
    return Mat.zeros(rows, cols)


def transpose(m: Mat) -> Mat:
    return m.transpose()


def hstack(*mats: Mat) -> Mat:
    """Concatenate side by side; zero-width blocks are allowed."""
    if not mats:
        raise DimensionError("hstack needs at least one matrix")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise DimensionError(
            f"hstack row mismatch: {[m.shape for m in mats]}"
        )
    cols = sum(m.cols for m in mats)
    num = []
    den = []
    for i in range(rows):
        for m in mats:
            base = i * m.cols
            num.extend(m._num[base : base + m.cols])
            den.extend(m._den[base : base + m.cols])
    return Mat._raw(rows, cols, tuple(num), tuple(den))


def vstack(*mats: Mat) -> Mat:
    """Stack vertically; zero-height blocks are allowed."""
    if not mats:
        raise DimensionError("vstack needs at least one matrix")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionError(
            f"vstack column mismatch: {[m.shape for m in mats]}"
        )
    rows = sum(m.rows for m in mats)
    num = []
    den = []
    for m in mats:
        num.extend(m._num)
        den.extend(m._den)
    return Mat._raw(rows, cols, tuple(num), tuple(den))


def slice_rows(m: Mat, start: int, stop: int) -> Mat:
    """Rows ``start:stop``; an empty range gives a 0 x cols matrix."""
    if not (0 <= start <= stop <= m.rows):
        raise DimensionError(
            f"row slice [{start}:{stop}] out of range for {m.rows}x{m.cols}"
        )
    a = start * m.cols
    b = stop * m.cols
    return Mat._raw(stop - start, m.cols, m._num[a:b], m._den[a:b])


def slice_cols(m: Mat, start: int, stop: int) -> Mat:
    """Columns ``start:stop``; an empty range gives a rows x 0 matrix."""
    if not (0 <= start <= stop <= m.cols):
        raise DimensionError(
            f"column slice [{start}:{stop}] out of range for {m.rows}x{m.cols}"
        )
    width = stop - start
    num = []
    den = []
    for i in range(m.rows):
        base = i * m.cols
        num.extend(m._num[base + start : base + stop])
        den.extend(m._den[base + start : base + stop])
    return Mat._raw(m.rows, width, tuple(num), tuple(den))


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form together with its certificate.

    ``row_transform`` is invertible and satisfies
    ``row_transform @ input == rref`` exactly; ``rank`` equals the
    number of pivot columns.
    """

    rref: Mat
    pivot_cols: tuple[int, ...]
    row_transform: Mat
    rank: int


def rref(m: Mat) -> RrefResult:
    """Canonical reduced row echelon form over the rationals."""
    r_num, r_den, pivots, t_num, t_den = _rref_decompose(
        m._num, m._den, m.rows, m.cols
    )
    reduced = Mat._raw(m.rows, m.cols, tuple(r_num), tuple(r_den))
    transform = Mat._raw(m.rows, m.rows, tuple(t_num), tuple(t_den))
    return RrefResult(reduced, tuple(pivots), transform, len(pivots))


def rank(m: Mat) -> int:
    """Exact rank; any matrix with a zero dimension has rank 0."""
    return rref(m).rank


def kernel_basis(m: Mat) -> Mat:
    """Canonical null-space basis, one column per free variable.

    The result has shape ``cols x (cols - rank)``; free variables are
    set to unit values in increasing column order and the pivot
    variables are read off the reduced row echelon form, so
    ``m @ kernel_basis(m)`` is exactly zero.
    """
    res = rref(m)
    pivots = res.pivot_cols
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    width = len(free)
    num = [0] * (m.cols * width)
    den = [1] * (m.cols * width)
    red = res.rref
    for j, fc in enumerate(free):
        num[fc * width + j] = 1
        for i, pc in enumerate(pivots):
            idx = i * m.cols + fc
            num[pc * width + j] = -red._num[idx]
            den[pc * width + j] = red._den[idx]
    return Mat._raw(m.cols, width, tuple(num), tuple(den))


def g1_inverse(f: Mat) -> Mat:
    """Canonical {1}-inverse: a Y with ``f @ Y @ f == f`` exactly.

    Built from the reduced row echelon form T @ f == R: the rows of T
    that produced pivots are placed at the pivot-column positions of Y.
    This particular Y also satisfies ``Y @ f @ Y == Y``, though only
    the first identity is contractual.  Empty matrices get the
    transposed-shape empty matrix.
    """
    res = rref(f)
    t = res.row_transform
    num = [0] * (f.cols * f.rows)
    den = [1] * (f.cols * f.rows)
    for i, pc in enumerate(res.pivot_cols):
        src = i * f.rows
        dst = pc * f.rows
        num[dst : dst + f.rows] = t._num[src : src + f.rows]
        den[dst : dst + f.rows] = t._den[src : src + f.rows]
    return Mat._raw(f.cols, f.rows, tuple(num), tuple(den))


def is_g1_inverse(f: Mat, y: Mat) -> bool:
    """Whether ``f @ y @ f == f`` exactly; shapes must be transposed."""
    if y.rows != f.cols or y.cols != f.rows:
        raise DimensionError(
            f"a {f.rows}x{f.cols} matrix needs a {f.cols}x{f.rows} {{1}}-inverse,"
            f" got {y.rows}x{y.cols}"
        )
    return matmul(matmul(f, y), f) == f


def random_int_matrix(
    rows: int, cols: int, rng: Random, low: int = -9, high: int = 9
) -> Mat:
    """Uniform integer-entry matrix drawn from ``rng`` (inclusive bounds)."""
    num = tuple(rng.randint(low, high) for _ in range(rows * cols))
    return Mat._raw(rows, cols, num, (1,) * (rows * cols))
