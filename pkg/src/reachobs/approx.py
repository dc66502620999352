"""Floating-point mirror of the feasibility check and the recovery formula.

For users whose V and W come from inexact data.  Conditions are judged
by relative residuals against an explicit :class:`Tolerance`, ranks by
complete-pivoting elimination with a relative pivot threshold, and the
reconstruction guarantee is a bounded residual rather than exactness.
The exact modules remain the reference semantics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import DimensionError, Mat
from .realization import InfeasibleRealizationError

__all__ = [
    "FloatMat",
    "Tolerance",
    "FloatRealizationProblem",
    "ApproxFeasibilityReport",
    "FloatTriple",
    "approx_rank",
    "approx_g1_inverse",
    "approx_check_feasibility",
    "approx_realize",
]


class FloatMat:
    """Immutable dense float64 matrix; entries must be finite."""

    __slots__ = ("array",)

    array: np.ndarray

    def __init__(self, data):
        arr = np.array(data, dtype=np.float64)
        if arr.ndim != 2:
            raise DimensionError(f"expected a 2-D array, got ndim={arr.ndim}")
        if arr.size and not np.isfinite(arr).all():
            raise ValueError("non-finite entries are not accepted")
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FloatMat is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "FloatMat":
        return cls(np.zeros((rows, cols)))

    @classmethod
    def identity(cls, n: int) -> "FloatMat":
        return cls(np.eye(n))

    @classmethod
    def from_exact(cls, mat: Mat) -> "FloatMat":
        rows = [[float(entry) for entry in row] for row in mat.to_rows()]
        arr = np.array(rows, dtype=np.float64).reshape(mat.rows, mat.cols)
        return cls(arr)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, FloatMat):
            return NotImplemented
        return self.shape == other.shape and bool(
            np.array_equal(self.array, other.array)
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"FloatMat({self.array!r})"


@dataclass(frozen=True)
class Tolerance:
    """Thresholds for float-mode decisions.

    ``rank_rel`` is the relative pivot cutoff for rank determination;
    ``residual_rel`` scales the acceptance bound of condition residuals.
    """

    rank_rel: float = 1e-10
    residual_rel: float = 1e-8

    def __post_init__(self) -> None:
        if self.rank_rel < 0 or self.residual_rel < 0:
            raise ValueError("tolerances must be nonnegative")


@dataclass(frozen=True)
class FloatRealizationProblem:
    """Float counterpart of :class:`reachobs.realization.RealizationProblem`."""

    V: FloatMat
    W: FloatMat
    p: int
    q: int
    k: int
    m: int

    def __post_init__(self) -> None:
        for name in ("p", "q", "k", "m"):
            if getattr(self, name) < 1:
                raise DimensionError(f"{name} must be a positive integer")
        if self.V.rows < 1:
            raise DimensionError("V must have at least one row")
        if self.V.cols != self.p * self.k:
            raise DimensionError(
                f"V has {self.V.cols} columns, expected p*k = {self.p * self.k}"
            )
        if self.W.rows != self.q * self.m:
            raise DimensionError(
                f"W has {self.W.rows} rows, expected q*m = {self.q * self.m}"
            )
        if self.W.cols != self.V.rows:
            raise DimensionError(
                f"W has {self.W.cols} columns but V has {self.V.rows} rows"
            )

    @property
    def n(self) -> int:
        return self.V.rows


@dataclass(frozen=True)
class ApproxFeasibilityReport:
    """Float verdicts with the max-norm residual behind each one."""

    cond_kernel: bool
    cond_image: bool
    cond_interlock: bool
    kernel_residual: float
    image_residual: float
    interlock_residual: float

    @property
    def feasible(self) -> bool:
        return self.cond_kernel and self.cond_image and self.cond_interlock

    @property
    def failed(self) -> tuple[str, ...]:
        out = []
        if not self.cond_kernel:
            out.append("cond_kernel")
        if not self.cond_image:
            out.append("cond_image")
        if not self.cond_interlock:
            out.append("cond_interlock")
        return tuple(out)


@dataclass(frozen=True)
class FloatTriple:
    A: FloatMat
    B: FloatMat
    C: FloatMat


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def _pivoted_decomposition(
    a: np.ndarray, rank_rel: float
) -> tuple[np.ndarray, np.ndarray, int]:
    """Gauss-Jordan with complete pivoting: P @ a @ Q ~ [[I_r, 0], [0, ~0]].

    Elimination stops once the remaining submatrix falls below
    ``rank_rel`` times the largest pivot magnitude encountered, so the
    returned rank never counts numerically negligible pivots.  Pivot
    choice is the first occurrence of the maximal magnitude, which
    makes the routine deterministic.
    """
    m = a.astype(np.float64, copy=True)
    s, t = m.shape
    p = np.eye(s)
    q = np.eye(t)
    max_mag = 0.0
    step = 0
    limit = min(s, t)
    while step < limit:
        sub = np.abs(m[step:, step:])
        flat = int(np.argmax(sub))
        di, dj = divmod(flat, t - step)
        i = step + di
        j = step + dj
        pval = float(abs(m[i, j]))
        if pval == 0.0 or (step > 0 and pval <= rank_rel * max_mag):
            break
        max_mag = max(max_mag, pval)
        if i != step:
            m[[step, i], :] = m[[i, step], :]
            p[[step, i], :] = p[[i, step], :]
        if j != step:
            m[:, [step, j]] = m[:, [j, step]]
            q[:, [step, j]] = q[:, [j, step]]
        piv = m[step, step]
        m[step, :] /= piv
        p[step, :] /= piv
        col = m[:, step].copy()
        col[step] = 0.0
        if np.any(col):
            m -= np.outer(col, m[step, :])
            p -= np.outer(col, p[step, :])
        tail = m[step, step + 1 :].copy()
        if np.any(tail):
            q[:, step + 1 :] -= np.outer(q[:, step], tail)
            m[step, step + 1 :] = 0.0
        step += 1
    return p, q, step


def approx_rank(mat: FloatMat, tol: Tolerance = Tolerance()) -> int:
    """Numerical rank via complete-pivoting elimination."""
    _, _, r = _pivoted_decomposition(mat.array, tol.rank_rel)
    return r


def approx_g1_inverse(mat: FloatMat, tol: Tolerance = Tolerance()) -> FloatMat:
    """An approximate {1}-inverse built from the pivoted elimination."""
    p, q, r = _pivoted_decomposition(mat.array, tol.rank_rel)
    return FloatMat(q[:, :r] @ p[:r, :])


def _float_truncations(
    prob: FloatRealizationProblem,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    v = prob.V.array
    w = prob.W.array
    p, q, k, m = prob.p, prob.q, prob.k, prob.m
    return (
        v[:, : p * (k - 1)],
        v[:, p : p * k],
        w[: q * (m - 1), :],
        w[q : q * m, :],
    )


def approx_check_feasibility(
    prob: FloatRealizationProblem, tol: Tolerance = Tolerance()
) -> ApproxFeasibilityReport:
    """Residual-based version of the three existence conditions.

    A condition passes when its max-norm residual is at most
    ``residual_rel * (1 + scale)`` with the scale taken from the
    matrix the residual is compared against.  Empty truncations give
    zero residuals.
    """
    v_lower, v_upper, w_lower, w_upper = _float_truncations(prob)
    gv = approx_g1_inverse(FloatMat(v_lower), tol).array
    gw = approx_g1_inverse(FloatMat(w_lower), tol).array
    kernel_res = _max_abs(v_upper @ gv @ v_lower - v_upper)
    image_res = _max_abs(w_lower @ gw @ w_upper - w_upper)
    left = w_lower @ v_upper
    interlock_res = _max_abs(left - w_upper @ v_lower)
    rel = tol.residual_rel
    return ApproxFeasibilityReport(
        cond_kernel=kernel_res <= rel * (1.0 + _max_abs(v_upper)),
        cond_image=image_res <= rel * (1.0 + _max_abs(w_upper)),
        cond_interlock=interlock_res <= rel * (1.0 + _max_abs(left)),
        kernel_residual=kernel_res,
        image_residual=image_res,
        interlock_residual=interlock_res,
    )


def approx_realize(
    prob: FloatRealizationProblem,
    Z: FloatMat | None = None,
    tol: Tolerance = Tolerance(),
) -> FloatTriple:
    """Float evaluation of the recovery formula.

    On well-conditioned feasible input the reconstruction residual
    ``max|reachability_matrix(A, B, k) - V|`` stays within about
    1e-6 * (1 + max|V|), and likewise for W; integer-valued input keeps
    it near machine precision.  The exact module is authoritative when
    exact data is available.

    Raises:
        InfeasibleRealizationError: when the residual check fails.
    """
    n = prob.n
    if Z is None:
        Z = FloatMat.zeros(n, n)
    elif Z.shape != (n, n):
        raise DimensionError(f"Z must be {n}x{n}, got {Z.rows}x{Z.cols}")
    report = approx_check_feasibility(prob, tol)
    if not report.feasible:
        raise InfeasibleRealizationError(report)
    v_lower, v_upper, w_lower, w_upper = _float_truncations(prob)
    gv = approx_g1_inverse(FloatMat(v_lower), tol).array
    gw = approx_g1_inverse(FloatMat(w_lower), tol).array
    left_ann = np.eye(n) - gw @ w_lower
    right_ann = np.eye(n) - v_lower @ gv
    a = gw @ w_upper + left_ann @ (v_upper @ gv) + left_ann @ Z.array @ right_ann
    b = prob.V.array[:, : prob.p]
    c = prob.W.array[: prob.q, :]
    return FloatTriple(A=FloatMat(a), B=FloatMat(b), C=FloatMat(c))
