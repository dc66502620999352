"""Recovering state-space triples from reachability/observability matrix pairs.

Given V (n x p*k) and W (q*m x n), decide whether some triple
(A, B, C) satisfies

    V == [B, A@B, ..., A^(k-1)@B]      (k-step reachability matrix)
    W == [C; C@A; ...; C@A^(m-1)]      (m-step observability matrix)

and if so parametrize every such triple.  With V and W cut into the
leading/trailing block slices v_lower/v_upper and w_lower/w_upper, a
triple exists iff

    ker v_lower <= ker v_upper          (cond_kernel)
    im  w_lower >= im  w_upper          (cond_image)
    w_lower @ v_upper == w_upper @ v_lower   (cond_interlock)

and then B and C are forced to the first blocks of V and W while A
ranges over the common solutions of ``A @ v_lower == v_upper`` and
``w_lower @ A == w_upper``, an affine family delegated to
:mod:`reachobs.pairs`.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import (
    DimensionError,
    Mat,
    add,
    g1_inverse,
    hstack,
    identity,
    is_g1_inverse,
    kernel_basis,
    matmul,
    rank,
    slice_cols,
    slice_rows,
    sub,
    vstack,
    zeros,
)
from .pairs import InvalidGInverseError, PairProblem, SolutionFamily, solution_family

__all__ = [
    "RealizationProblem",
    "Truncations",
    "FeasibilityReport",
    "Triple",
    "InfeasibleRealizationError",
    "reachability_matrix",
    "observability_matrix",
    "truncations",
    "check_feasibility",
    "realize",
    "realize_family",
    "realize_reachability_only",
    "realize_observability_only",
]


@dataclass(frozen=True)
class RealizationProblem:
    """A candidate pair (V, W) with its block structure (p, q, k, m).

    V must be n x p*k and W must be q*m x n for the shared state
    dimension n = rows(V) = cols(W); all of n, p, q, k, m are at least 1.
    """

    V: Mat
    W: Mat
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

    def v_block(self, i: int) -> Mat:
        """The i-th n x p block of V, 0 <= i < k."""
        if not 0 <= i < self.k:
            raise IndexError(f"block index {i} out of range for k={self.k}")
        return slice_cols(self.V, i * self.p, (i + 1) * self.p)

    def w_block(self, i: int) -> Mat:
        """The i-th q x n block of W, 0 <= i < m."""
        if not 0 <= i < self.m:
            raise IndexError(f"block index {i} out of range for m={self.m}")
        return slice_rows(self.W, i * self.q, (i + 1) * self.q)


@dataclass(frozen=True)
class Truncations:
    """Leading and shifted block slices of V and W.

    ``v_lower``/``v_upper`` are the first/last k-1 blocks of V (both
    n x p(k-1)); ``w_lower``/``w_upper`` are the first/last m-1 blocks
    of W (both q(m-1) x n).  They are empty when k = 1 or m = 1.
    """

    v_lower: Mat
    v_upper: Mat
    w_lower: Mat
    w_upper: Mat


@dataclass(frozen=True)
class FeasibilityReport:
    """Verdicts for the three existence conditions, with residual witnesses.

    A residual is present only for a failed condition:
    ``v_upper @ ginv(v_lower) @ v_lower - v_upper`` for cond_kernel,
    ``w_lower @ ginv(w_lower) @ w_upper - w_upper`` for cond_image and
    ``w_lower @ v_upper - w_upper @ v_lower`` for cond_interlock.
    """

    cond_kernel: bool
    cond_image: bool
    cond_interlock: bool
    kernel_residual: Mat | None = None
    image_residual: Mat | None = None
    interlock_residual: Mat | None = None

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
class Triple:
    """A state-space triple: A is n x n, B is n x p, C is q x n."""

    A: Mat
    B: Mat
    C: Mat


class InfeasibleRealizationError(ValueError):
    """No triple is compatible with the given pair; carries the report."""

    def __init__(self, report: FeasibilityReport):
        self.report = report
        super().__init__(
            "no compatible state-space triple; failed conditions: "
            + ", ".join(report.failed)
        )


def reachability_matrix(A: Mat, B: Mat, k: int) -> Mat:
    """``[B, A@B, ..., A^(k-1)@B]`` built by repeated multiplication."""
    if A.rows != A.cols:
        raise DimensionError(f"A must be square, got {A.rows}x{A.cols}")
    if B.rows != A.rows:
        raise DimensionError(f"B has {B.rows} rows but A is {A.rows}x{A.cols}")
    if k < 1:
        raise DimensionError("k must be at least 1")
    blocks = [B]
    for _ in range(k - 1):
        blocks.append(matmul(A, blocks[-1]))
    return hstack(*blocks)


def observability_matrix(A: Mat, C: Mat, m: int) -> Mat:
    """``[C; C@A; ...; C@A^(m-1)]`` built by repeated multiplication."""
    if A.rows != A.cols:
        raise DimensionError(f"A must be square, got {A.rows}x{A.cols}")
    if C.cols != A.rows:
        raise DimensionError(f"C has {C.cols} columns but A is {A.rows}x{A.cols}")
    if m < 1:
        raise DimensionError("m must be at least 1")
    blocks = [C]
    for _ in range(m - 1):
        blocks.append(matmul(blocks[-1], A))
    return vstack(*blocks)


def truncations(prob: RealizationProblem) -> Truncations:
    """The four block slices; empty (n x 0 or 0 x n) when k = 1 or m = 1."""
    p, q, k, m = prob.p, prob.q, prob.k, prob.m
    return Truncations(
        v_lower=slice_cols(prob.V, 0, p * (k - 1)),
        v_upper=slice_cols(prob.V, p, p * k),
        w_lower=slice_rows(prob.W, 0, q * (m - 1)),
        w_upper=slice_rows(prob.W, q, q * m),
    )


def _kernel_condition(tr: Truncations, v_lower_ginv: Mat) -> tuple[bool, Mat]:
    """cond_kernel via two independent routes that must agree."""
    residual = sub(
        matmul(matmul(tr.v_upper, v_lower_ginv), tr.v_lower), tr.v_upper
    )
    by_ginverse = residual.is_zero()
    by_kernel = matmul(tr.v_upper, kernel_basis(tr.v_lower)).is_zero()
    if by_ginverse != by_kernel:
        raise RuntimeError(
            "internal error: g-inverse and kernel-basis routes disagree"
        )
    return by_ginverse, residual


def _image_condition(tr: Truncations, w_lower_ginv: Mat) -> tuple[bool, Mat]:
    """cond_image via two independent routes that must agree."""
    residual = sub(
        matmul(matmul(tr.w_lower, w_lower_ginv), tr.w_upper), tr.w_upper
    )
    by_ginverse = residual.is_zero()
    by_rank = rank(hstack(tr.w_lower, tr.w_upper)) == rank(tr.w_lower)
    if by_ginverse != by_rank:
        raise RuntimeError(
            "internal error: g-inverse and rank routes disagree"
        )
    return by_ginverse, residual


def check_feasibility(prob: RealizationProblem) -> FeasibilityReport:
    """Evaluate all three existence conditions (no early exit).

    Each inclusion condition is computed two independent ways (via a
    {1}-inverse and via a kernel basis / rank comparison) as a
    self-check.  Empty truncations make the conditions vacuously true.
    """
    tr = truncations(prob)
    cond_kernel, kernel_res = _kernel_condition(tr, g1_inverse(tr.v_lower))
    cond_image, image_res = _image_condition(tr, g1_inverse(tr.w_lower))
    interlock_res = sub(
        matmul(tr.w_lower, tr.v_upper), matmul(tr.w_upper, tr.v_lower)
    )
    cond_interlock = interlock_res.is_zero()
    return FeasibilityReport(
        cond_kernel=cond_kernel,
        cond_image=cond_image,
        cond_interlock=cond_interlock,
        kernel_residual=None if cond_kernel else kernel_res,
        image_residual=None if cond_image else image_res,
        interlock_residual=None if cond_interlock else interlock_res,
    )


def _resolve_ginvs(
    tr: Truncations, v_lower_ginv: Mat | None, w_lower_ginv: Mat | None
) -> tuple[Mat, Mat]:
    if v_lower_ginv is None:
        v_lower_ginv = g1_inverse(tr.v_lower)
    elif not is_g1_inverse(tr.v_lower, v_lower_ginv):
        raise InvalidGInverseError(
            "v_lower_ginv is not a {1}-inverse of the lower slice of V"
        )
    if w_lower_ginv is None:
        w_lower_ginv = g1_inverse(tr.w_lower)
    elif not is_g1_inverse(tr.w_lower, w_lower_ginv):
        raise InvalidGInverseError(
            "w_lower_ginv is not a {1}-inverse of the lower slice of W"
        )
    return v_lower_ginv, w_lower_ginv


def realize_family(
    prob: RealizationProblem,
    v_lower_ginv: Mat | None = None,
    w_lower_ginv: Mat | None = None,
) -> SolutionFamily:
    """The affine family of every admissible state matrix A.

    A must solve ``w_lower @ A == w_upper`` and ``A @ v_lower == v_upper``
    simultaneously, so the family is the common-solution set of that
    pair: base point ``ginv(w_lower) @ w_upper +
    (I - ginv(w_lower) @ w_lower) @ v_upper @ ginv(v_lower)`` with
    annihilators ``I - ginv(w_lower) @ w_lower`` (left) and
    ``I - v_lower @ ginv(v_lower)`` (right).

    Raises:
        InfeasibleRealizationError: when any existence condition fails.
    """
    report = check_feasibility(prob)
    if not report.feasible:
        raise InfeasibleRealizationError(report)
    tr = truncations(prob)
    v_lower_ginv, w_lower_ginv = _resolve_ginvs(tr, v_lower_ginv, w_lower_ginv)
    pair = PairProblem(F=tr.w_lower, C=tr.w_upper, H=tr.v_lower, D=tr.v_upper)
    return solution_family(pair, f1=w_lower_ginv, h1=v_lower_ginv)


def realize(
    prob: RealizationProblem,
    Z: Mat | None = None,
    v_lower_ginv: Mat | None = None,
    w_lower_ginv: Mat | None = None,
) -> Triple:
    """One compatible triple: A from the family at Z, B and C the first blocks.

    Z defaults to the zero matrix and must be n x n.  The returned
    triple reproduces V and W exactly through
    :func:`reachability_matrix` and :func:`observability_matrix`.

    Raises:
        InfeasibleRealizationError: when any existence condition fails.
    """
    n = prob.n
    if Z is None:
        Z = zeros(n, n)
    elif Z.shape != (n, n):
        raise DimensionError(f"Z must be {n}x{n}, got {Z.rows}x{Z.cols}")
    family = realize_family(prob, v_lower_ginv, w_lower_ginv)
    A = family.instantiate(Z)
    B = slice_cols(prob.V, 0, prob.p)
    C = slice_rows(prob.W, 0, prob.q)
    return Triple(A=A, B=B, C=C)


def realize_reachability_only(
    V: Mat, p: int, k: int, Z: Mat | None = None
) -> tuple[Mat, Mat]:
    """All pairs (A, B) with ``reachability_matrix(A, B, k) == V``.

    Exists iff ker(v_lower) <= ker(v_upper); then
    ``A = v_upper @ ginv(v_lower) + Z @ (I - v_lower @ ginv(v_lower))``
    and B is the first block of V.  This matches :func:`realize` on a
    problem with m = 1 (no observability constraint).
    """
    if p < 1 or k < 1:
        raise DimensionError("p and k must be positive integers")
    if V.cols != p * k:
        raise DimensionError(f"V has {V.cols} columns, expected p*k = {p * k}")
    n = V.rows
    if n < 1:
        raise DimensionError("V must have at least one row")
    if Z is None:
        Z = zeros(n, n)
    elif Z.shape != (n, n):
        raise DimensionError(f"Z must be {n}x{n}, got {Z.rows}x{Z.cols}")
    tr = Truncations(
        v_lower=slice_cols(V, 0, p * (k - 1)),
        v_upper=slice_cols(V, p, p * k),
        w_lower=zeros(0, n),
        w_upper=zeros(0, n),
    )
    ginv = g1_inverse(tr.v_lower)
    cond_kernel, kernel_res = _kernel_condition(tr, ginv)
    if not cond_kernel:
        raise InfeasibleRealizationError(
            FeasibilityReport(
                cond_kernel=False,
                cond_image=True,
                cond_interlock=True,
                kernel_residual=kernel_res,
            )
        )
    right_ann = sub(identity(n), matmul(tr.v_lower, ginv))
    A = add(matmul(tr.v_upper, ginv), matmul(Z, right_ann))
    return A, slice_cols(V, 0, p)


def realize_observability_only(
    W: Mat, q: int, m: int, Z: Mat | None = None
) -> tuple[Mat, Mat]:
    """All pairs (A, C) with ``observability_matrix(A, C, m) == W``.

    Exists iff im(w_lower) >= im(w_upper); then
    ``A = ginv(w_lower) @ w_upper + (I - ginv(w_lower) @ w_lower) @ Z``
    and C is the first block of W.  This matches :func:`realize` on a
    problem with k = 1 (no reachability constraint).
    """
    if q < 1 or m < 1:
        raise DimensionError("q and m must be positive integers")
    if W.rows != q * m:
        raise DimensionError(f"W has {W.rows} rows, expected q*m = {q * m}")
    n = W.cols
    if n < 1:
        raise DimensionError("W must have at least one column")
    if Z is None:
        Z = zeros(n, n)
    elif Z.shape != (n, n):
        raise DimensionError(f"Z must be {n}x{n}, got {Z.rows}x{Z.cols}")
    tr = Truncations(
        v_lower=zeros(n, 0),
        v_upper=zeros(n, 0),
        w_lower=slice_rows(W, 0, q * (m - 1)),
        w_upper=slice_rows(W, q, q * m),
    )
    ginv = g1_inverse(tr.w_lower)
    cond_image, image_res = _image_condition(tr, ginv)
    if not cond_image:
        raise InfeasibleRealizationError(
            FeasibilityReport(
                cond_kernel=True,
                cond_image=False,
                cond_interlock=True,
                image_residual=image_res,
            )
        )
    left_ann = sub(identity(n), matmul(ginv, tr.w_lower))
    A = add(matmul(ginv, tr.w_upper), matmul(left_ann, Z))
    return A, slice_rows(W, 0, q)
