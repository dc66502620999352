"""Common solutions of the matrix-equation pair ``F @ X == C`` and ``X @ H == D``.

For F (s x t), C (s x p), H (p x q), D (t x q) the unknown X lives in
K^(t x p).  The pair has a common solution exactly when each equation
is separately consistent and ``C @ H == F @ D``; in that case the full
solution set is the affine family

    X = X0 + (I - F1 @ F) @ Z @ (I - H @ H1),    Z arbitrary t x p,

where F1, H1 are {1}-inverses and X0 = F1 @ C + (I - F1 @ F) @ D @ H1.
Everything here is exact; infeasibility comes with a residual
certificate naming the violated conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import (
    DimensionError,
    Mat,
    add,
    g1_inverse,
    identity,
    is_g1_inverse,
    matmul,
    sub,
)

__all__ = [
    "InvalidGInverseError",
    "InfeasiblePairError",
    "PairProblem",
    "PairCertificate",
    "SolutionFamily",
    "left_consistent",
    "right_consistent",
    "compatible",
    "certificate",
    "has_common_solution",
    "particular_solution",
    "particular_solution_alt",
    "solution_family",
]


class InvalidGInverseError(ValueError):
    """A supplied matrix is not a {1}-inverse of its target."""


@dataclass(frozen=True)
class PairProblem:
    """The data (F, C, H, D) of the pair ``F @ X == C``, ``X @ H == D``.

    Shapes are validated so that both equations constrain the same
    t x p unknown.  Zero dimensions are allowed; s == 0 means "no left
    equation" and q == 0 means "no right equation".
    """

    F: Mat
    C: Mat
    H: Mat
    D: Mat

    def __post_init__(self) -> None:
        if self.F.rows != self.C.rows:
            raise DimensionError(
                f"F has {self.F.rows} rows but C has {self.C.rows}"
            )
        if self.H.rows != self.C.cols:
            raise DimensionError(
                f"H has {self.H.rows} rows but C has {self.C.cols} columns"
            )
        if self.D.rows != self.F.cols:
            raise DimensionError(
                f"D has {self.D.rows} rows but F has {self.F.cols} columns"
            )
        if self.D.cols != self.H.cols:
            raise DimensionError(
                f"D has {self.D.cols} columns but H has {self.H.cols}"
            )

    @property
    def s(self) -> int:
        return self.F.rows

    @property
    def t(self) -> int:
        return self.F.cols

    @property
    def p(self) -> int:
        return self.C.cols

    @property
    def q(self) -> int:
        return self.H.cols


_CONDITION_NAMES = ("left_consistent", "right_consistent", "compatible")


@dataclass(frozen=True)
class PairCertificate:
    """Residuals of the three solvability conditions (all zero iff solvable).

    ``left_residual = F @ F1 @ C - C``, ``right_residual = D @ H1 @ H - D``
    and ``compat_residual = C @ H - F @ D``.  The booleans are
    independent of which {1}-inverses were used.
    """

    left_residual: Mat
    right_residual: Mat
    compat_residual: Mat

    @property
    def failed(self) -> tuple[str, ...]:
        out = []
        if not self.left_residual.is_zero():
            out.append("left_consistent")
        if not self.right_residual.is_zero():
            out.append("right_consistent")
        if not self.compat_residual.is_zero():
            out.append("compatible")
        return tuple(out)

    @property
    def ok(self) -> bool:
        return not self.failed


class InfeasiblePairError(ValueError):
    """The pair has no common solution; carries the residual certificate."""

    def __init__(self, cert: PairCertificate):
        self.certificate = cert
        super().__init__(
            "no common solution; failed conditions: " + ", ".join(cert.failed)
        )


def _resolve_g1(m: Mat, supplied: Mat | None, name: str) -> Mat:
    if supplied is None:
        return g1_inverse(m)
    if not is_g1_inverse(m, supplied):
        raise InvalidGInverseError(f"{name} is not a {{1}}-inverse of its matrix")
    return supplied


def left_consistent(F: Mat, C: Mat, f1: Mat | None = None) -> bool:
    """Whether ``F @ X == C`` is solvable, tested as ``F @ F1 @ C == C``."""
    if F.rows != C.rows:
        raise DimensionError(f"F has {F.rows} rows but C has {C.rows}")
    f1 = _resolve_g1(F, f1, "f1")
    return matmul(matmul(F, f1), C) == C


def right_consistent(H: Mat, D: Mat, h1: Mat | None = None) -> bool:
    """Whether ``X @ H == D`` is solvable, tested as ``D @ H1 @ H == D``."""
    if H.cols != D.cols:
        raise DimensionError(f"H has {H.cols} columns but D has {D.cols}")
    h1 = _resolve_g1(H, h1, "h1")
    return matmul(matmul(D, h1), H) == D


def compatible(prob: PairProblem) -> bool:
    """The coupling condition ``C @ H == F @ D``."""
    return matmul(prob.C, prob.H) == matmul(prob.F, prob.D)


def certificate(
    prob: PairProblem, f1: Mat | None = None, h1: Mat | None = None
) -> PairCertificate:
    """Residuals of all three solvability conditions (no early exit)."""
    f1 = _resolve_g1(prob.F, f1, "f1")
    h1 = _resolve_g1(prob.H, h1, "h1")
    left = sub(matmul(matmul(prob.F, f1), prob.C), prob.C)
    right = sub(matmul(matmul(prob.D, h1), prob.H), prob.D)
    compat = sub(matmul(prob.C, prob.H), matmul(prob.F, prob.D))
    return PairCertificate(left, right, compat)


def has_common_solution(
    prob: PairProblem, f1: Mat | None = None, h1: Mat | None = None
) -> bool:
    """Whether the two equations share a solution."""
    return certificate(prob, f1, h1).ok


def particular_solution(
    prob: PairProblem, f1: Mat | None = None, h1: Mat | None = None
) -> Mat:
    """One common solution: ``X0 = F1 @ C + (I - F1 @ F) @ D @ H1``.

    Raises:
        InfeasiblePairError: when no common solution exists.
        InvalidGInverseError: when a supplied g-inverse is not one.
    """
    f1 = _resolve_g1(prob.F, f1, "f1")
    h1 = _resolve_g1(prob.H, h1, "h1")
    cert = certificate(prob, f1, h1)
    if not cert.ok:
        raise InfeasiblePairError(cert)
    left_proj = sub(identity(prob.t), matmul(f1, prob.F))
    return add(
        matmul(f1, prob.C), matmul(matmul(left_proj, prob.D), h1)
    )


def particular_solution_alt(
    prob: PairProblem, f1: Mat | None = None, h1: Mat | None = None
) -> Mat:
    """The mirror form ``X0 = D @ H1 + F1 @ C @ (I - H @ H1)``.

    Equal to :func:`particular_solution` for the same pair of
    {1}-inverses on every feasible problem.
    """
    f1 = _resolve_g1(prob.F, f1, "f1")
    h1 = _resolve_g1(prob.H, h1, "h1")
    cert = certificate(prob, f1, h1)
    if not cert.ok:
        raise InfeasiblePairError(cert)
    right_proj = sub(identity(prob.p), matmul(prob.H, h1))
    return add(
        matmul(prob.D, h1), matmul(matmul(f1, prob.C), right_proj)
    )


@dataclass(frozen=True)
class SolutionFamily:
    """Affine parametrization ``x0 + left_ann @ Z @ right_ann`` of all solutions.

    ``left_ann = I - F1 @ F`` and ``right_ann = I - H @ H1`` are
    idempotent and annihilate F (on the right) and H (on the left), so
    every instance solves both equations; conversely every common
    solution is hit (take ``Z = X - x0``).
    """

    x0: Mat
    left_ann: Mat
    right_ann: Mat

    def instantiate(self, z: Mat) -> Mat:
        """The member ``x0 + left_ann @ z @ right_ann``."""
        if z.shape != self.x0.shape:
            raise DimensionError(
                f"free parameter must be {self.x0.rows}x{self.x0.cols},"
                f" got {z.rows}x{z.cols}"
            )
        return add(self.x0, matmul(matmul(self.left_ann, z), self.right_ann))

    def contains(self, x: Mat) -> bool:
        """Membership test; true exactly for the common solutions."""
        if x.shape != self.x0.shape:
            raise DimensionError(
                f"candidate must be {self.x0.rows}x{self.x0.cols},"
                f" got {x.rows}x{x.cols}"
            )
        return self.instantiate(sub(x, self.x0)) == x

    @property
    def is_point(self) -> bool:
        """True when the family is a single solution."""
        return self.left_ann.is_zero() or self.right_ann.is_zero()


def solution_family(
    prob: PairProblem, f1: Mat | None = None, h1: Mat | None = None
) -> SolutionFamily:
    """The full solution set of a feasible pair.

    Raises:
        InfeasiblePairError: when no common solution exists.
    """
    f1 = _resolve_g1(prob.F, f1, "f1")
    h1 = _resolve_g1(prob.H, h1, "h1")
    cert = certificate(prob, f1, h1)
    if not cert.ok:
        raise InfeasiblePairError(cert)
    left_proj = sub(identity(prob.t), matmul(f1, prob.F))
    x0 = add(matmul(f1, prob.C), matmul(matmul(left_proj, prob.D), h1))
    right_ann = sub(identity(prob.p), matmul(prob.H, h1))
    return SolutionFamily(x0=x0, left_ann=left_proj, right_ann=right_ann)

