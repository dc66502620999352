"""Shared generators for randomized tests."""

from __future__ import annotations

from fractions import Fraction
from random import Random

from reachobs.exact import Mat, add, g1_inverse, identity, matmul, random_int_matrix, sub
from reachobs.pairs import PairProblem
from reachobs.realization import (
    RealizationProblem,
    observability_matrix,
    reachability_matrix,
)


def rand_fraction_mat(rng: Random, rows: int, cols: int) -> Mat:
    """Random matrix with entries num/den, num in [-9, 9], den in [1, 9]."""
    entries = [
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(rows * cols)
    ]
    return Mat(rows, cols, entries)


def rand_witness_pair(rng: Random, max_dim: int = 6) -> tuple[PairProblem, Mat]:
    """A guaranteed-feasible pair problem built around a witness solution."""
    s = rng.randint(0, max_dim)
    t = rng.randint(0, max_dim)
    p = rng.randint(0, max_dim)
    q = rng.randint(0, max_dim)
    x_hat = random_int_matrix(t, p, rng, -4, 4)
    f = random_int_matrix(s, t, rng, -4, 4)
    h = random_int_matrix(p, q, rng, -4, 4)
    prob = PairProblem(F=f, C=matmul(f, x_hat), H=h, D=matmul(x_hat, h))
    return prob, x_hat


def rand_free_pair(rng: Random, max_dim: int = 6) -> PairProblem:
    """Independently random (usually infeasible) pair problem."""
    s = rng.randint(0, max_dim)
    t = rng.randint(0, max_dim)
    p = rng.randint(0, max_dim)
    q = rng.randint(0, max_dim)
    return PairProblem(
        F=random_int_matrix(s, t, rng, -3, 3),
        C=random_int_matrix(s, p, rng, -3, 3),
        H=random_int_matrix(p, q, rng, -3, 3),
        D=random_int_matrix(t, q, rng, -3, 3),
    )


def rand_triple(
    rng: Random, max_n: int = 6, max_p: int = 3, max_q: int = 3, lo: int = -3, hi: int = 3
) -> tuple[Mat, Mat, Mat]:
    n = rng.randint(1, max_n)
    p = rng.randint(1, max_p)
    q = rng.randint(1, max_q)
    return (
        random_int_matrix(n, n, rng, lo, hi),
        random_int_matrix(n, p, rng, lo, hi),
        random_int_matrix(q, n, rng, lo, hi),
    )


def rand_witness_problem(
    rng: Random,
    max_n: int = 6,
    max_p: int = 3,
    max_q: int = 3,
    max_k: int = 4,
    max_m: int = 4,
    lo: int = -3,
    hi: int = 3,
) -> tuple[RealizationProblem, Mat, Mat, Mat]:
    """A guaranteed-feasible realization problem built from a witness triple."""
    a, b, c = rand_triple(rng, max_n, max_p, max_q, lo, hi)
    k = rng.randint(1, max_k)
    m = rng.randint(1, max_m)
    prob = RealizationProblem(
        V=reachability_matrix(a, b, k),
        W=observability_matrix(a, c, m),
        p=b.cols,
        q=c.rows,
        k=k,
        m=m,
    )
    return prob, a, b, c


def alt_g1_inverse(mat: Mat, rng: Random) -> Mat:
    """A different {1}-inverse: Y + (I - Y F) U + V (I - F Y) for random U, V."""
    y = g1_inverse(mat)
    u = random_int_matrix(mat.cols, mat.rows, rng, -2, 2)
    v = random_int_matrix(mat.cols, mat.rows, rng, -2, 2)
    left = sub(identity(mat.cols), matmul(y, mat))
    right = sub(identity(mat.rows), matmul(mat, y))
    return add(add(y, matmul(left, u)), matmul(v, right))


def mat_rows(mat: Mat) -> list[list[Fraction]]:
    return mat.to_rows()
