"""Independent brute-force oracles for the test suite.

Deliberately decoupled from the library: plain ``fractions.Fraction``
arithmetic and a self-contained forward elimination, so these routines
cannot share a bug with the kernels they are used to check.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)


def linear_system_consistent(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> bool:
    """Whether ``A x == b`` has a solution, by forward elimination."""
    aug = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    n_rows = len(aug)
    n_cols = len(rows[0]) if rows else 0
    piv = 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(piv, n_rows):
            if aug[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        aug[piv], aug[pivot_row] = aug[pivot_row], aug[piv]
        head = aug[piv][col]
        for r in range(piv + 1, n_rows):
            factor = aug[r][col]
            if factor == 0:
                continue
            scale = factor / head
            for c in range(col, n_cols + 1):
                aug[r][c] -= scale * aug[piv][c]
        piv += 1
        if piv == n_rows:
            break
    for r in range(piv, n_rows):
        if aug[r][n_cols] != 0:
            return False
    return True


def pair_system_consistent(
    f: list[list[Fraction]],
    c: list[list[Fraction]],
    h: list[list[Fraction]],
    d: list[list[Fraction]],
    s: int,
    t: int,
    p: int,
    q: int,
) -> bool:
    """Whether ``F @ X == C`` and ``X @ H == D`` share a t x p solution X.

    F is s x t, C is s x p, H is p x q, D is t x q.  Dimensions are
    passed explicitly because nested lists cannot express 0 x c shapes.
    Stacks both equations as one linear system in the t*p entries of X
    (row-major: unknown (i, j) sits at index i*p + j) and eliminates.
    """
    unknowns = t * p
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for a in range(s):
        for j in range(p):
            row = [ZERO] * unknowns
            for l in range(t):
                row[l * p + j] = f[a][l]
            rows.append(row)
            rhs.append(c[a][j])
    for i in range(t):
        for b in range(q):
            row = [ZERO] * unknowns
            for l in range(p):
                row[i * p + l] = h[l][b]
            rows.append(row)
            rhs.append(d[i][b])
    if not rows:
        return True
    return linear_system_consistent(rows, rhs)
