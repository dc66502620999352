"""Pure-Python rational matrix kernels.

A matrix is a flat row-major sequence of canonical fractions held as two
parallel sequences of Python ints: numerators, and positive denominators
coprime to them.  These two functions are the hot paths of the whole
package; ``reachobs._ckernels`` is a compiled version with the same
pivot order, so both backends return bit-identical results.
"""

from __future__ import annotations

from math import gcd

__all__ = [
    "mat_mul",
    "rref_decompose",
    "rat_add",
    "rat_sub",
    "rat_mul",
    "rat_div",
]


def rat_mul(n1: int, d1: int, n2: int, d2: int) -> tuple[int, int]:
    """Product of two canonical fractions, canonical."""
    if n1 == 0 or n2 == 0:
        return 0, 1
    g1 = gcd(n1, d2)
    g2 = gcd(n2, d1)
    return (n1 // g1) * (n2 // g2), (d1 // g2) * (d2 // g1)


def rat_add(n1: int, d1: int, n2: int, d2: int) -> tuple[int, int]:
    """Sum of two canonical fractions, canonical."""
    if n1 == 0:
        return n2, d2
    if n2 == 0:
        return n1, d1
    g = gcd(d1, d2)
    if g == 1:
        return n1 * d2 + n2 * d1, d1 * d2
    s = d1 // g
    t = n1 * (d2 // g) + n2 * s
    g2 = gcd(t, g)
    if g2 == 1:
        return t, s * d2
    return t // g2, s * (d2 // g2)


def rat_sub(n1: int, d1: int, n2: int, d2: int) -> tuple[int, int]:
    """Difference of two canonical fractions, canonical."""
    return rat_add(n1, d1, -n2, d2)


def rat_div(n1: int, d1: int, n2: int, d2: int) -> tuple[int, int]:
    """Quotient of two canonical fractions; the divisor must be nonzero."""
    if n2 == 0:
        raise ZeroDivisionError("rational division by zero")
    if n1 == 0:
        return 0, 1
    g1 = gcd(n1, n2)
    g2 = gcd(d2, d1)
    n = (n1 // g1) * (d2 // g2)
    d = (d1 // g2) * (n2 // g1)
    if d < 0:
        return -n, -d
    return n, d


def mat_mul(a_num, a_den, rows_a, cols_a, b_num, b_den, cols_b):
    """Row-major product of an (rows_a x cols_a) and a (cols_a x cols_b) matrix.

    Returns ``(c_num, c_den)`` as new lists.  An empty inner dimension
    yields the zero matrix.
    """
    c_num = [0] * (rows_a * cols_b)
    c_den = [1] * (rows_a * cols_b)
    for i in range(rows_a):
        arow = i * cols_a
        crow = i * cols_b
        for j in range(cols_b):
            acc_n = 0
            acc_d = 1
            for l in range(cols_a):
                n1 = a_num[arow + l]
                if n1 == 0:
                    continue
                n2 = b_num[l * cols_b + j]
                if n2 == 0:
                    continue
                pn, pd = rat_mul(n1, a_den[arow + l], n2, b_den[l * cols_b + j])
                acc_n, acc_d = rat_add(acc_n, acc_d, pn, pd)
            if acc_n != 0:
                c_num[crow + j] = acc_n
                c_den[crow + j] = acc_d
    return c_num, c_den


def rref_decompose(m_num, m_den, rows, cols):
    """Reduced row echelon form with the accumulated row transform.

    Gauss-Jordan elimination; pivots are found by scanning rows
    top-down within columns left to right (first nonzero entry wins).
    Returns ``(r_num, r_den, pivot_cols, t_num, t_den)`` where the
    ``t_*`` lists hold an invertible rows x rows matrix T with
    T @ M == R exactly.
    """
    r_num = list(m_num)
    r_den = list(m_den)
    t_num = [0] * (rows * rows)
    t_den = [1] * (rows * rows)
    for i in range(rows):
        t_num[i * rows + i] = 1
    pivot_cols = []
    piv = 0
    for col in range(cols):
        if piv == rows:
            break
        found = -1
        for r in range(piv, rows):
            if r_num[r * cols + col] != 0:
                found = r
                break
        if found < 0:
            continue
        if found != piv:
            a = piv * cols
            b = found * cols
            r_num[a : a + cols], r_num[b : b + cols] = (
                r_num[b : b + cols],
                r_num[a : a + cols],
            )
            r_den[a : a + cols], r_den[b : b + cols] = (
                r_den[b : b + cols],
                r_den[a : a + cols],
            )
            a = piv * rows
            b = found * rows
            t_num[a : a + rows], t_num[b : b + rows] = (
                t_num[b : b + rows],
                t_num[a : a + rows],
            )
            t_den[a : a + rows], t_den[b : b + rows] = (
                t_den[b : b + rows],
                t_den[a : a + rows],
            )
        base = piv * cols
        tbase = piv * rows
        pn = r_num[base + col]
        pd = r_den[base + col]
        if pn != pd:
            # Scale the pivot row by 1/pivot.  Entries left of `col` in
            # this row are zero already (echelon invariant).
            inv_n, inv_d = (pd, pn) if pn > 0 else (-pd, -pn)
            for c in range(col, cols):
                if r_num[base + c] != 0:
                    r_num[base + c], r_den[base + c] = rat_mul(
                        r_num[base + c], r_den[base + c], inv_n, inv_d
                    )
            for c in range(rows):
                if t_num[tbase + c] != 0:
                    t_num[tbase + c], t_den[tbase + c] = rat_mul(
                        t_num[tbase + c], t_den[tbase + c], inv_n, inv_d
                    )
        for r in range(rows):
            if r == piv:
                continue
            rbase = r * cols
            fn = r_num[rbase + col]
            if fn == 0:
                continue
            fd = r_den[rbase + col]
            for c in range(col, cols):
                if r_num[base + c] == 0:
                    continue
                pn2, pd2 = rat_mul(fn, fd, r_num[base + c], r_den[base + c])
                r_num[rbase + c], r_den[rbase + c] = rat_sub(
                    r_num[rbase + c], r_den[rbase + c], pn2, pd2
                )
            rtbase = r * rows
            for c in range(rows):
                if t_num[tbase + c] == 0:
                    continue
                pn2, pd2 = rat_mul(fn, fd, t_num[tbase + c], t_den[tbase + c])
                t_num[rtbase + c], t_den[rtbase + c] = rat_sub(
                    t_num[rtbase + c], t_den[rtbase + c], pn2, pd2
                )
        pivot_cols.append(col)
        piv += 1
    return r_num, r_den, pivot_cols, t_num, t_den
