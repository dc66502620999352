# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled rational matrix kernels.

Same contract and pivot order as ``reachobs._pykernels``; values stay
arbitrary-precision Python ints, only the loop machinery is compiled.
Results are bit-identical to the pure backend.
"""

from math import gcd


cdef inline tuple _mul(n1, d1, n2, d2):
    if n1 == 0 or n2 == 0:
        return 0, 1
    g1 = gcd(n1, d2)
    g2 = gcd(n2, d1)
    return (n1 // g1) * (n2 // g2), (d1 // g2) * (d2 // g1)


cdef inline tuple _add(n1, d1, n2, d2):
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


cdef inline tuple _sub(n1, d1, n2, d2):
    return _add(n1, d1, -n2, d2)


def mat_mul(tuple a_num, tuple a_den, Py_ssize_t rows_a, Py_ssize_t cols_a,
            tuple b_num, tuple b_den, Py_ssize_t cols_b):
    """Row-major product; see the pure-Python kernel for the contract."""
    cdef list c_num = [0] * (rows_a * cols_b)
    cdef list c_den = [1] * (rows_a * cols_b)
    cdef Py_ssize_t i, j, l, arow, crow
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
                pn, pd = _mul(n1, a_den[arow + l], n2, b_den[l * cols_b + j])
                acc_n, acc_d = _add(acc_n, acc_d, pn, pd)
            if acc_n != 0:
                c_num[crow + j] = acc_n
                c_den[crow + j] = acc_d
    return c_num, c_den


def rref_decompose(tuple m_num, tuple m_den, Py_ssize_t rows, Py_ssize_t cols):
    """Gauss-Jordan RREF with row transform; see the pure-Python kernel."""
    cdef list r_num = list(m_num)
    cdef list r_den = list(m_den)
    cdef list t_num = [0] * (rows * rows)
    cdef list t_den = [1] * (rows * rows)
    cdef list pivot_cols = []
    cdef Py_ssize_t i, col, r, c, piv, found, a, b, base, tbase, rbase, rtbase
    for i in range(rows):
        t_num[i * rows + i] = 1
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
            if pn > 0:
                inv_n, inv_d = pd, pn
            else:
                inv_n, inv_d = -pd, -pn
            for c in range(col, cols):
                if r_num[base + c] != 0:
                    r_num[base + c], r_den[base + c] = _mul(
                        r_num[base + c], r_den[base + c], inv_n, inv_d
                    )
            for c in range(rows):
                if t_num[tbase + c] != 0:
                    t_num[tbase + c], t_den[tbase + c] = _mul(
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
                pn2, pd2 = _mul(fn, fd, r_num[base + c], r_den[base + c])
                r_num[rbase + c], r_den[rbase + c] = _sub(
                    r_num[rbase + c], r_den[rbase + c], pn2, pd2
                )
            rtbase = r * rows
            for c in range(rows):
                if t_num[tbase + c] == 0:
                    continue
                pn2, pd2 = _mul(fn, fd, t_num[tbase + c], t_den[tbase + c])
                t_num[rtbase + c], t_den[rtbase + c] = _sub(
                    t_num[rtbase + c], t_den[rtbase + c], pn2, pd2
                )
        pivot_cols.append(col)
        piv += 1
    return r_num, r_den, pivot_cols, t_num, t_den
