"""Backend parity: compiled and pure kernels must agree bit for bit."""

from __future__ import annotations

from random import Random

import pytest

from reachobs import _pykernels
from reachobs._backend import kernel_backend

_ckernels = pytest.importorskip(
    "reachobs._ckernels", reason="compiled kernels not built"
)


def _rand_flat(rng: Random, size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    from math import gcd

    nums = []
    dens = []
    for _ in range(size):
        n = rng.randint(-9, 9)
        d = rng.randint(1, 9)
        g = gcd(n, d)
        if n == 0:
            n, d = 0, 1
        elif g > 1:
            n, d = n // g, d // g
        nums.append(n)
        dens.append(d)
    return tuple(nums), tuple(dens)


def test_backend_reports_a_known_name():
    assert kernel_backend() in ("c", "python")


def test_mat_mul_parity():
    rng = Random(2024)
    for _ in range(300):
        ra = rng.randint(0, 6)
        ca = rng.randint(0, 6)
        cb = rng.randint(0, 6)
        an, ad = _rand_flat(rng, ra * ca)
        bn, bd = _rand_flat(rng, ca * cb)
        pure = _pykernels.mat_mul(an, ad, ra, ca, bn, bd, cb)
        fast = _ckernels.mat_mul(an, ad, ra, ca, bn, bd, cb)
        assert list(pure[0]) == list(fast[0])
        assert list(pure[1]) == list(fast[1])


def test_rref_parity():
    rng = Random(77)
    for _ in range(300):
        rows = rng.randint(0, 6)
        cols = rng.randint(0, 6)
        mn, md = _rand_flat(rng, rows * cols)
        pure = _pykernels.rref_decompose(mn, md, rows, cols)
        fast = _ckernels.rref_decompose(mn, md, rows, cols)
        for a, b in zip(pure, fast):
            assert list(a) == list(b)
