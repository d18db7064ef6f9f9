"""Exact integer matrix routines built on the modular kernels.

Rank and characteristic polynomial are computed modulo enough word-sized
primes to be certified by a Hadamard-type bound; the integer kernel uses
unimodular row reduction.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .. import kernels

__all__ = ["primes", "rank_int", "charpoly_int", "integer_kernel", "hadamard_bound"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 7, 61):  # deterministic below 4.7e9
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def primes(count: int) -> tuple[int, ...]:
    """The ``count`` largest primes below 2**31."""
    out = []
    n = (1 << 31) - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


def _as_rows(mat) -> list[list[int]]:
    if isinstance(mat, np.ndarray):
        return [[int(x) for x in row] for row in mat.tolist()]
    return [[int(x) for x in row] for row in mat]


def _for_kernel(rows: list[list[int]], p: int | None = None):
    """int64 array for the kernels, reducing mod p first if entries are huge."""
    big = max((abs(x) for row in rows for x in row), default=0)
    if big < (1 << 62):
        return np.array(rows, dtype=np.int64).reshape(len(rows), len(rows[0]) if rows else 0)
    assert p is not None
    return np.array([[x % p for x in row] for row in rows], dtype=np.int64)


def hadamard_bound(rows: list[list[int]], k: int) -> int:
    """Upper bound on |det| of any k x k submatrix (product of k largest row norms)."""
    norms = sorted((math.isqrt(sum(x * x for x in row)) + 1 for row in rows), reverse=True)
    out = 1
    for v in norms[:k]:
        out *= v
    return out


def rank_int(mat) -> int:
    """Exact rank over Q of an integer matrix."""
    rows = _as_rows(mat)
    if not rows or not rows[0]:
        return 0
    full = min(len(rows), len(rows[0]))
    bound = hadamard_bound(rows, full)
    best = 0
    prod = 1
    small = max(abs(x) for row in rows for x in row) < (1 << 62)
    arr = _for_kernel(rows) if small else None
    for p in primes(64):
        r = kernels.rank_mod_p(arr if small else _for_kernel(rows, p), p)
        best = max(best, r)
        prod *= p
        if best == full or prod > bound:
            return best
    raise ArithmeticError("prime supply exhausted in rank_int")  # pragma: no cover


def _charpoly_bound(rows: list[list[int]]) -> int:
    n = len(rows)
    norm = max((math.isqrt(sum(x * x for x in row)) + 1 for row in rows), default=1)
    return max(math.comb(n, k) * norm**k for k in range(n + 1))


def charpoly_int(mat) -> list[int]:
    """Characteristic polynomial det(xI - M) of an integer matrix, low -> high."""
    rows = _as_rows(mat)
    n = len(rows)
    if n == 0:
        return [1]
    bound = 2 * _charpoly_bound(rows) + 1
    acc = [0] * (n + 1)
    modulus = 1
    small = max(abs(x) for row in rows for x in row) < (1 << 62)
    arr = _for_kernel(rows) if small else None
    for p in primes(256):
        res = kernels.charpoly_mod_p(arr if small else _for_kernel(rows, p), p)
        if modulus == 1:
            acc = [int(c) for c in res]
        else:
            inv = pow(modulus, -1, p)
            acc = [a + modulus * (((r - a) * inv) % p) for a, r in zip(acc, res)]
        modulus *= p
        if modulus > bound:
            break
    half = modulus // 2
    return [a - modulus if a > half else a for a in acc]


def integer_kernel(mat, ncols: int | None = None) -> list[list[int]]:
    """Z-basis of {v in Z^n : M v = 0} by unimodular reduction of [M^T | I]."""
    rows = _as_rows(mat)
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    m = len(rows)
    aug = [[rows[i][j] for i in range(m)] + [int(j == k) for k in range(n)] for j in range(n)]
    r = 0
    for c in range(m):
        while True:
            nz = [i for i in range(r, n) if aug[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(aug[i][c]))
            aug[r], aug[piv] = aug[piv], aug[r]
            done = True
            for i in range(r + 1, n):
                if aug[i][c]:
                    q = aug[i][c] // aug[r][c]
                    aug[i] = [a - q * b for a, b in zip(aug[i], aug[r])]
                    if aug[i][c]:
                        done = False
            if done:
                r += 1
                break
        if r == n:
            break
    return [row[m:] for row in aug[r:]]
