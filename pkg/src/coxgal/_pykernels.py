"""Pure-Python versions of the hot kernels (fallback for ``_kernels``)."""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def _rows(mat, p):
    return [[int(x) % p for x in row] for row in np.asarray(mat).tolist()]


def rank_mod_p(mat, p: int) -> int:
    """Rank of an integer matrix over GF(p)."""
    a = _rows(mat, p)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = pow(prow[c], p - 2, p)
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                f = f * inv % p
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        r += 1
    return r


def charpoly_mod_p(mat, p: int) -> list[int]:
    """Characteristic polynomial det(xI - M) over GF(p), low -> high."""
    h = _rows(mat, p)
    n = len(h)
    for k in range(n - 2):
        piv = -1
        for i in range(k + 1, n):
            if h[i][k]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != k + 1:
            h[piv], h[k + 1] = h[k + 1], h[piv]
            for row in h:
                row[piv], row[k + 1] = row[k + 1], row[piv]
        inv = pow(h[k + 1][k], p - 2, p)
        for i in range(k + 2, n):
            u = h[i][k] * inv % p
            if not u:
                continue
            ri, rk = h[i], h[k + 1]
            for j in range(n):
                if rk[j]:
                    ri[j] = (ri[j] - u * rk[j]) % p
            for row in h:
                if row[i]:
                    row[k + 1] = (row[k + 1] + u * row[i]) % p
    polys = [[1]]
    for k in range(n):
        nxt = [0] + polys[k]  # x * P_k
        for d, c in enumerate(polys[k]):
            nxt[d] = (nxt[d] - h[k][k] * c) % p
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * h[i + 1][i] % p
            coef = h[i][k] * prod % p
            if coef:
                for d, c in enumerate(polys[i]):
                    nxt[d] = (nxt[d] - coef * c) % p
        polys.append(nxt)
    return polys[n]


def weyl_orbit(start, cartan, bound: int):
    """Orbit of an integer (rank x d) block under simple reflections.

    Reflection i sends row j to ``row_j - cartan[i][j] * row_i``.  Returns a
    (count, rank, d) array, or None when the orbit exceeds ``bound``.
    """
    start = np.asarray(start, dtype=np.int64)
    cartan = np.asarray(cartan, dtype=np.int64)
    rank = cartan.shape[0]
    first = tuple(map(tuple, start.tolist()))
    seen = {first}
    order = [first]
    frontier = [first]
    cols = [cartan[i].tolist() for i in range(rank)]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(rank):
                xi = x[i]
                if not any(xi):
                    continue
                ci = cols[i]
                y = tuple(
                    tuple(a - ci[j] * b for a, b in zip(x[j], xi)) if ci[j] else x[j]
                    for j in range(rank)
                )
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if len(order) > bound:
                        return None
        frontier = nxt
    return np.array(order, dtype=np.int64).reshape(len(order), rank, start.shape[1])
