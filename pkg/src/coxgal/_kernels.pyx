# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: modular rank, modular characteristic polynomial,
Weyl-orbit enumeration.  Signatures mirror ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

BACKEND = "cython"


cdef inline int64_t _powmod(int64_t a, int64_t e, int64_t p) nogil:
    cdef int64_t r = 1
    a %= p
    if a < 0:
        a += p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


cdef cnp.ndarray _reduced(mat, int64_t p):
    cdef cnp.ndarray a = np.array(mat, dtype=np.int64, copy=True, order="C")
    a %= p
    return a


def rank_mod_p(mat, int64_t p):
    cdef cnp.ndarray arr = _reduced(mat, p)
    if arr.ndim != 2 or arr.shape[0] == 0:
        return 0
    cdef int64_t[:, ::1] a = arr
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    with nogil:
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _powmod(a[r, c], p - 2, p)
            for i in range(r + 1, nrows):
                f = a[i, c]
                if f != 0:
                    f = f * inv % p
                    for j in range(c, ncols):
                        if a[r, j] != 0:
                            a[i, j] = (a[i, j] - f * a[r, j]) % p
                            if a[i, j] < 0:
                                a[i, j] += p
            r += 1
    return int(r)


def charpoly_mod_p(mat, int64_t p):
    cdef cnp.ndarray arr = _reduced(mat, p)
    cdef int64_t[:, ::1] h = arr
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t k, i, j, piv, d
    cdef int64_t inv, u, tmp, prod, coef
    cdef cnp.ndarray parr = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef int64_t[:, ::1] polys = parr
    with nogil:
        for k in range(n - 2 if n >= 2 else 0):
            piv = -1
            for i in range(k + 1, n):
                if h[i, k] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != k + 1:
                for j in range(n):
                    tmp = h[piv, j]
                    h[piv, j] = h[k + 1, j]
                    h[k + 1, j] = tmp
                for j in range(n):
                    tmp = h[j, piv]
                    h[j, piv] = h[j, k + 1]
                    h[j, k + 1] = tmp
            inv = _powmod(h[k + 1, k], p - 2, p)
            for i in range(k + 2, n):
                u = h[i, k] * inv % p
                if u == 0:
                    continue
                for j in range(n):
                    if h[k + 1, j] != 0:
                        h[i, j] = (h[i, j] - u * h[k + 1, j]) % p
                        if h[i, j] < 0:
                            h[i, j] += p
                for j in range(n):
                    if h[j, i] != 0:
                        h[j, k + 1] = (h[j, k + 1] + u * h[j, i]) % p
        polys[0, 0] = 1
        for k in range(n):
            # x * P_k
            for d in range(k + 1):
                polys[k + 1, d + 1] = polys[k, d]
            polys[k + 1, 0] = 0
            for d in range(k + 1):
                polys[k + 1, d] = (polys[k + 1, d] - h[k, k] * polys[k, d]) % p
                if polys[k + 1, d] < 0:
                    polys[k + 1, d] += p
            prod = 1
            for i in range(k - 1, -1, -1):
                prod = prod * h[i + 1, i] % p
                coef = h[i, k] * prod % p
                if coef != 0:
                    for d in range(i + 1):
                        polys[k + 1, d] = (polys[k + 1, d] - coef * polys[i, d]) % p
                        if polys[k + 1, d] < 0:
                            polys[k + 1, d] += p
    return [int(x) for x in parr[n, : n + 1]]


def weyl_orbit(start, cartan, Py_ssize_t bound):
    cdef cnp.ndarray s0 = np.ascontiguousarray(start, dtype=np.int64)
    cdef cnp.ndarray cmat = np.ascontiguousarray(cartan, dtype=np.int64)
    cdef Py_ssize_t rank = s0.shape[0], dim = s0.shape[1]
    cdef Py_ssize_t width = rank * dim
    cdef int64_t[:, ::1] cart = cmat
    cdef Py_ssize_t cap = 1024
    cdef cnp.ndarray store = np.empty((cap, width), dtype=np.int64)
    cdef int64_t[:, ::1] buf = store
    cdef cnp.ndarray yarr = np.empty(width, dtype=np.int64)
    cdef int64_t[::1] y = yarr
    cdef Py_ssize_t count = 1, head = 0, i, j, q, nz
    cdef int64_t cij
    cdef int64_t[::1] flat = s0.reshape(width)
    for q in range(width):
        buf[0, q] = flat[q]
    seen = {s0.tobytes()}
    while head < count:
        for i in range(rank):
            nz = 0
            for q in range(dim):
                if buf[head, i * dim + q] != 0:
                    nz = 1
                    break
            if not nz:
                continue
            for j in range(rank):
                cij = cart[i, j]
                for q in range(dim):
                    y[j * dim + q] = buf[head, j * dim + q] - cij * buf[head, i * dim + q]
            key = yarr.tobytes()
            if key in seen:
                continue
            seen.add(key)
            if count >= bound:
                return None
            if count == cap:
                cap *= 2
                store = np.resize(store, (cap, width))
                buf = store
            buf[count, :] = y
            count += 1
        head += 1
    return store[:count].reshape(count, rank, dim).copy()
