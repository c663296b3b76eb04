# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel over F_p.

Mirrors :mod:`natfull._kernels_py` exactly; the two are interchangeable.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef long _inv(long a, long p):
    cdef long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_inplace(cnp.int64_t[:, ::1] m, long p):
    """Reduce ``m`` (entries already in [0, p)) to RREF in place; return pivot columns."""
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef long inv, f, v
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, cols):
                v = m[k, j]
                m[k, j] = m[r, j]
                m[r, j] = v
        inv = _inv(m[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = m[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if m[r, j] != 0:
                    v = (m[i, j] - f * m[r, j]) % p
                    if v < 0:
                        v += p
                    m[i, j] = v
        pivots.append(c)
        r += 1
    return pivots


def matmul_mod(const cnp.int64_t[:, ::1] a, const cnp.int64_t[:, ::1] b, long p):
    """Product ``a @ b`` reduced mod p, accumulating in 64-bit."""
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    cdef Py_ssize_t i, j, t
    cdef long s, x
    out = np.zeros((n, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = out
    for i in range(n):
        for t in range(k):
            x = a[i, t]
            if x == 0:
                continue
            for j in range(m):
                o[i, j] += x * b[t, j]
        for j in range(m):
            o[i, j] %= p
    return out
