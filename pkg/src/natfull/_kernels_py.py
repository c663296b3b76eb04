"""Pure-numpy elimination kernel, used when the compiled extension is absent."""

import numpy as np


def rref_inplace(m, p):
    """Reduce ``m`` (entries already in [0, p)) to RREF in place; return pivot columns."""
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def matmul_mod(a, b, p):
    return (a @ b) % p
