"""Brute-force oracles and instance strategies shared by the test modules."""

import itertools

import numpy as np
from hypothesis import strategies as st

from natfull import exactla as la

seeds = st.integers(0, 2**32 - 1)
small_primes = st.sampled_from([2, 3])


def rng_of(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def all_matrices(rows: int, cols: int, p: int):
    for flat in itertools.product(range(p), repeat=rows * cols):
        yield np.array(flat, dtype=np.int64).reshape(rows, cols)


def brute_hom_dim(m, n, sides: str = "left"):
    """log_p of the number of maps M -> N commuting with the named actions, or None if too many."""
    p = m.p
    if p ** (m.dim * n.dim) > 2**16:
        return None
    pairs = []
    if sides in ("left", "both"):
        pairs += list(zip(m.left_action, n.left_action))
    if sides in ("right", "both"):
        pairs += list(zip(m.right_action, n.right_action))
    count = 0
    for f in all_matrices(n.dim, m.dim, p):
        if all(la.equal(f @ a % p, b @ f % p, p) for a, b in pairs):
            count += 1
    d = round(np.log(count) / np.log(p))
    assert p**d == count
    return d


def brute_subspace_dim(vectors_ok, dim: int, p: int) -> int:
    """log_p of the number of vectors v in F_p^dim with vectors_ok(v)."""
    count = sum(1 for v in itertools.product(range(p), repeat=dim) if vectors_ok(np.array(v, dtype=np.int64)))
    d = round(np.log(count) / np.log(p))
    assert p**d == count
    return d
