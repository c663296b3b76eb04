"""Exact dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are residues in
``[0, p)``.  Vectors are 1-d arrays; subspaces carry their basis as the
columns of an ``(ambient_dim, k)`` array.

The elimination kernel comes from the compiled extension when it is
importable and falls back to a pure numpy implementation otherwise.  Set
``NATFULL_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

if os.environ.get("NATFULL_PURE_PYTHON"):
    from . import _kernels_py as _kern

    BACKEND = "python"
else:
    try:
        from . import _kernels as _kern  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        from . import _kernels_py as _kern

        BACKEND = "python"

MAX_PRIME = 97


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_PRIME) or not is_prime(self.p):
            raise ValueError(f"p must be a prime in [2, {MAX_PRIME}], got {self.p}")

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Span of the columns of ``basis`` inside F_p^ambient_dim."""

    ambient_dim: int
    basis: np.ndarray
    p: int

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def contains(self, v) -> bool:
        return solve_affine(self.basis, v, self.p) is not None

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim}, p={self.p})"


@dataclass(frozen=True, eq=False)
class Quotient:
    """Quotient F_p^n / span(relations) with a projection and a section."""

    ambient_dim: int
    dim: int
    projection: np.ndarray  # (dim, ambient_dim)
    section: np.ndarray  # (ambient_dim, dim)
    p: int


def mod(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def matmul(a, b, p: int) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if a.ndim == 1 or b.ndim == 1:
        return (a @ b) % p
    return _kern.matmul_mod(a, b, p)


def mat(rows: Sequence[Sequence[int]], p: int, shape=None) -> np.ndarray:
    """Build a matrix from nested lists (``shape`` disambiguates empty input)."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    return a % p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def unit_vector(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[i] = 1
    return v


def rref(m, p: int):
    """Return ``(R, pivots, rank)`` with R the reduced row echelon form of m."""
    work = np.array(m, dtype=np.int64, order="C", copy=True) % p
    if work.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    if work.size == 0:
        return work, [], 0
    pivots = list(_kern.rref_inplace(work, p))
    return work, pivots, len(pivots)


def rank(m, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return rref(m, p)[2]


def kernel_basis(m, p: int) -> Subspace:
    """Basis of {v : m v = 0}, one vector per free column of rref(m)."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return Subspace(cols, identity(cols), p)
    r, pivots, rk = rref(m, p)
    pivset = set(pivots)
    free = [j for j in range(cols) if j not in pivset]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-r[row, f]) % p
    return Subspace(cols, basis, p)


def column_space(m, p: int) -> Subspace:
    """Column space of m, basis taken in rref form (canonical)."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if m.size == 0:
        return Subspace(n, zeros(n, 0), p)
    r, _, rk = rref(m.T, p)
    return Subspace(n, np.ascontiguousarray(r[:rk].T), p)


def solve_affine(a, b, p: int) -> Optional[np.ndarray]:
    """Some x with a x = b, free variables set to zero; None if inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = a.shape
    if rows != b.shape[0]:
        raise ValueError(f"shape mismatch: A has {rows} rows, b has {b.shape[0]}")
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.concatenate([a % p, (b % p).reshape(-1, 1)], axis=1)
    r, pivots, _ = rref(aug, p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, cols]
    return x


def solve_matrix(a, b, p: int) -> Optional[np.ndarray]:
    """Some X with a X = b (columnwise free-variables-zero), or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    rows, cols = a.shape
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if rows == 0:
        return zeros(cols, b.shape[1])
    aug = np.concatenate([a % p, b % p], axis=1)
    r, pivots, rk = rref(aug, p)
    if any(pc >= cols for pc in pivots):
        return None
    x = zeros(cols, b.shape[1])
    for row, pc in enumerate(pivots):
        x[pc] = r[row, cols:]
    return x


def coordinates(basis, vectors, p: int) -> np.ndarray:
    """Coordinates of the columns of ``vectors`` in the (independent) ``basis``."""
    x = solve_matrix(basis, vectors, p)
    if x is None:
        raise ValueError("vector not in the span of the basis")
    return x


def inverse(m, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve_matrix(m, identity(n), p)
    if x is None or rank(m, p) != n:
        raise ValueError("matrix is singular")
    return x


def quotient_space(ambient_dim: int, relations, p: int) -> Quotient:
    """Cokernel of the inclusion of span(relations) into F_p^ambient_dim.

    ``relations`` is a Subspace or a matrix whose columns span the relation
    space.  The quotient basis is the image of the standard basis vectors at
    the non-pivot columns of rref(relations^T); the section embeds those
    coordinates back.
    """
    rel = relations.basis if isinstance(relations, Subspace) else np.asarray(relations, dtype=np.int64)
    if ambient_dim == 0 or rel.size == 0:
        return Quotient(ambient_dim, ambient_dim, identity(ambient_dim), identity(ambient_dim), p)
    r, pivots, rk = rref(rel.T, p)
    pivset = set(pivots)
    nonpiv = [j for j in range(ambient_dim) if j not in pivset]
    q = len(nonpiv)
    proj = zeros(q, ambient_dim)
    proj[np.arange(q), nonpiv] = 1
    if rk and q:
        proj[:, pivots] = (-r[:rk][:, nonpiv].T) % p
    sec = zeros(ambient_dim, q)
    sec[nonpiv, np.arange(q)] = 1
    return Quotient(ambient_dim, q, proj, sec, p)


def kronecker(a, b, p: int) -> np.ndarray:
    """Kronecker product; index convention idx(i, j) = i * dim(b) + j."""
    return np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % p


def is_zero(a) -> bool:
    return not np.any(np.asarray(a))


def equal(a, b, p: int) -> bool:
    return np.array_equal(np.asarray(a, dtype=np.int64) % p, np.asarray(b, dtype=np.int64) % p)


def stack_rows(blocks, cols: int) -> np.ndarray:
    """Vertically stack constraint blocks (possibly none) with ``cols`` columns."""
    if cols == 0:
        return zeros(0, 0)
    blocks = [np.asarray(b, dtype=np.int64).reshape(-1, cols) for b in blocks]
    if not blocks:
        return zeros(0, cols)
    return np.concatenate(blocks, axis=0)


def linear_system(fn, n_unknowns: int, n_out: int, p: int) -> np.ndarray:
    """Matrix of a linear map given as a batched callable.

    ``fn`` receives the identity basis as an ``(n_unknowns, n_unknowns)``
    batch (row k is the k-th unit vector) and must return an
    ``(n_unknowns, n_out)`` batch of images.  The result is the
    ``(n_out, n_unknowns)`` matrix of the map.
    """
    if n_unknowns == 0 or n_out == 0:
        return zeros(n_out, n_unknowns)
    images = np.asarray(fn(identity(n_unknowns)), dtype=np.int64).reshape(n_unknowns, n_out)
    return np.ascontiguousarray(images.T) % p
