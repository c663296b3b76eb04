"""Finite-dimensional unital associative F_p-algebras given by structure constants.

``mul[i, j, k]`` is the coefficient of e_k in e_i * e_j.  Elements are
coordinate vectors.  Left and right multiplication by an element act on
column vectors, so ``left_mult(a) @ x == a * x`` and
``right_mult(a) @ x == x * a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import exactla as la
from .errors import CenterTooLarge

ENUMERATION_BOUND = 2**20


@dataclass(frozen=True, eq=False)
class FDAlgebra:
    p: int
    mul: np.ndarray
    unit: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        la.PrimeField(self.p)
        mul = la.mod(self.mul, self.p)
        d = mul.shape[0] if mul.ndim == 3 else 0
        if mul.size == 0:
            mul = mul.reshape(d, d, d)
        if mul.shape != (d, d, d):
            raise ValueError(f"structure constants must have shape (d, d, d), got {mul.shape}")
        unit = la.mod(self.unit, self.p).reshape(-1)
        if unit.shape != (d,):
            raise ValueError(f"unit must have length {d}, got {unit.shape[0]}")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "unit", unit)

    @property
    def dim(self) -> int:
        return self.mul.shape[0]

    @cached_property
    def left_mult_matrices(self) -> np.ndarray:
        """``L[i]`` is the matrix of x -> e_i x."""
        return np.ascontiguousarray(np.transpose(self.mul, (0, 2, 1)))

    @cached_property
    def right_mult_matrices(self) -> np.ndarray:
        """``R[i]`` is the matrix of x -> x e_i."""
        return np.ascontiguousarray(np.transpose(self.mul, (1, 2, 0)))

    def multiply(self, u, v) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64), self.mul) % self.p

    def left_mult(self, a) -> np.ndarray:
        return np.tensordot(np.asarray(a, dtype=np.int64), self.left_mult_matrices, axes=1) % self.p

    def right_mult(self, a) -> np.ndarray:
        return np.tensordot(np.asarray(a, dtype=np.int64), self.right_mult_matrices, axes=1) % self.p

    def basis_vector(self, i: int) -> np.ndarray:
        return la.unit_vector(self.dim, i)

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def elements(self):
        """All p^dim elements in lexicographic coordinate order."""
        for coords in itertools.product(range(self.p), repeat=self.dim):
            yield np.array(coords, dtype=np.int64)

    def __eq__(self, other):
        if not isinstance(other, FDAlgebra):
            return NotImplemented
        return (
            self is other
            or self.p == other.p
            and self.mul.shape == other.mul.shape
            and np.array_equal(self.mul, other.mul)
            and np.array_equal(self.unit, other.unit)
        )

    def __hash__(self):
        return hash((self.p, self.mul.tobytes(), self.unit.tobytes()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FDAlgebra{label} dim={self.dim} over F_{self.p}>"


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """Algebra map; column j of ``matrix`` is the image of e_j."""

    source: FDAlgebra
    target: FDAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        if self.source.p != self.target.p:
            raise ValueError("source and target live over different primes")
        m = la.mod(self.matrix, self.source.p).reshape(self.target.dim, self.source.dim)
        object.__setattr__(self, "matrix", m)

    @property
    def p(self) -> int:
        return self.source.p

    def __call__(self, v) -> np.ndarray:
        return la.matmul(self.matrix, np.asarray(v, dtype=np.int64), self.p)

    def __repr__(self):
        return f"<AlgebraMorphism {self.source!r} -> {self.target!r}>"


def ground(p: int) -> FDAlgebra:
    """F_p itself as a 1-dimensional algebra."""
    return FDAlgebra(p, np.ones((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64), name=f"F{p}")


def validate_algebra(a: FDAlgebra) -> List[str]:
    """Associativity and unit-law violations, one message per failing basis tuple."""
    p, c = a.p, a.mul
    out = []
    lhs = np.einsum("ijl,lkm->ijkm", c, c) % p
    rhs = np.einsum("jkl,ilm->ijkm", c, c) % p
    for i, j, k in zip(*np.nonzero(np.any(lhs != rhs, axis=3))):
        out.append(f"associativity fails on (e{i} e{j}) e{k}")
    u = a.unit
    left = np.einsum("i,ijk->jk", u, c) % p
    right = np.einsum("j,ijk->ik", u, c) % p
    eye = la.identity(a.dim)
    for i in np.nonzero(np.any(left != eye, axis=1))[0]:
        out.append(f"unit fails on the left of e{i}")
    for i in np.nonzero(np.any(right != eye, axis=1))[0]:
        out.append(f"unit fails on the right of e{i}")
    return out


def validate_morphism(phi: AlgebraMorphism) -> List[str]:
    out = []
    p = phi.p
    if not la.equal(phi(phi.source.unit), phi.target.unit, p):
        out.append("phi(1) != 1")
    m = phi.matrix
    # phi(e_i e_j) vs phi(e_i) phi(e_j), for all basis pairs at once
    lhs = np.einsum("ijk,lk->ijl", phi.source.mul, m) % p
    rhs = np.einsum("ai,bj,abl->ijl", m, m, phi.target.mul) % p
    for i, j in zip(*np.nonzero(np.any(lhs != rhs, axis=2))):
        out.append(f"phi(e{i} e{j}) != phi(e{i}) phi(e{j})")
    return out


def identity_morphism(a: FDAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, la.identity(a.dim))


def compose(psi: AlgebraMorphism, phi: AlgebraMorphism) -> AlgebraMorphism:
    """psi o phi."""
    if phi.target != psi.source:
        raise ValueError("morphisms are not composable")
    return AlgebraMorphism(phi.source, psi.target, la.matmul(psi.matrix, phi.matrix, phi.p))


def opposite(a: FDAlgebra) -> FDAlgebra:
    return FDAlgebra(a.p, np.transpose(a.mul, (1, 0, 2)), a.unit, name=f"{a.name}^op" if a.name else "")


def center(a: FDAlgebra) -> la.Subspace:
    """{x : x e_i = e_i x for all i}, as a kernel."""
    d = a.dim
    # row block i: coefficients of x e_i - e_i x in terms of x
    blocks = [(a.right_mult_matrices[i] - a.left_mult_matrices[i]) % a.p for i in range(d)]
    return la.kernel_basis(la.stack_rows(blocks, d), a.p)


def is_idempotent(a: FDAlgebra, e) -> bool:
    return la.equal(a.multiply(e, e), e, a.p)


def is_central(a: FDAlgebra, e) -> bool:
    return la.equal(a.left_mult(e), a.right_mult(e), a.p)


def central_idempotents(a: FDAlgebra, bound: int = ENUMERATION_BOUND) -> List[np.ndarray]:
    """Every central idempotent, by enumerating the centre."""
    z = center(a)
    if a.p ** z.dim > bound:
        raise CenterTooLarge(f"centre has {a.p}^{z.dim} elements, bound is {bound}")
    found = []
    for coords in itertools.product(range(a.p), repeat=z.dim):
        e = la.matmul(z.basis, np.array(coords, dtype=np.int64), a.p) if z.dim else a.zero()
        if is_idempotent(a, e):
            found.append(e)
    found.sort(key=lambda v: tuple(v))
    return found


def idempotents(a: FDAlgebra, bound: int = ENUMERATION_BOUND) -> List[np.ndarray]:
    """Every idempotent (brute force; small algebras only)."""
    if a.p**a.dim > bound:
        raise CenterTooLarge(f"algebra has {a.p}^{a.dim} elements, bound is {bound}")
    return [e for e in a.elements() if is_idempotent(a, e)]


def sweedler_relations(phi: AlgebraMorphism) -> np.ndarray:
    """Columns spanning {s phi(r) (x) s' - s (x) phi(r) s'} in S (x)_K S."""
    s = phi.target
    n = s.dim
    blocks = []
    for a in range(phi.source.dim):
        img = phi.matrix[:, a]
        rel = np.kron(s.right_mult(img), la.identity(n)) - np.kron(la.identity(n), s.left_mult(img))
        blocks.append(rel % s.p)
    if not blocks:
        return la.zeros(n * n, 0)
    return np.concatenate(blocks, axis=1)


def multiplication_map(a: FDAlgebra) -> np.ndarray:
    """Matrix of A (x)_K A -> A, x (x) y -> xy."""
    d = a.dim
    return np.ascontiguousarray(a.mul.reshape(d * d, d).T)


def is_ring_epimorphism(phi: AlgebraMorphism) -> Tuple[bool, int]:
    """Decide whether phi is an epimorphism of rings.

    Builds S (x)_R S as a quotient and returns ``(ker == 0, dim ker)`` for
    the multiplication map S (x)_R S -> S.
    """
    s = phi.target
    q = la.quotient_space(s.dim * s.dim, sweedler_relations(phi), s.p)
    eps = la.matmul(multiplication_map(s), q.section, s.p)
    kerdim = q.dim - la.rank(eps, s.p)
    return kerdim == 0, kerdim


# -- constructors -----------------------------------------------------------


def algebra_from_matrices(mats: Sequence[np.ndarray], p: int, name: str = "") -> FDAlgebra:
    """Algebra with basis given by linearly independent square matrices.

    The span must be closed under multiplication and contain the identity.
    """
    mats = [la.mod(m, p) for m in mats]
    n = mats[0].shape[0]
    basis = np.stack([m.reshape(-1) for m in mats], axis=1)
    prods = np.stack([(mi @ mj % p).reshape(-1) for mi in mats for mj in mats], axis=1)
    coords = la.coordinates(basis, prods, p)
    d = len(mats)
    mul = coords.T.reshape(d, d, d)
    unit = la.coordinates(basis, la.identity(n).reshape(-1, 1), p).reshape(-1)
    return FDAlgebra(p, mul, unit, name=name)


def span_closure(gens: Sequence[np.ndarray], p: int, max_dim: Optional[int] = None) -> Optional[List[np.ndarray]]:
    """Basis (as matrices) of the unital subalgebra of M_n(F_p) generated by gens.

    Returns None once the dimension exceeds ``max_dim``.
    """
    n = gens[0].shape[0] if gens else 1
    current = [la.identity(n)] + [la.mod(g, p) for g in gens]
    while True:
        sub = la.column_space(np.stack([m.reshape(-1) for m in current], axis=1), p)
        if max_dim is not None and sub.dim > max_dim:
            return None
        mats = [sub.basis[:, k].reshape(n, n) for k in range(sub.dim)]
        prods = [a @ b % p for a in mats for b in mats]
        grown = la.column_space(np.stack([m.reshape(-1) for m in mats + prods], axis=1), p)
        if grown.dim == sub.dim:
            return mats
        current = mats + prods


def matrix_algebra(n: int, p: int) -> FDAlgebra:
    units = []
    for i in range(n):
        for j in range(n):
            m = la.zeros(n, n)
            m[i, j] = 1
            units.append(m)
    return algebra_from_matrices(units, p, name=f"M{n}(F{p})")


def product_algebra(a: FDAlgebra, b: FDAlgebra) -> FDAlgebra:
    """Direct product A x B with basis (e_i, 0) then (0, f_j)."""
    if a.p != b.p:
        raise ValueError("different primes")
    da, db = a.dim, b.dim
    d = da + db
    mul = np.zeros((d, d, d), dtype=np.int64)
    mul[:da, :da, :da] = a.mul
    mul[da:, da:, da:] = b.mul
    unit = np.concatenate([a.unit, b.unit])
    return FDAlgebra(a.p, mul, unit, name=f"{a.name}x{b.name}" if a.name and b.name else "")


def field_extension(poly: Sequence[int], p: int, name: str = "") -> FDAlgebra:
    """F_p[t]/(poly) with basis 1, t, ..., t^(k-1); poly monic, low degree first."""
    poly = [c % p for c in poly]
    k = len(poly) - 1
    if k < 1 or poly[-1] != 1:
        raise ValueError("poly must be monic of degree >= 1")

    def reduce_power(e):
        v = np.zeros(2 * k, dtype=np.int64)
        v[e] = 1
        for deg in range(2 * k - 1, k - 1, -1):
            c = v[deg]
            if c:
                v[deg] = 0
                for i in range(k):
                    v[deg - k + i] = (v[deg - k + i] - c * poly[i]) % p
        return v[:k]

    mul = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            mul[i, j] = reduce_power(i + j)
    return FDAlgebra(p, mul, la.unit_vector(k, 0), name=name)


def upper_triangular(p: int) -> FDAlgebra:
    """2x2 upper-triangular matrices over F_p, basis e11, e12, e22."""
    e11 = np.array([[1, 0], [0, 0]])
    e12 = np.array([[0, 1], [0, 0]])
    e22 = np.array([[0, 0], [0, 1]])
    return algebra_from_matrices([e11, e12, e22], p, name=f"T2(F{p})")


def subalgebra(a: FDAlgebra, basis: np.ndarray, unit) -> Tuple[FDAlgebra, np.ndarray]:
    """Algebra on a multiplicatively closed subspace with its own unit element.

    ``basis`` holds the subspace basis as columns.  ``unit`` must be an
    element of the subspace acting as identity on it (it need not be 1_A,
    e.g. for corner rings eAe).  Returns the algebra and the inclusion
    matrix (which is the basis itself).
    """
    p = a.p
    basis = la.mod(basis, p).reshape(a.dim, -1)
    k = basis.shape[1]
    prods = np.stack(
        [a.multiply(basis[:, i], basis[:, j]) for i in range(k) for j in range(k)], axis=1
    ) if k else la.zeros(a.dim, 0)
    try:
        coords = la.coordinates(basis, prods, p)
        u = la.coordinates(basis, np.asarray(unit).reshape(-1, 1), p).reshape(-1)
    except ValueError as exc:
        raise ValueError("subspace is not closed under multiplication or lacks the unit") from exc
    mul = coords.T.reshape(k, k, k) if k else np.zeros((0, 0, 0), dtype=np.int64)
    b = FDAlgebra(p, mul, u)
    if validate_algebra(b):
        raise ValueError("given unit does not act as identity on the subspace")
    return b, basis


def two_sided_ideal(a: FDAlgebra, gens: Sequence) -> la.Subspace:
    """span{x g y : x, y basis, g in gens}."""
    cols = []
    for g in gens:
        g = np.asarray(g, dtype=np.int64)
        for i in range(a.dim):
            left = a.multiply(a.basis_vector(i), g)
            for j in range(a.dim):
                cols.append(a.multiply(left, a.basis_vector(j)))
    if not cols:
        return la.Subspace(a.dim, la.zeros(a.dim, 0), a.p)
    return la.column_space(np.stack(cols, axis=1), a.p)


def quotient_algebra(a: FDAlgebra, ideal: la.Subspace) -> Tuple[FDAlgebra, AlgebraMorphism]:
    """A / I and the projection A -> A / I."""
    q = la.quotient_space(a.dim, ideal, a.p)
    k = q.dim
    mul = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            mul[i, j] = la.matmul(q.projection, a.multiply(q.section[:, i], q.section[:, j]), a.p)
    b = FDAlgebra(a.p, mul, la.matmul(q.projection, a.unit, a.p))
    return b, AlgebraMorphism(a, b, q.projection)
