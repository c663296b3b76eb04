"""Modules, bimodules, Hom-spaces and tensor products over F_p-algebras.

Every module is stored as a bimodule: a one-sided module simply has the
ground field F_p acting on the other side.  Both actions are given by
matrices acting on column vectors:

* ``left_action[a]`` is the matrix of m -> e_a . m
* ``right_action[b]`` is the matrix of m -> m . e_b

so ``right_action`` is anti-multiplicative (a right R-module is a left
R^op-module).  Module maps are matrices acting on columns as well.

Right-operator convention.  Where homomorphisms act from the right,
written (m)f, composition reads left to right: (m)(f.g) = ((m)f)g.  In
matrices f.g is ``g @ f``.  :func:`endomorphism_algebra` uses this product,
which is what makes m -> m.r a ring map R -> End(M).
"""

from __future__ import annotations

from collections import OrderedDict

from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import exactla as la
from .algebra import AlgebraMorphism, FDAlgebra, ground, subalgebra

SIDES = ("left", "right", "both", "none")


@dataclass(frozen=True, eq=False)
class Bimodule:
    left: FDAlgebra
    right: FDAlgebra
    left_action: np.ndarray
    right_action: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        p = self.left.p
        if self.right.p != p:
            raise ValueError("left and right algebras live over different primes")
        lam = la.mod(self.left_action, p)
        rho = la.mod(self.right_action, p)
        if lam.ndim != 3 or lam.shape[0] != self.left.dim:
            raise ValueError(f"left_action must have shape ({self.left.dim}, n, n), got {lam.shape}")
        n = lam.shape[1]
        if rho.shape != (self.right.dim, n, n) or lam.shape != (self.left.dim, n, n):
            raise ValueError("action matrices do not match the module dimension")
        object.__setattr__(self, "left_action", lam)
        object.__setattr__(self, "right_action", rho)

    @property
    def p(self) -> int:
        return self.left.p

    @property
    def dim(self) -> int:
        return self.left_action.shape[1]

    def act_left(self, a) -> np.ndarray:
        return np.tensordot(np.asarray(a, dtype=np.int64), self.left_action, axes=1) % self.p

    def act_right(self, b) -> np.ndarray:
        return np.tensordot(np.asarray(b, dtype=np.int64), self.right_action, axes=1) % self.p

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Bimodule{label} dim={self.dim} ({self.left!r}, {self.right!r})>"


def left_module(a: FDAlgebra, actions, name: str = "") -> Bimodule:
    actions = la.mod(actions, a.p)
    n = actions.shape[1]
    return Bimodule(a, ground(a.p), actions, la.identity(n)[None], name=name)


def right_module(a: FDAlgebra, actions, name: str = "") -> Bimodule:
    actions = la.mod(actions, a.p)
    n = actions.shape[1]
    return Bimodule(ground(a.p), a, la.identity(n)[None], actions, name=name)


def regular(a: FDAlgebra) -> Bimodule:
    """A as an (A, A)-bimodule."""
    return Bimodule(a, a, a.left_mult_matrices, a.right_mult_matrices, name=a.name)


def regular_left(a: FDAlgebra) -> Bimodule:
    return left_module(a, a.left_mult_matrices, name=a.name)


def regular_right(a: FDAlgebra) -> Bimodule:
    return right_module(a, a.right_mult_matrices, name=a.name)


def zero_module(left: FDAlgebra, right: Optional[FDAlgebra] = None) -> Bimodule:
    right = right or ground(left.p)
    return Bimodule(left, right, np.zeros((left.dim, 0, 0), dtype=np.int64), np.zeros((right.dim, 0, 0), dtype=np.int64))


def forget_left(m: Bimodule) -> Bimodule:
    return Bimodule(ground(m.p), m.right, la.identity(m.dim)[None], m.right_action, name=m.name)


def forget_right(m: Bimodule) -> Bimodule:
    return Bimodule(m.left, ground(m.p), m.left_action, la.identity(m.dim)[None], name=m.name)


def restrict(m: Bimodule, left: Optional[AlgebraMorphism] = None, right: Optional[AlgebraMorphism] = None) -> Bimodule:
    """Restrict the actions along algebra maps into ``m.left`` / ``m.right``."""
    lam, rho = m.left_action, m.right_action
    la_alg, ra_alg = m.left, m.right
    if left is not None:
        if left.target != m.left:
            raise ValueError("left restriction map does not land in the left algebra")
        lam = np.tensordot(left.matrix.T, m.left_action, axes=1) % m.p
        la_alg = left.source
    if right is not None:
        if right.target != m.right:
            raise ValueError("right restriction map does not land in the right algebra")
        rho = np.tensordot(right.matrix.T, m.right_action, axes=1) % m.p
        ra_alg = right.source
    return Bimodule(la_alg, ra_alg, lam, rho, name=m.name)


def opposite_bimodule(m: Bimodule) -> Bimodule:
    """The (B^op, A^op)-bimodule obtained by swapping the two sides."""
    from .algebra import opposite

    return Bimodule(opposite(m.right), opposite(m.left), m.right_action, m.left_action, name=m.name)


def direct_sum(m: Bimodule, n: Bimodule) -> Bimodule:
    if m.left != n.left or m.right != n.right:
        raise ValueError("direct sum of modules over different algebras")

    def blockdiag(x, y):
        out = np.zeros((x.shape[0], x.shape[1] + y.shape[1], x.shape[2] + y.shape[2]), dtype=np.int64)
        out[:, : x.shape[1], : x.shape[2]] = x
        out[:, x.shape[1] :, x.shape[2] :] = y
        return out

    return Bimodule(m.left, m.right, blockdiag(m.left_action, n.left_action), blockdiag(m.right_action, n.right_action))


def validate_bimodule(m: Bimodule) -> List[str]:
    p, out = m.p, []
    eye = la.identity(m.dim)
    if not la.equal(m.act_left(m.left.unit), eye, p):
        out.append("left unit does not act as identity")
    if not la.equal(m.act_right(m.right.unit), eye, p):
        out.append("right unit does not act as identity")
    lam, rho = m.left_action, m.right_action
    # lam(e_i) lam(e_j) == lam(e_i e_j)
    prod = np.einsum("iab,jbc->ijac", lam, lam) % p
    want = np.einsum("ijk,kac->ijac", m.left.mul, lam) % p
    for i, j in zip(*np.nonzero(np.any(prod != want, axis=(2, 3)))):
        out.append(f"left action not multiplicative on (e{i}, e{j})")
    prod = np.einsum("jab,ibc->ijac", rho, rho) % p
    want = np.einsum("ijk,kac->ijac", m.right.mul, rho) % p
    for i, j in zip(*np.nonzero(np.any(prod != want, axis=(2, 3)))):
        out.append(f"right action not multiplicative on (e{i}, e{j})")
    comm = (np.einsum("iab,jbc->ijac", lam, rho) - np.einsum("jab,ibc->ijac", rho, lam)) % p
    for i, j in zip(*np.nonzero(np.any(comm != 0, axis=(2, 3)))):
        out.append(f"left e{i} and right e{j} actions do not commute")
    return out


# -- Hom-spaces ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomSpace:
    """Basis of the maps source -> target commuting with the declared actions."""

    source: Bimodule
    target: Bimodule
    sides: str
    basis: np.ndarray  # (k, target.dim, source.dim)
    constraints_rank: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def p(self) -> int:
        return self.source.p

    @cached_property
    def columns(self) -> np.ndarray:
        """Basis maps flattened row-major, one per column."""
        return np.ascontiguousarray(self.basis.reshape(self.dim, self.target.dim * self.source.dim).T)

    def element(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        if self.dim == 0:
            return la.zeros(self.target.dim, self.source.dim)
        return np.tensordot(coords, self.basis, axes=1) % self.p

    def coordinates(self, f) -> np.ndarray:
        return la.coordinates(self.columns, np.asarray(f).reshape(-1, 1), self.p).reshape(-1)


def _intertwiner_rows(src_actions, tgt_actions, n_src: int, n_tgt: int, p: int):
    """Rows expressing f A_src(x) - A_tgt(x) f = 0 in vec_r(f)."""
    blocks = []
    for a_s, a_t in zip(src_actions, tgt_actions):
        blocks.append((np.kron(la.identity(n_tgt), a_s.T) - np.kron(a_t, la.identity(n_src))) % p)
    return blocks


def hom_space(m: Bimodule, n: Bimodule, sides: str = "left") -> HomSpace:
    """All linear maps m -> n that commute with the actions named by ``sides``."""
    if sides not in SIDES:
        raise ValueError(f"sides must be one of {SIDES}")
    blocks = []
    if sides in ("left", "both"):
        if m.left != n.left:
            raise ValueError("Hom between modules over different left algebras")
        blocks += _intertwiner_rows(m.left_action, n.left_action, m.dim, n.dim, m.p)
    if sides in ("right", "both"):
        if m.right != n.right:
            raise ValueError("Hom between modules over different right algebras")
        blocks += _intertwiner_rows(m.right_action, n.right_action, m.dim, n.dim, m.p)
    system = la.stack_rows(blocks, m.dim * n.dim)
    ker = la.kernel_basis(system, m.p)
    basis = np.ascontiguousarray(ker.basis.T).reshape(ker.dim, n.dim, m.dim)
    return HomSpace(m, n, sides, basis, m.dim * n.dim - ker.dim)


def is_homomorphism(f, m: Bimodule, n: Bimodule, sides: str = "left") -> bool:
    f = la.mod(f, m.p).reshape(n.dim, m.dim)
    p = m.p
    if sides in ("left", "both"):
        for a_s, a_t in zip(m.left_action, n.left_action):
            if not la.equal(f @ a_s, a_t @ f, p):
                return False
    if sides in ("right", "both"):
        for a_s, a_t in zip(m.right_action, n.right_action):
            if not la.equal(f @ a_s, a_t @ f, p):
                return False
    return True


def hom_bimodule(m: Bimodule, q: Bimodule) -> Tuple[Bimodule, HomSpace]:
    """Hom_S(M, Q) for M an (S,R)- and Q an (S,T)-bimodule, as an (R,T)-bimodule.

    (r.f)(m) = f(m r) and (f.t)(m) = f(m) t.
    """
    hs = hom_space(forget_right(m), forget_right(q), "left")
    p, k = m.p, hs.dim
    if k == 0:
        return zero_module(m.right, q.right), hs
    cols = hs.columns

    def action(mats):
        out = np.zeros((len(mats), k, k), dtype=np.int64)
        for a, imgs in enumerate(mats):
            out[a] = la.coordinates(cols, imgs, p)
        return out

    lam = action([np.stack([(f @ rho % p).reshape(-1) for f in hs.basis], axis=1) for rho in m.right_action])
    rho = action([np.stack([(t @ f % p).reshape(-1) for f in hs.basis], axis=1) for t in q.right_action])
    return Bimodule(m.right, q.right, lam, rho), hs


# -- tensor products ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TensorSpace:
    """M (x)_R N as a quotient of M (x)_K N, with its outer bimodule structure."""

    left_factor: Bimodule
    right_factor: Bimodule
    module: Bimodule
    projection: np.ndarray  # (dim, dimM*dimN)
    section: np.ndarray  # (dimM*dimN, dim)

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def quotient_dim(self) -> int:
        return self.module.dim

    @property
    def p(self) -> int:
        return self.module.p

    def pure(self, m, n) -> np.ndarray:
        """Coordinates of m (x) n."""
        return la.matmul(self.projection, np.kron(np.asarray(m, dtype=np.int64), np.asarray(n, dtype=np.int64)), self.p)

    def project(self, v) -> np.ndarray:
        return la.matmul(self.projection, v, self.p)

    def lift(self, v) -> np.ndarray:
        return la.matmul(self.section, v, self.p)


def tensor_relations(m: Bimodule, n: Bimodule) -> np.ndarray:
    """Columns spanning {m r (x) n - m (x) r n} in M (x)_K N."""
    if m.right != n.left:
        raise ValueError("tensor product needs M.right == N.left")
    p = m.p
    if not m.right.dim:
        return la.zeros(m.dim * n.dim, 0)
    rel = (kron_stack(m.right_action, la.identity(n.dim)) - kron_stack(la.identity(m.dim), n.left_action)) % p
    return np.concatenate(list(rel), axis=1)


def kron_stack(a, b) -> np.ndarray:
    """Kronecker products of two stacks of matrices, broadcasting a single matrix."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a3, b3 = (a if a.ndim == 3 else a[None]), (b if b.ndim == 3 else b[None])
    k = max(a3.shape[0], b3.shape[0])
    out = np.einsum("kij,kst->kisjt", np.broadcast_to(a3, (k,) + a3.shape[1:]), np.broadcast_to(b3, (k,) + b3.shape[1:]))
    return out.reshape(k, a3.shape[1] * b3.shape[1], a3.shape[2] * b3.shape[2])


_TENSOR_CACHE: "OrderedDict[tuple, tuple]" = OrderedDict()
_TENSOR_CACHE_SIZE = 1024


def _action_key(factors) -> tuple:
    return tuple((f.p, f.left_action.shape, f.left_action.tobytes(), f.right_action.shape, f.right_action.tobytes()) for f in factors)


def _cached_quotient(kind: str, factors: tuple, build):
    """(projection, section, left action, right action) of a tensor product, memoized on the actions."""
    key = (kind,) + _action_key(factors)
    hit = _TENSOR_CACHE.get(key)
    if hit is not None:
        _TENSOR_CACHE.move_to_end(key)
        return hit
    out = build()
    for arr in out:
        arr.setflags(write=False)
    _TENSOR_CACHE[key] = out
    if len(_TENSOR_CACHE) > _TENSOR_CACHE_SIZE:
        _TENSOR_CACHE.popitem(last=False)
    return out


def tensor_over(m: Bimodule, n: Bimodule) -> TensorSpace:
    """M (x)_R N for M a right and N a left R-module (R = m.right = n.left)."""
    if m.right != n.left:
        raise ValueError("tensor product needs M.right == N.left")
    proj, sec, lam, rho = _cached_quotient("over", (m, n), lambda: _tensor_over(m, n))
    return TensorSpace(m, n, Bimodule(m.left, n.right, lam, rho), proj, sec)


def _tensor_over(m: Bimodule, n: Bimodule) -> TensorSpace:
    p = m.p
    q = la.quotient_space(m.dim * n.dim, tensor_relations(m, n), p)
    proj, sec = q.projection, q.section
    im, in_ = la.identity(m.dim), la.identity(n.dim)
    if q.dim:
        lam = (proj @ ((kron_stack(m.left_action, in_) @ sec) % p)) % p
        rho = (proj @ ((kron_stack(im, n.right_action) @ sec) % p)) % p
    else:
        lam = np.zeros((m.left.dim, 0, 0), dtype=np.int64)
        rho = np.zeros((n.right.dim, 0, 0), dtype=np.int64)
    return proj, sec, lam, rho


def tensor_map(t_src: TensorSpace, t_tgt: TensorSpace, f, g) -> np.ndarray:
    """f (x) g between tensor spaces (f, g must be balanced-compatible)."""
    p = t_src.p
    return la.matmul(t_tgt.projection, la.matmul(np.kron(f, g) % p, t_src.section, p), p)


# -- invariants, projectivity, generators ----------------------------------------


def invariants(m: Bimodule) -> la.Subspace:
    """M^A = {m : a m = m a for all a}, for an (A, A)-bimodule."""
    if m.left != m.right:
        raise ValueError("invariants need the same algebra on both sides")
    blocks = [(l - r) % m.p for l, r in zip(m.left_action, m.right_action)]
    return la.kernel_basis(la.stack_rows(blocks, m.dim), m.p)


@dataclass(frozen=True, eq=False)
class DualBasis:
    """Elements e_i of M and S-linear functionals *e_i : M -> S with m = sum (m)*e_i . e_i."""

    elements: np.ndarray  # (k, dimM)
    functionals: np.ndarray  # (k, dimS, dimM)

    @property
    def size(self) -> int:
        return self.elements.shape[0]


def free_module(s: FDAlgebra, k: int) -> Bimodule:
    """S^k as a left S-module; coordinate (j, b) sits at index j * dim S + b."""
    acts = np.stack([np.kron(la.identity(k), l) for l in s.left_mult_matrices]) if k else np.zeros((s.dim, 0, 0), dtype=np.int64)
    return left_module(s, acts)


def _cover_map(m: Bimodule) -> np.ndarray:
    """S^n -> M, (s_1, ..., s_n) -> sum s_j m_j over the standard basis m_j."""
    s = m.left
    n = m.dim
    cover = la.zeros(n, n * s.dim)
    for j in range(n):
        for b in range(s.dim):
            cover[:, j * s.dim + b] = m.left_action[b][:, j]
    return cover


def fgp_dual_basis(m: Bimodule) -> Optional[DualBasis]:
    """A dual basis of M as a left S-module, or None when M is not projective.

    The standard generating set gives a surjection S^n -> M; M is
    projective iff it splits S-linearly, and the dual basis is read off
    the splitting.
    """
    s = m.left
    p, n = m.p, m.dim
    if n == 0:
        return DualBasis(np.zeros((0, 0), dtype=np.int64), np.zeros((0, s.dim, 0), dtype=np.int64))
    lm = forget_right(m)
    free = free_module(s, n)
    hs = hom_space(lm, free, "left")
    cover = _cover_map(m)
    # sum_t x_t cover @ h_t == I_M
    system = np.stack([la.matmul(cover, h, p).reshape(-1) for h in hs.basis], axis=1) if hs.dim else la.zeros(n * n, 0)
    x = la.solve_affine(system, la.identity(n).reshape(-1), p)
    if x is None:
        return None
    sigma = hs.element(x)
    functionals = np.stack([sigma[j * s.dim : (j + 1) * s.dim, :] for j in range(n)])
    return DualBasis(la.identity(n), functionals)


def check_dual_basis(m: Bimodule, db: DualBasis) -> bool:
    p = m.p
    total = la.zeros(m.dim, m.dim)
    for e, f in zip(db.elements, db.functionals):
        # column j: ((m_j) f) . e
        total = (total + np.stack([la.matmul(m.act_left(f[:, j]), e, p) for j in range(m.dim)], axis=1)) % p
    ok = la.equal(total, la.identity(m.dim), p)
    ok = ok and all(is_homomorphism(f, forget_right(m), regular_left(m.left), "left") for f in db.functionals)
    return ok


def trace_ideal(m: Bimodule) -> la.Subspace:
    """Span of f(m) over f in Hom_S(M, S) and m in M."""
    s = m.left
    hs = hom_space(forget_right(m), regular_left(s), "left")
    if hs.dim == 0 or m.dim == 0:
        return la.Subspace(s.dim, la.zeros(s.dim, 0), s.p)
    return la.column_space(np.concatenate(list(hs.basis), axis=1), s.p)


def is_generator(m: Bimodule) -> bool:
    return trace_ideal(m).dim == m.left.dim


# -- endomorphism algebras -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EndomorphismAlgebra:
    """A = End_S(M) with the right-operator product f.g = g o f."""

    module: Bimodule
    algebra: FDAlgebra
    hom: HomSpace
    chi: Optional[AlgebraMorphism]  # R -> A, r -> (m -> m r)

    def element_matrix(self, coords) -> np.ndarray:
        return self.hom.element(coords)

    def coordinates(self, f) -> np.ndarray:
        return self.hom.coordinates(f)

    def as_bimodule(self) -> Bimodule:
        """A as an (R, R)-bimodule via chi: (m)(r'.f.r) = ((m r')f) r."""
        reg = regular(self.algebra)
        return restrict(reg, self.chi, self.chi)


def endomorphism_algebra(m: Bimodule) -> EndomorphismAlgebra:
    p = m.p
    hs = hom_space(forget_right(m), forget_right(m), "left")
    k = hs.dim
    cols = hs.columns
    if k == 0:
        mul = np.zeros((0, 0, 0), dtype=np.int64)
    else:
        prods = np.stack([la.matmul(hs.basis[j], hs.basis[i], p).reshape(-1) for i in range(k) for j in range(k)], axis=1)
        mul = la.coordinates(cols, prods, p).T.reshape(k, k, k)
    unit = hs.coordinates(la.identity(m.dim))
    alg = FDAlgebra(p, mul, unit, name="End")
    chi_cols = np.stack([hs.coordinates(rho) for rho in m.right_action], axis=1) if m.right.dim else la.zeros(k, 0)
    chi = AlgebraMorphism(m.right, alg, chi_cols)
    return EndomorphismAlgebra(m, alg, hs, chi)


# -- submodules and quotients ---------------------------------------------------------


def submodule_generated(m: Bimodule, vectors, sides: str = "left") -> la.Subspace:
    """Smallest subspace containing ``vectors`` and stable under the given actions."""
    p = m.p
    vecs = np.asarray(vectors, dtype=np.int64).reshape(m.dim, -1)
    acts = []
    if sides in ("left", "both"):
        acts += list(m.left_action)
    if sides in ("right", "both"):
        acts += list(m.right_action)
    sub = la.column_space(vecs, p)
    while True:
        grown = [sub.basis] + [la.matmul(a, sub.basis, p) for a in acts]
        nxt = la.column_space(np.concatenate(grown, axis=1), p)
        if nxt.dim == sub.dim:
            return sub
        sub = nxt


def quotient_module(m: Bimodule, sub: la.Subspace) -> Tuple[Bimodule, la.Quotient]:
    """M / N for a sub-bimodule N."""
    p = m.p
    q = la.quotient_space(m.dim, sub, p)
    if q.dim:
        lam = np.stack([la.matmul(q.projection, la.matmul(a, q.section, p), p) for a in m.left_action])
        rho = np.stack([la.matmul(q.projection, la.matmul(b, q.section, p), p) for b in m.right_action])
    else:
        lam = np.zeros((m.left.dim, 0, 0), dtype=np.int64)
        rho = np.zeros((m.right.dim, 0, 0), dtype=np.int64)
    return Bimodule(m.left, m.right, lam, rho), q


def submodule(m: Bimodule, sub: la.Subspace) -> Bimodule:
    """Sub-bimodule with the induced actions, in the coordinates of ``sub.basis``."""
    p = m.p
    b = sub.basis
    if sub.dim:
        lam = np.stack([la.coordinates(b, la.matmul(a, b, p), p) for a in m.left_action])
        rho = np.stack([la.coordinates(b, la.matmul(a, b, p), p) for a in m.right_action])
    else:
        lam = np.zeros((m.left.dim, 0, 0), dtype=np.int64)
        rho = np.zeros((m.right.dim, 0, 0), dtype=np.int64)
    return Bimodule(m.left, m.right, lam, rho)


def corner_algebra(s: FDAlgebra, e) -> Tuple[FDAlgebra, np.ndarray]:
    """eSe with unit e, and its inclusion into S (as basis columns)."""
    p = s.p
    cols = [s.multiply(s.multiply(e, s.basis_vector(i)), e) for i in range(s.dim)]
    span = la.column_space(np.stack(cols, axis=1), p)
    return subalgebra(s, span.basis, e)


# -- iterated tensor products ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ChainTensor:
    """M_1 (x) M_2 (x) ... (x) M_k, each tensor over the algebra shared by neighbours."""

    factors: Tuple[Bimodule, ...]
    module: Bimodule
    projection: np.ndarray  # (dim, prod dims)
    section: np.ndarray

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def p(self) -> int:
        return self.module.p

    def project(self, v) -> np.ndarray:
        return la.matmul(self.projection, v, self.p)

    def lift(self, v) -> np.ndarray:
        return la.matmul(self.section, v, self.p)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def tensor_chain(factors: Sequence[Bimodule]) -> ChainTensor:
    factors = tuple(factors)
    if not factors:
        raise ValueError("empty tensor chain")
    proj, sec, lam, rho = _cached_quotient("chain", factors, lambda: _tensor_chain(factors))
    return ChainTensor(factors, Bimodule(factors[0].left, factors[-1].right, lam, rho), proj, sec)


def _tensor_chain(factors: tuple) -> ChainTensor:
    if not factors:
        raise ValueError("empty tensor chain")
    p = factors[0].p
    dims = [f.dim for f in factors]
    total = _prod(dims)
    cols = []
    for i in range(len(factors) - 1):
        m, n = factors[i], factors[i + 1]
        if m.right != n.left:
            raise ValueError(f"factors {i} and {i + 1} are not over the same algebra")
        before, after = la.identity(_prod(dims[:i])), la.identity(_prod(dims[i + 2 :]))
        for rho, lam in zip(m.right_action, n.left_action):
            mid = np.kron(rho, la.identity(n.dim)) - np.kron(la.identity(m.dim), lam)
            cols.append(np.kron(np.kron(before, mid), after) % p)
    rel = np.concatenate(cols, axis=1) if cols else la.zeros(total, 0)
    q = la.quotient_space(total, rel, p)
    first, last = factors[0], factors[-1]
    if q.dim:
        rest_l = la.identity(_prod(dims[1:]))
        rest_r = la.identity(_prod(dims[:-1]))
        lam = np.stack([la.matmul(q.projection, la.matmul(np.kron(a, rest_l), q.section, p), p) for a in first.left_action])
        rho = np.stack([la.matmul(q.projection, la.matmul(np.kron(rest_r, b), q.section, p), p) for b in last.right_action])
    else:
        lam = np.zeros((first.left.dim, 0, 0), dtype=np.int64)
        rho = np.zeros((last.right.dim, 0, 0), dtype=np.int64)
    return q.projection, q.section, lam, rho


# -- constrained spaces of maps ---------------------------------------------------------


def constraint_matrix(basis: np.ndarray, fn, p: int) -> np.ndarray:
    """Columns fn(b_t) (flattened) for each basis map b_t; fn must be linear."""
    cols = [np.asarray(fn(b), dtype=np.int64).reshape(-1) % p for b in basis]
    if not cols:
        out = np.asarray(fn(np.zeros(basis.shape[1:], dtype=np.int64)), dtype=np.int64).reshape(-1)
        return la.zeros(out.shape[0], 0)
    return np.stack(cols, axis=1)


def restrict_maps(basis: np.ndarray, fn, p: int) -> np.ndarray:
    """Basis of the maps in span(basis) with fn(f) == 0."""
    if basis.shape[0] == 0:
        return basis
    ker = la.kernel_basis(constraint_matrix(basis, fn, p), p)
    return np.tensordot(ker.basis.T, basis, axes=1) % p


def solve_maps(basis: np.ndarray, fn, target, p: int) -> Optional[np.ndarray]:
    """Some f in span(basis) with fn(f) == target, or None."""
    target = np.asarray(target, dtype=np.int64).reshape(-1) % p
    x = la.solve_affine(constraint_matrix(basis, fn, p), target, p)
    if x is None:
        return None
    if basis.shape[0] == 0:
        return np.zeros(basis.shape[1:], dtype=np.int64)
    return np.tensordot(x, basis, axes=1) % p
