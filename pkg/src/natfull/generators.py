"""Seeded random instances: algebras, algebra maps, bimodules, corings, coring maps.

Every generator takes a ``numpy.random.Generator`` and only draws from it,
so a fixed seed reproduces the same instance stream.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from . import exactla as la
from .algebra import (
    AlgebraMorphism,
    FDAlgebra,
    algebra_from_matrices,
    compose,
    field_extension,
    ground,
    identity_morphism,
    idempotents,
    matrix_algebra,
    product_algebra,
    quotient_algebra,
    span_closure,
    subalgebra,
    two_sided_ideal,
    upper_triangular,
)
from .corings import (
    Coring,
    RingStructure,
    comatrix_coring,
    coring_from_ring,
    dual_coalgebra,
    opposite_coring,
    sweedler_coring,
    trivial_coring,
)
from .cormor import CoringMorphism, counit_morphism, identity_coring_morphism, scalar_morphism
from .modrep import Bimodule, fgp_dual_basis, forget_right, regular, restrict, submodule
from .scalars import s_as_sr


def _choice(rng: np.random.Generator, items):
    return items[int(rng.integers(0, len(items)))]


def irreducible_quadratic(p: int) -> List[int]:
    """Smallest monic irreducible t^2 + b t + a over F_p (low degree first)."""
    for b in range(p):
        for a in range(1, p):
            if all((x * x + b * x + a) % p for x in range(p)):
                return [a, b, 1]
    raise ValueError(f"no irreducible quadratic over F_{p}")


def random_matrix_algebra(rng: np.random.Generator, p: int, maxdim: int) -> Optional[FDAlgebra]:
    n = int(rng.integers(2, 4))
    gens = [rng.integers(0, p, size=(n, n)) for _ in range(int(rng.integers(1, 3)))]
    mats = span_closure(gens, p, maxdim)
    if mats is None:
        return None
    return algebra_from_matrices(mats, p, name="span")


def random_algebra(rng: np.random.Generator, p: int, maxdim: int) -> FDAlgebra:
    """An algebra of dimension in [1, maxdim]."""
    while True:
        kind = int(rng.integers(0, 7))
        if kind == 0:
            a = ground(p)
        elif kind == 1:
            a = product_algebra(ground(p), ground(p))
        elif kind == 2:
            a = field_extension(irreducible_quadratic(p), p, name=f"F{p}^2")
        elif kind == 3:
            a = upper_triangular(p)
        elif kind == 4:
            a = matrix_algebra(2, p)
        elif kind == 5:
            a = product_algebra(ground(p), upper_triangular(p))
        else:
            a = random_matrix_algebra(rng, p, maxdim)
        if a is not None and 1 <= a.dim <= maxdim:
            return a


def generated_subalgebra(s: FDAlgebra, elements) -> Tuple[FDAlgebra, np.ndarray]:
    """Unital subalgebra of s generated by the given elements, with its inclusion."""
    p = s.p
    mats = span_closure([s.left_mult(x) for x in elements], p)
    vecs = np.stack([la.matmul(m, s.unit, p) for m in mats], axis=1)
    span = la.column_space(vecs, p)
    return subalgebra(s, span.basis, s.unit)


def random_morphism(rng: np.random.Generator, p: int, maxdim: int) -> AlgebraMorphism:
    """A unital algebra map between algebras of dimension at most maxdim."""
    while True:
        kind = int(rng.integers(0, 7))
        if kind == 0:
            s = random_algebra(rng, p, maxdim)
            k = int(rng.integers(1, 3))
            r, incl = generated_subalgebra(s, [rng.integers(0, p, size=s.dim) for _ in range(k)])
            phi = AlgebraMorphism(r, s, incl)
        elif kind == 1:
            r = random_algebra(rng, p, maxdim)
            ideal = two_sided_ideal(r, [rng.integers(0, p, size=r.dim)])
            if ideal.dim == r.dim:
                continue
            _, phi = quotient_algebra(r, ideal)
        elif kind == 2:
            s = random_algebra(rng, p, maxdim)
            phi = AlgebraMorphism(ground(p), s, s.unit.reshape(-1, 1))
        elif kind == 3:
            r = random_algebra(rng, p, maxdim)
            phi = identity_morphism(r)
        elif kind == 4:
            r = random_algebra(rng, p, max(1, maxdim // 2))
            if 2 * r.dim > maxdim:
                continue
            s = product_algebra(r, r)
            phi = AlgebraMorphism(r, s, np.concatenate([la.identity(r.dim), la.identity(r.dim)], axis=0))
        elif kind == 5:
            a = random_algebra(rng, p, maxdim)
            b = random_algebra(rng, p, maxdim)
            if a.dim + b.dim > maxdim:
                continue
            r = product_algebra(a, b)
            phi = AlgebraMorphism(r, a, np.concatenate([la.identity(a.dim), la.zeros(a.dim, b.dim)], axis=1))
        else:
            s = random_algebra(rng, p, maxdim)
            r, incl = generated_subalgebra(s, [rng.integers(0, p, size=s.dim)])
            ideal = two_sided_ideal(s, [rng.integers(0, p, size=s.dim)])
            if ideal.dim == s.dim:
                continue
            t, proj = quotient_algebra(s, ideal)
            phi = compose(proj, AlgebraMorphism(r, s, incl))
        if phi.source.dim <= maxdim and phi.target.dim <= maxdim:
            return phi


def random_composable(rng: np.random.Generator, p: int, maxdim: int) -> Tuple[AlgebraMorphism, AlgebraMorphism]:
    """(phi1: A -> B, phi2: B -> C)."""
    while True:
        phi2 = random_morphism(rng, p, maxdim)
        b = phi2.source
        kind = int(rng.integers(0, 3))
        if kind == 0:
            r, incl = generated_subalgebra(b, [rng.integers(0, p, size=b.dim)])
            phi1 = AlgebraMorphism(r, b, incl)
        elif kind == 1:
            phi1 = AlgebraMorphism(ground(p), b, b.unit.reshape(-1, 1))
        else:
            phi1 = identity_morphism(b)
        return phi1, phi2


# -- bimodules ----------------------------------------------------------------------------


def corner_module(s: FDAlgebra, e) -> Bimodule:
    """S e as an (S, eSe)-bimodule."""
    from .modrep import corner_algebra

    p = s.p
    b, incl = corner_algebra(s, e)
    se = la.column_space(np.stack([s.multiply(s.basis_vector(i), e) for i in range(s.dim)], axis=1), p)
    full = restrict(regular(s), None, AlgebraMorphism(b, s, incl))
    return submodule(full, se)


def random_fgp_bimodule(rng: np.random.Generator, p: int, maxdim: int) -> Bimodule:
    """An (S, R)-bimodule that is finitely generated projective as a left S-module."""
    while True:
        kind = int(rng.integers(0, 4))
        if kind == 0:
            m = s_as_sr(random_morphism(rng, p, maxdim))
        elif kind == 1:
            s = random_algebra(rng, p, maxdim)
            ids = [e for e in idempotents(s) if la.rank(e.reshape(-1, 1), p)]
            e = _choice(rng, ids)
            m = corner_module(s, e)
        elif kind == 2:
            s = random_algebra(rng, p, maxdim)
            ids = [e for e in idempotents(s) if la.rank(e.reshape(-1, 1), p)]
            e = _choice(rng, ids)
            se = corner_module(s, e)
            m = Bimodule(s, ground(p), se.left_action, la.identity(se.dim)[None])
        else:
            s = random_algebra(rng, p, max(1, maxdim // 2))
            k = ground(p)
            reg = regular(s)
            lam = np.stack([np.kron(la.identity(2), a) % p for a in reg.left_action])
            m = Bimodule(s, k, lam, la.identity(2 * s.dim)[None])
        if 0 < m.dim <= 2 * maxdim and fgp_dual_basis(forget_right(m)) is not None:
            return m


# -- corings --------------------------------------------------------------------------------


def random_coring(rng: np.random.Generator, p: int, max_c: int = 4, max_r: int = 3) -> Coring:
    """A coring with dim C <= max_c over an algebra of dim <= max_r."""
    while True:
        kind = int(rng.integers(0, 6))
        try:
            if kind == 0:
                c = trivial_coring(random_algebra(rng, p, max_r))
            elif kind == 1:
                phi = random_morphism(rng, p, max_r)
                c = sweedler_coring(phi)
            elif kind == 2:
                c = dual_coalgebra(random_algebra(rng, p, max_c))
            elif kind == 3:
                m = random_fgp_bimodule(rng, p, max_r)
                if m.left.dim > max_r:
                    continue
                c, _ = comatrix_coring(m)
            elif kind == 4:
                a = random_algebra(rng, p, max_r)
                b = random_algebra(rng, p, max_r)
                if a.dim + b.dim > max_r:
                    continue
                r = product_algebra(a, b)
                proj = AlgebraMorphism(r, a, np.concatenate([la.identity(a.dim), la.zeros(a.dim, b.dim)], axis=1))
                ring = RingStructure(a, proj, np.concatenate([la.identity(a.dim), la.zeros(b.dim, a.dim)], axis=0))
                c = coring_from_ring(ring)
            else:
                c = opposite_coring(random_coring(rng, p, max_c, max_r))
        except Exception:
            continue
        if c.dim <= max_c and c.base.dim <= max_r:
            return c


def random_coring_morphism(rng: np.random.Generator, p: int, maxdim: int = 3) -> CoringMorphism:
    """Instances of the shapes (phi, phi), (eps_C, id), identities, R -> S (x)_R S."""
    while True:
        kind = int(rng.integers(0, 4))
        if kind == 0:
            return scalar_morphism(random_morphism(rng, p, maxdim))
        if kind == 1:
            return counit_morphism(random_coring(rng, p, 4, maxdim))
        if kind == 2:
            return identity_coring_morphism(random_coring(rng, p, 4, maxdim))
        phi = random_morphism(rng, p, maxdim)
        d = sweedler_coring(phi)
        if d.dim > 4:
            continue
        s = phi.target
        from .scalars import sweedler_tensor

        t = sweedler_tensor(phi)
        big = np.stack([t.pure(la.matmul(phi.matrix, phi.source.basis_vector(i), p), s.unit) for i in range(phi.source.dim)], axis=1)
        return CoringMorphism(trivial_coring(phi.source), d, phi, big, name="into_sweedler")
