"""Induction M (x)_R - and coinduction Hom_S(M, -) along an (S, R)-bimodule M.

Notation, following the right-operator convention of :mod:`natfull.modrep`:

* *M = Hom_S(M, S) is an (R, S)-bimodule, (m)(r.f.s) = ((m r)f) s.
* A = End_S(M) is an R-bimodule, (m)(r'.f.r) = ((m r')f) r, and
  chi: R -> A sends r to the map m -> m r.
* For f in *M and m in M, "(?)f m" is the endomorphism x -> ((x)f) m.

Coinduction is naturally full iff some z = sum m_i (x) f_i in
(M (x)_R *M)^S satisfies

    m (x) id_M = sum_i m_i (x) (?)f_i m    in M (x)_R A, for every m.

Induction (M finitely generated projective over S) is naturally full iff
some R-bimodule map E: A -> R satisfies (m)f = m E(f) for all m, f, i.e.
chi o E = id_A.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import exactla as la
from .algebra import (
    AlgebraMorphism,
    is_central,
    is_idempotent,
    is_ring_epimorphism,
)
from .errors import InconsistentCriteria, NotProjective, ValidationError, WitnessViolation
from .modrep import (
    Bimodule,
    EndomorphismAlgebra,
    HomSpace,
    TensorSpace,
    corner_algebra,
    endomorphism_algebra,
    fgp_dual_basis,
    forget_right,
    hom_bimodule,
    hom_space,
    invariants,
    is_generator,
    regular,
    regular_left,
    restrict,
    solve_maps,
    tensor_over,
    validate_bimodule,
)


def _check(m: Bimodule):
    v = validate_bimodule(m)
    if v:
        raise ValidationError("bimodule does not validate", {"bimodule": v})


def dual_module(m: Bimodule) -> Tuple[Bimodule, HomSpace]:
    """*M = Hom_S(M, S) as an (R, S)-bimodule."""
    return hom_bimodule(m, regular(m.left))


def _left_value_matrix(q: Bimodule, v) -> np.ndarray:
    """Columns lambda_Q(e_c) v, so that (L @ f)(x) = ((x)f) . v for f: M -> S."""
    return np.stack([la.matmul(q.left_action[c], v, q.p) for c in range(q.left.dim)], axis=1)


@dataclass
class CoinductionData:
    module: Bimodule
    dual: Bimodule
    dual_hom: HomSpace
    tensor: TensorSpace  # M (x)_R *M
    invariant_basis: np.ndarray  # columns in quotient coordinates of tensor
    end: EndomorphismAlgebra
    end_tensor: TensorSpace  # M (x)_R A


def coinduction_data(m: Bimodule) -> CoinductionData:
    dual, dhom = dual_module(m)
    t = tensor_over(m, dual)
    inv = invariants(t.module)
    end = endomorphism_algebra(m)
    ta = tensor_over(m, end.as_bimodule())
    return CoinductionData(m, dual, dhom, t, inv.basis, end, ta)


def _identity_system(d: CoinductionData):
    """(matrix, rhs) of the condition on z, unknowns = coordinates in the invariant basis."""
    m, p = d.module, d.module.p
    n = m.dim
    lhs_blocks, rhs_blocks = [], []
    one_a = d.end.coordinates(la.identity(n))
    for j in range(n):
        lj = _left_value_matrix(m, la.unit_vector(n, j))
        cj = np.stack([d.end.coordinates(la.matmul(lj, f, p)) for f in d.dual_hom.basis], axis=1) if d.dual_hom.dim else la.zeros(d.end.algebra.dim, 0)
        tj = np.kron(la.identity(n), cj) % p
        block = la.matmul(d.end_tensor.projection, la.matmul(tj, la.matmul(d.tensor.section, d.invariant_basis, p), p), p)
        lhs_blocks.append(block)
        rhs_blocks.append(d.end_tensor.pure(la.unit_vector(n, j), one_a))
    k = d.invariant_basis.shape[1]
    if not lhs_blocks:
        return la.zeros(0, k), np.zeros(0, dtype=np.int64)
    return np.concatenate(lhs_blocks, axis=0), np.concatenate(rhs_blocks)


@dataclass
class CoinductionReport:
    naturally_full: bool
    witness_z: Optional[np.ndarray]  # quotient coordinates in M (x)_R *M
    invariant_dim: int


def analyze_coinduction(m: Bimodule, data: Optional[CoinductionData] = None) -> CoinductionReport:
    _check(m)
    d = data or coinduction_data(m)
    a, b = _identity_system(d)
    y = la.solve_affine(a, b, m.p)
    z = None if y is None else la.matmul(d.invariant_basis, y, m.p)
    return CoinductionReport(z is not None, z, d.invariant_basis.shape[1])


def coinduction_identity_holds(m: Bimodule, z, q: Bimodule, data: Optional[CoinductionData] = None) -> bool:
    """m (x) f = sum m_i (x) (?)f_i.(m)f in M (x)_R Hom_S(M, Q) for all m and f."""
    d = data or coinduction_data(m)
    p = m.p
    hq_mod, hq = hom_bimodule(m, forget_right(q))
    tq = tensor_over(m, hq_mod)
    zl = la.matmul(d.tensor.section, z, p).reshape(m.dim, d.dual_hom.dim)
    for f in hq.basis:
        for j in range(m.dim):
            mf = la.matmul(f, la.unit_vector(m.dim, j), p)
            lq = _left_value_matrix(q, mf)
            cols = np.stack([hq.coordinates(la.matmul(lq, g, p)) for g in d.dual_hom.basis], axis=1) if d.dual_hom.dim else la.zeros(hq.dim, 0)
            rhs = la.matmul(tq.projection, (zl @ cols.T).reshape(-1) % p, p)
            lhs = tq.pure(la.unit_vector(m.dim, j), hq.coordinates(f))
            if not la.equal(lhs, rhs, p):
                return False
    return True


def coinduction_xi(m: Bimodule, z, q: Bimodule, data: Optional[CoinductionData] = None) -> Tuple[TensorSpace, HomSpace, np.ndarray]:
    """xi_Q : Q -> M (x)_R Hom_S(M, Q), q -> sum m_i (x) (?)f_i q."""
    d = data or coinduction_data(m)
    p = m.p
    hq_mod, hq = hom_bimodule(m, forget_right(q))
    tq = tensor_over(m, hq_mod)
    zl = la.matmul(d.tensor.section, z, p).reshape(m.dim, d.dual_hom.dim)
    cols = []
    for j in range(q.dim):
        lq = _left_value_matrix(q, la.unit_vector(q.dim, j))
        c = np.stack([hq.coordinates(la.matmul(lq, g, p)) for g in d.dual_hom.basis], axis=1) if d.dual_hom.dim else la.zeros(hq.dim, 0)
        cols.append(la.matmul(tq.projection, (zl @ c.T).reshape(-1) % p, p))
    xi = np.stack(cols, axis=1) if cols else la.zeros(tq.dim, 0)
    return tq, hq, xi


def coinduction_counit(m: Bimodule, q: Bimodule) -> Tuple[TensorSpace, HomSpace, np.ndarray]:
    """eps_Q : M (x)_R Hom_S(M, Q) -> Q, m (x) f -> (m)f."""
    p = m.p
    hq_mod, hq = hom_bimodule(m, forget_right(q))
    tq = tensor_over(m, hq_mod)
    k = np.zeros((q.dim, m.dim * hq.dim), dtype=np.int64)
    for b in range(m.dim):
        for t, f in enumerate(hq.basis):
            k[:, b * hq.dim + t] = f[:, b]
    return tq, hq, la.matmul(k, tq.section, p)


# -- induction ----------------------------------------------------------------------------


@dataclass
class InductionReport:
    naturally_full: bool
    witness_E: Optional[np.ndarray]  # (dim R, dim A)
    central_idempotent_e: Optional[np.ndarray]
    end_dim: int


def induction_sections(end: EndomorphismAlgebra) -> HomSpace:
    """R-bimodule maps A -> R."""
    return hom_space(end.as_bimodule(), regular(end.chi.source), "both")


def analyze_induction(m: Bimodule, end: Optional[EndomorphismAlgebra] = None) -> InductionReport:
    _check(m)
    if fgp_dual_basis(forget_right(m)) is None:
        raise NotProjective("M is not projective as a left module; the induction criterion does not apply")
    end = end or endomorphism_algebra(m)
    p = m.p
    hs = induction_sections(end)
    basis = end.hom.basis
    # (m)f == m E(f): the right action of E(f_k) must reproduce f_k
    target = basis.reshape(-1) if basis.size else np.zeros(0, dtype=np.int64)

    def fn(e):
        return np.stack([m.act_right(e[:, k]) for k in range(end.algebra.dim)]) if end.algebra.dim else np.zeros(0)

    E = solve_maps(hs.basis, fn, target, p)
    e = None
    if E is not None:
        r = m.right
        e = la.matmul(E, end.algebra.unit, p)
        if not (is_idempotent(r, e) and is_central(r, e)):
            raise InconsistentCriteria("E(1_A) is not a central idempotent")
        re = la.column_space(np.stack([r.multiply(r.basis_vector(i), e) for i in range(r.dim)], axis=1), p)
        if re.dim != end.algebra.dim or la.rank(la.matmul(end.chi.matrix, re.basis, p), p) != re.dim:
            raise InconsistentCriteria("chi does not restrict to an isomorphism Re -> End(M)")
    return InductionReport(E is not None, E, e, end.algebra.dim)


# -- structural consequences ----------------------------------------------------------------


@dataclass
class StructureReport:
    central_idempotent_e_of_S: Optional[np.ndarray]
    M_generator_over_eSe: Optional[bool]
    chi_epi: bool
    M_generator: bool
    fully_faithful_G: Optional[bool]
    counit_bijective: Dict[str, bool]


def trace_of_witness(d: CoinductionData, z) -> np.ndarray:
    """e = sum (m_i) f_i in S."""
    p = d.module.p
    zl = la.matmul(d.tensor.section, z, p).reshape(d.module.dim, d.dual_hom.dim)
    e = np.zeros(d.module.left.dim, dtype=np.int64)
    for b in range(d.module.dim):
        for t, f in enumerate(d.dual_hom.basis):
            if zl[b, t]:
                e = (e + zl[b, t] * f[:, b]) % p
    return e


def structural_consequences(m: Bimodule, witness_z=None, data: Optional[CoinductionData] = None) -> StructureReport:
    d = data or coinduction_data(m)
    s, p = m.left, m.p
    e = None
    gen_corner = None
    if witness_z is not None:
        e = trace_of_witness(d, witness_z)
        if not (is_idempotent(s, e) and is_central(s, e)):
            raise WitnessViolation("sum (m_i) f_i is not a central idempotent")
        if not la.equal(m.act_left(e), la.identity(m.dim), p):
            raise WitnessViolation("e does not act as the identity on M")
        s1, incl = corner_algebra(s, e)
        m1 = forget_right(restrict(m, AlgebraMorphism(s1, s, incl), None))
        gen_corner = is_generator(m1)
        if not gen_corner:
            raise WitnessViolation("M is not a generator over eSe")
    gen = is_generator(forget_right(m))
    chi_epi = is_ring_epimorphism(d.end.chi)[0]
    bij: Dict[str, bool] = {}
    ff = None
    if gen and chi_epi:
        for label, q in (("S", regular_left(s)), ("M", forget_right(m))):
            tq, _, eps = coinduction_counit(m, q)
            bij[label] = tq.dim == q.dim and la.rank(eps, p) == q.dim
        ff = all(bij.values())
        if not ff:
            raise WitnessViolation("generator with epimorphic chi but a counit is not bijective")
    return StructureReport(e, gen_corner, chi_epi, gen, ff, bij)


@dataclass
class BimoduleFunctorReport:
    induction: Optional[InductionReport]
    induction_refused: Optional[str]
    coinduction: CoinductionReport
    structure: StructureReport


def analyze_bimodule(m: Bimodule) -> BimoduleFunctorReport:
    _check(m)
    d = coinduction_data(m)
    co = analyze_coinduction(m, d)
    try:
        ind = analyze_induction(m, d.end)
        refused = None
    except NotProjective as exc:
        ind, refused = None, str(exc)
    st = structural_consequences(m, co.witness_z, d)
    return BimoduleFunctorReport(ind, refused, co, st)
