"""Brute-force verification of the natural-fullness verdicts.

Two independent checks back every criterion:

* per-object fullness: for each object of a finite family, solve for a
  splitting of the unit (left adjoint full) or the counit (right adjoint
  full) with no naturality constraint.  Any failure refutes fullness and
  hence natural fullness.
* natural splittings: from a criterion witness, build the maps
  P(u) = nu o G(u) o eta (left adjoint) or P(g) = eps o F(g) o xi (right
  adjoint) on every pair of family objects, then check F(P(u)) = u on a
  basis of each Hom-space and the naturality squares on sampled triples.

When a criterion says "not naturally full" and every per-object system is
solvable, the instance is reported as family-consistent: the finite family
cannot see the failure of naturality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import exactla as la
from .algebra import AlgebraMorphism, compose, is_ring_epimorphism
from .bimodfunc import analyze_coinduction, analyze_induction, coinduction_counit, coinduction_data, coinduction_xi
from .corings import (
    Comodule,
    Coring,
    analyze_cotensor_functor,
    analyze_forgetful_functor,
    comodule_counit_matrix,
    comodule_maps,
    induced_comodule,
    regular_comodule,
)
from .cormor import (
    CoringMorphism,
    CotensorSpace,
    analyze_F_naturally_full,
    analyze_G_naturally_full,
    counit_matrix,
    cotensor,
    extend_comodule,
    unit_matrix,
)
from .errors import WitnessViolation
from .families import Family, left_family, right_family
from .modrep import (
    Bimodule,
    endomorphism_algebra,
    fgp_dual_basis,
    forget_right,
    hom_bimodule,
    hom_space,
    TensorSpace,
    regular,
    solve_maps,
    tensor_map,
    tensor_over,
)
from .scalars import (
    analyze_extension,
    counit_map,
    counit_splits,
    extend,
    find_E,
    restrict_left,
    s_as_rr,
    sweedler_family,
    unit_cosplits,
    unit_map,
)

MAX_FAMILY = 4
SAMPLED_SQUARES = 6


# -- generic Hom-set machinery ---------------------------------------------------------------


@dataclass
class SplittingWitness:
    """A natural right inverse P of the Hom-set maps of a functor, materialized on a family."""

    functor: str
    kind: str  # "nu" (GF -> 1) for a left adjoint, "xi" (1 -> FG) for a right adjoint
    origin: str
    labels: List[str]
    components: Dict[str, np.ndarray] = field(default_factory=dict)
    checked_maps: int = 0
    checked_squares: int = 0


@dataclass
class Adapter:
    """Hom-set data for one functor on a finite family."""

    functor: str
    kind: str
    origin: str
    p: int
    labels: List[str]
    src_homs: Callable[[int, int], np.ndarray]  # (k, dim target object, dim source object)
    tgt_homs: Callable[[int, int], np.ndarray]
    apply: Callable[[int, int, np.ndarray], np.ndarray]
    P: Callable[[int, int, np.ndarray], np.ndarray]
    components: Dict[str, np.ndarray] = field(default_factory=dict)


def _memo(fn):
    cache = {}

    def wrapped(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = fn(i, j)
        return cache[(i, j)]

    return wrapped


def _in_span(basis: np.ndarray, x: np.ndarray, p: int) -> bool:
    if basis.shape[0] == 0:
        return la.is_zero(x)
    mat = basis.reshape(basis.shape[0], -1).T
    return la.solve_affine(mat, x.reshape(-1), p) is not None


def verify_adapter(ad: Adapter, rng: Optional[np.random.Generator] = None) -> SplittingWitness:
    """F(P(u)) = u on Hom-space bases and naturality on sampled squares; raises WitnessViolation."""
    rng = rng or np.random.default_rng(0)
    p, n = ad.p, len(ad.labels)
    src, tgt = _memo(ad.src_homs), _memo(ad.tgt_homs)
    wit = SplittingWitness(ad.functor, ad.kind, ad.origin, list(ad.labels), dict(ad.components))
    for i in range(n):
        for j in range(n):
            for u in tgt(i, j):
                x = ad.P(i, j, u)
                if not _in_span(src(i, j), x, p):
                    raise WitnessViolation(f"{ad.functor}: P(u) is not a morphism ({ad.labels[i]} -> {ad.labels[j]})")
                if not la.equal(ad.apply(i, j, x), u, p):
                    raise WitnessViolation(f"{ad.functor}: F(P(u)) != u ({ad.labels[i]} -> {ad.labels[j]})")
                wit.checked_maps += 1
    for _ in range(SAMPLED_SQUARES if n else 0):
        i, j, k = (int(v) for v in rng.integers(0, n, size=3))
        us = tgt(i, j)
        if not len(us):
            continue
        u = us[int(rng.integers(0, len(us)))]
        pu = ad.P(i, j, u)
        after = src(j, k)
        if len(after):
            a = after[int(rng.integers(0, len(after)))]
            lhs = ad.P(i, k, la.matmul(ad.apply(j, k, a), u, p))
            if not la.equal(lhs, la.matmul(a, pu, p), p):
                raise WitnessViolation(f"{ad.functor}: naturality fails after composing on the left")
        before = src(k, i)
        if len(before):
            b = before[int(rng.integers(0, len(before)))]
            lhs = ad.P(k, j, la.matmul(u, ad.apply(k, i, b), p))
            if not la.equal(lhs, la.matmul(pu, b, p), p):
                raise WitnessViolation(f"{ad.functor}: naturality fails after composing on the right")
        wit.checked_squares += 1
    return wit


def _trim(family: Family) -> Family:
    return family[:MAX_FAMILY]


# -- scalars -------------------------------------------------------------------------------------


def extension_adapter(phi: AlgebraMorphism, E: np.ndarray, family: Optional[Family] = None) -> Adapter:
    """P(u)(m) = (E (x) M')(u(1 (x) m)) for u: S (x)_R M -> S (x)_R M'."""
    p, s = phi.p, phi.target
    fam = _trim(family or left_family(phi.source))
    mods = [forget_right(m) for _, m in fam]
    tens = [extend(phi, m) for m in mods]
    units = [unit_map(phi, m)[1] for m in mods]

    def e_apply(j):
        m = mods[j]
        k = la.zeros(m.dim, s.dim * m.dim)
        for a in range(s.dim):
            k[:, a * m.dim : (a + 1) * m.dim] = m.act_left(E[:, a])
        return la.matmul(k, tens[j].section, p)

    e_maps = [e_apply(j) for j in range(len(mods))]
    return Adapter(
        "extension", "nu", "E: S -> R with phi o E = id", p, [lab for lab, _ in fam],
        lambda i, j: hom_space(mods[i], mods[j], "left").basis,
        lambda i, j: hom_space(tens[i].module, tens[j].module, "left").basis,
        lambda i, j, f: tensor_map(tens[i], tens[j], la.identity(s.dim), f),
        lambda i, j, u: la.matmul(e_maps[j], la.matmul(u, units[i], p), p),
        {"E": E},
    )


def restriction_adapter(phi: AlgebraMorphism, family: Optional[Family] = None) -> Adapter:
    """P(g) = g: every R-linear map between S-modules is S-linear."""
    p = phi.p
    fam = _trim(family or sweedler_family(phi))
    mods = [forget_right(m) for _, m in fam]
    res = [restrict_left(phi, m) for m in mods]
    return Adapter(
        "restriction", "xi", "xi_N(n) = 1 (x) n", p, [lab for lab, _ in fam],
        lambda i, j: hom_space(mods[i], mods[j], "left").basis,
        lambda i, j: hom_space(res[i], res[j], "left").basis,
        lambda i, j, f: f,
        lambda i, j, g: g,
    )


# -- bimodule functors ---------------------------------------------------------------------------------


def induction_adapter(m: Bimodule, E: np.ndarray, family: Optional[Family] = None) -> Adapter:
    """F = M (x)_R -, nu_N(h) = sum_i E(g_i) p_i built from a dual basis."""
    p = m.p
    fam = _trim(family or left_family(m.right))
    mods = [forget_right(x) for _, x in fam]
    tens = [tensor_over(m, x) for x in mods]
    end = endomorphism_algebra(m)
    db = fgp_dual_basis(forget_right(m))
    g_coords = []  # per (i, a): coordinates in A of m -> (m)*e_i . e_a
    for f in db.functionals:
        row = []
        for a in range(m.dim):
            ea = la.unit_vector(m.dim, a)
            mat = np.stack([la.matmul(m.act_left(f[:, j]), ea, p) for j in range(m.dim)], axis=1)
            row.append(la.matmul(E, end.coordinates(mat), p))
        g_coords.append(row)

    def P(i, j, u):
        n_src, n_tgt, t_src, t_tgt = mods[i], mods[j], tens[i], tens[j]
        cols = []
        for b0 in range(n_src.dim):
            out = np.zeros(n_tgt.dim, dtype=np.int64)
            nb = la.unit_vector(n_src.dim, b0)
            for idx, e_i in enumerate(db.elements):
                h = la.matmul(u, t_src.pure(e_i, nb), p)
                coef = la.matmul(t_tgt.section, h, p).reshape(m.dim, n_tgt.dim)
                for a, b in zip(*np.nonzero(coef)):
                    out = (out + coef[a, b] * la.matmul(n_tgt.act_left(g_coords[idx][a]), la.unit_vector(n_tgt.dim, b), p)) % p
            cols.append(out)
        return np.stack(cols, axis=1) if cols else la.zeros(n_tgt.dim, 0)

    return Adapter(
        "induction", "nu", "E: End(M) -> R with (m)f = m E(f)", p, [lab for lab, _ in fam],
        lambda i, j: hom_space(mods[i], mods[j], "left").basis,
        lambda i, j: hom_space(tens[i].module, tens[j].module, "left").basis,
        lambda i, j, f: tensor_map(tens[i], tens[j], la.identity(m.dim), f),
        P,
        {"E": E},
    )


def coinduction_adapter(m: Bimodule, z: np.ndarray, family: Optional[Family] = None) -> Adapter:
    """G = Hom_S(M, -), P(g) = eps_Q' o (M (x) g) o xi_Q."""
    p = m.p
    fam = _trim(family or left_family(m.left))
    mods = [forget_right(x) for _, x in fam]
    data = coinduction_data(m)
    xis = [coinduction_xi(m, z, q, data) for q in mods]  # (tq, hq, xi)
    eps = [coinduction_counit(m, q)[2] for q in mods]
    homs = [hom_bimodule(m, q) for q in mods]  # (Hom_S(M, Q) as left R-module, HomSpace)

    def g_apply(i, j, h):
        hs_i, hs_j = xis[i][1], xis[j][1]
        cols = [hs_j.coordinates(la.matmul(h, f, p)) for f in hs_i.basis]
        return np.stack(cols, axis=1) if cols else la.zeros(hs_j.dim, 0)

    def P(i, j, g):
        tq_i, _, xi_i = xis[i]
        tq_j = xis[j][0]
        return la.matmul(eps[j], la.matmul(tensor_map(tq_i, tq_j, la.identity(m.dim), g), xi_i, p), p)

    return Adapter(
        "coinduction", "xi", "z in (M (x)_R *M)^S", p, [lab for lab, _ in fam],
        lambda i, j: hom_space(mods[i], mods[j], "left").basis,
        lambda i, j: hom_space(homs[i][0], homs[j][0], "left").basis,
        g_apply,
        P,
        {"z": z},
    )


# -- coring functors -------------------------------------------------------------------------------------


def comodule_family(c: Coring) -> List[Tuple[str, Comodule]]:
    out = [("C", regular_comodule(c))]
    for lab, n in right_family(c.base)[: MAX_FAMILY - 1]:
        out.append((f"{lab} (x) C", induced_comodule(c, forget_left_module(n), name=lab)))
    return out


def forget_left_module(n: Bimodule) -> Bimodule:
    from .modrep import forget_left

    return forget_left(n)


def forgetful_adapter(c: Coring) -> Adapter:
    """P(f) = (M' (x) eps) o (f (x) C) o rho_M."""
    from .modrep import forget_left

    p = c.p
    fam = comodule_family(c)
    mods = [mc for _, mc in fam]
    counits = [comodule_counit_matrix(mc.module, c, mc.tensor) for mc in mods]

    def P(i, j, f):
        return la.matmul(counits[j], la.matmul(tensor_map(mods[i].tensor, mods[j].tensor, f, la.identity(c.dim)), mods[i].coaction, p), p)

    return Adapter(
        "forgetful", "nu", "c eps(d) = eps(c) d", p, [lab for lab, _ in fam],
        lambda i, j: comodule_maps(mods[i], mods[j]),
        lambda i, j: hom_space(forget_left(mods[i].module), forget_left(mods[j].module), "right").basis,
        lambda i, j, f: f,
        P,
    )


def cotensor_adapter(c: Coring, z: np.ndarray) -> Adapter:
    """G = - (x)_R C, P(g) = (N' (x) eps) o g o (n -> n (x) z)."""
    p = c.p
    fam = _trim(right_family(c.base))
    mods = [forget_left_module(n) for _, n in fam]
    ind = [induced_comodule(c, n) for n in mods]
    ys = [tensor_over(n, c.carrier) for n in mods]
    xis = []
    for n, y in zip(mods, ys):
        cols = [y.pure(la.unit_vector(n.dim, j), z) for j in range(n.dim)]
        xis.append(np.stack(cols, axis=1) if cols else la.zeros(y.dim, 0))
    counits = [comodule_counit_matrix(n, c, y) for n, y in zip(mods, ys)]

    def P(i, j, g):
        return la.matmul(counits[j], la.matmul(g, xis[i], p), p)

    return Adapter(
        "cotensor", "xi", "z in C^R with c = eps(c) z", p, [lab for lab, _ in fam],
        lambda i, j: hom_space(mods[i], mods[j], "right").basis,
        lambda i, j: comodule_maps(ind[i], ind[j]),
        lambda i, j, f: tensor_map(ys[i], ys[j], f, la.identity(c.dim)),
        P,
        {"z": z},
    )


# -- coring morphism functors ----------------------------------------------------------------------------


def _restricted(g_src: CotensorSpace, g_tgt: CotensorSpace, f: np.ndarray, dim_c: int, p: int) -> np.ndarray:
    """f (x) C restricted to the cotensors."""
    amb = tensor_map(g_src.ambient, g_tgt.ambient, f, la.identity(dim_c))
    return g_tgt.coordinates(la.matmul(amb, g_src.inclusion, p))


def _nu_component(m: CoringMorphism, nu_c: np.ndarray, gfc: CotensorSpace, fc_tensor: TensorSpace, mc: Comodule, gfm: CotensorSpace, fm_tensor: TensorSpace) -> np.ndarray:
    """nu_M(sum (m (x) s) (x) c) = sum m_[0] eps(nu_C((m_[1] (x) s) (x) c))."""
    p, c = m.p, m.source
    s = m.phi.target
    n = c.dim
    # lift GF(M) to M (x)_K S (x)_K C
    lift = la.matmul(np.kron(fm_tensor.section, la.identity(n)) % p, la.matmul(gfm.ambient.section, gfm.inclusion, p), p)
    step = np.kron(mc.lift, la.identity(s.dim * n)) % p  # M (x) C (x) S (x) C
    inner = la.matmul(gfc.ambient.projection, np.kron(fc_tensor.projection, la.identity(n)) % p, p)
    mk = la.matmul(np.kron(la.identity(mc.dim), inner) % p, la.matmul(step, lift, p), p)
    my = tensor_over(mc.module, gfc.ambient.module)
    mkk = tensor_over(mc.module, gfc.module)
    target = la.matmul(my.projection, mk, p)
    incl = tensor_map(mkk, my, la.identity(mc.dim), gfc.inclusion)
    pre = la.solve_matrix(incl, target, p)
    if pre is None:
        raise WitnessViolation("the lifted element does not lie in M (x)_R GF(C)")
    to_mc = tensor_map(mkk, mc.tensor, la.identity(mc.dim), nu_c)
    return la.matmul(comodule_counit_matrix(mc.module, c, mc.tensor), la.matmul(to_mc, pre, p), p)


def cormor_F_adapter(m: CoringMorphism, nu_c: np.ndarray) -> Adapter:
    p, c = m.p, m.source
    fam = comodule_family(c)
    mods = [mc for _, mc in fam]
    fc = extend_comodule(m, regular_comodule(c))
    gfc = cotensor(fc.comodule, m)
    data = []
    for mc in mods:
        fm, gfm, eta = unit_matrix(m, mc)
        nu = _nu_component(m, nu_c, gfc, fc.tensor, mc, gfm, fm.tensor)
        data.append((fm, gfm, eta, nu))

    def P(i, j, u):
        fm_i, gfm_i, eta_i, _ = data[i]
        _, gfm_j, _, nu_j = data[j]
        return la.matmul(nu_j, la.matmul(_restricted(gfm_i, gfm_j, u, c.dim, p), eta_i, p), p)

    return Adapter(
        "coring-morphism F", "nu", "bicomodule nu with eta_C o nu = id", p, [lab for lab, _ in fam],
        lambda i, j: comodule_maps(mods[i], mods[j]),
        lambda i, j: comodule_maps(data[i][0].comodule, data[j][0].comodule),
        lambda i, j, f: tensor_map(data[i][0].tensor, data[j][0].tensor, f, la.identity(m.phi.target.dim)),
        P,
        {"nu_C": nu_c},
    )


def _xi_component(m: CoringMorphism, psi: np.ndarray, sandwich, nc: Comodule, g: CotensorSpace, fg: TensorSpace) -> np.ndarray:
    """xi_N(n) = sum n_[0] Psi_hat(n_[1]), rearranged into G(N) (x)_R S."""
    from .scalars import s_as_rs

    p, c, d = m.p, m.source, m.target
    s = m.phi.target
    n = c.dim
    psi_k = la.matmul(sandwich.section, psi, p).reshape(s.dim, n, s.dim, d.dim)
    ys = tensor_over(g.ambient.module, s_as_rs(m.phi))
    cols = []
    for j in range(nc.dim):
        coef = nc.lift[:, j].reshape(nc.dim, d.dim)
        v = np.einsum("ad,scud,sxa->xcu", coef, psi_k, nc.module.right_action) % p
        yk = la.matmul(np.kron(g.ambient.projection, la.identity(s.dim)) % p, v.reshape(-1), p)
        cols.append(la.matmul(ys.projection, yk, p))
    target = np.stack(cols, axis=1) if cols else la.zeros(ys.dim, 0)
    incl = tensor_map(fg, ys, g.inclusion, la.identity(s.dim))
    x = la.solve_matrix(incl, target, p)
    if x is None:
        raise WitnessViolation("xi_N does not land in G(N) (x)_R S")
    return x


def cotensor_family(m: CoringMorphism) -> List[Tuple[str, Comodule]]:
    d = m.target
    out = [("D", regular_comodule(d))]
    for lab, n in right_family(d.base)[: MAX_FAMILY - 1]:
        out.append((f"{lab} (x) D", induced_comodule(d, forget_left_module(n), name=lab)))
    return out


def cormor_G_adapter(m: CoringMorphism, psi: np.ndarray, sandwich) -> Adapter:
    p, c = m.p, m.source
    fam = cotensor_family(m)
    mods = [nc for _, nc in fam]
    data = []
    for nc in mods:
        g = cotensor(nc, m)
        if g.comodule is None:
            raise WitnessViolation("cotensor coaction is not inherited")
        fg, eps = counit_matrix(m, g)
        xi = _xi_component(m, psi, sandwich, nc, g, fg)
        data.append((g, fg, eps, xi))

    def P(i, j, gmap):
        g_i, fg_i, _, xi_i = data[i]
        _, fg_j, eps_j, _ = data[j]
        return la.matmul(eps_j, la.matmul(tensor_map(fg_i, fg_j, gmap, la.identity(m.phi.target.dim)), xi_i, p), p)

    return Adapter(
        "coring-morphism G", "xi", "Psi_hat with Psi_hat o Phi_hat = id", p, [lab for lab, _ in fam],
        lambda i, j: comodule_maps(mods[i], mods[j]),
        lambda i, j: comodule_maps(data[i][0].comodule, data[j][0].comodule),
        lambda i, j, h: _restricted(data[i][0], data[j][0], h, c.dim, p),
        P,
        {"Psi_hat": psi},
    )


# -- per-object fullness ------------------------------------------------------------------------------------


def per_object_fullness(kind: str, instance, family: Optional[Family] = None) -> Dict[str, bool]:
    """Per-object splitting of the unit (left adjoints) or counit (right adjoints) on a family.

    kinds: extension, restriction (AlgebraMorphism); induction, coinduction
    (Bimodule); forgetful, cotensor (Coring); coring-morphism-F,
    coring-morphism-G (CoringMorphism).
    """
    if kind == "extension":
        fam = family or left_family(instance.source)
        return {lab: unit_cosplits(instance, forget_right(m)) is not None for lab, m in fam}
    if kind == "restriction":
        fam = family or sweedler_family(instance)
        return {lab: counit_splits(instance, forget_right(m)) for lab, m in fam}
    if kind == "induction":
        return _induction_per_object(instance, family)
    if kind == "coinduction":
        return _coinduction_per_object(instance, family)
    if kind == "forgetful":
        return _forgetful_per_object(instance)
    if kind == "cotensor":
        return _cotensor_per_object(instance, family)
    if kind == "coring-morphism-F":
        return _cormor_F_per_object(instance)
    if kind == "coring-morphism-G":
        return _cormor_G_per_object(instance)
    raise ValueError(f"unknown functor kind {kind!r}")


def _induction_per_object(m: Bimodule, family: Optional[Family]) -> Dict[str, bool]:
    p = m.p
    out = {}
    for lab, x in family or left_family(m.right):
        n = forget_right(x)
        t = tensor_over(m, n)
        hmod, hs = hom_bimodule(m, forget_right(t.module))
        cols = [hs.coordinates(np.stack([t.pure(la.unit_vector(m.dim, a), la.unit_vector(n.dim, j)) for a in range(m.dim)], axis=1)) for j in range(n.dim)]
        eta = np.stack(cols, axis=1) if cols else la.zeros(hs.dim, 0)
        basis = hom_space(forget_right(hmod), n, "left").basis
        out[lab] = solve_maps(basis, lambda v: la.matmul(eta, v, p), la.identity(hs.dim), p) is not None
    return out


def _coinduction_per_object(m: Bimodule, family: Optional[Family]) -> Dict[str, bool]:
    p = m.p
    out = {}
    for lab, x in family or left_family(m.left):
        q = forget_right(x)
        tq, _, eps = coinduction_counit(m, q)
        basis = hom_space(q, forget_right(tq.module), "left").basis
        out[lab] = solve_maps(basis, lambda v: la.matmul(v, eps, p), la.identity(tq.dim), p) is not None
    return out


def _forgetful_per_object(c: Coring) -> Dict[str, bool]:
    p = c.p
    out = {}
    for lab, mc in comodule_family(c):
        gf = induced_comodule(c, forget_left_module(mc.module))
        basis = comodule_maps(gf, mc)
        out[lab] = solve_maps(basis, lambda v: la.matmul(mc.coaction, v, p), la.identity(gf.dim), p) is not None
    return out


def _cotensor_per_object(c: Coring, family: Optional[Family]) -> Dict[str, bool]:
    p = c.p
    out = {}
    for lab, x in family or right_family(c.base):
        n = forget_left_module(x)
        ind = induced_comodule(c, n)
        eps = comodule_counit_matrix(n, c, tensor_over(n, c.carrier))
        basis = hom_space(n, forget_left_module(ind.module), "right").basis
        out[lab] = solve_maps(basis, lambda v: la.matmul(v, eps, p), la.identity(ind.dim), p) is not None
    return out


def _cormor_F_per_object(m: CoringMorphism) -> Dict[str, bool]:
    p = m.p
    out = {}
    for lab, mc in comodule_family(m.source):
        _, gfm, eta = unit_matrix(m, mc)
        if gfm.comodule is None:
            out[lab] = False
            continue
        basis = comodule_maps(gfm.comodule, mc)
        out[lab] = solve_maps(basis, lambda v: la.matmul(eta, v, p), la.identity(gfm.dim), p) is not None
    return out


def _cormor_G_per_object(m: CoringMorphism) -> Dict[str, bool]:
    p = m.p
    out = {}
    for lab, nc in cotensor_family(m):
        g = cotensor(nc, m)
        if g.comodule is None:
            out[lab] = False
            continue
        fg, eps = counit_matrix(m, g)
        fgn = extend_comodule(m, g.comodule)
        basis = comodule_maps(nc, fgn.comodule)
        out[lab] = solve_maps(basis, lambda v: la.matmul(v, eps, p), la.identity(fg.dim), p) is not None
    return out


# -- verdict classification --------------------------------------------------------------------------------


@dataclass
class OracleVerdict:
    functor: str
    criterion: bool
    per_object: Dict[str, bool]
    status: str  # "verified", "refuted-on-family", "family-consistent"
    witness: Optional[SplittingWitness] = None

    @property
    def full_on_family(self) -> bool:
        return all(self.per_object.values())


def _classify(functor: str, criterion: bool, per_object: Dict[str, bool], adapter_fn) -> OracleVerdict:
    if criterion:
        if not all(per_object.values()):
            raise WitnessViolation(f"{functor}: naturally full by criterion but some object has no splitting")
        return OracleVerdict(functor, True, per_object, "verified", verify_adapter(adapter_fn()))
    status = "family-consistent" if all(per_object.values()) else "refuted-on-family"
    return OracleVerdict(functor, False, per_object, status)


def natural_splitting_from_witness(functor: str, instance, witness, extra=None) -> SplittingWitness:
    """Materialize and verify P from a criterion witness (raises WitnessViolation on failure)."""
    if functor == "extension":
        return verify_adapter(extension_adapter(instance, witness))
    if functor == "restriction":
        return verify_adapter(restriction_adapter(instance))
    if functor == "induction":
        return verify_adapter(induction_adapter(instance, witness))
    if functor == "coinduction":
        return verify_adapter(coinduction_adapter(instance, witness))
    if functor == "forgetful":
        return verify_adapter(forgetful_adapter(instance))
    if functor == "cotensor":
        return verify_adapter(cotensor_adapter(instance, witness))
    if functor == "coring-morphism-F":
        return verify_adapter(cormor_F_adapter(instance, witness))
    if functor == "coring-morphism-G":
        return verify_adapter(cormor_G_adapter(instance, witness, extra))
    raise ValueError(f"unknown functor kind {functor!r}")


def oracle_scalars(phi: AlgebraMorphism) -> Dict[str, OracleVerdict]:
    epi, _ = is_ring_epimorphism(phi)
    E = find_E(phi)
    return {
        "restriction": _classify("restriction", epi, per_object_fullness("restriction", phi), lambda: restriction_adapter(phi)),
        "extension": _classify("extension", E is not None, per_object_fullness("extension", phi), lambda: extension_adapter(phi, E)),
    }


def oracle_bimodule(m: Bimodule) -> Dict[str, OracleVerdict]:
    out = {}
    co = analyze_coinduction(m)
    out["coinduction"] = _classify("coinduction", co.naturally_full, per_object_fullness("coinduction", m), lambda: coinduction_adapter(m, co.witness_z))
    if fgp_dual_basis(forget_right(m)) is not None:
        ind = analyze_induction(m)
        out["induction"] = _classify("induction", ind.naturally_full, per_object_fullness("induction", m), lambda: induction_adapter(m, ind.witness_E))
    return out


def oracle_coring(c: Coring) -> Dict[str, OracleVerdict]:
    g = analyze_cotensor_functor(c)
    f = analyze_forgetful_functor(c)
    return {
        "cotensor": _classify("cotensor", g.naturally_full, per_object_fullness("cotensor", c), lambda: cotensor_adapter(c, g.witness_z)),
        "forgetful": _classify("forgetful", f.naturally_full, per_object_fullness("forgetful", c), lambda: forgetful_adapter(c)),
    }


def oracle_coring_morphism(m: CoringMorphism) -> Dict[str, OracleVerdict]:
    f = analyze_F_naturally_full(m)
    g = analyze_G_naturally_full(m)
    return {
        "F": _classify("coring-morphism F", f.naturally_full, per_object_fullness("coring-morphism-F", m), lambda: cormor_F_adapter(m, f.witness_nu)),
        "G": _classify("coring-morphism G", g.naturally_full, per_object_fullness("coring-morphism-G", m), lambda: cormor_G_adapter(m, g.witness_Psi, g.sandwich)),
    }


# -- composition --------------------------------------------------------------------------------------------


@dataclass
class CompositionReport:
    inner_epi: bool
    outer_epi: bool
    composite_epi: bool
    outer_splits: bool
    violations: List[str]


def bimodule_retraction(phi: AlgebraMorphism) -> Optional[np.ndarray]:
    """An R-bimodule map E: S -> R with E o phi = id_R (extension along phi separable)."""
    hs = hom_space(s_as_rr(phi), regular(phi.source), "both")
    return solve_maps(hs.basis, lambda e: la.matmul(e, phi.matrix, phi.p), la.identity(phi.source.dim), phi.p)


def composition_checks(phi1: AlgebraMorphism, phi2: AlgebraMorphism) -> CompositionReport:
    """Restriction along A -phi1-> B -phi2-> C: the composite functor is (phi1)_* o (phi2)_*."""
    inner = is_ring_epimorphism(phi1)[0]
    outer = is_ring_epimorphism(phi2)[0]
    comp = is_ring_epimorphism(compose(phi2, phi1))[0]
    splits = bimodule_retraction(phi2) is not None
    v = []
    if inner and outer and not comp:
        v.append("both restrictions naturally full but the composite is not")
    if comp and not outer:
        v.append("composite restriction naturally full but the outer one is not")
    if comp and splits and not inner:
        v.append("composite naturally full and extension along phi2 separable, yet restriction along phi1 is not naturally full")
    return CompositionReport(inner, outer, comp, splits, v)


# -- the seeded equivalence suite ---------------------------------------------------------------------------

SUITE_VERSION = "natfull/1"
SUITE_KINDS = ("scalars", "bimodule", "coring", "coring-morphism", "composition")


def _verdict_record(verdicts: Dict[str, OracleVerdict]) -> Dict[str, dict]:
    return {
        k: {"criterion": v.criterion, "status": v.status, "per_object": dict(sorted(v.per_object.items()))}
        for k, v in sorted(verdicts.items())
    }


def _suite_scalars(phi: AlgebraMorphism) -> Tuple[dict, List[str]]:
    from .scalars import analyze_scalars

    rep = analyze_scalars(phi)
    orc = oracle_scalars(phi)
    v = [name for name, ok in rep.cross_checks if not ok]
    if orc["restriction"].criterion != rep.restriction.naturally_full:
        v.append("restriction oracle criterion differs from the analyzer")
    if orc["extension"].criterion != rep.extension.naturally_full:
        v.append("extension oracle criterion differs from the analyzer")
    if rep.extension.full_on_family != orc["extension"].full_on_family:
        v.append("extension per-object fullness differs between analyzer and oracle")
    rec = {
        "dims": [phi.source.dim, phi.target.dim],
        "restriction_conditions": dict(sorted(rep.restriction.conditions.items())),
        "oracle": _verdict_record(orc),
    }
    return rec, v


def _suite_bimodule(m: Bimodule) -> Tuple[dict, List[str]]:
    from .bimodfunc import analyze_bimodule
    from .corings import comatrix_coring

    rep = analyze_bimodule(m)
    orc = oracle_bimodule(m)
    v: List[str] = []
    if orc["coinduction"].criterion != rep.coinduction.naturally_full:
        v.append("coinduction oracle criterion differs from the analyzer")
    rec = {"dims": [m.left.dim, m.dim, m.right.dim], "coinduction": rep.coinduction.naturally_full}
    if rep.induction is not None:
        rec["induction"] = rep.induction.naturally_full
        end = endomorphism_algebra(m)
        if analyze_extension(end.chi).naturally_full != rep.induction.naturally_full:
            v.append("induction verdict differs from extension along R -> End(M)")
        cm, _ = comatrix_coring(m)
        g = analyze_cotensor_functor(cm).naturally_full
        f = analyze_forgetful_functor(cm).naturally_full
        rec["comatrix"] = {"cotensor": g, "forgetful": f}
        if g != rep.coinduction.naturally_full:
            v.append("comatrix cotensor verdict differs from coinduction")
    rec["oracle"] = _verdict_record(orc)
    return rec, v


def _suite_coring(c: Coring) -> Tuple[dict, List[str]]:
    from .corings import analyze_coring, check_chi_condition, coring_ring_round_trip, find_chi, grouplikes
    from .errors import TooLargeToEnumerate

    rep = analyze_coring(c)
    orc = oracle_coring(c)
    v: List[str] = []
    if orc["cotensor"].criterion != rep.cotensor.naturally_full:
        v.append("cotensor oracle criterion differs from the analyzer")
    if orc["forgetful"].criterion != rep.forgetful.naturally_full:
        v.append("forgetful oracle criterion differs from the analyzer")
    if rep.cotensor.naturally_full:
        if not (rep.derived.fgp_left and rep.derived.fgp_right and rep.derived.frobenius_phi_bijective):
            v.append("G naturally full without the projectivity and Frobenius consequences")
        if not coring_ring_round_trip(c)[2]:
            v.append("coring -> ring -> coring does not round-trip")
    if rep.forgetful.naturally_full and not rep.derived.coseparability_identity:
        v.append("F naturally full without a coseparability witness")
    rec = {
        "dims": [c.base.dim, c.dim],
        "cotensor": rep.cotensor.naturally_full,
        "forgetful": rep.forgetful.naturally_full,
        "coseparable": rep.coseparable,
        "grouplikes": rep.grouplike_count,
    }
    chi_found = []
    try:
        gs = list(grouplikes(c))
    except TooLargeToEnumerate:
        gs = []
    for g in gs:
        chi = find_chi(c, g)
        if chi is not None:
            if not check_chi_condition(c, g, chi).hypotheses_met:
                v.append("solved chi fails its own hypotheses")
            chi_found.append(True)
        else:
            chi_found.append(False)
    rec["chi_per_grouplike"] = chi_found
    rec["oracle"] = _verdict_record(orc)
    return rec, v


def _suite_coring_morphism(m: CoringMorphism) -> Tuple[dict, List[str]]:
    from .corings import regular_comodule
    from .cormor import analyze_coring_morphism, cotensor_coaction_valid

    rep = analyze_coring_morphism(m)
    orc = oracle_coring_morphism(m)
    v = [name for name, ok in sorted(rep.reductions.items()) if not ok]
    if not rep.triangles.holds:
        v.append("triangle identities fail")
    g = cotensor(regular_comodule(m.target), m)
    if g.preserved and not cotensor_coaction_valid(g):
        v.append("coaction on the cotensor of D fails the comodule axioms")
    if orc["F"].criterion != rep.F.naturally_full or orc["G"].criterion != rep.G.naturally_full:
        v.append("coring-morphism oracle criterion differs from the analyzer")
    rec = {
        "name": m.name,
        "dims": [m.source.base.dim, m.source.dim, m.target.base.dim, m.target.dim],
        "F": rep.F.naturally_full,
        "G": rep.G.naturally_full,
        "reductions": dict(sorted(rep.reductions.items())),
        "oracle": _verdict_record(orc),
    }
    return rec, v


def _suite_composition(pair) -> Tuple[dict, List[str]]:
    phi1, phi2 = pair
    rep = composition_checks(phi1, phi2)
    rec = {
        "dims": [phi1.source.dim, phi1.target.dim, phi2.target.dim],
        "inner_epi": rep.inner_epi,
        "outer_epi": rep.outer_epi,
        "composite_epi": rep.composite_epi,
        "outer_splits": rep.outer_splits,
    }
    return rec, list(rep.violations)


def _suite_generators(p: int, maxdim: int):
    from . import generators as gen

    return {
        "scalars": (lambda rng: gen.random_morphism(rng, p, maxdim), _suite_scalars),
        "bimodule": (lambda rng: gen.random_fgp_bimodule(rng, p, maxdim), _suite_bimodule),
        "coring": (lambda rng: gen.random_coring(rng, p, 4, min(maxdim, 3)), _suite_coring),
        "coring-morphism": (lambda rng: gen.random_coring_morphism(rng, p, min(maxdim, 3)), _suite_coring_morphism),
        "composition": (lambda rng: gen.random_composable(rng, p, maxdim), _suite_composition),
    }


def equivalence_suite(seed: int, count: int, p: int = 2, maxdim: int = 3, kinds=SUITE_KINDS) -> dict:
    """Run every analyzer and oracle on ``count`` seeded instances per kind.

    The report is plain JSON data with no timings, so equal arguments give
    an identical report.  Any exception or failed cross-check is a violation.
    """
    la.PrimeField(p)
    table = _suite_generators(p, maxdim)
    instances: List[dict] = []
    violations: List[dict] = []
    counters: Dict[str, Dict[str, int]] = {}
    for kind in kinds:
        make, run = table[kind]
        rng = np.random.default_rng([seed, SUITE_KINDS.index(kind)])
        cnt = counters.setdefault(kind, {"instances": 0, "violations": 0, "naturally_full": 0,
                                         "witnesses_verified": 0, "family_consistent": 0, "refuted_on_family": 0})
        for i in range(count):
            iid = f"{kind}-{i:04d}"
            cnt["instances"] += 1
            try:
                inst = make(rng)
                rec, v = run(inst)
            except Exception as exc:  # every failure is reported, never swallowed
                rec, v = {}, [f"{type(exc).__name__}: {exc}"]
            for o in rec.get("oracle", {}).values():
                cnt["naturally_full"] += o["criterion"]
                cnt["witnesses_verified"] += o["status"] == "verified"
                cnt["family_consistent"] += o["status"] == "family-consistent"
                cnt["refuted_on_family"] += o["status"] == "refuted-on-family"
            cnt["violations"] += len(v)
            violations.extend({"id": iid, "message": msg} for msg in v)
            instances.append({"id": iid, "kind": kind, **rec, "violations": v})
    instances.sort(key=lambda r: r["id"])
    return {
        "version": SUITE_VERSION,
        "seed": int(seed),
        "count": int(count),
        "p": int(p),
        "maxdim": int(maxdim),
        "counters": counters,
        "violation_count": len(violations),
        "violations": violations,
        "instances": instances,
    }
