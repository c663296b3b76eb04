"""Coring morphisms and the adjunction they induce between comodule categories.

A morphism (Phi, phi) from an R-coring C to an S-coring D consists of an
algebra map phi: R -> S and an R-bilinear Phi: C -> D compatible with the
comultiplications (through D (x)_R D -> D (x)_S D) and counits.  It gives

  F = - (x)_R S : M^C -> M^D,   G = - []_D (S (x)_R C) : M^D -> M^C,

with F -| G.  G(N) is realized inside N (x)_R C as the kernel of
n (x) c -> rho(n) (x) c - n (x) Phi(c_(1)) (x) c_(2) in N (x)_S D (x)_R C.

* F is naturally full iff the unit eta_C : C -> GF(C) cosplits as a map of
  C-bicomodules (some nu with eta_C o nu = id).
* G is naturally full iff Phi_hat : S (x)_R C (x)_R S -> D,
  s (x) c (x) s' -> s Phi(c) s', has a D-bicomodule map Psi_hat with
  Psi_hat o Phi_hat = id.

The coaction on G(N) is obtained by factoring the coaction of N (x)_R C
through K (x)_R C -> (N (x)_R C) (x)_R C.  That factorization needs the
map to be injective; tensoring over R does not guarantee it, so every
cotensor records whether it held (``preserved``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from . import exactla as la
from .algebra import AlgebraMorphism, identity_morphism, validate_morphism
from .corings import (
    Comodule,
    Coring,
    analyze_cotensor_functor,
    analyze_forgetful_functor,
    induced_comodule,
    regular_comodule,
    trivial_coring,
    validate_comodule,
    validate_coring,
)
from .modrep import (
    Bimodule,
    ChainTensor,
    TensorSpace,
    hom_space,
    is_homomorphism,
    restrict,
    restrict_maps,
    solve_maps,
    submodule,
    tensor_chain,
    tensor_map,
    tensor_over,
)
from .scalars import s_as_rs, s_as_sr


@dataclass(frozen=True, eq=False)
class CoringMorphism:
    source: Coring
    target: Coring
    phi: AlgebraMorphism
    Phi: np.ndarray  # (dim D, dim C)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "Phi", la.mod(self.Phi, self.p).reshape(self.target.dim, self.source.dim))

    @property
    def p(self) -> int:
        return self.phi.p


def validate_coring_morphism(m: CoringMorphism) -> List[str]:
    c, d, phi, p = m.source, m.target, m.phi, m.p
    if phi.source != c.base or phi.target != d.base:
        return ["phi does not run between the coring bases"]
    out = [f"source: {v}" for v in validate_coring(c)]
    out += [f"target: {v}" for v in validate_coring(d)]
    out += [f"phi: {v}" for v in validate_morphism(phi)]
    if out:
        return out
    if not la.equal(la.matmul(phi.matrix, c.epsilon, p), la.matmul(d.epsilon, m.Phi, p), p):
        out.append("counit square fails: phi o eps_C != eps_D o Phi")
    if not is_homomorphism(m.Phi, c.carrier, restrict(d.carrier, phi, phi), "both"):
        out.append("Phi is not R-bilinear")
    lhs = la.matmul(d.cc.projection, la.matmul(np.kron(m.Phi, m.Phi) % p, c.delta, p), p)
    if not la.equal(lhs, la.matmul(d.delta_q, m.Phi, p), p):
        out.append("comultiplication square fails in D (x)_S D")
    return out


def identity_coring_morphism(c: Coring) -> CoringMorphism:
    return CoringMorphism(c, c, identity_morphism(c.base), la.identity(c.dim), name="identity")


def counit_morphism(c: Coring) -> CoringMorphism:
    """(eps_C, id_R) into the trivial R-coring."""
    return CoringMorphism(c, trivial_coring(c.base), identity_morphism(c.base), c.epsilon, name="counit")


def scalar_morphism(phi: AlgebraMorphism) -> CoringMorphism:
    """(phi, phi) between trivial corings."""
    return CoringMorphism(trivial_coring(phi.source), trivial_coring(phi.target), phi, phi.matrix, name="scalars")


# -- the functors ----------------------------------------------------------------------------


@dataclass
class ExtendedComodule:
    comodule: Comodule  # M (x)_R S as a right D-comodule
    tensor: TensorSpace  # M (x)_R S


def extend_comodule(m: CoringMorphism, mc: Comodule) -> ExtendedComodule:
    """F(M): m (x) s -> (m_[0] (x) 1) (x)_S Phi(m_[1]) s."""
    d, phi, p = m.target, m.phi, m.p
    s = phi.target
    fm = tensor_over(mc.module, s_as_rs(phi))
    fmd = tensor_over(fm.module, d.carrier)
    lift = mc.lift
    left = np.stack([fm.pure(la.unit_vector(mc.dim, a), s.unit) for a in range(mc.dim)], axis=1) if mc.dim else la.zeros(fm.dim, 0)
    rights = [la.matmul(d.carrier.act_right(s.basis_vector(t)), m.Phi, p) for t in range(s.dim)]
    kmat = la.zeros(fm.dim * d.dim, mc.dim * s.dim)
    for j in range(mc.dim):
        coef = lift[:, j].reshape(mc.dim, m.source.dim)
        for t in range(s.dim):
            kmat[:, j * s.dim + t] = (left @ coef @ rights[t].T).reshape(-1) % p
    coaction = la.matmul(fmd.projection, la.matmul(kmat, fm.section, p), p)
    return ExtendedComodule(Comodule(d, fm.module, coaction, name=f"F({mc.name})"), fm)


@dataclass
class CotensorSpace:
    left: Comodule  # N, a right D-comodule
    morphism: CoringMorphism
    ambient: TensorSpace  # N (x)_R C
    inclusion: np.ndarray  # (dim ambient, dim)
    module: Bimodule
    ambient_comodule: Comodule
    comodule: Optional[Comodule]
    preserved: bool

    @property
    def dim(self) -> int:
        return self.inclusion.shape[1]

    def coordinates(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        return la.coordinates(self.inclusion, v, self.morphism.p)


def _factor_through(t_sub: TensorSpace, t_amb: TensorSpace, incl_map: np.ndarray, target: np.ndarray, p: int):
    """Solve (incl) X = target; returns (X or None, injective)."""
    injective = la.rank(incl_map, p) == t_sub.dim
    x = la.solve_matrix(incl_map, target, p)
    return x, injective


def cotensor(n: Comodule, m: CoringMorphism) -> CotensorSpace:
    """N []_D (S (x)_R C), realized inside N (x)_R C."""
    c, d, phi, p = m.source, m.target, m.phi, m.p
    nr = restrict(n.module, None, phi)
    amb = induced_comodule(c, nr, name=f"{n.name} (x) C")
    y = tensor_over(nr, c.carrier)
    z = tensor_chain([n.module, restrict(d.carrier, None, phi), c.carrier])
    f1 = np.kron(n.lift, la.identity(c.dim)) % p
    f2 = np.kron(la.identity(n.dim), la.matmul(np.kron(m.Phi, la.identity(c.dim)) % p, c.delta, p)) % p
    diff = la.matmul(z.projection, la.matmul((f1 - f2) % p, y.section, p), p)
    sub = la.kernel_basis(diff, p)
    kmod = submodule(y.module, sub)
    kc = tensor_over(kmod, c.carrier)
    yc = amb.tensor
    incl = tensor_map(kc, yc, sub.basis, la.identity(c.dim))
    rho, injective = _factor_through(kc, yc, incl, la.matmul(amb.coaction, sub.basis, p), p)
    com = None
    if rho is not None and injective:
        com = Comodule(c, kmod, rho, name=f"G({n.name})")
    return CotensorSpace(n, m, y, sub.basis, kmod, amb, com, com is not None)


def cotensor_coaction_valid(g: CotensorSpace) -> bool:
    """The coaction inherited by a cotensor satisfies the comodule axioms."""
    return g.comodule is not None and not validate_comodule(g.comodule)


# -- unit and counit of F -| G ----------------------------------------------------------------------


def unit_matrix(m: CoringMorphism, mc: Comodule, fm: Optional[ExtendedComodule] = None, gfm: Optional[CotensorSpace] = None):
    """eta_M : M -> GF(M), m -> (m_[0] (x) 1) (x) m_[1]; returns (fm, gfm, matrix in gfm coordinates)."""
    p, s = m.p, m.phi.target
    fm = fm or extend_comodule(m, mc)
    gfm = gfm or cotensor(fm.comodule, m)
    left = np.stack([fm.tensor.pure(la.unit_vector(mc.dim, a), s.unit) for a in range(mc.dim)], axis=1) if mc.dim else la.zeros(fm.tensor.dim, 0)
    lift = mc.lift
    cols = [(left @ lift[:, j].reshape(mc.dim, m.source.dim)).reshape(-1) % p for j in range(mc.dim)]
    k = np.stack(cols, axis=1) if cols else la.zeros(left.shape[0] * m.source.dim, 0)
    eta_y = la.matmul(gfm.ambient.projection, k, p)
    return fm, gfm, gfm.coordinates(eta_y)


def counit_matrix(m: CoringMorphism, g: CotensorSpace):
    """eps_N : FG(N) -> N, (n (x) c) (x) s' -> n phi(eps(c)) s'; returns (FG(N) tensor, matrix)."""
    c, phi, p = m.source, m.phi, m.p
    s = phi.target
    nmod = g.left.module
    fg = tensor_over(g.module, s_as_rs(phi))
    lift = la.matmul(g.ambient.section, g.inclusion, p)
    eps_img = [la.matmul(phi.matrix, c.epsilon[:, b], p) for b in range(c.dim)]
    kmat = la.zeros(nmod.dim, g.dim * s.dim)
    for j in range(g.dim):
        coef = lift[:, j].reshape(nmod.dim, c.dim)
        base = np.zeros(nmod.dim, dtype=np.int64)
        for b in range(c.dim):
            base = (base + la.matmul(nmod.act_right(eps_img[b]), coef[:, b], p)) % p
        for t in range(s.dim):
            kmat[:, j * s.dim + t] = la.matmul(nmod.act_right(s.basis_vector(t)), base, p)
    return fg, la.matmul(kmat, fg.section, p)


@dataclass
class TriangleReport:
    F_side: Dict[str, bool]
    G_side: Dict[str, bool]

    @property
    def holds(self) -> bool:
        return all(self.F_side.values()) and all(self.G_side.values())


def triangle_identities(m: CoringMorphism) -> TriangleReport:
    """eps_F o F(eta) = id on F(M) and G(eps) o eta_G = id on G(N) for small families."""
    p = m.p
    c, d = m.source, m.target
    fc = extend_comodule(m, regular_comodule(c))
    f_side: Dict[str, bool] = {}
    g_side: Dict[str, bool] = {}
    # F side: M in {C}
    for label, mc in [("C", regular_comodule(c))]:
        fm, gfm, eta = unit_matrix(m, mc)
        fgfm, eps = counit_matrix(m, gfm)
        f_eta = tensor_map(fm.tensor, fgfm, eta, la.identity(m.phi.target.dim))
        f_side[label] = la.equal(la.matmul(eps, f_eta, p), la.identity(fm.tensor.dim), p)
    # G side: N in {D, F(C)}
    for label, nc in [("D", regular_comodule(d)), ("F(C)", fc.comodule)]:
        g = cotensor(nc, m)
        if g.comodule is None:
            g_side[label] = False
            continue
        fgn, gfgn, eta = unit_matrix(m, g.comodule)
        fg_t, eps = counit_matrix(m, g)
        # G(eps_N): restrict eps_N (x) C from FG(N) (x)_R C to N (x)_R C
        geps_y = tensor_map(gfgn.ambient, g.ambient, eps, la.identity(c.dim))
        geps = g.coordinates(la.matmul(geps_y, gfgn.inclusion, p))
        g_side[label] = la.equal(la.matmul(geps, eta, p), la.identity(g.dim), p)
    return TriangleReport(f_side, g_side)


# -- natural fullness of F ----------------------------------------------------------------------------


@dataclass
class FReport:
    naturally_full: bool
    witness_nu: Optional[np.ndarray]
    gfc_dim: int
    preserved: bool
    eta: np.ndarray


def left_coaction_on_cotensor(m: CoringMorphism, fc: ExtendedComodule, g: CotensorSpace):
    """Left C-coaction on GF(C) from c (x) s -> c_(1) (x) (c_(2) (x) s); returns (C (x)_R K, matrix) or None."""
    c, p, s = m.source, m.p, m.phi.target
    fct = fc.tensor
    n = c.dim
    cf = tensor_over(c.carrier, fct.module)
    kmat = la.zeros(n * fct.dim, n * s.dim)
    dd = c.delta.reshape(n, n, n)
    for t in range(s.dim):
        pst = np.stack([fct.pure(la.unit_vector(n, b), s.basis_vector(t)) for b in range(n)], axis=1)
        for cc in range(n):
            kmat[:, cc * s.dim + t] = (dd[:, :, cc] @ pst.T).reshape(-1) % p
    lam_fc = la.matmul(cf.projection, la.matmul(kmat, fct.section, p), p)
    y = g.ambient
    cy = tensor_over(c.carrier, y.module)
    step = np.kron(la.matmul(cf.section, lam_fc, p), la.identity(n)) % p
    lam_y = la.matmul(cy.projection, la.matmul(np.kron(la.identity(n), y.projection) % p, la.matmul(step, y.section, p), p), p)
    ck = tensor_over(c.carrier, g.module)
    incl = tensor_map(ck, cy, la.identity(n), g.inclusion)
    lam_k, injective = _factor_through(ck, cy, incl, la.matmul(lam_y, g.inclusion, p), p)
    if lam_k is None or not injective:
        return None
    return ck, lam_k


def analyze_F_naturally_full(m: CoringMorphism) -> FReport:
    c, p = m.source, m.p
    fc, g, eta = unit_matrix(m, regular_comodule(c))
    left = left_coaction_on_cotensor(m, fc, g)
    if g.comodule is None or left is None:
        return FReport(False, None, g.dim, False, eta)
    ck, lam_k = left
    kc = g.comodule.tensor
    basis = hom_space(g.module, c.carrier, "both").basis

    def colinear(nu):
        right = (la.matmul(c.delta_q, nu, p) - la.matmul(tensor_map(kc, c.cc, nu, la.identity(c.dim)), g.comodule.coaction, p)) % p
        lft = (la.matmul(c.delta_q, nu, p) - la.matmul(tensor_map(ck, c.cc, la.identity(c.dim), nu), lam_k, p)) % p
        return np.concatenate([right.reshape(-1), lft.reshape(-1)])

    bic = restrict_maps(basis, colinear, p)
    nu = solve_maps(bic, lambda x: la.matmul(eta, x, p), la.identity(g.dim), p)
    return FReport(nu is not None, nu, g.dim, True, eta)


# -- natural fullness of G ----------------------------------------------------------------------------


@dataclass
class GReport:
    naturally_full: bool
    witness_Psi: Optional[np.ndarray]
    Phi_hat: np.ndarray
    sandwich: ChainTensor  # S (x)_R C (x)_R S


def analyze_G_naturally_full(m: CoringMorphism) -> GReport:
    c, d, phi, p = m.source, m.target, m.phi, m.p
    s, n = phi.target, c.dim
    t = tensor_chain([s_as_sr(phi), c.carrier, s_as_rs(phi)])
    ds = s.dim

    def kidx(a, cc, b):
        return (a * n + cc) * ds + b

    total = ds * n * ds
    khat = la.zeros(d.dim, total)
    for a in range(ds):
        la_a = d.carrier.act_left(s.basis_vector(a))
        for b in range(ds):
            both = la.matmul(la_a, la.matmul(d.carrier.act_right(s.basis_vector(b)), m.Phi, p), p)
            for cc in range(n):
                khat[:, kidx(a, cc, b)] = both[:, cc]
    phi_hat = la.matmul(khat, t.section, p)
    dd = c.delta.reshape(n, n, n)
    one = s.unit

    def tvec(x, y, z):
        return t.project(np.kron(np.kron(x, y), z))

    dt = tensor_over(d.carrier, t.module)
    td = tensor_over(t.module, d.carrier)
    klam = la.zeros(d.dim * t.dim, total)
    krho = la.zeros(t.dim * d.dim, total)
    for a in range(ds):
        ea = s.basis_vector(a)
        a_left = la.matmul(d.carrier.act_left(ea), m.Phi, p)
        a_tens = np.stack([tvec(ea, la.unit_vector(n, i), one) for i in range(n)], axis=1)
        for b in range(ds):
            eb = s.basis_vector(b)
            b_tens = np.stack([tvec(one, la.unit_vector(n, i), eb) for i in range(n)], axis=1)
            b_right = la.matmul(d.carrier.act_right(eb), m.Phi, p)
            for cc in range(n):
                klam[:, kidx(a, cc, b)] = (a_left @ dd[:, :, cc] @ b_tens.T).reshape(-1) % p
                krho[:, kidx(a, cc, b)] = (a_tens @ dd[:, :, cc] @ b_right.T).reshape(-1) % p
    lam_t = la.matmul(dt.projection, la.matmul(klam, t.section, p), p)
    rho_t = la.matmul(td.projection, la.matmul(krho, t.section, p), p)
    basis = hom_space(d.carrier, t.module, "both").basis

    def colinear(psi):
        lft = (la.matmul(lam_t, psi, p) - la.matmul(tensor_map(d.cc, dt, la.identity(d.dim), psi), d.delta_q, p)) % p
        rgt = (la.matmul(rho_t, psi, p) - la.matmul(tensor_map(d.cc, td, psi, la.identity(d.dim)), d.delta_q, p)) % p
        return np.concatenate([lft.reshape(-1), rgt.reshape(-1)])

    bic = restrict_maps(basis, colinear, p)
    psi = solve_maps(bic, lambda x: la.matmul(x, phi_hat, p), la.identity(t.dim), p)
    return GReport(psi is not None, psi, phi_hat, t)


@dataclass
class CoringMorphismReport:
    F: FReport
    G: GReport
    triangles: TriangleReport
    reductions: Dict[str, bool]


def reduction_checks(m: CoringMorphism, f: FReport, g: GReport) -> Dict[str, bool]:
    """Verdict agreement with the specialised criteria when the morphism has a special shape."""
    from .scalars import analyze_extension, condition_multiplication_injective

    out: Dict[str, bool] = {}
    c, d, phi, p = m.source, m.target, m.phi, m.p
    triv_c = la.equal(c.delta, trivial_coring(c.base).delta, p) and la.equal(c.epsilon, la.identity(c.dim), p) and c.dim == c.base.dim
    triv_d = la.equal(d.delta, trivial_coring(d.base).delta, p) and la.equal(d.epsilon, la.identity(d.dim), p) and d.dim == d.base.dim
    if triv_c and triv_d and la.equal(m.Phi, phi.matrix, p):
        out["F matches extension of scalars"] = f.naturally_full == analyze_extension(phi).naturally_full
        out["G matches restriction of scalars"] = g.naturally_full == condition_multiplication_injective(phi)[0]
    if triv_d and c.base == d.base and la.equal(phi.matrix, la.identity(c.base.dim), p) and la.equal(m.Phi, c.epsilon, p):
        out["F matches the forgetful functor"] = f.naturally_full == analyze_forgetful_functor(c).naturally_full
        out["G matches the cotensor functor"] = g.naturally_full == analyze_cotensor_functor(c).naturally_full
    return out


def analyze_coring_morphism(m: CoringMorphism) -> CoringMorphismReport:
    v = validate_coring_morphism(m)
    if v:
        from .errors import ValidationError

        raise ValidationError("coring morphism does not validate", {"morphism": v})
    f = analyze_F_naturally_full(m)
    g = analyze_G_naturally_full(m)
    return CoringMorphismReport(f, g, triangle_identities(m), reduction_checks(m, f, g))
