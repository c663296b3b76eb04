"""Corings over F_p-algebras, their comodules, and the forgetful / induced functors.

An R-coring C is an R-bimodule with R-bilinear maps Delta: C -> C (x)_R C
and eps: C -> R satisfying coassociativity and the counit laws.  Delta is
stored as a lift into C (x)_K C (``n*n`` rows with idx(i, j) = i*n + j);
all axioms are checked after projecting to C (x)_R C.

For the adjunction F -| G with F: M^C -> M_R forgetting the coaction and
G = - (x)_R C:

* G is naturally full iff some z in C^R has c = eps(c) z for all c, iff
  eps splits as an R-bimodule map (xi o eps = id_C).
* F is naturally full iff c eps(d) = eps(c) d for all c, d, iff Delta is
  surjective onto C (x)_R C.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import exactla as la
from .algebra import (
    ENUMERATION_BOUND,
    AlgebraMorphism,
    FDAlgebra,
    ground,
    opposite,
    subalgebra,
    validate_algebra,
    validate_morphism,
)
from .errors import CriterionNotMet, InconsistentCriteria, NotProjective, TooLargeToEnumerate, ValidationError, WitnessViolation
from .modrep import (
    Bimodule,
    DualBasis,
    TensorSpace,
    fgp_dual_basis,
    forget_left,
    forget_right,
    hom_bimodule,
    hom_space,
    invariants,
    is_homomorphism,
    opposite_bimodule,
    regular,
    regular_left,
    regular_right,
    restrict,
    restrict_maps,
    solve_maps,
    tensor_chain,
    tensor_over,
    validate_bimodule,
)


@dataclass(frozen=True, eq=False)
class Coring:
    base: FDAlgebra
    carrier: Bimodule
    delta: np.ndarray  # (n*n, n) lift into C (x)_K C
    epsilon: np.ndarray  # (dim R, n)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        p, n = self.base.p, self.carrier.dim
        d = la.mod(self.delta, p).reshape(n * n, n)
        e = la.mod(self.epsilon, p).reshape(self.base.dim, n)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "epsilon", e)

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @cached_property
    def cc(self) -> TensorSpace:
        """C (x)_R C."""
        return tensor_over(self.carrier, self.carrier)

    @cached_property
    def delta_q(self) -> np.ndarray:
        """Delta in the quotient coordinates of C (x)_R C."""
        return la.matmul(self.cc.projection, self.delta, self.p)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Coring{label} dim={self.dim} over {self.base!r}>"


def _counit_left_matrix(c: Coring) -> np.ndarray:
    """eps (x) C : C (x)_K C -> C, x (x) y -> eps(x) y."""
    n = c.dim
    out = la.zeros(n, n * n)
    for a in range(n):
        out[:, a * n : (a + 1) * n] = c.carrier.act_left(c.epsilon[:, a])
    return out


def _counit_right_matrix(c: Coring) -> np.ndarray:
    """C (x) eps : C (x)_K C -> C, x (x) y -> x eps(y)."""
    n = c.dim
    out = la.zeros(n, n * n)
    for a in range(n):
        for b in range(n):
            out[:, a * n + b] = c.carrier.act_right(c.epsilon[:, b])[:, a]
    return out


def validate_coring(c: Coring) -> List[str]:
    out: List[str] = []
    p, n = c.p, c.dim
    out += [f"base: {v}" for v in validate_algebra(c.base)]
    if c.carrier.left != c.base or c.carrier.right != c.base:
        return out + ["carrier is not a bimodule over the base algebra"]
    out += [f"carrier: {v}" for v in validate_bimodule(c.carrier)]
    if out:
        return out
    if not is_homomorphism(c.epsilon, c.carrier, regular(c.base), "both"):
        out.append("counit is not an R-bimodule map")
    if not is_homomorphism(c.delta_q, c.carrier, c.cc.module, "both"):
        out.append("comultiplication is not an R-bimodule map into C (x)_R C")
    eye = la.identity(n)
    if not la.equal(la.matmul(_counit_left_matrix(c), c.delta, p), eye, p):
        out.append("left counit law fails")
    if not la.equal(la.matmul(_counit_right_matrix(c), c.delta, p), eye, p):
        out.append("right counit law fails")
    if n:
        ccc = tensor_chain([c.carrier] * 3)
        lhs = la.matmul(np.kron(c.delta, la.identity(n)) % p, c.delta, p)
        rhs = la.matmul(np.kron(la.identity(n), c.delta) % p, c.delta, p)
        bad = np.nonzero(np.any(la.matmul(ccc.projection, (lhs - rhs) % p, p) != 0, axis=0))[0]
        out += [f"coassociativity fails on e{j}" for j in bad]
    return out


def check_coring(c: Coring):
    v = validate_coring(c)
    if v:
        raise ValidationError("coring does not validate", {"coring": v})


# -- constructors --------------------------------------------------------------------------


def trivial_coring(r: FDAlgebra) -> Coring:
    """R itself, Delta(r) = r (x) 1, eps = id."""
    n = r.dim
    delta = np.stack([np.kron(r.basis_vector(i), r.unit) for i in range(n)], axis=1) if n else la.zeros(0, 0)
    return Coring(r, regular(r), delta, la.identity(n), name=f"trivial({r.name})" if r.name else "trivial")


def _pure_lifts(t: TensorSpace, left_vecs, right_vecs, coef: np.ndarray) -> np.ndarray:
    """sum_{a,b} coef[a,b] left_vecs[:, a] (x)_K right_vecs[:, b]."""
    return (left_vecs @ coef @ right_vecs.T).reshape(-1)


def sweedler_coring(phi: AlgebraMorphism) -> Coring:
    """S (x)_R S as an S-coring: Delta(a (x) a') = (a (x) 1) (x)_S (1 (x) a'), eps = multiplication."""
    from .scalars import multiplication_on_tensor, sweedler_tensor

    s, p = phi.target, phi.p
    t = sweedler_tensor(phi)
    n = t.dim
    one = s.unit
    left = np.stack([t.pure(s.basis_vector(a), one) for a in range(s.dim)], axis=1)
    right = np.stack([t.pure(one, s.basis_vector(a)) for a in range(s.dim)], axis=1)
    cols = []
    for k in range(n):
        coef = t.section[:, k].reshape(s.dim, s.dim)
        cols.append(_pure_lifts(t, left, right, coef) % p)
    delta = np.stack(cols, axis=1) if cols else la.zeros(0, 0)
    return Coring(s, t.module, delta, multiplication_on_tensor(phi, t), name="sweedler")


@dataclass
class ComatrixData:
    module: Bimodule
    dual_basis: DualBasis
    dual_coords: np.ndarray  # (k, dim *M) coordinates of the dual-basis functionals
    tensor: TensorSpace


def comatrix_coring(m: Bimodule, dual_basis: Optional[DualBasis] = None) -> Tuple[Coring, ComatrixData]:
    """M (x)_R *M as an S-coring for M finitely generated projective over S.

    Delta(m (x) mu) = sum_i (m (x) *e_i) (x)_S (e_i (x) mu), eps(m (x) mu) = (m)mu.
    """
    p = m.p
    db = dual_basis or fgp_dual_basis(forget_right(m))
    if db is None:
        raise NotProjective("M is not projective over S; no comatrix coring")
    dual, dhom = hom_bimodule(m, regular(m.left))
    t = tensor_over(m, dual)
    n, k = t.dim, dhom.dim
    fcoords = np.stack([dhom.coordinates(f) for f in db.functionals]) if db.size else np.zeros((0, k), dtype=np.int64)
    cols = []
    for q in range(n):
        coef = t.section[:, q].reshape(m.dim, k)
        acc = np.zeros(n * n, dtype=np.int64)
        for b, tt in zip(*np.nonzero(coef)):
            for ei, fi in zip(db.elements, fcoords):
                acc = (acc + coef[b, tt] * np.kron(t.pure(la.unit_vector(m.dim, b), fi), t.pure(ei, la.unit_vector(k, tt)))) % p
        cols.append(acc)
    delta = np.stack(cols, axis=1) if cols else la.zeros(0, 0)
    evalk = np.zeros((m.left.dim, m.dim * k), dtype=np.int64)
    for b in range(m.dim):
        for tt, f in enumerate(dhom.basis):
            evalk[:, b * k + tt] = f[:, b]
    eps = la.matmul(evalk, t.section, p)
    return Coring(m.left, t.module, delta, eps, name="comatrix"), ComatrixData(m, db, fcoords, t)


@dataclass
class RingStructure:
    """An R-ring A (an algebra map phi: R -> A) with an R-bimodule map E: A -> R."""

    algebra: FDAlgebra
    phi: AlgebraMorphism
    E: np.ndarray


def coring_from_ring(ring: RingStructure) -> Coring:
    """Delta(c) = c (x)_R 1, eps = E."""
    a, phi = ring.algebra, ring.phi
    n = a.dim
    if not la.equal(la.matmul(phi.matrix, ring.E, a.p), la.identity(n), a.p):
        raise CriterionNotMet("phi o E is not the identity")
    carrier = restrict(regular(a), phi, phi)
    if not is_homomorphism(ring.E, carrier, regular(phi.source), "both"):
        raise CriterionNotMet("E is not an R-bimodule map")
    delta = np.stack([np.kron(a.basis_vector(i), a.unit) for i in range(n)], axis=1) if n else la.zeros(0, 0)
    return Coring(phi.source, carrier, delta, ring.E, name="from_ring")


def dual_coalgebra(a: FDAlgebra) -> Coring:
    """The dual coalgebra of a over F_p: Delta = transpose of multiplication, eps = evaluation at 1."""
    p, n = a.p, a.dim
    k = ground(p)
    carrier = Bimodule(k, k, la.identity(n)[None], la.identity(n)[None])
    delta = a.mul.reshape(n * n, n)
    return Coring(k, carrier, delta, a.unit.reshape(1, n), name="dual")


def opposite_coring(c: Coring) -> Coring:
    """C over R^op with sides swapped: left comodules over C are right comodules here."""
    n = c.dim
    swap = np.zeros((n * n, n * n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            swap[b * n + a, a * n + b] = 1
    carrier = opposite_bimodule(c.carrier)
    return Coring(carrier.left, carrier, la.matmul(swap, c.delta, c.p), c.epsilon, name=f"op({c.name})")


# -- comodules ----------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Comodule:
    """Right C-comodule; ``coaction`` is in quotient coordinates of M (x)_R C."""

    coring: Coring
    module: Bimodule
    coaction: np.ndarray
    name: str = field(default="", compare=False)

    @cached_property
    def tensor(self) -> TensorSpace:
        return tensor_over(self.module, self.coring.carrier)

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def p(self) -> int:
        return self.module.p

    @property
    def lift(self) -> np.ndarray:
        """Coaction lifted to M (x)_K C."""
        return la.matmul(self.tensor.section, self.coaction, self.p)


def comodule_counit_matrix(module: Bimodule, c: Coring, t: TensorSpace) -> np.ndarray:
    """M (x) eps : M (x)_R C -> M."""
    n, m = c.dim, module.dim
    k = la.zeros(m, m * n)
    for b in range(n):
        act = module.act_right(c.epsilon[:, b])
        for a in range(m):
            k[:, a * n + b] = act[:, a]
    return la.matmul(k, t.section, c.p)


def validate_comodule(mc: Comodule) -> List[str]:
    c, m, p = mc.coring, mc.module, mc.p
    out = []
    if m.right != c.base:
        return ["module is not over the coring base"]
    t = mc.tensor
    if mc.coaction.shape != (t.dim, m.dim):
        return [f"coaction has shape {mc.coaction.shape}, expected {(t.dim, m.dim)}"]
    if not is_homomorphism(mc.coaction, m, t.module, "right"):
        out.append("coaction is not right R-linear")
    if not la.equal(la.matmul(comodule_counit_matrix(m, c, t), mc.coaction, p), la.identity(m.dim), p):
        out.append("comodule counit law fails")
    if m.dim and c.dim:
        ch = tensor_chain([m, c.carrier, c.carrier])
        lift = mc.lift
        lhs = la.matmul(np.kron(lift, la.identity(c.dim)) % p, lift, p)
        rhs = la.matmul(np.kron(la.identity(m.dim), c.delta) % p, lift, p)
        if not la.is_zero(la.matmul(ch.projection, (lhs - rhs) % p, p)):
            out.append("comodule coassociativity fails")
    return out


def regular_comodule(c: Coring) -> Comodule:
    return Comodule(c, c.carrier, c.delta_q, name="C")


def induced_comodule(c: Coring, n: Bimodule, name: str = "") -> Comodule:
    """N (x)_R C with coaction N (x) Delta, for a right R-module N."""
    p = c.p
    y = tensor_over(n, c.carrier)
    yc = tensor_over(y.module, c.carrier)
    kmap = la.matmul(np.kron(y.projection, la.identity(c.dim)) % p, np.kron(la.identity(n.dim), c.delta) % p, p)
    coaction = la.matmul(yc.projection, la.matmul(kmap, y.section, p), p)
    return Comodule(c, y.module, coaction, name=name or "induced")


def base_comodule(c: Coring, g) -> Comodule:
    """R with coaction r -> 1 (x) g r, for a grouplike g."""
    r = c.base
    reg = regular_right(r)
    t = tensor_over(reg, c.carrier)
    g = la.mod(g, c.p)
    coaction = np.stack([t.pure(r.unit, la.matmul(c.carrier.act_right(r.basis_vector(i)), g, c.p)) for i in range(r.dim)], axis=1)
    return Comodule(c, reg, coaction, name="R_g")


def comodule_maps(m: Comodule, n: Comodule) -> np.ndarray:
    """Basis of right C-colinear right R-linear maps M -> N."""
    p = m.p
    hs = hom_space(forget_left(m.module), forget_left(n.module), "right")
    tm, tn = m.tensor, n.tensor

    def fn(f):
        f_c = la.matmul(tn.projection, la.matmul(np.kron(f, la.identity(m.coring.dim)) % p, tm.section, p), p)
        return (la.matmul(n.coaction, f, p) - la.matmul(f_c, m.coaction, p)) % p

    return restrict_maps(hs.basis, fn, p)


# -- the two functors ------------------------------------------------------------------------------


@dataclass
class CotensorFunctorReport:
    naturally_full: bool
    witness_z: Optional[np.ndarray]
    xi: Optional[np.ndarray]  # (n, dim R) bimodule splitting of eps
    eps_splits: bool


def analyze_cotensor_functor(c: Coring) -> CotensorFunctorReport:
    """Natural fullness of G = - (x)_R C."""
    check_coring(c)
    p, n = c.p, c.dim
    inv = invariants(c.carrier)
    blocks = [la.matmul(c.carrier.act_left(c.epsilon[:, j]), inv.basis, p) for j in range(n)]
    a = np.concatenate(blocks, axis=0) if blocks else la.zeros(0, inv.dim)
    y = la.solve_affine(a, la.identity(n).T.reshape(-1), p)
    z = None if y is None else la.matmul(inv.basis, y, p)
    hs = hom_space(regular(c.base), c.carrier, "both")
    xi = solve_maps(hs.basis, lambda x: la.matmul(x, c.epsilon, p), la.identity(n), p)
    if (z is None) != (xi is None):
        raise InconsistentCriteria("invariant-element and counit-splitting criteria disagree")
    return CotensorFunctorReport(z is not None, z, xi, xi is not None)


@dataclass
class ForgetfulFunctorReport:
    naturally_full: bool
    delta_surjective: bool
    counit_identity: bool


def counit_identity_holds(c: Coring) -> bool:
    """c eps(d) == eps(c) d for all basis c, d."""
    p, n = c.p, c.dim
    for i in range(n):
        for j in range(n):
            lhs = la.matmul(c.carrier.act_right(c.epsilon[:, j]), la.unit_vector(n, i), p)
            rhs = la.matmul(c.carrier.act_left(c.epsilon[:, i]), la.unit_vector(n, j), p)
            if not la.equal(lhs, rhs, p):
                return False
    return True


def analyze_forgetful_functor(c: Coring) -> ForgetfulFunctorReport:
    check_coring(c)
    ident = counit_identity_holds(c)
    surj = la.rank(c.delta_q, c.p) == c.cc.dim
    if ident != surj:
        raise InconsistentCriteria("counit identity and surjectivity of Delta disagree")
    return ForgetfulFunctorReport(ident, surj, ident)


# -- the ring / coring bijection ------------------------------------------------------------------


def coring_to_ring(c: Coring, xi: Optional[np.ndarray] = None) -> RingStructure:
    """c . c' = xi(eps(c) eps(c')), 1 = xi(1), with phi = xi and E = eps."""
    if xi is None:
        rep = analyze_cotensor_functor(c)
        if not rep.naturally_full:
            raise CriterionNotMet("the counit does not split; no ring structure")
        xi = rep.xi
    r, p, n = c.base, c.p, c.dim
    if not la.equal(la.matmul(xi, c.epsilon, p), la.identity(n), p):
        raise CriterionNotMet("xi o eps is not the identity")
    mul = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mul[i, j] = la.matmul(xi, r.multiply(c.epsilon[:, i], c.epsilon[:, j]), p)
    a = FDAlgebra(p, mul, la.matmul(xi, r.unit, p), name="ring_from_coring")
    phi = AlgebraMorphism(r, a, xi)
    v = validate_algebra(a) + validate_morphism(phi)
    if v:
        raise WitnessViolation(f"ring built from a split counit is invalid: {v}")
    return RingStructure(a, phi, c.epsilon.copy())


def ring_to_coring(ring: RingStructure) -> Coring:
    return coring_from_ring(ring)


def coring_ring_bijection(x, xi: Optional[np.ndarray] = None):
    """Coring with split counit -> R-ring, or R-ring with E -> coring."""
    if isinstance(x, Coring):
        return coring_to_ring(x, xi)
    return ring_to_coring(x)


def corings_equal(c: Coring, d: Coring) -> bool:
    """Same base, carrier actions, counit and comultiplication (in C (x)_R C)."""
    p = c.p
    return (
        c.base == d.base
        and c.dim == d.dim
        and la.equal(c.carrier.left_action, d.carrier.left_action, p)
        and la.equal(c.carrier.right_action, d.carrier.right_action, p)
        and la.equal(c.epsilon, d.epsilon, p)
        and la.equal(c.delta_q, la.matmul(c.cc.projection, d.delta, p), p)
    )


def rings_equal(a: RingStructure, b: RingStructure) -> bool:
    p = a.algebra.p
    return (
        a.algebra == b.algebra
        and la.equal(a.phi.matrix, b.phi.matrix, p)
        and la.equal(a.E, b.E, p)
    )


def coring_ring_round_trip(c: Coring) -> Tuple[RingStructure, Coring, bool]:
    ring = coring_to_ring(c)
    back = ring_to_coring(ring)
    return ring, back, corings_equal(c, back)


# -- consequences when a functor is naturally full -----------------------------------------------------


@dataclass
class DerivedChecks:
    fgp_left: Optional[bool] = None
    fgp_right: Optional[bool] = None
    frobenius_phi_bijective: Optional[bool] = None
    F_naturally_full_from_G: Optional[bool] = None
    converse_applies: Optional[bool] = None
    counit_hits_one: bool = False
    F_separable_witness: Optional[np.ndarray] = None
    coseparability_identity: Optional[bool] = None
    notes: List[str] = field(default_factory=list)


def as_left_over_opposite(m: Bimodule) -> Bimodule:
    """A right R-module as a left R^op-module."""
    return Bimodule(opposite(m.right), ground(m.p), m.right_action, la.identity(m.dim)[None])


def frobenius_map(c: Coring, z) -> Tuple[np.ndarray, int]:
    """f -> z f(z) on left R-linear maps f: C -> R; returns (matrix, dim of the Hom-space)."""
    p = c.p
    hs = hom_space(forget_right(c.carrier), regular_left(c.base), "left")
    cols = [la.matmul(c.carrier.act_right(la.matmul(f, z, p)), z, p) for f in hs.basis]
    mat = np.stack(cols, axis=1) if cols else la.zeros(c.dim, 0)
    return mat, hs.dim


def product_of_counits(c: Coring) -> np.ndarray:
    """chi(c (x) d) = eps(c) eps(d) on C (x)_R C (quotient coordinates)."""
    r, p, n = c.base, c.p, c.dim
    k = la.zeros(r.dim, n * n)
    for a in range(n):
        for b in range(n):
            k[:, a * n + b] = r.multiply(c.epsilon[:, a], c.epsilon[:, b])
    return la.matmul(k, c.cc.section, p)


def chi_identity_residual(c: Coring, chi: np.ndarray) -> np.ndarray:
    """c_(1) chi(c_(2) (x) d) - chi(c (x) d_(1)) d_(2), indexed [x, c, d]."""
    p, n = c.p, c.dim
    ck = la.matmul(chi, c.cc.projection, p).reshape(-1, n, n)
    dd = c.delta.reshape(n, n, n)
    lam, rho = c.carrier.left_action, c.carrier.right_action
    lhs = np.einsum("abc,rbd,rxa->xcd", dd, ck, rho)
    rhs = np.einsum("abd,rca,rxb->xcd", dd, ck, lam)
    return (lhs - rhs) % p


def derived_checks(c: Coring, witness_z=None) -> DerivedChecks:
    """Consequences of natural fullness of G (given a witness z) and of F."""
    check_coring(c)
    p, n = c.p, c.dim
    out = DerivedChecks()
    out.counit_hits_one = la.solve_affine(c.epsilon, c.base.unit, p) is not None
    f_full = analyze_forgetful_functor(c).naturally_full
    if witness_z is not None:
        z = la.mod(witness_z, p)
        out.F_naturally_full_from_G = f_full
        if not f_full:
            raise WitnessViolation("G naturally full but F is not")
        out.fgp_left = fgp_dual_basis(forget_right(c.carrier)) is not None
        out.fgp_right = fgp_dual_basis(as_left_over_opposite(c.carrier)) is not None
        if not (out.fgp_left and out.fgp_right):
            raise WitnessViolation("G naturally full but C is not finitely generated projective on both sides")
        mat, hdim = frobenius_map(c, z)
        out.frobenius_phi_bijective = hdim == n and la.rank(mat, p) == n
        if not out.frobenius_phi_bijective:
            raise WitnessViolation("f -> z f(z) is not bijective")
    if f_full:
        chi = product_of_counits(c)
        out.F_separable_witness = chi
        ok = (
            is_homomorphism(chi, c.cc.module, regular(c.base), "both")
            and la.is_zero(chi_identity_residual(c, chi))
            and la.equal(la.matmul(chi, c.delta_q, p), c.epsilon, p)
        )
        out.coseparability_identity = ok
        if not ok:
            raise WitnessViolation("eps(c) eps(d) is not a cointegral with chi o Delta = eps")
        out.converse_applies = out.counit_hits_one
        if out.counit_hits_one and not analyze_cotensor_functor(c).naturally_full:
            raise WitnessViolation("F naturally full and eps(z) = 1 solvable, yet G is not naturally full")
        if not out.counit_hits_one:
            out.notes.append("counit misses 1; the converse implication does not apply")
    return out


def coseparability_witness(c: Coring) -> Optional[np.ndarray]:
    """Some R-bimodule chi: C (x)_R C -> R with the cointegral identity and chi o Delta = eps."""
    p = c.p
    hs = hom_space(c.cc.module, regular(c.base), "both")

    def fn(chi):
        return np.concatenate([chi_identity_residual(c, chi).reshape(-1), la.matmul(chi, c.delta_q, p).reshape(-1)])

    target = np.concatenate([np.zeros(c.dim ** 3, dtype=np.int64), c.epsilon.reshape(-1)])
    return solve_maps(hs.basis, fn, target, p)


# -- grouplikes and coinvariants ---------------------------------------------------------------------


def is_grouplike(c: Coring, g) -> bool:
    g = la.mod(g, c.p)
    return la.equal(la.matmul(c.epsilon, g, c.p), c.base.unit, c.p) and la.equal(la.matmul(c.delta_q, g, c.p), c.cc.pure(g, g), c.p)


@dataclass
class GrouplikeSet:
    elements: List[np.ndarray]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def contains(self, g) -> bool:
        return any(np.array_equal(x, g) for x in self.elements)


def grouplikes(c: Coring, bound: int = ENUMERATION_BOUND) -> GrouplikeSet:
    """Every g with Delta(g) = g (x) g and eps(g) = 1, enumerated over eps^{-1}(1)."""
    p = c.p
    if c.dim == 0:
        return GrouplikeSet([])
    x0 = la.solve_affine(c.epsilon, c.base.unit, p)
    if x0 is None:
        return GrouplikeSet([])
    ker = la.kernel_basis(c.epsilon, p)
    if p**ker.dim > bound:
        raise TooLargeToEnumerate(f"{p}^{ker.dim} candidates exceed the bound {bound}")
    out = []
    for coeffs in itertools.product(range(p), repeat=ker.dim):
        g = (x0 + ker.basis @ np.array(coeffs, dtype=np.int64)) % p if ker.dim else x0
        if la.equal(la.matmul(c.delta_q, g, p), c.cc.pure(g, g), p):
            out.append(g)
    out.sort(key=lambda v: tuple(v))
    return GrouplikeSet(out)


def coinvariant_subalgebra(c: Coring, g) -> Tuple[la.Subspace, FDAlgebra, AlgebraMorphism]:
    """B = {r : r g = g r} with its algebra structure and inclusion into R."""
    r, p = c.base, c.p
    g = la.mod(g, p)
    cols = [(la.matmul(c.carrier.act_left(r.basis_vector(i)), g, p) - la.matmul(c.carrier.act_right(r.basis_vector(i)), g, p)) % p for i in range(r.dim)]
    sub = la.kernel_basis(np.stack(cols, axis=1), p)
    b, incl = subalgebra(r, sub.basis, r.unit)
    return sub, b, AlgebraMorphism(b, r, incl)


def coinvariants(c: Coring, g, m: Optional[Comodule] = None) -> la.Subspace:
    """M^coC = {m : rho(m) = m (x) g}; with ``m`` omitted, the base algebra's B."""
    if m is None:
        return coinvariant_subalgebra(c, g)[0]
    p = m.p
    g = la.mod(g, p)
    mg = np.stack([m.tensor.pure(la.unit_vector(m.dim, j), g) for j in range(m.dim)], axis=1) if m.dim else la.zeros(m.tensor.dim, 0)
    return la.kernel_basis((m.coaction - mg) % p, p)


@dataclass
class ChiReport:
    bimodule_map: bool
    identity_holds: bool
    normalized: bool
    hypotheses_met: bool
    t_lands_in_B: Optional[bool] = None
    alpha_bijective: Dict[str, bool] = field(default_factory=dict)


def _alpha_theta(c: Coring, g, chi, n: Bimodule, b_sub: la.Subspace, b_alg: FDAlgebra, incl: AlgebraMorphism) -> bool:
    """alpha_N: N -> (N (x)_B R)^coC is bijective with inverse theta_N."""
    r, p = c.base, c.p
    r_br = restrict(regular(r), incl, None)
    nb = tensor_over(n, r_br)
    nc = tensor_over(n, restrict(c.carrier, incl, None))
    lg = np.stack([(la.matmul(c.carrier.act_right(r.basis_vector(i)), g, p) - la.matmul(c.carrier.act_left(r.basis_vector(i)), g, p)) % p for i in range(r.dim)], axis=1)
    cmap = la.matmul(nc.projection, la.matmul(np.kron(la.identity(n.dim), lg) % p, nb.section, p), p)
    coinv = la.kernel_basis(cmap, p)
    alpha = la.matmul(nb.projection, np.kron(la.identity(n.dim), r.unit.reshape(-1, 1)) % p, p)
    # t(r) = chi(g r (x) g), expressed in B
    tvals = [la.matmul(chi, c.cc.pure(la.matmul(c.carrier.act_right(r.basis_vector(i)), g, p), g), p) for i in range(r.dim)]
    tb = [la.coordinates(b_sub.basis, t.reshape(-1, 1), p).reshape(-1) for t in tvals]
    theta_k = la.zeros(n.dim, n.dim * r.dim)
    for j in range(n.dim):
        for i in range(r.dim):
            theta_k[:, j * r.dim + i] = la.matmul(n.act_right(tb[i]), la.unit_vector(n.dim, j), p)
    theta = la.matmul(theta_k, nb.section, p)
    ok = la.equal(la.matmul(theta, alpha, p), la.identity(n.dim), p)
    ok = ok and la.equal(la.matmul(alpha, la.matmul(theta, coinv.basis, p), p), coinv.basis, p)
    ok = ok and coinv.dim == n.dim and la.rank(alpha, p) == n.dim
    return bool(ok)


def check_chi_condition(c: Coring, g, chi) -> ChiReport:
    p = c.p
    g = la.mod(g, p)
    if not is_grouplike(c, g):
        raise ValueError("g is not grouplike")
    chi = la.mod(chi, p).reshape(c.base.dim, c.cc.dim)
    bim = is_homomorphism(chi, c.cc.module, regular(c.base), "both")
    ident = bool(la.is_zero(chi_identity_residual(c, chi)))
    norm = la.equal(la.matmul(chi, c.cc.pure(g, g), p), c.base.unit, p)
    rep = ChiReport(bim, ident, norm, bim and ident and norm)
    if not rep.hypotheses_met:
        return rep
    b_sub, b_alg, incl = coinvariant_subalgebra(c, g)
    r = c.base
    rep.t_lands_in_B = all(
        b_sub.contains(la.matmul(chi, c.cc.pure(la.matmul(c.carrier.act_right(r.basis_vector(i)), g, p), g), p)) for i in range(r.dim)
    )
    if not rep.t_lands_in_B:
        raise WitnessViolation("t(r) = chi(g r (x) g) leaves B")
    fam = {"B": regular_right(b_alg), "R": restrict(regular_right(r), None, incl)}
    rep.alpha_bijective = {k: _alpha_theta(c, g, chi, n, b_sub, b_alg, incl) for k, n in fam.items()}
    if not all(rep.alpha_bijective.values()):
        raise WitnessViolation("alpha_N is not bijective although the chi hypotheses hold")
    return rep


@dataclass
class CoringReport:
    cotensor: CotensorFunctorReport
    forgetful: ForgetfulFunctorReport
    derived: DerivedChecks
    grouplike_count: Optional[int]
    coseparable: bool


def analyze_coring(c: Coring) -> CoringReport:
    g_rep = analyze_cotensor_functor(c)
    f_rep = analyze_forgetful_functor(c)
    der = derived_checks(c, g_rep.witness_z)
    try:
        gcount = len(grouplikes(c))
    except TooLargeToEnumerate:
        gcount = None
    cosep = coseparability_witness(c) is not None
    if f_rep.naturally_full and not cosep:
        raise InconsistentCriteria("F naturally full but no coseparability witness")
    return CoringReport(g_rep, f_rep, der, gcount, cosep)


def find_chi(c: Coring, g) -> Optional[np.ndarray]:
    """An R-bimodule chi: C (x)_R C -> R with the cointegral identity and chi(g (x) g) = 1."""
    p = c.p
    g = la.mod(g, p)
    hs = hom_space(c.cc.module, regular(c.base), "both")
    gg = c.cc.pure(g, g)

    def fn(chi):
        return np.concatenate([chi_identity_residual(c, chi).reshape(-1), la.matmul(chi, gg, p)])

    target = np.concatenate([np.zeros(c.dim ** 3, dtype=np.int64), c.base.unit])
    return solve_maps(hs.basis, fn, target, p)
