"""Restriction and extension of scalars along an algebra map phi: R -> S.

Restriction phi_* : S-Mod -> R-Mod is right adjoint to extension
S (x)_R - : R-Mod -> S-Mod, with unit m -> 1 (x) m and counit
s (x) n -> s n.

* Restriction is naturally full iff it is full iff phi is an epimorphism
  of rings.  Six equivalent conditions are evaluated; four of them are
  exact, two are checked on a finite family.
* Extension is naturally full iff there is an R-bimodule map E: S -> R
  with phi o E = id_S, iff S = Re for a central idempotent e of R with phi
  the projection r -> re.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import exactla as la
from .algebra import (
    AlgebraMorphism,
    FDAlgebra,
    is_central,
    is_idempotent,
    is_ring_epimorphism,
    multiplication_map,
    upper_triangular,
    validate_morphism,
)
from .errors import InconsistentCriteria, ValidationError
from .families import Family, left_family
from .modrep import (
    Bimodule,
    TensorSpace,
    forget_right,
    hom_space,
    invariants,
    regular,
    regular_left,
    restrict,
    solve_maps,
    tensor_over,
)


# -- building blocks ---------------------------------------------------------------


def s_as_sr(phi: AlgebraMorphism) -> Bimodule:
    """S as an (S, R)-bimodule."""
    return restrict(regular(phi.target), None, phi)


def s_as_rs(phi: AlgebraMorphism) -> Bimodule:
    """S as an (R, S)-bimodule."""
    return restrict(regular(phi.target), phi, None)


def s_as_rr(phi: AlgebraMorphism) -> Bimodule:
    return restrict(regular(phi.target), phi, phi)


def sweedler_tensor(phi: AlgebraMorphism) -> TensorSpace:
    """S (x)_R S as an S-bimodule."""
    return tensor_over(s_as_sr(phi), s_as_rs(phi))


def multiplication_on_tensor(phi: AlgebraMorphism, t: Optional[TensorSpace] = None) -> np.ndarray:
    """The counit S (x)_R S -> S in quotient coordinates."""
    t = t or sweedler_tensor(phi)
    s = phi.target
    return la.matmul(multiplication_map(s), t.section, s.p)


def extend(phi: AlgebraMorphism, m: Bimodule) -> TensorSpace:
    """S (x)_R M for a left R-module M, as a left S-module."""
    return tensor_over(restrict(regular(phi.target), None, phi), forget_right(m))


def restrict_left(phi: AlgebraMorphism, n: Bimodule) -> Bimodule:
    """phi_* N for a left S-module N."""
    return forget_right(restrict(n, phi, None))


def counit_map(phi: AlgebraMorphism, n: Bimodule) -> Tuple[TensorSpace, np.ndarray]:
    """epsilon_N : S (x)_R N -> N, s (x) n -> s n."""
    t = extend(phi, restrict_left(phi, n))
    s, p = phi.target, phi.p
    # K-level: column (a, j) is e_a . n_j
    act = np.concatenate([n.left_action[a] for a in range(s.dim)], axis=1)  # (dimN, dimS*dimN) ordered (a, j)
    return t, la.matmul(act, t.section, p)


def unit_map(phi: AlgebraMorphism, m: Bimodule) -> Tuple[TensorSpace, np.ndarray]:
    """eta_M : M -> S (x)_R M, m -> 1 (x) m."""
    t = extend(phi, m)
    lift = np.kron(phi.target.unit.reshape(-1, 1), la.identity(m.dim))
    return t, la.matmul(t.projection, lift, phi.p)


def sweedler_family(phi: AlgebraMorphism, family: Optional[Family] = None) -> Family:
    """Default left S-module family for the restriction functor."""
    fam = list(family) if family is not None else left_family(phi.target)
    t = sweedler_tensor(phi)
    fam.append(("S_tensor_R_S", forget_right(t.module)))
    return fam


# -- restriction ------------------------------------------------------------------------


CONDITION_NAMES = {
    "epimorphism": "phi is a ring epimorphism",
    "unit_tensor_invariant": "1 (x) 1 is S-invariant in S (x)_R S",
    "multiplication_injective": "S (x)_R S -> S is injective",
    "counit_bijective_on_family": "counit S (x)_R N -> N bijective on the family",
    "hom_equal_on_family": "Hom_R(M, N) = Hom_S(M, N) on the family",
    "invariants_equal_on_family": "M^R = M^S on the family",
}


@dataclass
class RestrictionReport:
    full: bool
    naturally_full: bool
    epi_verdict: bool
    eps_kernel_dim: int
    conditions: Dict[str, bool]
    family_refutes: Dict[str, bool]
    per_object_split: Dict[str, bool]
    family: List[str]


def condition_epimorphism(phi: AlgebraMorphism) -> Tuple[bool, int]:
    return is_ring_epimorphism(phi)


def condition_unit_tensor_invariant(phi: AlgebraMorphism) -> bool:
    """s (x) 1 == 1 (x) s for every basis s."""
    t = sweedler_tensor(phi)
    s = phi.target
    one = s.unit
    return all(la.equal(t.pure(s.basis_vector(i), one), t.pure(one, s.basis_vector(i)), s.p) for i in range(s.dim))


def condition_multiplication_injective(phi: AlgebraMorphism) -> Tuple[bool, int]:
    t = sweedler_tensor(phi)
    eps = multiplication_on_tensor(phi, t)
    kerdim = t.dim - la.rank(eps, phi.p)
    return kerdim == 0, kerdim


def counit_bijective(phi: AlgebraMorphism, n: Bimodule) -> bool:
    t, eps = counit_map(phi, n)
    return t.dim == n.dim and la.rank(eps, phi.p) == n.dim


def counit_splits(phi: AlgebraMorphism, n: Bimodule) -> bool:
    """Per-object fullness of restriction: some S-linear xi with xi o eps_N = id."""
    t, eps = counit_map(phi, n)
    hs = hom_space(n, forget_right(t.module), "left")
    return solve_maps(hs.basis, lambda x: la.matmul(x, eps, phi.p), la.identity(t.dim), phi.p) is not None


def hom_dims_equal(phi: AlgebraMorphism, m: Bimodule, n: Bimodule) -> bool:
    ds = hom_space(m, n, "left").dim
    dr = hom_space(restrict_left(phi, m), restrict_left(phi, n), "left").dim
    return ds == dr


def invariants_equal(phi: AlgebraMorphism, m: Bimodule) -> bool:
    """For an S-bimodule M, compare M^S with M^R (R acting through phi)."""
    return invariants(m).dim == invariants(restrict(m, phi, phi)).dim


def _check_morphism(phi: AlgebraMorphism):
    v = validate_morphism(phi)
    if v:
        raise ValidationError("algebra map does not validate", {"morphism": v})


def analyze_restriction(phi: AlgebraMorphism, family: Optional[Family] = None) -> RestrictionReport:
    _check_morphism(phi)
    fam = sweedler_family(phi, family)
    epi, epi_kdim = condition_epimorphism(phi)
    inj, kdim = condition_multiplication_injective(phi)
    conds = {
        "epimorphism": epi,
        "unit_tensor_invariant": condition_unit_tensor_invariant(phi),
        "multiplication_injective": inj,
    }
    conds["counit_bijective_on_family"] = all(counit_bijective(phi, n) for _, n in fam)
    hom_eq = all(hom_dims_equal(phi, m, n) for _, m in fam for _, n in fam)
    bimods = [("regular", regular(phi.target)), ("S_tensor_R_S", sweedler_tensor(phi).module)]
    inv_eq = all(invariants_equal(phi, m) for _, m in bimods)
    exact = [conds[k] for k in ("epimorphism", "unit_tensor_invariant", "multiplication_injective", "counit_bijective_on_family")]
    verdict = exact[0]
    if any(v != verdict for v in exact) or epi_kdim != kdim:
        raise InconsistentCriteria(f"restriction conditions disagree: {conds}")
    # the family checks may only fail to refute, never contradict a true verdict
    if verdict and not (hom_eq and inv_eq):
        raise InconsistentCriteria("restriction is an epimorphism but a family check failed")
    conds["hom_equal_on_family"] = hom_eq
    conds["invariants_equal_on_family"] = inv_eq
    per_object = {label: counit_splits(phi, n) for label, n in fam}
    full = all(per_object.values())
    if full != verdict:
        raise InconsistentCriteria("per-object fullness of restriction disagrees with the epimorphism test")
    return RestrictionReport(
        full=full,
        naturally_full=verdict,
        epi_verdict=epi,
        eps_kernel_dim=kdim,
        conditions=conds,
        family_refutes={"hom_equal_on_family": not hom_eq, "invariants_equal_on_family": not inv_eq},
        per_object_split=per_object,
        family=[label for label, _ in fam],
    )


def restriction_separable(phi: AlgebraMorphism) -> Tuple[bool, Optional[np.ndarray]]:
    """Classical separability test: an S-invariant e in S (x)_R S with mult(e) = 1."""
    t = sweedler_tensor(phi)
    inv = invariants(t.module)
    eps = multiplication_on_tensor(phi, t)
    x = la.solve_affine(la.matmul(eps, inv.basis, phi.p), phi.target.unit, phi.p)
    if x is None:
        return False, None
    return True, la.matmul(inv.basis, x, phi.p)


# -- extension ---------------------------------------------------------------------------


@dataclass
class ExtensionReport:
    full_on_family: bool
    naturally_full: bool
    witness_E: Optional[np.ndarray]
    central_idempotent_e: Optional[np.ndarray]
    per_object: Dict[str, bool]
    family: List[str]
    corner_isomorphic: Optional[bool] = None


def bimodule_sections(phi: AlgebraMorphism):
    """R-bimodule maps S -> R."""
    return hom_space(s_as_rr(phi), regular(phi.source), "both")


def find_E(phi: AlgebraMorphism) -> Optional[np.ndarray]:
    """Some R-bimodule map E: S -> R with phi o E = id_S."""
    hs = bimodule_sections(phi)
    s = phi.target
    return solve_maps(hs.basis, lambda e: la.matmul(phi.matrix, e, phi.p), la.identity(s.dim), phi.p)


def corner_is_isomorphic(phi: AlgebraMorphism, e) -> bool:
    """phi restricted to Re is a bijection Re -> S."""
    r = phi.source
    re = la.column_space(np.stack([r.multiply(r.basis_vector(i), e) for i in range(r.dim)], axis=1), phi.p)
    img = la.matmul(phi.matrix, re.basis, phi.p)
    return re.dim == phi.target.dim and la.rank(img, phi.p) == re.dim


def unit_cosplits(phi: AlgebraMorphism, m: Bimodule) -> Optional[np.ndarray]:
    """Some R-linear nu: S (x)_R M -> M with eta_M o nu = id, or None."""
    t, eta = unit_map(phi, m)
    target = restrict_left(phi, forget_right(t.module))
    hs = hom_space(target, forget_right(m), "left")
    return solve_maps(hs.basis, lambda nu: la.matmul(eta, nu, phi.p), la.identity(t.dim), phi.p)


def analyze_extension(phi: AlgebraMorphism, family: Optional[Family] = None) -> ExtensionReport:
    _check_morphism(phi)
    fam = list(family) if family is not None else left_family(phi.source)
    per_object = {label: unit_cosplits(phi, m) is not None for label, m in fam}
    E = find_E(phi)
    e = None
    corner = None
    if E is not None:
        r = phi.source
        e = la.matmul(E, phi.target.unit, phi.p)
        if not (is_idempotent(r, e) and is_central(r, e)):
            raise InconsistentCriteria("E(1) is not a central idempotent")
        corner = corner_is_isomorphic(phi, e)
        if not corner:
            raise InconsistentCriteria("phi does not restrict to an isomorphism Re -> S")
        if not all(per_object.values()):
            raise InconsistentCriteria("extension naturally full but not full on the family")
    return ExtensionReport(
        full_on_family=all(per_object.values()),
        naturally_full=E is not None,
        witness_E=E,
        central_idempotent_e=e,
        per_object=per_object,
        family=[label for label, _ in fam],
        corner_isomorphic=corner,
    )


def central_idempotent_criterion(phi: AlgebraMorphism) -> Optional[np.ndarray]:
    """Search central idempotents e of R with phi|Re an isomorphism and phi(1 - e) = 0."""
    from .algebra import central_idempotents

    r = phi.source
    for e in central_idempotents(r):
        comp = (r.unit - e) % r.p
        if la.is_zero(phi(comp)) and corner_is_isomorphic(phi, e):
            return e
    return None


# -- the triangular example ------------------------------------------------------------


def build_triangular_example(p: int) -> Tuple[FDAlgebra, AlgebraMorphism]:
    """Upper-triangular 2x2 matrices R over F_p and the corner projection R -> F_p.

    Basis e11, e12, e22; the map keeps the e11 coefficient.
    """
    from .algebra import ground

    r = upper_triangular(p)
    phi = AlgebraMorphism(r, ground(p), np.array([[1, 0, 0]], dtype=np.int64))
    return r, phi


# -- the xi^e splitting --------------------------------------------------------------------


def xi_splitting_check(phi: AlgebraMorphism, e) -> bool:
    """Does n -> sum e^1 (x) e^2 n split the counit for N = S?

    ``e`` is an S-invariant element of S (x)_R S in quotient coordinates.
    The verdict must coincide with e == 1 (x) 1.
    """
    t = sweedler_tensor(phi)
    s, p = phi.target, phi.p
    e = la.mod(e, p).reshape(-1)
    inv = invariants(t.module)
    if not inv.contains(e):
        raise ValueError("e is not S-invariant")
    eps = multiplication_on_tensor(phi, t)
    # xi(s) = e . s
    xi = np.stack([la.matmul(t.module.act_right(s.basis_vector(i)), e, p) for i in range(s.dim)], axis=1)
    verdict = la.equal(la.matmul(xi, eps, p), la.identity(t.dim), p)
    if verdict != la.equal(e, t.pure(s.unit, s.unit), p):
        raise InconsistentCriteria("xi^e splitting disagrees with e == 1 (x) 1")
    return verdict


@dataclass
class ScalarsReport:
    restriction: RestrictionReport
    extension: ExtensionReport
    cross_checks: List[Tuple[str, bool]] = field(default_factory=list)


def analyze_scalars(phi: AlgebraMorphism, family: Optional[Family] = None,
                    restriction_family: Optional[Family] = None) -> ScalarsReport:
    res = analyze_restriction(phi, restriction_family)
    ext = analyze_extension(phi, family)
    checks = [
        ("restriction full equals naturally full", res.full == res.naturally_full),
        ("extension naturally full implies full on family", (not ext.naturally_full) or ext.full_on_family),
        ("extension naturally full implies restriction naturally full", (not ext.naturally_full) or res.naturally_full),
        ("central idempotent criterion agrees", (central_idempotent_criterion(phi) is not None) == ext.naturally_full),
    ]
    if not all(ok for _, ok in checks):
        raise InconsistentCriteria(f"cross checks failed: {[n for n, ok in checks if not ok]}")
    return ScalarsReport(res, ext, checks)
