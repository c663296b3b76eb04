import itertools

import numpy as np
import pytest
from helpers import rng_of, seeds, small_primes
from hypothesis import given

from natfull import exactla as la
from natfull.algebra import ground, identity_morphism, is_ring_epimorphism
from natfull.bimodfunc import analyze_coinduction
from natfull.corings import (
    Coring,
    analyze_coring,
    analyze_cotensor_functor,
    analyze_forgetful_functor,
    base_comodule,
    check_chi_condition,
    coinvariant_subalgebra,
    coinvariants,
    comatrix_coring,
    coring_ring_bijection,
    coring_ring_round_trip,
    corings_equal,
    derived_checks,
    find_chi,
    grouplikes,
    is_grouplike,
    regular_comodule,
    sweedler_coring,
    trivial_coring,
    validate_comodule,
    validate_coring,
)
from natfull.errors import CriterionNotMet
from natfull.fixtures import build
from natfull.generators import random_coring, random_fgp_bimodule, random_morphism
from natfull.modrep import Bimodule, zero_module
from natfull.scalars import sweedler_tensor


def morphism_of(key, p=2):
    return next(iter(build(key, p).morphisms.values()))


def mat2(p=2):
    return build("FIX-MAT2", p).corings["mat2"]


def brute_cotensor_witnesses(c):
    """Every z in C with r z = z r and c = eps(c) z on basis elements."""
    p, n, r = c.p, c.dim, c.base
    out = []
    for coords in itertools.product(range(p), repeat=n):
        z = np.array(coords, dtype=np.int64)
        central = all(
            la.equal(c.carrier.act_left(r.basis_vector(i)) @ z % p, c.carrier.act_right(r.basis_vector(i)) @ z % p, p)
            for i in range(r.dim)
        )
        if central and all(
            la.equal(c.carrier.act_left(c.epsilon[:, j]) @ z % p, la.unit_vector(n, j), p) for j in range(n)
        ):
            out.append(z)
    return out


def counit_identity_by_pairs(c):
    p, n = c.p, c.dim
    for a, b in itertools.product(range(n), repeat=2):
        lhs = c.carrier.act_right(c.epsilon[:, b])[:, a]
        rhs = c.carrier.act_left(c.epsilon[:, a])[:, b]
        if not la.equal(lhs, rhs, p):
            return False
    return True


# -- validation and constructors ---------------------------------------------------------------


def test_trivial_coring_validates():
    assert validate_coring(build("FIX-TRIV").corings["trivial"]) == []


def test_sweedler_of_quadratic_extension_validates():
    c = sweedler_coring(morphism_of("FIX-F4"))
    assert validate_coring(c) == [] and c.dim == 4


def test_zero_comultiplication_breaks_counit():
    c = trivial_coring(ground(2))
    bad = Coring(c.base, c.carrier, 0 * c.delta, c.epsilon)
    assert any("counit" in v for v in validate_coring(bad))


def test_sweedler_of_identity_is_trivial():
    k = ground(3)
    assert corings_equal(sweedler_coring(identity_morphism(k)), trivial_coring(k))


def test_comatrix_of_rank_one_is_trivial():
    k = ground(2)
    c, _ = comatrix_coring(Bimodule(k, k, la.identity(1)[None], la.identity(1)[None]))
    assert corings_equal(c, trivial_coring(k))


def test_comatrix_plane_is_fixture():
    c = mat2()
    assert c.dim == 4 and validate_coring(c) == []


@given(seeds, small_primes)
def test_constructors_validate(seed, p):
    rng = rng_of(seed)
    assert validate_coring(sweedler_coring(random_morphism(rng, p, 3))) == []
    c, _ = comatrix_coring(random_fgp_bimodule(rng, p, 2))
    assert validate_coring(c) == []
    assert validate_coring(random_coring(rng, p, 4, 3)) == []


# -- the cotensor (right adjoint) functor -----------------------------------------------------------


def test_cotensor_trivial_has_unit_witness():
    c = build("FIX-TRIV").corings["trivial"]
    rep = analyze_cotensor_functor(c)
    assert rep.naturally_full and rep.witness_z.tolist() == c.base.unit.tolist()


def test_cotensor_plane_comatrix_fails():
    assert not analyze_cotensor_functor(mat2()).naturally_full
    assert brute_cotensor_witnesses(mat2()) == []


def test_cotensor_sweedler_projection():
    rep = analyze_cotensor_functor(sweedler_coring(morphism_of("FIX-PROJ")))
    assert rep.naturally_full and rep.eps_splits


@given(seeds, small_primes)
def test_cotensor_matches_enumeration(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    if p**c.dim > 4096:
        return
    hits = brute_cotensor_witnesses(c)
    rep = analyze_cotensor_functor(c)
    assert rep.naturally_full == bool(hits) == rep.eps_splits
    if hits:
        assert any(la.equal(h, rep.witness_z, p) for h in hits)


# -- the forgetful (left adjoint) functor -------------------------------------------------------------


def test_forgetful_trivial():
    assert analyze_forgetful_functor(trivial_coring(ground(2))).naturally_full


def test_forgetful_plane_comatrix_fails():
    assert not analyze_forgetful_functor(mat2()).naturally_full


@pytest.mark.parametrize("key", ["FIX-ID", "FIX-PROJ", "FIX-TRI", "FIX-F4"])
def test_forgetful_sweedler_is_epimorphism_test(key):
    phi = morphism_of(key)
    assert analyze_forgetful_functor(sweedler_coring(phi)).naturally_full == is_ring_epimorphism(phi)[0]


@given(seeds, small_primes)
def test_forgetful_identity_and_surjectivity(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    rep = analyze_forgetful_functor(c)
    surj = la.rank(c.delta_q, p) == c.cc.dim
    assert rep.naturally_full == counit_identity_by_pairs(c) == surj


@given(seeds, small_primes)
def test_forgetful_sweedler_random(seed, p):
    phi = random_morphism(rng_of(seed), p, 3)
    assert analyze_forgetful_functor(sweedler_coring(phi)).naturally_full == is_ring_epimorphism(phi)[0]


# -- rings from split counits ------------------------------------------------------------------------


def test_bijection_trivial_gives_base():
    k = ground(2)
    ring = coring_ring_bijection(trivial_coring(k))
    assert ring.algebra == k


def test_bijection_sweedler_projection_round_trip():
    c = build("FIX-SWE").corings["sweedler"]
    ring, back, ok = coring_ring_round_trip(c)
    # the Sweedler coring lives over S, so its ring is S itself
    assert ok and ring.algebra.dim == 1
    assert ring.phi.matrix.tolist() == [[1]] and ring.E.tolist() == [[1]]


def test_bijection_plane_refused():
    with pytest.raises(CriterionNotMet):
        coring_ring_bijection(mat2())


@given(seeds, small_primes)
def test_bijection_round_trip_random(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    if analyze_cotensor_functor(c).naturally_full:
        assert coring_ring_round_trip(c)[2]


# -- derived consequences ----------------------------------------------------------------------------


def test_derived_trivial():
    c = trivial_coring(ground(2))
    d = derived_checks(c, analyze_cotensor_functor(c).witness_z)
    assert d.fgp_left and d.fgp_right and d.frobenius_phi_bijective and d.coseparability_identity


def test_derived_sweedler_projection():
    c = sweedler_coring(morphism_of("FIX-PROJ"))
    d = derived_checks(c, analyze_cotensor_functor(c).witness_z)
    assert d.fgp_left and d.fgp_right and d.frobenius_phi_bijective


@given(seeds, small_primes)
def test_derived_random(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    rep = analyze_coring(c)
    if rep.cotensor.naturally_full:
        assert rep.derived.fgp_left and rep.derived.fgp_right and rep.derived.frobenius_phi_bijective
        assert rep.forgetful.naturally_full
    if rep.forgetful.naturally_full:
        assert rep.derived.coseparability_identity
    if rep.forgetful.naturally_full and rep.derived.counit_hits_one:
        assert rep.derived.converse_applies


# -- grouplikes and coinvariants ---------------------------------------------------------------------


def test_grouplikes_trivial():
    assert [g.tolist() for g in grouplikes(trivial_coring(ground(2)))] == [[1]]


def test_grouplikes_sweedler_quadratic_extension():
    phi = morphism_of("FIX-F4")
    c = sweedler_coring(phi)
    one = sweedler_tensor(phi).pure(phi.target.unit, phi.target.unit)
    gl = grouplikes(c)
    assert gl.contains(one) and len(gl) == 3


def test_grouplikes_zero_coring():
    k = ground(2)
    c = Coring(k, zero_module(k, k), np.zeros((0, 0), dtype=np.int64), np.zeros((1, 0), dtype=np.int64))
    assert len(grouplikes(c)) == 0


@given(seeds, small_primes)
def test_grouplikes_match_enumeration(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    if p**c.dim > 4096:
        return
    found = {tuple(g) for g in grouplikes(c)}
    brute = {coords for coords in itertools.product(range(p), repeat=c.dim) if is_grouplike(c, np.array(coords))}
    assert found == brute


def test_coinvariants_trivial_is_base():
    c = trivial_coring(build("FIX-TRI").algebras["R"])
    _, b, _ = coinvariant_subalgebra(c, c.base.unit)
    assert b.dim == c.base.dim


def test_coinvariants_sweedler_quadratic_extension():
    phi = morphism_of("FIX-F4")
    one = sweedler_tensor(phi).pure(phi.target.unit, phi.target.unit)
    _, b, _ = coinvariant_subalgebra(sweedler_coring(phi), one)
    assert b.dim == 1


def test_coinvariants_of_grouplike_coaction_is_everything():
    c = trivial_coring(build("FIX-TRI").algebras["R"])
    m = base_comodule(c, c.base.unit)
    assert validate_comodule(m) == []
    assert coinvariants(c, c.base.unit, m).dim == m.dim


@given(seeds, small_primes)
def test_regular_comodule_validates(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    assert validate_comodule(regular_comodule(c)) == []


# -- normalized cointegrals ---------------------------------------------------------------------------


def test_chi_trivial_coring():
    c = trivial_coring(ground(2))
    g = grouplikes(c)[0]
    rep = check_chi_condition(c, g, find_chi(c, g))
    assert rep.hypotheses_met and all(rep.alpha_bijective.values())


def test_chi_zero_fails():
    c = trivial_coring(ground(2))
    rep = check_chi_condition(c, c.base.unit, np.zeros((1, c.cc.dim), dtype=np.int64))
    assert not rep.hypotheses_met


def test_chi_sweedler_projection():
    c = sweedler_coring(morphism_of("FIX-PROJ"))
    for g in grouplikes(c):
        chi = find_chi(c, g)
        assert chi is not None
        rep = check_chi_condition(c, g, chi)
        assert rep.hypotheses_met and rep.t_lands_in_B and all(rep.alpha_bijective.values())


@given(seeds, small_primes)
def test_chi_found_means_hypotheses_met(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    if p ** c.dim > 4096:
        return
    for g in grouplikes(c):
        chi = find_chi(c, g)
        if chi is not None:
            assert check_chi_condition(c, g, chi).hypotheses_met


# -- comatrix bridge ----------------------------------------------------------------------------------


@given(seeds, small_primes)
def test_comatrix_cotensor_matches_coinduction(seed, p):
    m = random_fgp_bimodule(rng_of(seed), p, 2)
    c, _ = comatrix_coring(m)
    assert analyze_cotensor_functor(c).naturally_full == analyze_coinduction(m).naturally_full
