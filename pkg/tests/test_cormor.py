import numpy as np
from helpers import rng_of, seeds, small_primes
from hypothesis import given

from natfull import exactla as la
from natfull.algebra import ground, identity_morphism, is_ring_epimorphism
from natfull.corings import (
    analyze_cotensor_functor,
    analyze_forgetful_functor,
    dual_coalgebra,
    induced_comodule,
    regular_comodule,
    trivial_coring,
)
from natfull.cormor import (
    CoringMorphism,
    analyze_F_naturally_full,
    analyze_G_naturally_full,
    analyze_coring_morphism,
    counit_morphism,
    cotensor,
    cotensor_coaction_valid,
    identity_coring_morphism,
    scalar_morphism,
    triangle_identities,
    validate_coring_morphism,
)
from natfull.fixtures import build
from natfull.generators import random_algebra, random_coring, random_coring_morphism, random_morphism
from natfull.modrep import regular_right
from natfull.scalars import analyze_extension


def morphism_of(key, p=2):
    return next(iter(build(key, p).morphisms.values()))


# -- validation ----------------------------------------------------------------------------------


def test_counit_morphism_validates():
    assert validate_coring_morphism(counit_morphism(build("FIX-MAT2").corings["mat2"])) == []


def test_scalar_morphism_validates():
    for key in ["FIX-PROJ", "FIX-TRI", "FIX-F4"]:
        assert validate_coring_morphism(scalar_morphism(morphism_of(key))) == []


def test_broken_counit_square_detected():
    c = build("FIX-MAT2").corings["mat2"]
    bad = CoringMorphism(c, trivial_coring(c.base), identity_morphism(c.base), np.zeros((1, 4), dtype=np.int64))
    assert any("counit" in v for v in validate_coring_morphism(bad))


def test_fixture_into_sweedler_validates():
    assert validate_coring_morphism(build("FIX-SWE").coring_morphisms["into_sweedler"]) == []


@given(seeds, small_primes)
def test_random_coring_morphisms_validate(seed, p):
    assert validate_coring_morphism(random_coring_morphism(rng_of(seed), p, 3)) == []


# -- cotensor products ----------------------------------------------------------------------------


@given(seeds, small_primes)
def test_cotensor_along_identity_recovers_comodule(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    n = regular_comodule(c)
    g = cotensor(n, identity_coring_morphism(c))
    assert g.dim == n.dim and g.preserved


def test_cotensor_along_scalars_is_restriction():
    phi = morphism_of("FIX-TRI")
    m = scalar_morphism(phi)
    n = induced_comodule(m.target, regular_right(phi.target))
    g = cotensor(n, m)
    assert g.dim == n.dim


@given(seeds, small_primes)
def test_cotensor_bounds_and_coaction(seed, p):
    m = random_coring_morphism(rng_of(seed), p, 3)
    n = regular_comodule(m.target)
    g = cotensor(n, m)
    assert g.dim <= g.ambient.dim
    assert g.preserved and cotensor_coaction_valid(g)


# -- natural fullness of F and G -----------------------------------------------------------------


def test_identity_morphism_both_naturally_full():
    c = trivial_coring(build("FIX-TRI").algebras["R"])
    m = identity_coring_morphism(c)
    assert analyze_F_naturally_full(m).naturally_full
    g = analyze_G_naturally_full(m)
    assert g.naturally_full and g.witness_Psi is not None


def test_fixture_into_sweedler():
    rep = analyze_coring_morphism(build("FIX-SWE").coring_morphisms["into_sweedler"])
    assert rep.F.naturally_full and rep.G.naturally_full


@given(seeds, small_primes)
def test_scalar_reductions(seed, p):
    phi = random_morphism(rng_of(seed), p, 3)
    m = scalar_morphism(phi)
    assert analyze_F_naturally_full(m).naturally_full == analyze_extension(phi).naturally_full
    assert analyze_G_naturally_full(m).naturally_full == is_ring_epimorphism(phi)[0]


@given(seeds, small_primes)
def test_counit_reductions(seed, p):
    c = random_coring(rng_of(seed), p, 4, 3)
    m = counit_morphism(c)
    assert analyze_F_naturally_full(m).naturally_full == analyze_forgetful_functor(c).naturally_full
    assert analyze_G_naturally_full(m).naturally_full == analyze_cotensor_functor(c).naturally_full


@given(seeds, small_primes)
def test_coalgebra_counit_identity(seed, p):
    c = dual_coalgebra(random_algebra(rng_of(seed), p, 3))
    f_full = analyze_F_naturally_full(counit_morphism(c)).naturally_full
    assert f_full == analyze_forgetful_functor(c).naturally_full
    eps, n = c.epsilon[0], c.dim
    # eps(c) c' = c eps(c') over the ground field
    lhs = np.einsum("a,bk->abk", eps, np.eye(n, dtype=np.int64)) % p
    rhs = np.einsum("b,ak->abk", eps, np.eye(n, dtype=np.int64)) % p
    assert f_full == la.equal(lhs, rhs, p)


@given(seeds, small_primes)
def test_triangle_identities(seed, p):
    tri = triangle_identities(random_coring_morphism(rng_of(seed), p, 3))
    assert all(tri.F_side.values()) and all(tri.G_side.values())


@given(seeds, small_primes)
def test_report_reductions_hold(seed, p):
    rep = analyze_coring_morphism(random_coring_morphism(rng_of(seed), p, 3))
    assert all(rep.reductions.values())


def test_ground_field_identity():
    m = identity_coring_morphism(trivial_coring(ground(5)))
    rep = analyze_coring_morphism(m)
    assert rep.F.naturally_full and rep.G.naturally_full
