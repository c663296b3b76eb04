import numpy as np
import pytest
from helpers import brute_subspace_dim, rng_of, seeds, small_primes
from hypothesis import given

from natfull import exactla as la
from natfull.algebra import (
    AlgebraMorphism,
    FDAlgebra,
    center,
    central_idempotents,
    compose,
    ground,
    identity_morphism,
    is_central,
    is_idempotent,
    is_ring_epimorphism,
    opposite,
    product_algebra,
    quotient_algebra,
    two_sided_ideal,
    upper_triangular,
    validate_algebra,
    validate_morphism,
)
from natfull.fixtures import build
from natfull.generators import random_algebra, random_morphism
from natfull.scalars import sweedler_tensor


def morphism_of(key, p=2):
    return next(iter(build(key, p).morphisms.values()))


# -- examples ------------------------------------------------------------------------------


def test_validate_ground_field():
    assert validate_algebra(ground(2)) == []


def test_validate_broken_unit():
    mul = np.zeros((2, 2, 2), dtype=np.int64)
    mul[0, 0, 1] = 1
    bad = FDAlgebra(2, mul, np.array([0, 1]))
    assert validate_algebra(bad)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_validate_triangular(p):
    assert validate_algebra(upper_triangular(p)) == []


def test_central_idempotents_ground():
    assert [e.tolist() for e in central_idempotents(ground(2))] == [[0], [1]]


def test_central_idempotents_product():
    k = ground(2)
    found = {tuple(e) for e in central_idempotents(product_algebra(k, k))}
    assert found == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_central_idempotents_triangular():
    t = upper_triangular(2)
    found = {tuple(e) for e in central_idempotents(t)}
    assert found == {(0, 0, 0), (1, 0, 1)}
    e11 = np.array([1, 0, 0])
    assert is_idempotent(t, e11) and not is_central(t, e11)


@pytest.mark.parametrize(
    "key, expected",
    [("FIX-ID", (True, 0)), ("FIX-F4", (False, 2)), ("FIX-PROJ", (True, 0)), ("FIX-TRI", (True, 0))],
)
def test_ring_epimorphism_fixtures(key, expected):
    assert is_ring_epimorphism(morphism_of(key)) == expected


def test_quadratic_extension_tensor_square_dim():
    assert sweedler_tensor(morphism_of("FIX-F4")).dim == 4


def test_opposite_commutative_is_itself():
    k = ground(3)
    a = product_algebra(k, k)
    assert opposite(a) == a


def test_opposite_triangular_is_lower_triangular():
    t = upper_triangular(2)
    op = opposite(t)
    assert validate_algebra(op) == []
    assert op != t
    # e11 e12 = e12 in T, so e12 e11 = e12 in the opposite
    assert op.multiply([0, 1, 0], [1, 0, 0]).tolist() == [0, 1, 0]
    assert op.multiply([1, 0, 0], [0, 1, 0]).tolist() == [0, 0, 0]


def test_validate_morphism_rejects_non_unital():
    k = ground(2)
    bad = AlgebraMorphism(product_algebra(k, k), k, np.array([[0, 0]]))
    assert validate_morphism(bad)


def test_all_fixture_algebras_validate():
    for key in ["FIX-ID", "FIX-PROJ", "FIX-TRI", "FIX-F4", "FIX-MAT2", "FIX-SWE", "FIX-TRIV"]:
        inst = build(key, 3)
        assert all(validate_algebra(a) == [] for a in inst.algebras.values()), key


# -- properties -----------------------------------------------------------------------------


@given(seeds, small_primes)
def test_random_algebras_validate(seed, p):
    assert validate_algebra(random_algebra(rng_of(seed), p, 4)) == []


@given(seeds, small_primes)
def test_opposite_is_involution(seed, p):
    a = random_algebra(rng_of(seed), p, 4)
    assert opposite(opposite(a)) == a


@given(seeds, small_primes)
def test_center_matches_enumeration(seed, p):
    a = random_algebra(rng_of(seed), p, 3)

    def commutes(x):
        return la.equal(a.left_mult(x), a.right_mult(x), p)

    assert center(a).dim == brute_subspace_dim(commutes, a.dim, p)


@given(seeds, small_primes)
def test_epimorphism_matches_unit_tensor_invariance(seed, p):
    phi = random_morphism(rng_of(seed), p, 4)
    s = phi.target
    t = sweedler_tensor(phi)
    one = t.pure(s.unit, s.unit)
    invariant = all(
        la.equal(t.pure(s.basis_vector(i), s.unit), t.pure(s.unit, s.basis_vector(i)), p) for i in range(s.dim)
    )
    assert is_ring_epimorphism(phi)[0] == invariant
    assert la.equal(t.module.act_left(s.unit) @ one % p, one, p)


@given(seeds, small_primes)
def test_surjections_are_epimorphisms(seed, p):
    r = random_algebra(rng_of(seed), p, 4)
    gen = rng_of(seed + 1).integers(0, p, size=r.dim)
    ideal = two_sided_ideal(r, [gen])
    if ideal.dim == r.dim:
        return
    _, phi = quotient_algebra(r, ideal)
    assert validate_morphism(phi) == []
    assert is_ring_epimorphism(phi)[0]


@given(seeds, small_primes)
def test_random_morphisms_validate_and_compose(seed, p):
    phi = random_morphism(rng_of(seed), p, 4)
    assert validate_morphism(phi) == []
    both = compose(identity_morphism(phi.target), phi)
    assert la.equal(both.matrix, phi.matrix, p)
