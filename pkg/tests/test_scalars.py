import itertools

import numpy as np
import pytest
from helpers import brute_hom_dim, rng_of, seeds, small_primes
from hypothesis import given

from natfull import exactla as la
from natfull.algebra import identity_morphism, is_ring_epimorphism, upper_triangular, validate_algebra
from natfull.families import left_family
from natfull.fixtures import build
from natfull.generators import random_morphism
from natfull.modrep import invariants, restrict
from natfull.scalars import (
    analyze_extension,
    analyze_restriction,
    analyze_scalars,
    build_triangular_example,
    central_idempotent_criterion,
    restriction_separable,
    sweedler_tensor,
    xi_splitting_check,
)


def morphism_of(key, p=2):
    return next(iter(build(key, p).morphisms.values()))


# -- restriction ---------------------------------------------------------------------------


def test_restriction_identity_all_true():
    rep = analyze_restriction(identity_morphism(upper_triangular(2)))
    assert rep.naturally_full and rep.full and all(rep.conditions.values())


def test_restriction_quadratic_extension_all_false():
    rep = analyze_restriction(morphism_of("FIX-F4"))
    assert not rep.naturally_full and not rep.full
    assert not any(rep.conditions.values())
    assert rep.eps_kernel_dim == 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_restriction_triangular_all_true(p):
    rep = analyze_restriction(morphism_of("FIX-TRI", p))
    assert rep.naturally_full and all(rep.conditions.values())


@given(seeds, small_primes)
def test_restriction_full_iff_naturally_full(seed, p):
    rep = analyze_restriction(random_morphism(rng_of(seed), p, 4))
    assert rep.full == rep.naturally_full == rep.epi_verdict


@given(seeds, small_primes)
def test_restriction_hom_spaces_by_enumeration(seed, p):
    phi = random_morphism(rng_of(seed), p, 3)
    fam = left_family(phi.target)
    verdict = is_ring_epimorphism(phi)[0]
    for (_, m), (_, n) in itertools.product(fam, fam):
        over_s = brute_hom_dim(m, n)
        if over_s is None:
            continue
        over_r = brute_hom_dim(restrict(m, left=phi), restrict(n, left=phi))
        if verdict:
            assert over_r == over_s
        assert over_r >= over_s


# -- extension -----------------------------------------------------------------------------


def test_extension_identity():
    a = upper_triangular(2)
    rep = analyze_extension(identity_morphism(a))
    assert rep.naturally_full
    assert la.equal(rep.witness_E, la.identity(3), 2)
    assert rep.central_idempotent_e.tolist() == a.unit.tolist()


def test_extension_projection_witness():
    phi = morphism_of("FIX-PROJ")
    rep = analyze_extension(phi)
    assert rep.naturally_full
    assert rep.witness_E.tolist() == [[1], [0]]
    assert rep.central_idempotent_e.tolist() == [1, 0]
    assert la.equal(la.matmul(phi.matrix, rep.witness_E, 2), la.identity(1), 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_extension_triangular_full_not_naturally_full(p):
    rep = analyze_extension(morphism_of("FIX-TRI", p))
    assert rep.full_on_family and not rep.naturally_full
    assert rep.witness_E is None


@given(seeds, small_primes)
def test_extension_matches_central_idempotent_search(seed, p):
    phi = random_morphism(rng_of(seed), p, 4)
    rep = analyze_extension(phi)
    assert rep.naturally_full == (central_idempotent_criterion(phi) is not None)
    if rep.naturally_full:
        assert la.equal(la.matmul(phi.matrix, rep.witness_E, p), la.identity(phi.target.dim), p)


@given(seeds, small_primes)
def test_scalars_cross_checks_hold(seed, p):
    rep = analyze_scalars(random_morphism(rng_of(seed), p, 4))
    assert all(ok for _, ok in rep.cross_checks)


# -- the triangular construction ------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_triangular_example_shape(p):
    r, phi = build_triangular_example(p)
    assert r.dim == 3 and r.p == p
    assert phi.matrix.tolist() == [[1, 0, 0]]
    assert validate_algebra(r) == []


# -- xi splitting ---------------------------------------------------------------------------


def test_xi_unit_tensor_epi():
    phi = morphism_of("FIX-PROJ")
    t = sweedler_tensor(phi)
    assert xi_splitting_check(phi, t.pure(phi.target.unit, phi.target.unit))


def test_xi_zero_element():
    phi = morphism_of("FIX-TRI")
    assert not xi_splitting_check(phi, np.zeros(sweedler_tensor(phi).dim, dtype=np.int64))


def test_xi_quadratic_extension_never_splits():
    phi = morphism_of("FIX-F4")
    inv = invariants(sweedler_tensor(phi).module)
    for coords in itertools.product(range(2), repeat=inv.dim):
        e = la.matmul(inv.basis, np.array(coords, dtype=np.int64), 2)
        assert not xi_splitting_check(phi, e)


@given(seeds, small_primes)
def test_xi_splits_only_for_unit_tensor(seed, p):
    phi = random_morphism(rng_of(seed), p, 3)
    s = phi.target
    t = sweedler_tensor(phi)
    inv = invariants(t.module)
    if p**inv.dim > 256:
        return
    one = t.pure(s.unit, s.unit)
    for coords in itertools.product(range(p), repeat=inv.dim):
        e = la.matmul(inv.basis, np.array(coords, dtype=np.int64), p)
        assert xi_splitting_check(phi, e) == la.equal(e, one, p)


# -- optional separability oracle -----------------------------------------------------------


def test_separability_examples():
    assert restriction_separable(morphism_of("FIX-F4"))[0]
    assert restriction_separable(morphism_of("FIX-PROJ"))[0]


@given(seeds, small_primes)
def test_separable_and_epi_means_unit_tensor_is_separability_element(seed, p):
    phi = random_morphism(rng_of(seed), p, 4)
    sep, e = restriction_separable(phi)
    if sep and is_ring_epimorphism(phi)[0]:
        t = sweedler_tensor(phi)
        assert la.equal(e, t.pure(phi.target.unit, phi.target.unit), p)
