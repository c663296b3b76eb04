import itertools

import numpy as np
import pytest
from helpers import rng_of, seeds, small_primes
from hypothesis import given

from natfull import exactla as la
from natfull.algebra import ground, upper_triangular
from natfull.bimodfunc import (
    analyze_bimodule,
    analyze_coinduction,
    analyze_induction,
    coinduction_data,
    coinduction_identity_holds,
    structural_consequences,
)
from natfull.errors import NotProjective
from natfull.generators import random_fgp_bimodule, random_morphism
from natfull.modrep import Bimodule, regular, regular_left, zero_module
from natfull.scalars import analyze_extension, s_as_sr


def plane(p=2):
    k = ground(p)
    return Bimodule(k, k, la.identity(2)[None], la.identity(2)[None], name="plane")


def enumerate_identity_witnesses(m):
    """All invariant z satisfying the identity tested against Q = M, or None when the space is large."""
    d = coinduction_data(m)
    k, p = d.invariant_basis.shape[1], m.p
    if p**k > 4096:
        return None
    hits = []
    for coords in itertools.product(range(p), repeat=k):
        z = la.matmul(d.invariant_basis, np.array(coords, dtype=np.int64), p) if k else np.zeros(d.tensor.dim, dtype=np.int64)
        if coinduction_identity_holds(m, z, m, d):
            hits.append(z)
    return hits


# -- coinduction ------------------------------------------------------------------------------


def test_coinduction_identity_bimodule():
    k = ground(2)
    rep = analyze_coinduction(regular(k))
    assert rep.naturally_full and rep.witness_z.tolist() == [1]


def test_coinduction_plane_not_naturally_full():
    rep = analyze_coinduction(plane())
    assert rep.invariant_dim == 4
    assert not rep.naturally_full
    assert enumerate_identity_witnesses(plane()) == []


def test_coinduction_zero_module():
    rep = analyze_coinduction(zero_module(ground(2), ground(2)))
    assert rep.naturally_full and rep.witness_z.size == 0


@given(seeds, small_primes)
def test_coinduction_matches_enumeration(seed, p):
    m = random_fgp_bimodule(rng_of(seed), p, 3)
    hits = enumerate_identity_witnesses(m)
    if hits is None:
        return
    rep = analyze_coinduction(m)
    assert rep.naturally_full == bool(hits)
    if rep.naturally_full:
        assert any(la.equal(h, rep.witness_z, p) for h in hits)


@given(seeds, small_primes)
def test_coinduction_identity_on_regular_and_module(seed, p):
    m = random_fgp_bimodule(rng_of(seed), p, 3)
    rep = analyze_coinduction(m)
    if rep.naturally_full:
        assert coinduction_identity_holds(m, rep.witness_z, m)
        assert coinduction_identity_holds(m, rep.witness_z, regular_left(m.left))


# -- induction -------------------------------------------------------------------------------


def test_induction_regular():
    a = upper_triangular(2)
    rep = analyze_induction(regular(a))
    assert rep.naturally_full


def test_induction_plane_infeasible():
    rep = analyze_induction(plane())
    assert rep.end_dim == 4 and not rep.naturally_full


def test_induction_refuses_non_projective():
    a = upper_triangular(2)
    k = ground(2)
    simple_top = Bimodule(a, k, np.array([[[0]], [[0]], [[1]]]), np.array([[[1]]]))
    with pytest.raises(NotProjective):
        analyze_induction(simple_top)
    assert analyze_bimodule(simple_top).induction is None


@given(seeds, small_primes)
def test_induction_along_algebra_map_is_extension(seed, p):
    phi = random_morphism(rng_of(seed), p, 4)
    assert analyze_induction(s_as_sr(phi)).naturally_full == analyze_extension(phi).naturally_full


# -- structural consequences ------------------------------------------------------------------


def test_structure_identity_bimodule():
    k = ground(3)
    rep = analyze_bimodule(regular(k))
    assert rep.structure.central_idempotent_e_of_S.tolist() == [1]


def test_structure_plane_no_claim():
    st = structural_consequences(plane())
    assert st.M_generator and not st.chi_epi
    assert st.fully_faithful_G is None


@given(seeds, small_primes)
def test_structure_counits_bijective_when_hypotheses_hold(seed, p):
    m = random_fgp_bimodule(rng_of(seed), p, 3)
    rep = analyze_bimodule(m)
    st = rep.structure
    if st.M_generator and st.chi_epi:
        assert st.fully_faithful_G and all(st.counit_bijective.values())
    if rep.coinduction.naturally_full:
        e = st.central_idempotent_e_of_S
        assert la.equal(m.act_left(e), la.identity(m.dim), p)
        assert st.M_generator_over_eSe
