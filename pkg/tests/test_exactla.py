import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from natfull import _kernels_py
from natfull import exactla as la

PRIMES = [2, 3, 5]


@st.composite
def matrices(draw, max_dim=8):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(flat, dtype=np.int64).reshape(r, c)


def brute_kernel(m, p):
    cols = m.shape[1]
    return [v for v in itertools.product(range(p), repeat=cols) if la.is_zero(la.matmul(m, np.array(v), p))]


# -- small examples ----------------------------------------------------------------------------


def test_rref_identity():
    r, piv, rk = la.rref(la.identity(2), 2)
    assert la.equal(r, la.identity(2), 2) and piv == [0, 1] and rk == 2


def test_rref_zero():
    r, piv, rk = la.rref(la.zeros(3, 3), 3)
    assert la.is_zero(r) and piv == [] and rk == 0


def test_rref_rank_one():
    r, _, rk = la.rref([[1, 1], [1, 1]], 2)
    assert r.tolist() == [[1, 1], [0, 0]] and rk == 1


def test_kernel_examples():
    assert la.kernel_basis(la.identity(3), 5).dim == 0
    assert la.kernel_basis(la.zeros(1, 3), 2).dim == 3
    k = la.kernel_basis([[1, 1]], 2)
    assert k.basis.T.tolist() == [[1, 1]]
    assert len(brute_kernel(np.array([[1, 1]]), 2)) == 2


def test_solve_affine_examples():
    b = np.array([1, 2, 0])
    assert la.equal(la.solve_affine(la.identity(3), b, 3), b, 3)
    assert la.solve_affine([[1, 1]], [1], 2).tolist() == [1, 0]
    assert la.solve_affine(la.zeros(2, 2), [1, 0], 2) is None


def test_quotient_examples():
    q = la.quotient_space(4, la.zeros(4, 0), 2)
    assert q.dim == 4 and la.equal(q.projection, la.identity(4), 2)
    assert la.quotient_space(3, la.identity(3), 3).dim == 0
    rel = np.array([[1, 1, 0, 0]]).T  # e1 - e2 over F_2
    q = la.quotient_space(4, rel, 2)
    assert q.dim == 3
    assert la.equal(q.projection @ la.unit_vector(4, 0), q.projection @ la.unit_vector(4, 1), 2)


def test_kronecker_examples():
    assert la.equal(la.kronecker(la.identity(2), la.identity(3), 5), la.identity(6), 5)
    b = np.array([[1, 2], [3, 4]])
    assert la.is_zero(la.kronecker(b, la.zeros(2, 2), 5))
    assert la.equal(la.kronecker([[3]], b, 5), 3 * b, 5)
    # index convention idx(i, j) = i * dim2 + j
    k = la.kronecker(la.unit_vector(2, 1).reshape(-1, 1), la.unit_vector(3, 2).reshape(-1, 1), 5)
    assert k[1 * 3 + 2, 0] == 1 and k.sum() == 1


def test_prime_field_bounds():
    with pytest.raises(ValueError):
        la.PrimeField(4)
    with pytest.raises(ValueError):
        la.PrimeField(101)
    assert la.PrimeField(97).inv(5) * 5 % 97 == 1


# -- properties ---------------------------------------------------------------------------------


@given(matrices())
def test_rank_nullity(pm):
    p, m = pm
    assert la.rank(m, p) + la.kernel_basis(m, p).dim == m.shape[1]


@given(matrices(max_dim=4))
def test_kernel_matches_enumeration(pm):
    p, m = pm
    if p ** m.shape[1] > 700:
        return
    assert p ** la.kernel_basis(m, p).dim == len(brute_kernel(m, p))


@given(matrices(), st.data())
def test_solve_affine_sound_and_complete(pm, data):
    p, m = pm
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[0], max_size=m.shape[0])), dtype=np.int64)
    x = la.solve_affine(m, b, p)
    if x is None:
        aug = np.concatenate([m, b.reshape(-1, 1)], axis=1)
        assert la.rank(aug, p) > la.rank(m, p)
    else:
        assert la.equal(la.matmul(m, x, p), b, p)


@given(matrices())
def test_quotient_section(pm):
    p, m = pm
    q = la.quotient_space(m.shape[0], m, p)
    assert la.equal(la.matmul(q.projection, q.section, p), la.identity(q.dim), p)
    assert q.dim == m.shape[0] - la.rank(m, p)
    if m.size and q.dim:
        assert la.is_zero(la.matmul(q.projection, m, p))


@given(matrices())
def test_rref_idempotent(pm):
    p, m = pm
    r, _, _ = la.rref(m, p)
    r2, _, _ = la.rref(r, p)
    assert la.equal(r, r2, p)


@given(matrices())
def test_backends_agree(pm):
    p, m = pm
    a = np.ascontiguousarray(m % p)
    b = a.copy()
    piv_py = _kernels_py.rref_inplace(a, p)
    la.rref(b, p)  # exercise the selected backend
    if la.BACKEND == "compiled":
        from natfull import _kernels

        c = np.ascontiguousarray(m % p)
        piv_c = list(_kernels.rref_inplace(c, p))
        assert piv_c == list(piv_py) and np.array_equal(a, c)
        x = np.ascontiguousarray(m.T % p)
        assert np.array_equal(_kernels.matmul_mod(np.ascontiguousarray(m), x, p), _kernels_py.matmul_mod(m, x, p))


def test_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, NATFULL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from natfull import exactla; print(exactla.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
