from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from cy3.errors import DomainError, UsageError
from cy3.exactla import MatFp, in_row_space, rank
from cy3.gf import GF
from cy3.groupact import (
    elementary,
    gamma_invariants,
    induced_gamma,
    induced_lambda2,
    invariant_subspace,
    lift_obstruction,
    parabolic_generators,
    prop_invariants_report,
    torus_elements,
)
from cy3.multilinear import basis_index, copair_vector, divided_power_eval, gamma_basis


def _gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def _perm_group(gens, p):
    """Oracle: the generated group as permutations of the nonzero vectors of F_p^n."""
    n = gens.n
    vecs = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    idx = {v: i for i, v in enumerate(vecs)}
    perms = []
    for g in gens:
        a = np.array(g.data)
        perms.append(Permutation([idx[tuple((a @ np.array(v)) % p)] for v in vecs]))
    return PermutationGroup(perms)


def test_gl4_f3_order():
    g = _perm_group(parabolic_generators(4, 3, 4), 3)
    assert g.order() == _gl_order(4, 3) == 24261120


@pytest.mark.parametrize("m,index", [(1, 40), (2, 130), (3, 40)])
def test_parabolic_orders(m, index):
    """Stabilizer of an m-plane has index = number of m-planes."""
    gens = parabolic_generators(4, 3, m)
    assert gens.preserves_flag()
    assert _perm_group(gens, 3).order() * index == 24261120


@pytest.mark.parametrize("n,p", [(2, 5), (3, 2), (3, 3)])
def test_gl_orders_small(n, p):
    assert _perm_group(parabolic_generators(n, p, n), p).order() == _gl_order(n, p)


def test_generator_examples():
    g = parabolic_generators(1, 3, 1)
    assert [x.tolist() for x in g] == [[[2]]]
    with pytest.raises(UsageError):
        parabolic_generators(4, 3, 0)
    for g in parabolic_generators(4, 5, 2):
        assert rank(g) == 4


def test_induced_lambda2_examples():
    f = GF(3)
    assert induced_lambda2(MatFp.identity(4, f)) == MatFp.identity(6, f)
    d = MatFp(np.diag([2, 1, 1, 1]), f)
    assert induced_lambda2(d) == MatFp(np.diag([2, 2, 2, 1, 1, 1]), f)
    g = elementary(4, 1, 0, 3)  # e1 -> e1 + e2
    lam = induced_lambda2(g).tolist()
    # columns: images of e12, e13, e14, e23, e24, e34
    assert [r[0] for r in lam] == [1, 0, 0, 0, 0, 0]
    assert [r[1] for r in lam] == [0, 1, 0, 1, 0, 0]
    assert [r[2] for r in lam] == [0, 0, 1, 0, 1, 0]
    with pytest.raises(DomainError):
        induced_lambda2(MatFp.zeros(4, 4, f))


def _random_invertible(rng, n, f):
    while True:
        a = MatFp(rng.integers(0, f.q, (n, n)), f)
        if rank(a) == n:
            return a


def test_induced_gamma_examples():
    f = GF(3)
    for k in range(4):
        assert induced_gamma(MatFp.identity(3, f), k) == MatFp.identity(len(gamma_basis(3, k)), f)
        assert induced_gamma(MatFp.identity(3, f).scale(2), k) == MatFp.identity(len(gamma_basis(3, k)), f).scale(pow(2, k, 3))


@pytest.mark.parametrize("q", [3, 4])
def test_induced_gamma_functorial(q):
    from cy3.gf import field_of_order

    f = field_of_order(q)
    rng = np.random.default_rng(q)
    for _ in range(5):
        a, b = _random_invertible(rng, 3, f), _random_invertible(rng, 3, f)
        assert induced_gamma(a @ b, 3) == induced_gamma(a, 3) @ induced_gamma(b, 3)


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.integers(0, 4), st.integers(0, 2**31))
def test_induced_gamma_on_divided_powers(v, k, seed):
    f = GF(3)
    h = _random_invertible(np.random.default_rng(seed), 3, f)
    hv = (h @ MatFp([[x] for x in v], f)).data[:, 0].tolist()
    lhs = induced_gamma(h, k) @ MatFp([[c] for c in divided_power_eval(v, k, f).to_vector()], f)
    assert lhs.data[:, 0].tolist() == divided_power_eval(hv, k, f).to_vector()


def test_invariant_subspace_trivial():
    f = GF(3)
    basis = invariant_subspace([MatFp.identity(3, f)], lambda g: induced_gamma(g, 2))
    assert basis == MatFp.identity(6, f)


@pytest.mark.parametrize("k,dim", [(2, 1), (4, 2)])
def test_invariants_generic_route_p3(k, dim):
    f = GF(3)
    gens = parabolic_generators(4, 3, 2)
    inv = invariant_subspace(gens, lambda g: induced_gamma(induced_lambda2(g), k))
    assert inv.rows == dim
    plane = divided_power_eval([1, 0, 0, 0, 0, 0], k, f).to_vector()
    assert in_row_space(plane, inv)
    if k == 2:
        unit = [0] * len(gamma_basis(6, 2))
        unit[basis_index(6, 2)[(2, 0, 0, 0, 0, 0)]] = 1
        assert inv.tolist() == [unit]
    else:
        assert in_row_space(copair_vector(2, f).to_vector(), inv)
    # the fast route agrees exactly (same canonical basis)
    lam = [induced_lambda2(g) for g in torus_elements(4, 3) + list(gens)]
    assert gamma_invariants(lam, k) == inv


@pytest.mark.parametrize("p", [3, 5])
def test_prop_invariants(p):
    r = prop_invariants_report(p, threads=2)
    assert r["dims"] == (1, 2)
    assert r["low"]["contains_gamma_V1"] and r["high"]["contains_gamma_V1"]
    assert r["high"]["contains_copairing"]
    assert r["low"]["spanned_by_expected"] and r["high"]["spanned_by_expected"]


def test_prop_invariants_rejects():
    with pytest.raises(UsageError):
        prop_invariants_report(11)


# -- lifting mod p^2 ---------------------------------------------------------------------------


def _naive_power_mod(m, e, mod):
    """Independent oracle: python-int matrix power."""
    n = len(m)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(e):
        out = [[sum(out[i][k] * m[k][j] for k in range(n)) % mod for j in range(n)] for i in range(n)]
    return out


def _e12(n):
    N = np.zeros((n, n), dtype=np.int64)
    N[0, 1] = 1
    return N


def test_lift_examples():
    P = np.arange(9).reshape(3, 3)
    assert lift_obstruction(np.zeros((3, 3), dtype=np.int64), P, 3).tolist() == np.eye(3, dtype=int).tolist()
    out = lift_obstruction(_e12(2), np.zeros((2, 2), dtype=np.int64), 3)
    assert out.tolist() == [[1, 3], [0, 1]]
    with pytest.raises(DomainError):
        lift_obstruction(np.eye(2, dtype=np.int64), np.zeros((2, 2), dtype=np.int64), 3)
    with pytest.raises(UsageError):
        lift_obstruction(_e12(2), np.zeros((2, 2), dtype=np.int64), 2)


@given(st.integers(2, 6), st.sampled_from([3, 5, 7]), st.integers(0, 2**31))
def test_lift_matches_naive_power(n, p, seed):
    rng = np.random.default_rng(seed)
    P = rng.integers(0, p * p, (n, n))
    N = _e12(n)
    base = ((np.eye(n, dtype=np.int64) + N + p * P) % (p * p)).tolist()
    assert lift_obstruction(N, P, p).tolist() == _naive_power_mod(base, p, p * p)


@given(st.integers(2, 6), st.sampled_from([5, 7, 11]), st.integers(0, 2**31))
def test_lift_is_I_plus_pN_for_p_at_least_5(n, p, seed):
    rng = np.random.default_rng(seed)
    P = rng.integers(0, p * p, (n, n))
    N = _e12(n)
    assert lift_obstruction(N, P, p).tolist() == ((np.eye(n, dtype=np.int64) + p * N) % (p * p)).tolist()


@given(st.integers(2, 6), st.integers(0, 2**31))
def test_lift_p3_has_NPN_correction(n, seed):
    """For p = 3 the cube is I + 3(N + NPN) mod 9, so I + 3N holds exactly when P_21 = 0 mod 3."""
    rng = np.random.default_rng(seed)
    P = rng.integers(0, 9, (n, n))
    N = _e12(n)
    out = lift_obstruction(N, P, 3)
    assert out.tolist() == ((np.eye(n, dtype=np.int64) + 3 * (N + N @ P @ N)) % 9).tolist()
    assert (out == (np.eye(n, dtype=np.int64) + 3 * N) % 9).all() == (P[1, 0] % 3 == 0)


def test_lift_p3_can_be_identity():
    P = np.array([[0, 0], [2, 0]])
    assert lift_obstruction(_e12(2), P, 3).tolist() == [[1, 0], [0, 1]]


@pytest.mark.parametrize("q", [3, 4, 5])
def test_induced_lambda2_multiplicative(q):
    from cy3.gf import field_of_order

    f = field_of_order(q)
    rng = np.random.default_rng(20 + q)
    for _ in range(10):
        a, b = _random_invertible(rng, 4, f), _random_invertible(rng, 4, f)
        assert induced_lambda2(a @ b) == induced_lambda2(a) @ induced_lambda2(b)


def test_invariants_independent_of_generator_order():
    gens = list(parabolic_generators(4, 3, 2))
    rep = lambda g: induced_gamma(induced_lambda2(g), 4)  # noqa: E731
    ref = invariant_subspace(gens, rep)
    rng = np.random.default_rng(0)
    for _ in range(3):
        order = rng.permutation(len(gens))
        assert invariant_subspace([gens[i] for i in order], rep) == ref
        lam = [induced_lambda2(gens[i]) for i in order] + [induced_lambda2(t) for t in torus_elements(4, 3)]
        assert gamma_invariants(lam, 4) == ref
