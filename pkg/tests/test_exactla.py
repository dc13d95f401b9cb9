from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cy3.exactla import (
    MatFp,
    common_kernel,
    in_row_space,
    inverse,
    kernel_basis,
    kron,
    left_kernel,
    rank,
    rref_rank,
    row_space,
    same_row_space,
)
from cy3.gf import GF


def _span_size_rank(rows, q, field):
    """Oracle rank over F_q: |row span| = q^rank, by brute-force enumeration."""
    span = set()
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        v = [0] * len(rows[0])
        for c, r in zip(coeffs, rows):
            v = [field.add(x, field.mul(c, y)) for x, y in zip(v, r)]
        span.add(tuple(v))
    r = 0
    while q**r < len(span):
        r += 1
    return r


def matrices(q, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2)])
@given(data=st.data())
def test_rank_matches_span_oracle(p, m, data):
    f = GF(p, m)
    rows = data.draw(matrices(f.q, 3, 4))
    assert rank(MatFp(rows, f)) == _span_size_rank(rows, f.q, f)


@given(matrices(5, 5, 5))
def test_kernel_and_rref(rows):
    f = GF(5)
    m = MatFp(rows, f)
    r, rk, piv = rref_rank(m)
    r2, rk2, piv2 = rref_rank(r)
    assert r2 == r and rk2 == rk and piv2 == piv
    k = kernel_basis(m)
    assert k.rows == m.cols - rk
    assert (m @ k.T).is_zero()
    assert rank(k) == k.rows
    lk = left_kernel(m)
    assert (lk @ m).is_zero() and lk.rows == m.rows - rk
    assert same_row_space(row_space(m), m)


def test_examples():
    f = GF(3)
    for n in (1, 3, 5):
        r, rk, piv = rref_rank(MatFp.identity(n, f))
        assert r == MatFp.identity(n, f) and rk == n and piv == list(range(n))
        assert kernel_basis(MatFp.identity(n, f)).rows == 0
    r, rk, piv = rref_rank(MatFp.zeros(2, 3, f))
    assert r.is_zero() and rk == 0 and piv == []
    assert kernel_basis(MatFp.zeros(2, 3, f)).rows == 3
    assert kron(MatFp.identity(2, f), MatFp.identity(3, f)) == MatFp.identity(6, f)
    a = MatFp([[1, 2], [0, 1]], f)
    b = MatFp([[1, 0, 2], [0, 1, 1], [1, 1, 0]], f)
    assert kron(a, b).shape == (6, 6)


@pytest.mark.parametrize("q", [3, 4])
def test_kron_rank_law(q):
    from cy3.gf import field_of_order

    f = field_of_order(q)
    rng = np.random.default_rng(7)
    for _ in range(25):
        a = MatFp(rng.integers(0, q, (3, 3)), f)
        b = MatFp(rng.integers(0, q, (3, 3)), f)
        assert rank(kron(a, b)) == rank(a) * rank(b)


def test_kron_matches_numpy_over_prime_field():
    f = GF(7)
    rng = np.random.default_rng(1)
    a = rng.integers(0, 7, (2, 3))
    b = rng.integers(0, 7, (3, 2))
    assert kron(MatFp(a, f), MatFp(b, f)).tolist() == (np.kron(a, b) % 7).tolist()


def test_matmul_matches_integer_product():
    f = GF(101)
    rng = np.random.default_rng(3)
    a = rng.integers(0, 101, (20, 30))
    b = rng.integers(0, 101, (30, 10))
    assert (MatFp(a, f) @ MatFp(b, f)).tolist() == ((a @ b) % 101).tolist()


@pytest.mark.parametrize("q", [3, 9])
def test_inverse(q):
    from cy3.gf import field_of_order

    f = field_of_order(q)
    rng = np.random.default_rng(q)
    done = 0
    while done < 10:
        a = MatFp(rng.integers(0, q, (4, 4)), f)
        if rank(a) < 4:
            with pytest.raises(ValueError):
                inverse(a)
            continue
        assert a @ inverse(a) == MatFp.identity(4, f)
        done += 1


def test_text_roundtrip():
    for f in (GF(3), GF(2, 2)):
        m = MatFp([[0, 1, 2], [2, 1, 0]], f)
        text = m.to_text()
        assert text.splitlines()[0] == f"2 3 {f.q}"
        assert MatFp.from_text(text) == m


def test_immutable():
    m = MatFp.identity(2, 3)
    with pytest.raises((AttributeError, ValueError)):
        m.data[0, 0] = 2


def test_common_kernel_and_membership():
    f = GF(3)
    a = MatFp([[1, 0, 0], [0, 0, 0]], f)
    b = MatFp([[0, 1, 0]], f)
    k = common_kernel([a, b])
    assert k.tolist() == [[0, 0, 1]]
    assert in_row_space([0, 0, 2], k)
    assert not in_row_space([1, 0, 0], k)


def test_elimination_deterministic():
    f = GF(3)
    rng = np.random.default_rng(9)
    a = MatFp(rng.integers(0, 3, (40, 60)), f)
    first = rref_rank(a)
    for _ in range(3):
        again = rref_rank(MatFp(a.tolist(), f))
        assert again[0] == first[0] and again[1:] == first[1:]
        assert kernel_basis(a) == kernel_basis(MatFp(a.tolist(), f))
