from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st
from sympy import GF as SymGF
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from cy3.gf import GF, FieldElem, field_of_order, is_prime

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 2), (3, 2), (5, 2), (2, 3), (3, 3)]


def _sym_mul(f, a, b):
    """Oracle product via sympy's dense polynomial arithmetic over F_p."""
    mod = list(reversed(f.modulus))
    pa = list(reversed(f.coords(a)))
    pb = list(reversed(f.coords(b)))
    r = gf_rem(gf_mul(pa, pb, f.p, ZZ), mod, f.p, ZZ)
    coords = list(reversed([int(c) % f.p for c in r])) + [0] * f.m
    return f.from_coords(coords[: f.m])


@pytest.mark.parametrize("p,m", FIELDS)
def test_modulus_irreducible(p, m):
    f = GF(p, m)
    assert gf_irreducible_p(list(reversed(f.modulus)), p, ZZ)


@pytest.mark.parametrize("p,m", FIELDS)
def test_multiplication_matches_sympy(p, m):
    f = GF(p, m)
    for a, b in itertools.product(f.elements(), repeat=2):
        assert f.mul(a, b) == _sym_mul(f, a, b)


@pytest.mark.parametrize("p,m", FIELDS)
def test_field_axioms(p, m):
    f = GF(p, m)
    for a in f.nonzero():
        assert f.mul(a, f.inv(a)) == 1
    for a in f.elements():
        assert f.add(a, f.neg(a)) == 0
        assert f.frob(a) == f.pow(a, p)
        # Frobenius has order m
        x = a
        for _ in range(m):
            x = f.frob(x)
        assert x == a


def test_prime_field_against_sympy():
    f = GF(7)
    s = SymGF(7)
    for a, b in itertools.product(range(7), repeat=2):
        assert f.mul(a, b) == int(s(a) * s(b)) % 7
        assert f.add(a, b) == int(s(a) + s(b)) % 7


def test_examples():
    assert GF(3).inv(1) == 1
    assert GF(7).inv(3) == 5
    f4 = GF(2, 2)
    z = f4.gen
    assert f4.pow(z, 3) == 1 and z not in (0, 1)
    assert f4.frob(z) == f4.parse("1+t")
    f9 = GF(3, 2)
    assert f9.modulus == (1, 0, 1)  # t^2 + 1
    for x, y in itertools.product(range(3), repeat=2):
        assert f9.frob(f9.from_coords([x, y])) == f9.from_coords([x, -y])
    for a in range(3):
        assert f9.frob(f9.from_coords([a, 0])) == f9.from_coords([a, 0])


def test_f27_modulus():
    assert GF(3, 3).modulus == (1, 0, 2, 1)  # t^3 + 2t^2 + 1


@pytest.mark.parametrize("n", [0, 1, 4, 6, 9, 15, 25])
def test_composite_rejected(n):
    assert not is_prime(n)
    with pytest.raises(ValueError):
        GF(n)


def test_is_prime_matches_sympy():
    from sympy import isprime

    assert all(is_prime(n) == isprime(n) for n in range(-5, 500))


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)


def test_field_of_order():
    assert field_of_order(4) is GF(2, 2)
    assert field_of_order(27) is GF(3, 3)
    assert field_of_order(7) is GF(7)
    with pytest.raises(ValueError):
        field_of_order(6)


@pytest.mark.parametrize("p,m", FIELDS)
def test_format_parse_roundtrip(p, m):
    f = GF(p, m)
    for a in f.elements():
        assert f.parse(f.format(a)) == a


def test_elem_wrapper():
    f = GF(3, 2)
    t = f.elem(f.gen)
    assert f(3) == f(0)  # integers map through Z -> F_p
    assert t * t == f([-1, 0])
    assert (t / t) == f(1)
    assert t.frobenius() == -t
    with pytest.raises(TypeError):
        _ = t + GF(3)(1)
    assert isinstance(t, FieldElem)


@given(st.sampled_from(FIELDS), st.data())
def test_distributive(pm, data):
    f = GF(*pm)
    a, b, c = (data.draw(st.integers(0, f.q - 1)) for _ in range(3))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.frob(f.mul(a, b)) == f.mul(f.frob(a), f.frob(b))
    assert f.frob(f.add(a, b)) == f.add(f.frob(a), f.frob(b))


ALL_SMALL = [(p, m) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47) for m in (1, 2, 3) if p**m <= 49]


@pytest.mark.parametrize("p,m", ALL_SMALL)
def test_fermat_little(p, m):
    f = GF(p, m)
    assert all(f.pow(a, f.q - 1) == 1 for a in f.nonzero())
    assert all(f.pow(a, f.q) == a for a in f.elements())
