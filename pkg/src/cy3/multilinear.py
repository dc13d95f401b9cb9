"""Divided powers, exterior powers and symmetric powers over finite fields.

Monomial bases of Gamma^k(V) and S^k(V) are exponent vectors listed in
descending graded reverse-lexicographic order, e.g. for dim 2, k 2:
``(2, 0), (1, 1), (0, 2)``.  The basis vector of Gamma^k(V) with exponent
vector ``a`` is ``gamma_{a_1}(e_1) ... gamma_{a_d}(e_d)`` and pairs with the
monomial ``x^a`` of S^k(V^*) to 1 (and to 0 with every other monomial).

Exterior bases are increasing index tuples in lexicographic order, so
Lambda^2 of a 4-space is ordered ``e12 < e13 < e14 < e23 < e24 < e34``.
All matrices act on column vectors: column j is the image of basis vector j.
"""

from __future__ import annotations

import functools
import itertools
import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exactla import MatFp, as_field, rank
from .gf import FiniteField

__all__ = [
    "MultiIndex",
    "gamma_basis",
    "basis_index",
    "lambda_basis",
    "lucas_binom",
    "GammaElem",
    "SymPoly",
    "divided_power_eval",
    "dp_mul",
    "dp_gamma",
    "contract_matrix",
    "sym_mult_matrix",
    "split_matrix",
    "frobenius_matrix",
    "copair_vector",
    "wedge_coords",
    "plucker_gamma",
    "plucker_quadric",
    "perm_sign",
]

MultiIndex = tuple  # exponent vector, a tuple of non-negative ints


# -- bases -------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def gamma_basis(dim: int, k: int) -> tuple[MultiIndex, ...]:
    """All exponent vectors of length ``dim`` and degree ``k``, grevlex descending."""
    if dim < 1 or k < 0:
        raise ValueError("need dim >= 1 and k >= 0")
    out = []
    # stars and bars: choose dim-1 bar positions among k+dim-1 slots
    for bars in itertools.combinations(range(k + dim - 1), dim - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(k + dim - 2 - prev)
        out.append(tuple(exps))
    out.sort(key=lambda a: a[::-1])
    return tuple(out)


@functools.lru_cache(maxsize=None)
def basis_index(dim: int, k: int) -> dict[MultiIndex, int]:
    return {a: i for i, a in enumerate(gamma_basis(dim, k))}


@functools.lru_cache(maxsize=None)
def lambda_basis(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Increasing m-subsets of range(n) in lexicographic order."""
    return tuple(itertools.combinations(range(n), m))


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def lucas_binom(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas's theorem."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        result = result * math.comb(ni, ki) % p
    return result


# -- elements ----------------------------------------------------------------


class _HomogElem:
    """Shared storage for homogeneous elements keyed by exponent vectors."""

    __slots__ = ("dim", "degree", "field", "coeffs")

    def __init__(self, dim: int, degree: int, field, coeffs: Mapping[MultiIndex, int] | None = None):
        self.dim = dim
        self.degree = degree
        self.field = as_field(field)
        clean: dict[MultiIndex, int] = {}
        f = self.field
        for a, c in (coeffs or {}).items():
            a = tuple(int(x) for x in a)
            if len(a) != dim or sum(a) != degree or min(a, default=0) < 0:
                raise ValueError(f"index {a} does not have dim {dim} and degree {degree}")
            c = int(c)
            c = f.from_int(c) if f.m == 1 else c
            if c:
                clean[a] = f.add(clean.get(a, 0), c)
                if not clean[a]:
                    del clean[a]
        self.coeffs = clean

    def _same(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError("incompatible element types")
        if other.field is not self.field or other.dim != self.dim:
            raise ValueError("elements live in different spaces")

    def __add__(self, other):
        self._same(other)
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        f = self.field
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            s = f.add(out.get(a, 0), c)
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return type(self)(self.dim, self.degree, f, out)

    def scale(self, c: int):
        f = self.field
        return type(self)(self.dim, self.degree, f, {a: f.mul(c, v) for a, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(self.field.neg(1))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.field is other.field
            and self.dim == other.dim
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_vector(self) -> list[int]:
        return [self.coeffs.get(a, 0) for a in gamma_basis(self.dim, self.degree)]

    @classmethod
    def from_vector(cls, vec: Sequence[int], dim: int, degree: int, field):
        basis = gamma_basis(dim, degree)
        if len(vec) != len(basis):
            raise ValueError("vector length does not match the basis")
        return cls(dim, degree, field, {a: int(c) for a, c in zip(basis, vec) if int(c)})

    def to_lines(self) -> str:
        """One ``a_1 ... a_d : c`` line per nonzero term, in basis order."""
        f = self.field
        lines = []
        for a in gamma_basis(self.dim, self.degree):
            c = self.coeffs.get(a)
            if c:
                lines.append(" ".join(map(str, a)) + " : " + f.format(c))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_lines(cls, text: str, dim: int, degree: int, field):
        f = as_field(field)
        coeffs = {}
        for ln in text.splitlines():
            if not ln.strip():
                continue
            left, right = ln.split(":")
            coeffs[tuple(int(x) for x in left.split())] = f.parse(right.strip())
        return cls(dim, degree, f, coeffs)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, degree={self.degree}, terms={len(self.coeffs)})"


class GammaElem(_HomogElem):
    """Homogeneous element of the divided power algebra Gamma(V)."""

    __slots__ = ()

    def __mul__(self, other):
        return dp_mul(self, other)

    @classmethod
    def unit(cls, dim: int, field) -> GammaElem:
        return cls(dim, 0, field, {(0,) * dim: 1})

    @classmethod
    def basis_vector(cls, a: MultiIndex, field) -> GammaElem:
        return cls(len(a), sum(a), field, {tuple(a): 1})


class SymPoly(_HomogElem):
    """Homogeneous polynomial, an element of S^n(V)."""

    __slots__ = ()

    def __call__(self, v: Sequence[int]) -> int:
        f = self.field
        total = 0
        for a, c in self.coeffs.items():
            term = c
            for x, e in zip(v, a):
                if e:
                    term = f.mul(term, f.pow(int(x), e))
            total = f.add(total, term)
        return total

    def __mul__(self, other):
        self._same(other)
        f = self.field
        out: dict[MultiIndex, int] = {}
        for a, c in self.coeffs.items():
            for b, d in other.coeffs.items():
                s = tuple(x + y for x, y in zip(a, b))
                out[s] = f.add(out.get(s, 0), f.mul(c, d))
        return SymPoly(self.dim, self.degree + other.degree, f, out)


def plucker_quadric(field) -> SymPoly:
    """x01 x23 - x02 x13 + x03 x12 on Lambda^2 of a 4-space (coords in lambda_basis order)."""
    f = as_field(field)
    return SymPoly(
        6,
        2,
        f,
        {(1, 0, 0, 0, 0, 1): 1, (0, 1, 0, 0, 1, 0): f.neg(1), (0, 0, 1, 1, 0, 0): 1},
    )


# -- divided power operations -----------------------------------------------


def divided_power_eval(v: Sequence[int], k: int, field) -> GammaElem:
    """gamma_k(v): the coefficient at ``a`` is the plain monomial prod v_i^a_i."""
    f = as_field(field)
    v = [int(x) for x in v]
    dim = len(v)
    powers = [[f.pow(x, e) for e in range(k + 1)] for x in v]
    coeffs = {}
    for a in gamma_basis(dim, k):
        c = 1
        for i, e in enumerate(a):
            if e:
                c = f.mul(c, powers[i][e])
                if not c:
                    break
        if c:
            coeffs[a] = c
    return GammaElem(dim, k, f, coeffs)


def dp_mul(x: GammaElem, y: GammaElem) -> GammaElem:
    """Product in Gamma(V): gamma_a gamma_b = prod_i C(a_i + b_i, a_i) gamma_{a+b}."""
    x._same(y)
    f = x.field
    p = f.p
    out: dict[MultiIndex, int] = {}
    for a, c in x.coeffs.items():
        for b, d in y.coeffs.items():
            coef = 1
            for ai, bi in zip(a, b):
                if ai and bi:
                    coef = coef * lucas_binom(ai + bi, ai, p) % p
                    if not coef:
                        break
            if not coef:
                continue
            s = tuple(ai + bi for ai, bi in zip(a, b))
            out[s] = f.add(out.get(s, 0), f.mul(f.mul(c, d), coef))
    return GammaElem(x.dim, x.degree + y.degree, f, out)


def _gamma_of_basis_pair(u: int, v: int, i: int, dim: int, f: FiniteField) -> GammaElem:
    """gamma_i(gamma_1(e_u) gamma_1(e_v)) = i! gamma_i(e_u) gamma_i(e_v) for u != v."""
    coef = f.from_int(math.factorial(i))
    a = [0] * dim
    a[u] += i
    a[v] += i
    return GammaElem(dim, 2 * i, f, {tuple(a): coef} if coef else {})


def _gamma_of_square(u: int, i: int, dim: int, f: FiniteField) -> GammaElem:
    """gamma_i(gamma_2(e_u)) = (2i-1)!! gamma_{2i}(e_u)."""
    coef = 1
    for odd in range(1, 2 * i, 2):
        coef *= odd
    a = [0] * dim
    a[u] = 2 * i
    coef = f.from_int(coef)
    return GammaElem(dim, 2 * i, f, {tuple(a): coef} if coef else {})


def dp_gamma(x: GammaElem, k: int) -> GammaElem:
    """gamma_k of a homogeneous degree-2 element of Gamma(V).

    Uses gamma_k(y + z) = sum_i gamma_i(y) gamma_{k-i}(z), gamma_i(c m) =
    c^i gamma_i(m) and the closed forms for the monomials gamma_1(e_u)gamma_1(e_v)
    and gamma_2(e_u).
    """
    if x.degree != 2:
        raise ValueError("dp_gamma is implemented for degree-2 elements only")
    f, dim = x.field, x.dim
    # gamma_j of each monomial term, j = 0..k
    per_term = []
    for a, c in x.coeffs.items():
        support = [i for i, e in enumerate(a) if e]
        seq = []
        for j in range(k + 1):
            if j == 0:
                g = GammaElem.unit(dim, f)
            elif len(support) == 2:
                g = _gamma_of_basis_pair(support[0], support[1], j, dim, f)
            else:
                g = _gamma_of_square(support[0], j, dim, f)
            seq.append(g.scale(f.pow(c, j)))
        per_term.append(seq)
    # fold: acc[j] = gamma_j(sum of the terms processed so far)
    acc = [GammaElem.unit(dim, f)] + [GammaElem(dim, 2 * j, f) for j in range(1, k + 1)]
    for seq in per_term:
        new = []
        for j in range(k + 1):
            total = GammaElem(dim, 2 * j, f)
            for i in range(j + 1):
                if acc[j - i].coeffs and seq[i].coeffs:
                    total = total + dp_mul(acc[j - i], seq[i])
            new.append(total)
        acc = new
    return acc[k]


# -- structure maps as matrices ----------------------------------------------


def contract_matrix(q: SymPoly, k: int) -> MatFp:
    """Contraction by q: Gamma^k -> Gamma^{k-n}, gamma_a -> sum_b q_b gamma_{a-b}."""
    n = q.degree
    if k < n:
        raise ValueError(f"cannot contract Gamma^{k} by a form of degree {n}")
    f = q.field
    src = gamma_basis(q.dim, k)
    tgt = basis_index(q.dim, k - n)
    m = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for j, a in enumerate(src):
        for b, c in q.coeffs.items():
            d = tuple(ai - bi for ai, bi in zip(a, b))
            if min(d) >= 0:
                i = tgt[d]
                m[i, j] = f.add(int(m[i, j]), c)
    return MatFp(m, f)


def sym_mult_matrix(q: SymPoly, m: int) -> MatFp:
    """Multiplication by q as a map S^m -> S^{m+n} on monomial bases."""
    f = q.field
    src = gamma_basis(q.dim, m)
    tgt = basis_index(q.dim, m + q.degree)
    out = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for j, a in enumerate(src):
        for b, c in q.coeffs.items():
            i = tgt[tuple(x + y for x, y in zip(a, b))]
            out[i, j] = f.add(int(out[i, j]), c)
    return MatFp(out, f)


def split_matrix(dim: int, i: int, j: int, field) -> MatFp:
    """Splitting operator Gamma^{i+j} -> Gamma^i (x) Gamma^j.

    Target index of ``gamma_b (x) gamma_c`` is ``idx_i(b) * N_j + idx_j(c)``,
    matching :func:`cy3.exactla.kron`.
    """
    f = as_field(field)
    if i < 0 or j < 0:
        raise ValueError("degrees must be non-negative")
    src = gamma_basis(dim, i + j)
    bi = gamma_basis(dim, i)
    ij = basis_index(dim, j)
    nj = len(ij)
    m = np.zeros((len(bi) * nj, len(src)), dtype=np.int64)
    for col, a in enumerate(src):
        for r, b in enumerate(bi):
            c = tuple(x - y for x, y in zip(a, b))
            if min(c) >= 0:
                m[r * nj + ij[c], col] = 1
    return MatFp(m, f)


def frobenius_matrix(dim: int, n: int, field) -> MatFp:
    """Frobenius operator Gamma^{pn} -> Gamma^n: gamma_a -> gamma_{a/p} if p | a, else 0.

    Over a non-prime field the operator is semilinear; the matrix records the
    linear part, which has only 0/1 entries.
    """
    f = as_field(field)
    p = f.p
    if n < 0:
        raise ValueError("n must be non-negative")
    src = gamma_basis(dim, p * n)
    tgt = basis_index(dim, n)
    m = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for col, a in enumerate(src):
        if all(x % p == 0 for x in a):
            m[tgt[tuple(x // p for x in a)], col] = 1
    return MatFp(m, f)


def copair_vector(k: int, field) -> GammaElem:
    """Image of gamma_k(e1^e2^e3^e4) in Gamma^{2k}(Lambda^2 U), dim U = 4.

    gamma_k of c = g(e12)g(e34) - g(e13)g(e24) + g(e14)g(e23), where g is gamma_1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    f = as_field(field)
    c = GammaElem(
        6,
        2,
        f,
        {(1, 0, 0, 0, 0, 1): 1, (0, 1, 0, 0, 1, 0): f.neg(1), (0, 0, 1, 1, 0, 0): 1},
    )
    return dp_gamma(c, k)


# -- Pluecker maps --------------------------------------------------------------


def _det(rows: list[list[int]], f: FiniteField) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return f.sub(f.mul(rows[0][0], rows[1][1]), f.mul(rows[0][1], rows[1][0]))
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for r, c in enumerate(perm):
            term = f.mul(term, rows[r][c])
            if not term:
                break
        if term:
            total = f.add(total, term) if perm_sign(perm) > 0 else f.sub(total, term)
    return total


def wedge_coords(vectors: Sequence[Sequence[int]], field) -> list[int]:
    """Coordinates of v_1 ^ ... ^ v_m in the basis lambda_basis(n, m) (the m x m minors)."""
    f = as_field(field)
    vectors = [[int(x) for x in v] for v in vectors]
    m, n = len(vectors), len(vectors[0])
    return [_det([[v[c] for c in cols] for v in vectors], f) for cols in lambda_basis(n, m)]


def plucker_gamma(basis: Sequence[Sequence[int]] | MatFp, k: int, field=None) -> GammaElem:
    """k'th Pluecker map: gamma_k(Lambda^m U) in Gamma^k(Lambda^m F_q^n)."""
    if isinstance(basis, MatFp):
        field = basis.field if field is None else field
        basis = basis.tolist()
    f = as_field(field)
    if k % (f.q - 1):
        raise ValueError(f"q - 1 = {f.q - 1} does not divide k = {k}")
    if rank(MatFp([list(b) for b in basis], f)) != len(basis):
        raise ValueError("basis vectors are linearly dependent")
    return divided_power_eval(wedge_coords(basis, f), k, f)


def from_integer_vector(vec: Iterable[int], field) -> list[int]:
    f = as_field(field)
    return [f.from_int(int(x)) for x in vec]
