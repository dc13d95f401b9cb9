"""Sparse polynomials over F_p, Moore determinants and the derivation
D = sum_i x_i^p d/dx_i.

Convention for the determinants: with exponents E = {p^0, ..., p^n}, the
polynomial ``moore_det(n, i, p)`` is the n x n determinant whose rows are
``(x_1^(p^e), ..., x_n^(p^e))`` for ``e`` in ``{0..n} - {i}``, listed in
decreasing ``e``.  The top one (``i = n``) is the classical Moore determinant.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from .errors import UsageError
from .gf import is_prime
from .multilinear import perm_sign

__all__ = ["SparsePoly", "moore_det", "apply_D", "dickson_report"]


class SparsePoly:
    """Polynomial in ``nvars`` variables over F_p; terms map exponent tuples to residues."""

    __slots__ = ("nvars", "p", "terms")

    def __init__(self, nvars: int, p: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        self.p = p
        clean: dict[tuple[int, ...], int] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent vector has the wrong length")
            c = (clean.get(e, 0) + c) % p
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.terms = clean

    @classmethod
    def var(cls, i: int, nvars: int, p: int, power: int = 1) -> SparsePoly:
        e = [0] * nvars
        e[i] = power
        return cls(nvars, p, {tuple(e): 1})

    @classmethod
    def const(cls, c: int, nvars: int, p: int) -> SparsePoly:
        return cls(nvars, p, {(0,) * nvars: c})

    def _check(self, other: SparsePoly) -> None:
        if not isinstance(other, SparsePoly) or other.nvars != self.nvars or other.p != self.p:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: SparsePoly) -> SparsePoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.nvars, self.p, out)

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.nvars, self.p, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other) -> SparsePoly:
        if isinstance(other, int):
            return SparsePoly(self.nvars, self.p, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % self.p
        return SparsePoly(self.nvars, self.p, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        result = SparsePoly.const(1, self.nvars, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def frobenius(self) -> SparsePoly:
        """f^p, computed termwise (valid in characteristic p)."""
        p = self.p
        return SparsePoly(self.nvars, p, {tuple(a * p for a in e): pow(c, p, p) for e, c in self.terms.items()})

    def diff(self, i: int) -> SparsePoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return SparsePoly(self.nvars, self.p, out)

    def swap(self, i: int, j: int) -> SparsePoly:
        out = {}
        for e, c in self.terms.items():
            d = list(e)
            d[i], d[j] = d[j], d[i]
            out[tuple(d)] = c
        return SparsePoly(self.nvars, self.p, out)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def divmod_exact(self, other: SparsePoly) -> SparsePoly | None:
        """Quotient if ``other`` divides ``self`` exactly, else None.

        Long division by leading terms in grevlex order.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        lead_e = max(other.terms, key=_grevlex_key)
        lead_inv = pow(other.terms[lead_e], p - 2, p)
        rem = self
        quot: dict[tuple[int, ...], int] = {}
        while not rem.is_zero():
            e = max(rem.terms, key=_grevlex_key)
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if min(shift) < 0:
                return None
            c = rem.terms[e] * lead_inv % p
            quot[shift] = (quot.get(shift, 0) + c) % p
            rem = rem - SparsePoly(self.nvars, p, {shift: c}) * other
        return SparsePoly(self.nvars, p, quot)

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.p, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"x{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def _grevlex_key(e: tuple[int, ...]):
    return (sum(e), tuple(-a for a in reversed(e)))


def _det(matrix: list[list[SparsePoly]]) -> SparsePoly:
    n = len(matrix)
    first = matrix[0][0]
    total = SparsePoly(first.nvars, first.p)
    for perm in itertools.permutations(range(n)):
        term = SparsePoly.const(perm_sign(perm), first.nvars, first.p)
        for r, c in enumerate(perm):
            term = term * matrix[r][c]
        total = total + term
    return total


def _moore_from_exponents(n: int, exps: list[int], p: int) -> SparsePoly:
    rows = [[SparsePoly.var(j, n, p, p**e) for j in range(n)] for e in sorted(exps, reverse=True)]
    return _det(rows)


def moore_det(n: int, i: int, p: int) -> SparsePoly:
    """Determinant with rows x^(p^e), e in {0, ..., n} minus {i}, decreasing e."""
    if n < 2:
        raise UsageError("n must be at least 2")
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    if not 0 <= i <= n:
        raise UsageError(f"i must lie in [0, {n}]")
    return _moore_from_exponents(n, [e for e in range(n + 1) if e != i], p)


def apply_D(f: SparsePoly) -> SparsePoly:
    """sum_i x_i^p df/dx_i."""
    out = SparsePoly(f.nvars, f.p)
    for i in range(f.nvars):
        d = f.diff(i)
        if not d.is_zero():
            out = out + SparsePoly.var(i, f.nvars, f.p, f.p) * d
    return out


def dickson_report(n: int, p: int) -> dict:
    """D kills every moore_det(n, i) with i != 1 and sends moore_det(n, 1) to a
    sign times the p-th power of the top Moore determinant."""
    top = moore_det(n, n, p)
    target = top.frobenius()
    vanishing = {}
    for i in range(n + 1):
        if i != 1:
            vanishing[i] = apply_D(moore_det(n, i, p)).is_zero()
    image = apply_D(moore_det(n, 1, p))
    if image == target:
        sign = 1
    elif image == -target:
        sign = -1
    else:
        sign = 0
    quotients = {}
    for i in range(1, n):
        q = moore_det(n, i, p).divmod_exact(top)
        quotients[i] = q is not None and q * top == moore_det(n, i, p)
    return {
        "n": n,
        "p": p,
        "convention": "rows x^(p^e), e in {0..n} minus {i}, decreasing e; top = omit e = n",
        "vanishing": vanishing,
        "all_vanish": all(vanishing.values()),
        "sign": sign,
        "image_matches": sign != 0,
        "top_moore": str(top),
        "divisible_by_top": quotients,
    }
