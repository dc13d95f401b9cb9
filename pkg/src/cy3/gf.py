"""Small finite fields F_q, q = p^m, with table-driven arithmetic.

Elements of a field are encoded as integers ``v = c_0 + c_1 p + ... + c_{m-1} p^(m-1)``
where ``c_0 + c_1 t + ... `` is the canonical representative modulo the fixed
defining polynomial.  Integers ``0..p-1`` are therefore exactly the prime subfield,
which lets the same integer code paths handle F_p and its extensions.

The quadratic moduli are fixed:

* ``p = 2``: ``t^2 + t + 1``
* odd ``p``: ``t^2 - n`` with ``n`` the least quadratic non-residue mod ``p``

Cubic extensions (only needed for sampling points over F_27 and F_8) use the
lexicographically first irreducible monic cubic.
"""

from __future__ import annotations

import functools
import itertools
import re

import numpy as np

__all__ = ["GF", "FiniteField", "FieldElem", "is_prime", "field_of_order"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _least_nonresidue(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return next(n for n in range(2, p) if n not in squares)


def _has_root(coeffs: tuple[int, ...], p: int) -> bool:
    return any(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Monic defining polynomial, coefficients low degree first."""
    if m == 1:
        return (0, 1)
    if m == 2:
        if p == 2:
            return (1, 1, 1)
        return ((-_least_nonresidue(p)) % p, 0, 1)
    if m == 3:
        # a cubic is irreducible iff it has no root
        for c0, c1, c2 in itertools.product(range(p), repeat=3):
            coeffs = (c0, c1, c2, 1)
            if c0 and not _has_root(coeffs, p):
                return coeffs
    raise ValueError(f"unsupported extension degree {m}")


class FiniteField:
    """The field F_{p^m} for m in {1, 2, 3}.

    Use :func:`GF` rather than the constructor so that equal fields are the
    same object; elements from different field objects never mix.
    """

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m not in (1, 2, 3):
            raise ValueError("only F_p, F_{p^2} and F_{p^3} are supported")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = _default_modulus(p, m)
        q = self.q

        vecs = [self._coords(v) for v in range(q)]
        add = np.empty((q, q), dtype=np.int64)
        mul = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._encode([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                mul[a, b] = self._encode(self._polymul(vecs[a], vecs[b]))
        neg = np.array([self._encode([(-x) % p for x in vecs[a]]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            row = np.nonzero(mul[a] == 1)[0]
            inv[a] = row[0]
        frob = np.array([self._pow_slow(mul, a, p) for a in range(q)], dtype=np.int64)
        for arr in (add, mul, neg, inv, frob):
            arr.flags.writeable = False
        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv
        self.frob_table = frob
        # python-level copies: scalar indexing of numpy arrays is slow
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = neg.tolist()
        self._inv = inv.tolist()
        self._frob = frob.tolist()

    # -- encoding ---------------------------------------------------------
    def _coords(self, v: int) -> list[int]:
        out = []
        for _ in range(self.m):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def _encode(self, coords) -> int:
        v = 0
        for c in reversed(list(coords)):
            v = v * self.p + c
        return v

    def _polymul(self, a, b) -> list[int]:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        # reduce by the monic modulus from the top down
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d] % p
            if c:
                for i, mc in enumerate(self.modulus[:-1]):
                    prod[d - m + i] -= c * mc
            prod[d] = 0
        return [c % p for c in prod[:m]]

    @staticmethod
    def _pow_slow(mul, a, e):
        r = 1
        for _ in range(e):
            r = int(mul[r][a])
        return r

    def coords(self, v: int) -> tuple[int, ...]:
        """Coordinates of an encoded element w.r.t. 1, t, t^2, ..."""
        return tuple(self._coords(v))

    def from_coords(self, coords) -> int:
        coords = list(coords)
        if len(coords) != self.m:
            raise ValueError(f"expected {self.m} coordinates")
        return self._encode([c % self.p for c in coords])

    # -- integer-level arithmetic ---------------------------------------
    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            e >>= 1
        return result

    def frob(self, a: int) -> int:
        return self._frob[a]

    @property
    def gen(self) -> int:
        """Encoding of t, the class of the variable; 1 for a prime field."""
        return self.p if self.m > 1 else 1

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def is_prime_subfield(self, a: int) -> bool:
        return a < self.p

    # -- element objects --------------------------------------------------
    def __call__(self, x) -> FieldElem:
        if isinstance(x, FieldElem):
            if x.field is not self:
                raise TypeError("element belongs to a different field")
            return x
        if isinstance(x, str):
            return FieldElem(self, self.parse(x))
        if isinstance(x, (tuple, list)):
            return FieldElem(self, self.from_coords(x))
        return FieldElem(self, self.from_int(int(x)))

    def elem(self, v: int) -> FieldElem:
        """Wrap an already encoded value."""
        if not 0 <= v < self.q:
            raise ValueError("encoded value out of range")
        return FieldElem(self, v)

    def format(self, v: int) -> str:
        if self.m == 1:
            return str(v)
        terms = []
        for i, c in enumerate(self._coords(v)):
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{i}")
        return "+".join(terms)

    def parse(self, s: str) -> int:
        s = s.replace(" ", "")
        if self.m == 1:
            return int(s) % self.p
        coords = [0] * self.m
        for term in re.split(r"\+(?=[-\d]|t)", s):
            if not term:
                continue
            mt = re.fullmatch(r"(-?\d*)\*?(t(?:\^(\d+))?)?", term)
            if mt is None:
                raise ValueError(f"cannot parse field element {s!r}")
            coef, tpart, power = mt.groups()
            if tpart is None:
                deg = 0
            else:
                deg = int(power) if power else 1
            if coef in ("", "-"):
                c = -1 if coef == "-" else 1
            else:
                c = int(coef)
            coords[deg] += c
        return self.from_coords(coords)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (GF, (self.p, self.m))


def GF(p: int, m: int = 1) -> FiniteField:
    """Return the (cached) field with p^m elements."""
    return _gf_cached(int(p), int(m))


@functools.lru_cache(maxsize=None)
def _gf_cached(p: int, m: int) -> FiniteField:
    return FiniteField(p, m)


def field_of_order(q: int) -> FiniteField:
    """The field with q elements, q = p^m and m <= 3."""
    for m in (1, 2, 3):
        r = round(q ** (1 / m))
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**m == q and is_prime(cand):
                return GF(cand, m)
    raise ValueError(f"no supported field of order {q}")


class FieldElem:
    """An element of a :class:`FiniteField`; immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("field elements are immutable")

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise TypeError(f"cannot mix elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.mul(self.value, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.mul(o, self.field.inv(self.value)))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def frobenius(self) -> FieldElem:
        """x -> x^p."""
        return FieldElem(self.field, self.field.frob(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        if self.value >= self.field.p:
            raise ValueError("element is not in the prime subfield")
        return self.value

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field!r}({self.field.format(self.value)})"
