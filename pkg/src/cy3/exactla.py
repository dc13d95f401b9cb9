"""Dense exact linear algebra over small finite fields.

Prime fields take a vectorised ``% p`` path; extension fields go through the
field's addition/multiplication tables.  Elimination always picks the first
nonzero entry of the current column (top to bottom), so every result is a
deterministic function of the input.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gf import GF, FiniteField, field_of_order

__all__ = [
    "MatFp",
    "as_field",
    "rref_rank",
    "kernel_basis",
    "left_kernel",
    "kron",
    "rank",
    "row_space",
    "same_row_space",
    "in_row_space",
    "inverse",
    "common_kernel",
]


def as_field(field) -> FiniteField:
    if isinstance(field, FiniteField):
        return field
    return GF(int(field))


class MatFp:
    """Matrix over F_q with entries stored as encoded integers.

    The underlying array is read-only; every operation returns a new matrix.
    """

    __slots__ = ("data", "field")

    def __init__(self, data, field):
        field = as_field(field)
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if field.m == 1:
            arr %= field.p
        elif arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError("entries are not valid field encodings")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("MatFp is immutable")

    # -- construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int, field) -> MatFp:
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, n: int, field) -> MatFp:
        return cls(np.eye(n, dtype=np.int64), field)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], field, cols: int | None = None) -> MatFp:
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(0, cols or 0, field)
        return cls(rows, field)

    # -- basic properties ---------------------------------------------------
    @property
    def p(self) -> int:
        return self.field.p

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, idx):
        out = self.data[idx]
        if isinstance(out, np.ndarray) and out.ndim == 2:
            return MatFp(out, self.field)
        if isinstance(out, np.ndarray):
            return out.copy()
        return int(out)

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other):
        if not isinstance(other, MatFp):
            return NotImplemented
        return (
            self.field is other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field.q, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"MatFp({self.rows}x{self.cols} over {self.field!r})"

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: MatFp) -> None:
        if not isinstance(other, MatFp):
            raise TypeError("expected a MatFp")
        if other.field is not self.field:
            raise ValueError(f"modulus mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: MatFp) -> MatFp:
        self._check(other)
        if self.field.m == 1:
            return MatFp(self.data + other.data, self.field)
        return MatFp(self.field.add_table[self.data, other.data], self.field)

    def __neg__(self) -> MatFp:
        if self.field.m == 1:
            return MatFp(-self.data, self.field)
        return MatFp(self.field.neg_table[self.data], self.field)

    def __sub__(self, other: MatFp) -> MatFp:
        return self + (-other)

    def scale(self, c: int) -> MatFp:
        """Multiply every entry by the encoded scalar c."""
        if self.field.m == 1:
            return MatFp(self.data * c, self.field)
        return MatFp(self.field.mul_table[c][self.data], self.field)

    def __matmul__(self, other: MatFp) -> MatFp:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        if f.m == 1:
            return MatFp(_matmul_mod(self.data, other.data, f.p), f)
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for k in range(self.cols):
            term = f.mul_table[self.data[:, k][:, None], other.data[k][None, :]]
            out = f.add_table[out, term]
        return MatFp(out, f)

    def transpose(self) -> MatFp:
        return MatFp(self.data.T, self.field)

    @property
    def T(self) -> MatFp:
        return self.transpose()

    def vstack(self, *others: MatFp) -> MatFp:
        for o in others:
            self._check(o)
        return MatFp(np.vstack([self.data] + [o.data for o in others]), self.field)

    def hstack(self, *others: MatFp) -> MatFp:
        for o in others:
            self._check(o)
        return MatFp(np.hstack([self.data] + [o.data for o in others]), self.field)

    def is_zero(self) -> bool:
        return not self.data.any()

    # -- text format ----------------------------------------------------------
    def to_text(self) -> str:
        """First line "rows cols q", then one line of residues per row."""
        lines = [f"{self.rows} {self.cols} {self.field.q}"]
        lines.extend(" ".join(str(int(x)) for x in row) for row in self.data)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> MatFp:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        rows, cols, q = (int(x) for x in lines[0].split())
        field = field_of_order(q)
        body = [[int(x) for x in ln.split()] for ln in lines[1 : rows + 1]]
        if len(body) != rows or any(len(r) != cols for r in body):
            raise ValueError("matrix text does not match its header")
        if rows == 0:
            return cls.zeros(0, cols, field)
        return cls(body, field)


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # keep partial sums below 2^63: split the inner dimension into chunks
    inner = a.shape[1]
    chunk = max(1, (2**62) // max(1, (p - 1) ** 2))
    if inner <= chunk:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, inner, chunk):
        out = (out + a[:, s : s + chunk] @ b[s : s + chunk]) % p
    return out


def _rref_array(a: np.ndarray, field: FiniteField) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64, copy=True)
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    prime = field.m == 1
    p = field.p
    inv = field.inv_table
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if prime:
            if lead != 1:
                a[r] = (a[r] * int(inv[lead])) % p
            col = a[:, c].copy()
            col[r] = 0
            rows = np.flatnonzero(col)
            if rows.size:
                a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        else:
            if lead != 1:
                a[r] = field.mul_table[int(inv[lead])][a[r]]
            col = a[:, c].copy()
            col[r] = 0
            rows = np.flatnonzero(col)
            if rows.size:
                prod = field.mul_table[field.neg_table[col[rows]][:, None], a[r][None, :]]
                a[rows] = field.add_table[a[rows], prod]
        pivots.append(c)
        r += 1
    return a, pivots


def rref_rank(m: MatFp) -> tuple[MatFp, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``."""
    r, pivots = _rref_array(m.data, m.field)
    return MatFp(r, m.field), len(pivots), pivots


def rank(m: MatFp) -> int:
    return rref_rank(m)[1]


def kernel_basis(m: MatFp) -> MatFp:
    """Rows spanning {x : m x = 0}.

    One row per free column; on the free columns the basis is the identity
    (free variables taken in increasing column order), which makes it the
    RREF-canonical basis of the kernel.
    """
    r, pivots = _rref_array(m.data, m.field)
    ncols = m.cols
    f = m.field
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, c in enumerate(free):
        basis[i, c] = 1
        for k, pc in enumerate(pivots):
            basis[i, pc] = f.neg_table[r[k, c]] if f.m > 1 else (-r[k, c]) % f.p
    return MatFp(basis, f)


def left_kernel(m: MatFp) -> MatFp:
    """Rows c with c m = 0."""
    return kernel_basis(m.transpose())


def row_space(m: MatFp) -> MatFp:
    """Canonical basis (nonzero RREF rows) of the row space."""
    r, rk, _ = rref_rank(m)
    return r[:rk] if rk else MatFp.zeros(0, m.cols, m.field)


def same_row_space(a: MatFp, b: MatFp) -> bool:
    return a.cols == b.cols and row_space(a) == row_space(b)


def in_row_space(v: Sequence[int] | MatFp, m: MatFp) -> bool:
    vm = v if isinstance(v, MatFp) else MatFp([list(v)], m.field)
    return rank(m.vstack(vm)) == rank(m)


def inverse(m: MatFp) -> MatFp:
    n = m.rows
    if m.cols != n:
        raise ValueError("matrix is not square")
    r, pivots = _rref_array(np.hstack([m.data, np.eye(n, dtype=np.int64)]), m.field)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return MatFp(r[:, n:], m.field)


def kron(a: MatFp, b: MatFp) -> MatFp:
    """Kronecker product; row (i, k) is at index i * b.rows + k."""
    if a.field is not b.field:
        raise ValueError(f"modulus mismatch: {a.field!r} vs {b.field!r}")
    f = a.field
    if f.m == 1:
        return MatFp(np.kron(a.data, b.data), f)
    out = f.mul_table[a.data[:, None, :, None], b.data[None, :, None, :]]
    return MatFp(out.reshape(a.rows * b.rows, a.cols * b.cols), f)


def common_kernel(mats: Sequence[MatFp], start: MatFp | None = None) -> MatFp:
    """Basis of ``{x in span(start) : A x = 0 for all A}``, RREF-canonical.

    The family is processed one matrix at a time, restricting to the kernel
    found so far, so the largest system solved has as many columns as the
    current kernel has rows.
    """
    if not mats and start is None:
        raise ValueError("need at least one matrix or a starting subspace")
    field = (mats[0] if mats else start).field
    n = mats[0].cols if mats else start.cols
    basis = start if start is not None else MatFp.identity(n, field)
    for a in mats:
        if basis.rows == 0:
            break
        images = a @ basis.transpose()  # column j is A applied to basis row j
        coeffs = kernel_basis(images)
        basis = coeffs @ basis
    return row_space(basis) if basis.rows else basis
