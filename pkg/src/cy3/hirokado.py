"""Lines of P^3 over finite fields, the Gauss map of the Hirokado vector field,
the d_2 matrix and its kernel, the point/line incidence check, the Hodge
table of the small resolution, and Euler characteristics of forms on
complete intersections.

Pluecker coordinates are the minors ``(p01, p02, p03, p12, p13, p23)`` of a
2 x 4 matrix, in the same order as ``lambda_basis(4, 2)``.  The classical
coordinates ``(q1, ..., q6)`` with quadric ``q1 q2 - q3 q4 + q5 q6`` are

    (q1, q2, q3, q4, q5, q6) = (p01, p23, p02, p13, p03, p12).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .errors import DomainError, UsageError
from .exactla import MatFp, left_kernel, rank, same_row_space
from .gf import GF, FiniteField, field_of_order
from .multilinear import plucker_gamma, wedge_coords

__all__ = [
    "CLASSICAL_TO_MINOR",
    "PluckerPoint",
    "normalize",
    "projective_points",
    "enum_lines",
    "plucker_relation",
    "classical_coords",
    "dl_form",
    "gauss_map",
    "d2_matrices",
    "d2_kernel",
    "incidence_matrix",
    "incidence_check",
    "HODGE_OMEGA1_OF_F",
    "hodge_diamond",
    "bott_chi",
    "euler_sequence_chi",
    "ci_chi",
]

# minor labels in lambda_basis order
MINOR_LABELS = ("01", "02", "03", "12", "13", "23")
# (q1..q6) -> position in the minor vector
CLASSICAL_TO_MINOR = (0, 5, 1, 4, 2, 3)


def normalize(vec: Sequence[int], field: FiniteField) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    vec = [int(x) for x in vec]
    lead = next((x for x in vec if x), None)
    if lead is None:
        raise DomainError("the zero vector is not a projective point")
    if lead == 1:
        return tuple(vec)
    s = field.inv(lead)
    return tuple(field.mul(s, x) for x in vec)


@dataclass(frozen=True)
class PluckerPoint:
    coords: tuple[int, ...]
    field: FiniteField

    @classmethod
    def from_minors(cls, minors: Sequence[int], field: FiniteField) -> PluckerPoint:
        return cls(normalize(minors, field), field)

    @classmethod
    def from_basis(cls, u: Sequence[int], v: Sequence[int], field: FiniteField) -> PluckerPoint:
        return cls.from_minors(wedge_coords([u, v], field), field)

    def labelled(self) -> dict[str, str]:
        return {f"p{lab}": self.field.format(c) for lab, c in zip(MINOR_LABELS, self.coords)}

    def contains(self, x: Sequence[int]) -> bool:
        """Whether the projective point x lies on this line (x ^ line = 0)."""
        f = self.field
        pm = dict(zip(itertools.combinations(range(4), 2), self.coords))
        for i, j, k in itertools.combinations(range(4), 3):
            t = f.sub(f.mul(x[i], pm[j, k]), f.mul(x[j], pm[i, k]))
            if f.add(t, f.mul(x[k], pm[i, j])):
                return False
        return True


def plucker_relation(c: Sequence[int], field: FiniteField) -> int:
    """p01 p23 - p02 p13 + p03 p12."""
    f = field
    t = f.sub(f.mul(c[0], c[5]), f.mul(c[1], c[4]))
    return f.add(t, f.mul(c[2], c[3]))


def classical_coords(c: Sequence[int]) -> tuple[int, ...]:
    return tuple(c[i] for i in CLASSICAL_TO_MINOR)


def dl_form(c: Sequence[int], field: FiniteField, p: int | None = None) -> int:
    """b(x, x^p) = q1 q2^p + q1^p q2 - q3 q4^p - q3^p q4 + q5 q6^p + q5^p q6."""
    f = field
    p = f.p if p is None else p
    q = classical_coords(c)
    total = 0
    for (a, b), sign in (((0, 1), 1), ((2, 3), -1), ((4, 5), 1)):
        t = f.add(f.mul(q[a], f.pow(q[b], p)), f.mul(f.pow(q[a], p), q[b]))
        total = f.add(total, t) if sign > 0 else f.sub(total, t)
    return total


def projective_points(n: int, field: FiniteField) -> list[tuple[int, ...]]:
    """Normalized points of P^{n-1}(F_q) as length-n tuples, in lexicographic order."""
    pts = []
    for lead in range(n):
        for tail in itertools.product(range(field.q), repeat=n - lead - 1):
            pts.append((0,) * lead + (1,) + tail)
    return pts


@lru_cache(maxsize=None)
def enum_lines(q: int) -> tuple[PluckerPoint, ...]:
    """All F_q-lines of P^3 as normalized points of the Pluecker quadric."""
    f = field_of_order(q)
    return tuple(PluckerPoint(c, f) for c in projective_points(6, f) if plucker_relation(c, f) == 0)


def gaussian_binomial_4_2(q: int) -> int:
    return (q**4 - 1) * (q**3 - 1) // ((q**2 - 1) * (q - 1))


def gauss_map(x: Sequence[int], field: FiniteField) -> PluckerPoint:
    """Pluecker point of span(x^p, x) for x a point of P^n over F_{p^m}.

    Raises DomainError when x is F_p-rational (up to scale), where the two rows
    are proportional.
    """
    f = field
    x = [int(v) for v in x]
    xp = [f.frob(v) for v in x]
    minors = wedge_coords([xp, x], f)
    if not any(minors):
        raise DomainError("Gauss map is undefined at F_p-rational points")
    return PluckerPoint.from_minors(minors, f)


# -- the d_2 certificate ------------------------------------------------------------


def d2_matrices(p: int = 3) -> tuple[MatFp, MatFp]:
    """Rows gamma_{2p-2}(l) and gamma_{p-1}(l) for every F_p-line l of P^3."""
    f = GF(p)
    lines = enum_lines(p)
    hi = [plucker_gamma([_line_basis(l)[0], _line_basis(l)[1]], 2 * p - 2, f).to_vector() for l in lines]
    lo = [plucker_gamma([_line_basis(l)[0], _line_basis(l)[1]], p - 1, f).to_vector() for l in lines]
    return MatFp(hi, f), MatFp(lo, f)


@lru_cache(maxsize=None)
def _line_basis_cached(coords: tuple[int, ...], q: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    f = field_of_order(q)
    line = PluckerPoint(coords, f)
    pts = [x for x in projective_points(4, f) if line.contains(x)]
    u = pts[0]
    for v in pts[1:]:
        if any(wedge_coords([u, v], f)):
            return u, v
    raise DomainError("not a line")


def _line_basis(line: PluckerPoint) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two spanning points of the line (first two independent points in order)."""
    return _line_basis_cached(line.coords, line.field.q)


def d2_kernel(p: int = 3) -> dict:
    """Kernel of the left action of l -> (gamma_{2p-2}(l), -gamma_{p-1}(l)).

    The unit a in a*gamma_{p-1} + b*gamma_{2p-2}, a + b = 0, only rescales the
    map, so the kernel does not depend on it.
    """
    m_hi, m_lo = d2_matrices(p)
    both = m_hi.hstack(-m_lo)
    ker = left_kernel(both)
    ker_hi = left_kernel(m_hi)
    return {
        "p": p,
        "lines": m_hi.rows,
        "gamma_dim": m_hi.cols,
        "low_dim": m_lo.cols,
        "kernel": ker,
        "dim": ker.rows,
        "rank": rank(both),
        "rank_high_only": rank(m_hi),
        "kernel_high_only_dim": ker_hi.rows,
        "reduces_to_high": same_row_space(ker, ker_hi),
        "matrix": both,
    }


def incidence_matrix(q: int = 3) -> tuple[list[tuple[int, ...]], tuple[PluckerPoint, ...], np.ndarray]:
    f = field_of_order(q)
    pts = projective_points(4, f)
    lines = enum_lines(q)
    inc = np.array([[1 if l.contains(x) else 0 for l in lines] for x in pts], dtype=np.int64)
    return pts, lines, inc


def incidence_check(p: int = 3) -> dict:
    """Each point gives sum of the lines through it; all of them must lie in ker(d_2)."""
    f = GF(p)
    pts, lines, inc = incidence_matrix(p)
    m_hi, m_lo = d2_matrices(p)
    vecs = MatFp(inc, f)
    hi_ok = (vecs @ m_hi).data.any(axis=1) == 0
    lo_ok = (vecs @ m_lo).data.any(axis=1) == 0
    return {
        "points": len(pts),
        "lines": len(lines),
        "row_sums": sorted(set(inc.sum(axis=1).tolist())),
        "col_sums": sorted(set(inc.sum(axis=0).tolist())),
        "incidences": int(inc.sum()),
        "annihilated": int(np.count_nonzero(hi_ok & lo_ok)),
        "all_annihilated": bool(np.all(hi_ok & lo_ok)),
        # not stated in the source; reported only
        "incidence_rank": rank(vecs),
    }


# -- Hodge numbers --------------------------------------------------------------

# h^j(F, Omega^1_F), j = 0..3, for the (2, p+1) complete intersection F, p = 3
HODGE_OMEGA1_OF_F = (0, 1, 89, 0)


def hodge_diamond(kernel_dim: int | None = None) -> list[list[int]]:
    """h[i][j] = h^j(X, Omega^i) for the small resolution X (p = 3).

    Row i = 1 is h^j(F, Omega^1) with the kernel of d_2 added in degree 1
    (the rank of d_2 removed from degree 2); rows 0 and 3 are those of a
    Calabi-Yau threefold; row 2 follows by Serre duality h^{ij} = h^{3-i,3-j}.
    """
    if kernel_dim is None:
        kernel_dim = d2_kernel(3)["dim"]
    n_lines = len(enum_lines(3))
    d2_rank = n_lines - kernel_dim
    h = [[0] * 4 for _ in range(4)]
    h[0][0] = h[0][3] = 1
    h[1] = list(HODGE_OMEGA1_OF_F)
    h[1][1] += kernel_dim
    h[1][2] -= d2_rank
    for j in range(4):
        h[3][j] = h[0][3 - j]
        h[2][j] = h[1][3 - j]
    return h


# -- Euler characteristics ----------------------------------------------------------


def _chi_O(n: int, k: int) -> int:
    """chi(P^n, O(k)) = C(k + n, n) as a polynomial in k."""
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    den = 1
    for i in range(1, n + 1):
        den *= i
    return num // den


def bott_chi(n: int, i: int, k: int) -> int:
    """chi(P^n, Omega^i(k)) from the Bott formula."""
    if not 0 <= i <= n:
        return 0
    h0 = comb(k + n - i, k) * comb(k - 1, i) if k > i else 0
    hn = comb(-k + i, -k) * comb(-k - 1, n - i) if k < i - n else 0
    hi = 1 if k == 0 else 0
    return h0 + (-1) ** n * hn + (-1) ** i * hi


def euler_sequence_chi(n: int, i: int, k: int) -> int:
    """chi(P^n, Omega^i(k)) from 0 -> Omega^i -> Lambda^i(O(-1)^{n+1}) -> Omega^{i-1} -> 0."""
    if i < 0 or i > n:
        return 0
    total = 0
    sign = 1
    for a in range(i, -1, -1):
        total += sign * comb(n + 1, a) * _chi_O(n, k - a)
        sign = -sign
    return total


def ci_chi(n: int, degrees: Sequence[int], j: int) -> int:
    """chi(Y, Omega^j_Y) for a smooth complete intersection Y in P^n.

    Conormal sequence: [Omega_Y^j] = sum_a (-1)^a [S^a N^*] [Omega^{j-a}_{P^n}|_Y]
    with N^* = sum O(-d_i); restrictions to Y are expanded by the Koszul complex.
    """
    degrees = [int(d) for d in degrees]
    c = len(degrees)
    if not 1 <= c <= n:
        raise UsageError(f"need 1 <= number of degrees <= {n}")
    if any(d < 1 for d in degrees):
        raise UsageError("degrees must be positive")
    if not 0 <= j <= n - c:
        raise UsageError(f"j must lie in [0, {n - c}]")

    def chi_restricted(i: int, twist: int) -> int:
        total = 0
        for r in range(c + 1):
            for sub in itertools.combinations(degrees, r):
                total += (-1) ** r * bott_chi(n, i, twist - sum(sub))
        return total

    total = 0
    for a in range(j + 1):
        for mult in _compositions(a, c):
            twist = -sum(m * d for m, d in zip(mult, degrees))
            total += (-1) ** a * chi_restricted(j - a, twist)
    return total


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
