"""Finite geometry behind supersingular K3 periods in characteristic 2.

V = F_{p^2}^4 carries the standard hermitian form <u, v> = sum u_i^p v_i.
Vectors of Lambda^2 V are coordinate 6-tuples in the order
e12 < e13 < e14 < e23 < e24 < e34 (``lambda_basis(4, 2)``), and
w = e1 ^ e2 ^ e3 ^ e4.  The bar involution is the semilinear map defined by
u ^ v = <bar(u), v> w; its fixed points W form an F_p-structure on
Lambda^2 V with the quadratic form psi given by gamma_2(u) = psi(u) w.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import UsageError
from .exactla import MatFp, inverse, rank, row_space
from .gf import GF, FiniteField
from .hirokado import PluckerPoint, enum_lines, normalize, projective_points
from .multilinear import lambda_basis, perm_sign, wedge_coords

__all__ = [
    "HermitianSpace",
    "bar_involution",
    "apply_bar",
    "psi",
    "wedge_pairing",
    "WForm",
    "w_basis_and_psi",
    "QuadForm",
    "isotropic_census",
    "FermatSurface",
    "fermat_lines",
    "fermat_equation",
    "fermat_report",
    "line_to_w",
    "tritangent_stats",
    "witt_index",
    "nonsplit_form",
    "period_census",
    "frobenius_intersection_dim",
    "PeriodPoint",
    "period_points",
    "period_fermat_compare",
]

LAMBDA2 = lambda_basis(4, 2)


@dataclass(frozen=True)
class HermitianSpace:
    """F_{p^2}^4 with the standard basis orthonormal."""

    p: int

    @property
    def field(self) -> FiniteField:
        return GF(self.p, 2)

    def form(self, u: Sequence[int], v: Sequence[int]) -> int:
        f = self.field
        total = 0
        for a, b in zip(u, v):
            total = f.add(total, f.mul(f.frob(a), b))
        return total

    def w_norm(self) -> int:
        """<w, w> for w = e1^e2^e3^e4 under the induced form (a 1x1 Gram determinant)."""
        return 1


def bar_involution(p: int) -> dict:
    """bar(e_I) = sign * e_J, J the complement of I, sign that of the permutation IJ."""
    target, signs = [], []
    for I in LAMBDA2:
        J = tuple(x for x in range(4) if x not in I)
        target.append(LAMBDA2.index(J))
        signs.append(perm_sign(I + J))
    return {"p": p, "target": target, "signs": signs}


def apply_bar(u: Sequence[int], p: int) -> tuple[int, ...]:
    """Semilinear: bar(sum c_I e_I) = sum sign_I c_I^p e_J."""
    f = GF(p, 2)
    data = bar_involution(p)
    out = [0] * 6
    for s, c in enumerate(u):
        c = f.frob(int(c))
        if data["signs"][s] < 0:
            c = f.neg(c)
        out[data["target"][s]] = c
    return tuple(out)


def psi(u: Sequence[int], field: FiniteField) -> int:
    """gamma_2(u) = psi(u) w: c12 c34 - c13 c24 + c14 c23."""
    f = field
    t = f.sub(f.mul(u[0], u[5]), f.mul(u[1], u[4]))
    return f.add(t, f.mul(u[2], u[3]))


def wedge_pairing(u: Sequence[int], v: Sequence[int], field: FiniteField) -> int:
    """u ^ v = (pairing) w for u, v in Lambda^2."""
    f = field
    total = 0
    for s, I in enumerate(LAMBDA2):
        J = tuple(x for x in range(4) if x not in I)
        t = f.mul(u[s], v[LAMBDA2.index(J)])
        total = f.add(total, t) if perm_sign(I + J) > 0 else f.sub(total, t)
    return total


@dataclass(frozen=True)
class QuadForm:
    """Quadratic form sum_{s <= t} coeffs[s][t] y_s y_t with F_p coefficients."""

    coeffs: tuple[tuple[int, ...], ...]
    p: int

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def value(self, y: Sequence[int], field: FiniteField) -> int:
        f = field
        total = 0
        n = self.dim
        for s in range(n):
            if not y[s]:
                continue
            for t in range(s, n):
                c = self.coeffs[s][t]
                if c and y[t]:
                    total = f.add(total, f.mul(f.from_int(c), f.mul(y[s], y[t])))
        return total

    def polar(self, x: Sequence[int], y: Sequence[int], field: FiniteField) -> int:
        f = field
        xy = [f.add(a, b) for a, b in zip(x, y)]
        return f.sub(f.sub(self.value(xy, f), self.value(x, f)), self.value(y, f))

    def polar_matrix(self) -> list[list[int]]:
        n = self.dim
        out = [[0] * n for _ in range(n)]
        for s in range(n):
            out[s][s] = (2 * self.coeffs[s][s]) % self.p
            for t in range(s + 1, n):
                out[s][t] = out[t][s] = self.coeffs[s][t] % self.p
        return out


@dataclass
class WForm:
    """The F_p-form W of Lambda^2 F_{p^2}^4 with its quadratic form psi."""

    p: int
    basis: list[tuple[int, ...]]  # Lambda^2 coordinates over F_{p^2}
    form: QuadForm  # psi in W coordinates

    @property
    def field(self) -> FiniteField:
        return GF(self.p, 2)

    def to_lambda(self, y: Sequence[int]) -> tuple[int, ...]:
        """W-coordinates (over any F_{p^2}-subfield encoding) to Lambda^2 coordinates."""
        f = self.field
        out = [0] * 6
        for c, b in zip(y, self.basis):
            if c:
                out = [f.add(o, f.mul(c, x)) for o, x in zip(out, b)]
        return tuple(out)

    def basis_matrix(self) -> MatFp:
        return MatFp([list(b) for b in self.basis], self.field)

    def to_w_coords(self, u: Sequence[int]) -> tuple[int, ...]:
        inv = _w_inverse(self.p)
        row = MatFp([list(u)], self.field) @ inv
        return tuple(row.data[0].tolist())

    def f2_points(self) -> list[tuple[int, ...]]:
        """All F_p-combinations, as W-coordinate vectors."""
        return list(itertools.product(range(self.p), repeat=6))


@lru_cache(maxsize=None)
def _w_inverse(p: int) -> MatFp:
    return inverse(w_basis_and_psi(p).basis_matrix())


@lru_cache(maxsize=None)
def w_basis_and_psi(p: int = 2) -> WForm:
    """Basis e_ij + e_kl, z e_ij + z^-1 e_kl for ij in {12, 13, 14} (p = 2, z = t)."""
    if p != 2:
        raise UsageError("the explicit W basis is implemented for p = 2")
    f = GF(2, 2)
    z = f.gen
    zinv = f.inv(z)
    basis = []
    for I in ((0, 1), (0, 2), (0, 3)):
        J = tuple(x for x in range(4) if x not in I)
        a, b = LAMBDA2.index(I), LAMBDA2.index(J)
        v1 = [0] * 6
        v1[a] = v1[b] = 1
        v2 = [0] * 6
        v2[a], v2[b] = z, zinv
        basis += [tuple(v1), tuple(v2)]
    coeffs = [[0] * 6 for _ in range(6)]
    for s in range(6):
        coeffs[s][s] = psi(basis[s], f)
        for t in range(s + 1, 6):
            coeffs[s][t] = wedge_pairing(basis[s], basis[t], f)
    if any(c >= f.p for row in coeffs for c in row):
        raise AssertionError("psi is not F_p-valued on the basis")
    return WForm(2, basis, QuadForm(tuple(tuple(r) for r in coeffs), 2))


SPLIT_SIX = QuadForm(
    (
        (0, 1, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 1),
        (0, 0, 0, 0, 0, 0),
    ),
    2,
)


def _isotropic_vectors(form: QuadForm, field: FiniteField) -> list[tuple[int, ...]]:
    return [y for y in itertools.product(range(field.q), repeat=form.dim) if any(y) and not form.value(y, field)]


def witt_index(form: QuadForm, field: FiniteField) -> int:
    """Largest dimension of a totally singular subspace, by exhaustive search."""
    best = 0
    for d in range(1, form.dim // 2 + 1):
        if not _totally_singular(form, field, d):
            break
        best = d
    return best


def isotropic_census(p: int = 2) -> dict:
    wf = w_basis_and_psi(p)
    f = GF(p)
    iso = _isotropic_vectors(wf.form, f)
    split_iso = _isotropic_vectors(SPLIT_SIX, f)
    # psi restricted to each of the three planes spanned by a pair of basis vectors
    planes_nonsplit = []
    for s in (0, 2, 4):
        vals = []
        for a, b in ((1, 0), (0, 1), (1, 1)):
            y = [0] * 6
            y[s], y[s + 1] = a, b
            vals.append(wf.form.value(y, f))
        planes_nonsplit.append(all(vals))
    return {
        "p": p,
        "isotropic_nonzero": len(iso),
        "witt_index": witt_index(wf.form, f),
        "split_isotropic_nonzero": len(split_iso),
        "split_witt_index": witt_index(SPLIT_SIX, f),
        "planes_nonsplit": planes_nonsplit,
    }


# -- Fermat surface and its lines -------------------------------------------------


@dataclass
class FermatSurface:
    p: int
    points: list[tuple[int, ...]]
    lines: list[PluckerPoint]
    line_points: list[frozenset[int]] = dc_field(default_factory=list)  # indices into points

    @property
    def field(self) -> FiniteField:
        return GF(self.p, 2)


def fermat_equation(x: Sequence[int], field: FiniteField) -> int:
    f = field
    total = 0
    for c in x:
        total = f.add(total, f.pow(c, f.p + 1))
    return total


def _line_point_list(line: PluckerPoint) -> list[tuple[int, ...]]:
    return [x for x in projective_points(4, line.field) if line.contains(x)]


@lru_cache(maxsize=None)
def fermat_lines(p: int = 2) -> FermatSurface:
    """Points of x^{p+1}+y^{p+1}+z^{p+1}+w^{p+1} = 0 over F_{p^2} and the
    totally isotropic hermitian planes (its lines)."""
    if p != 2:
        raise UsageError("fermat_lines is implemented for p = 2")
    f = GF(p, 2)
    herm = HermitianSpace(p)
    points = [x for x in projective_points(4, f) if not fermat_equation(x, f)]
    index = {x: i for i, x in enumerate(points)}
    lines, members = [], []
    for line in enum_lines(f.q):
        pts = _line_point_list(line)
        u, v = pts[0], pts[1]
        if herm.form(u, u) or herm.form(v, v) or herm.form(u, v):
            continue
        if any(x not in index for x in pts):
            raise AssertionError("isotropic line not contained in the surface")
        lines.append(line)
        members.append(frozenset(index[x] for x in pts))
    return FermatSurface(p, points, lines, members)


def line_to_w(line: PluckerPoint) -> tuple[int, ...]:
    """The unique nonzero F_p-rational multiple of the Pluecker vector, in W-coordinates."""
    f = line.field
    wf = w_basis_and_psi(f.p)
    for lam in f.nonzero():
        u = tuple(f.mul(lam, c) for c in line.coords)
        if apply_bar(u, f.p) == u:
            y = wf.to_w_coords(u)
            if all(c < f.p for c in y):
                return y
    raise AssertionError("Pluecker vector has no rational multiple")


def fermat_report(p: int = 2) -> dict:
    fs = fermat_lines(p)
    f = fs.field
    wf = w_basis_and_psi(p)
    w_images = [line_to_w(l) for l in fs.lines]
    iso = set(_isotropic_vectors(wf.form, GF(p)))
    brute = sum(1 for x in projective_points(4, f) if not fermat_equation(x, f))
    return {
        "p": p,
        "candidates": len(projective_points(4, f)),
        "points": len(fs.points),
        "points_brute_force": brute,
        "lines": len(fs.lines),
        "lines_on_surface": all(len(m) == f.q + 1 for m in fs.line_points),
        "w_images_isotropic": all(y in iso for y in w_images),
        "bijection_with_isotropic": set(w_images) == iso and len(set(w_images)) == len(w_images),
    }


def tritangent_stats(p: int = 2) -> dict:
    """For each line: how many lines meet it and how they pair up into planes."""
    fs = fermat_lines(p)
    f = fs.field
    per_line = []
    for i, li in enumerate(fs.lines):
        meeting = [j for j, mj in enumerate(fs.line_points) if j != i and mj & fs.line_points[i]]
        planes: dict[tuple, list[int]] = {}
        bi = _line_point_list(li)[:2]
        for j in meeting:
            bj = _line_point_list(fs.lines[j])[:2]
            span = row_space(MatFp([list(v) for v in bi + bj], f))
            planes.setdefault(tuple(map(tuple, span.tolist())), []).append(j)
        per_line.append(
            {
                "meets": len(meeting),
                "planes": len(planes),
                "plane_sizes": sorted(len(v) for v in planes.values()),
            }
        )
    meets_total = sum(d["meets"] for d in per_line)
    return {
        "lines": len(fs.lines),
        "meets": sorted({d["meets"] for d in per_line}),
        "planes_per_line": sorted({d["planes"] for d in per_line}),
        "all_pairs": all(d["plane_sizes"] == [2] * d["planes"] for d in per_line),
        "intersecting_pairs": meets_total // 2,
    }


# -- period points ---------------------------------------------------------------------


def nonsplit_form(sigma0: int, p: int = 2) -> QuadForm:
    """The fixed non-split 2*sigma0-dimensional form; W itself for sigma0 = 3."""
    if p != 2:
        raise UsageError("period points are implemented for p = 2")
    if sigma0 == 3:
        return w_basis_and_psi(2).form
    n = 2 * sigma0
    coeffs = [[0] * n for _ in range(n)]
    for s in range(0, n - 2, 2):
        coeffs[s][s + 1] = 1
    coeffs[n - 2][n - 2] = coeffs[n - 2][n - 1] = coeffs[n - 1][n - 1] = 1
    return QuadForm(tuple(tuple(r) for r in coeffs), p)


@dataclass(frozen=True)
class PeriodPoint:
    sigma0: int
    q: int
    basis: tuple[tuple[int, ...], ...]  # RREF rows in T_0 coordinates over F_q


def _span_points(rows: Sequence[Sequence[int]], field: FiniteField) -> list[tuple[int, ...]]:
    f = field
    pts = set()
    for coefs in itertools.product(range(f.q), repeat=len(rows)):
        if not any(coefs):
            continue
        v = [0] * len(rows[0])
        for c, r in zip(coefs, rows):
            if c:
                v = [f.add(a, f.mul(c, b)) for a, b in zip(v, r)]
        pts.add(normalize(v, f))
    return sorted(pts)


def _totally_singular(form: QuadForm, field: FiniteField, dim: int) -> list[MatFp]:
    """Totally singular dim-subspaces of F_q^n, as RREF matrices (sorted)."""
    f = field
    pts = [x for x in projective_points(form.dim, f) if not form.value(x, f)]
    if not pts or dim == 0:
        return []
    idx = {x: i for i, x in enumerate(pts)}
    P = MatFp(pts, f)
    polar = MatFp(form.polar_matrix(), f)
    gram = (P @ polar @ P.transpose()).data
    orth = [frozenset(np.flatnonzero(gram[i] == 0).tolist()) for i in range(len(pts))]
    level: dict[frozenset[int], list[int]] = {frozenset([i]): [i] for i in range(len(pts))}
    for _ in range(dim - 1):
        nxt: dict[frozenset[int], list[int]] = {}
        for members, gens in level.items():
            cands = frozenset.intersection(*(orth[g] for g in gens)) - members
            local: list[frozenset[int]] = []
            for x in sorted(cands):
                if any(x in s for s in local):
                    continue
                rows = [pts[g] for g in gens] + [pts[x]]
                span = frozenset(idx[v] for v in _span_points(rows, f))
                local.append(span)
                nxt.setdefault(span, gens + [x])
        level = nxt
        if not level:
            return []
    out = []
    for gens in level.values():
        out.append(row_space(MatFp([list(pts[g]) for g in gens], f)))
    out.sort(key=lambda m: m.data.tobytes())
    return out


def _frob_rows(m: MatFp) -> MatFp:
    return MatFp(m.field.frob_table[m.data], m.field)


def frobenius_intersection_dim(k: MatFp) -> int:
    return 2 * k.rows - rank(k.vstack(_frob_rows(k)))


@lru_cache(maxsize=None)
def _period_points_cached(sigma0: int, q: int) -> tuple[PeriodPoint, ...]:
    if sigma0 not in (1, 2, 3):
        raise UsageError("sigma0 must be 1, 2 or 3")
    if q not in (2, 4):
        raise UsageError("q must be 2 or 4 (p = 2)")
    form = nonsplit_form(sigma0)
    f = GF(2) if q == 2 else GF(2, 2)
    out = []
    for k in _totally_singular(form, f, sigma0):
        if frobenius_intersection_dim(k) == sigma0 - 1:
            out.append(PeriodPoint(sigma0, q, tuple(map(tuple, k.tolist()))))
    return tuple(out)


def period_points(sigma0: int, q: int) -> list[PeriodPoint]:
    """Maximal totally isotropic K in T_0 (x) F_q with dim(K cap F*K) = sigma0 - 1."""
    return list(_period_points_cached(sigma0, q))


def period_census(sigma0: int, q: int) -> dict:
    form = nonsplit_form(sigma0)
    f = GF(2) if q == 2 else GF(2, 2)
    all_max = _totally_singular(form, f, sigma0)
    pts = period_points(sigma0, q)
    return {
        "sigma0": sigma0,
        "q": q,
        "maximal_isotropic": len(all_max),
        "frobenius_stable": sum(1 for k in all_max if frobenius_intersection_dim(k) == sigma0),
        "period_points": len(pts),
    }


def _to_w_subspace(rows_lambda: Sequence[Sequence[int]]) -> MatFp:
    wf = w_basis_and_psi(2)
    f = wf.field
    m = MatFp([list(r) for r in rows_lambda], f) @ _w_inverse(2)
    return row_space(m)


def period_fermat_compare(q: int = 4) -> dict:
    """Both copies of X_2 inside the sigma0 = 3 period points.

    L -> L ^ F_4^4 and L -> Lambda^2(L^perp), with L^perp the annihilator of L
    for the standard bilinear pairing.
    """
    if q != 4:
        raise UsageError("the comparison is implemented for q = 4")
    fs = fermat_lines(2)
    f = fs.field
    unit = [tuple(1 if i == j else 0 for j in range(4)) for i in range(4)]
    first, second = [], []
    for L in fs.points:
        wedges = [wedge_coords([L, e], f) for e in unit]
        first.append(_to_w_subspace(wedges))
        perp = _annihilator(L, f)
        second.append(_to_w_subspace([wedge_coords([a, b], f) for a, b in itertools.combinations(perp, 2)]))
    form = nonsplit_form(3)

    def valid(k: MatFp) -> bool:
        rows = k.tolist()
        singular = all(not form.value(r, f) for r in rows) and all(
            not form.polar(a, b, f) for a, b in itertools.combinations(rows, 2)
        )
        return k.rows == 3 and singular and frobenius_intersection_dim(k) == 2

    enum = {tuple(map(tuple, pp.basis)) for pp in period_points(3, q)}
    key = lambda m: tuple(map(tuple, m.tolist()))  # noqa: E731
    s1, s2 = {key(k) for k in first}, {key(k) for k in second}
    sums_ok = all(rank(k.vstack(_frob_rows(k))) == 4 for k in first + second)
    return {
        "fermat_points": len(fs.points),
        "first_valid": all(valid(k) for k in first),
        "second_valid": all(valid(k) for k in second),
        "first_injective": len(s1) == len(first),
        "second_injective": len(s2) == len(second),
        "disjoint": not (s1 & s2),
        "union_is_enumeration": (s1 | s2) == enum,
        "period_points": len(enum),
        "sum_with_frobenius_dim4": sums_ok,
    }


def _annihilator(x: Sequence[int], field: FiniteField) -> list[list[int]]:
    from .exactla import kernel_basis

    return kernel_basis(MatFp([list(x)], field)).tolist()
