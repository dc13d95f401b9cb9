"""Parabolic subgroups of GL_n(F_p), their induced actions on Lambda^2 and
Gamma^k(Lambda^2), fixed subspaces, and the mod p^2 lifting computation."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, UsageError
from .exactla import MatFp, as_field, common_kernel, in_row_space, kernel_basis, rank, row_space
from .multilinear import (
    GammaElem,
    basis_index,
    copair_vector,
    divided_power_eval,
    dp_mul,
    gamma_basis,
    lambda_basis,
    wedge_coords,
)

__all__ = [
    "GeneratorSet",
    "primitive_root",
    "parabolic_generators",
    "torus_elements",
    "induced_lambda2",
    "induced_gamma",
    "gamma_image",
    "invariant_subspace",
    "gamma_invariants",
    "prop_invariants_report",
    "lift_obstruction",
    "elementary",
]


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    p: int
    m: int
    matrices: list[MatFp] = dc_field(default_factory=list)

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self):
        return len(self.matrices)

    def preserves_flag(self) -> bool:
        """Every generator maps span(e_1..e_m) into itself."""
        return all(not g.data[self.m :, : self.m].any() for g in self.matrices)


def primitive_root(p: int) -> int:
    for g in range(1, p):
        if len({pow(g, e, p) for e in range(1, p)}) == p - 1:
            return g
    raise UsageError(f"no primitive root mod {p}")


def elementary(n: int, i: int, j: int, p: int, c: int = 1) -> MatFp:
    """I + c E_ij: sends e_j to e_j + c e_i."""
    a = np.eye(n, dtype=np.int64)
    a[i, j] += c
    return MatFp(a, p)


def _diag(n: int, i: int, c: int, p: int) -> MatFp:
    a = np.eye(n, dtype=np.int64)
    a[i, i] = c
    return MatFp(a, p)


def parabolic_generators(n: int, p: int, m: int) -> GeneratorSet:
    """Generators of the stabilizer of span(e_1, ..., e_m) in GL_n(F_p).

    For each diagonal block: a primitive-root scaling of its first coordinate
    and the adjacent transvections in both directions (these generate SL of the
    block).  One transvection in the upper-right block generates the unipotent
    radical under the Levi action.  m == n gives generators of GL_n(F_p).
    """
    if not 1 <= m <= n:
        raise UsageError(f"need 1 <= m <= n, got m={m}, n={n}")
    w = primitive_root(p)
    gens: list[MatFp] = []
    for start, size in ((0, m), (m, n - m)):
        if size == 0:
            continue
        if w != 1:
            gens.append(_diag(n, start, w, p))
        for i in range(start, start + size - 1):
            gens.append(elementary(n, i, i + 1, p))
            gens.append(elementary(n, i + 1, i, p))
    if 0 < m < n:
        gens.append(elementary(n, 0, m, p))
    if not gens:
        gens.append(MatFp.identity(n, p))
    return GeneratorSet(n, p, m, gens)


def torus_elements(n: int, p: int) -> list[MatFp]:
    """Primitive-root scalings of each single coordinate (diagonal, so in every parabolic)."""
    w = primitive_root(p)
    if w == 1:
        return []
    return [_diag(n, i, w, p) for i in range(n)]


def induced_lambda2(g: MatFp) -> MatFp:
    """Matrix of e_i ^ e_j -> g e_i ^ g e_j on lambda_basis(n, 2)."""
    n = g.rows
    if g.cols != n or rank(g) != n:
        raise DomainError("induced_lambda2 needs an invertible matrix")
    f = g.field
    cols = g.data.T.tolist()  # cols[i] = g e_i
    images = [wedge_coords([cols[i], cols[j]], f) for i, j in lambda_basis(n, 2)]
    return MatFp(np.array(images, dtype=np.int64).T, f)


class _GammaAction:
    """Lazy images gamma_a -> prod_i gamma_{a_i}(h e_i) for a fixed h."""

    def __init__(self, h: MatFp, k: int):
        self.h = h
        self.k = k
        self.dim = h.rows
        f = h.field
        cols = h.data.T.tolist()
        self.powers = [[divided_power_eval(cols[i], a, f) for a in range(k + 1)] for i in range(self.dim)]
        self._cache: dict[tuple, GammaElem] = {}

    def image(self, a: tuple[int, ...]) -> GammaElem:
        out = self._cache.get(a)
        if out is None:
            out = GammaElem.unit(self.dim, self.h.field)
            for i, e in enumerate(a):
                if e:
                    out = dp_mul(out, self.powers[i][e])
            self._cache[a] = out
        return out


def gamma_image(h: MatFp, a: tuple[int, ...]) -> GammaElem:
    """Gamma^k(h) applied to the basis vector gamma_a, k = |a|."""
    return _GammaAction(h, sum(a)).image(tuple(a))


def induced_gamma(h: MatFp, k: int) -> MatFp:
    """Matrix of Gamma^k(h) on the monomial basis of Gamma^k."""
    d = h.rows
    if h.cols != d or rank(h) != d:
        raise DomainError("induced_gamma needs an invertible matrix")
    act = _GammaAction(h, k)
    basis = gamma_basis(d, k)
    cols = [act.image(a).to_vector() for a in basis]
    return MatFp(np.array(cols, dtype=np.int64).T, h.field)


def invariant_subspace(gens: Sequence[MatFp] | GeneratorSet, rep: Callable[[MatFp], MatFp]) -> MatFp:
    """RREF-canonical basis (rows) of the vectors fixed by rep(g) for every generator g."""
    mats = [rep(g) for g in gens]
    if not mats:
        raise UsageError("empty generator set")
    ident = MatFp.identity(mats[0].rows, mats[0].field)
    basis = common_kernel([a - ident for a in mats])
    for a in mats:
        if not (a @ basis.transpose() - basis.transpose()).is_zero():
            raise AssertionError("computed invariant is not fixed by a generator")
    return basis


def _is_diagonal(a: MatFp) -> bool:
    d = a.data
    return not (d - np.diag(np.diag(d))).any()


def gamma_invariants(lambda_images: Sequence[MatFp], k: int, threads: int = 1) -> MatFp:
    """Fixed subspace of Gamma^k under the matrices in ``lambda_images``.

    Diagonal matrices act on monomials by characters, so they are applied first
    and cut the search down to a set of monomials.  Each remaining matrix is
    handled by computing images of the support monomials only and solving for
    the combinations of the current basis that it fixes.  The result is the
    same RREF-canonical basis :func:`invariant_subspace` returns.
    """
    if not lambda_images:
        raise UsageError("empty generator set")
    f = lambda_images[0].field
    d = lambda_images[0].rows
    basis = gamma_basis(d, k)
    index = basis_index(d, k)
    N = len(basis)

    diagonal = [h for h in lambda_images if _is_diagonal(h)]
    others = [h for h in lambda_images if not _is_diagonal(h)]
    support = []
    for a in basis:
        if all(_char_value(h, a) == 1 for h in diagonal):
            support.append(a)
    if not support:
        return MatFp.zeros(0, N, f)
    cur = np.zeros((len(support), N), dtype=np.int64)
    for r, a in enumerate(support):
        cur[r, index[a]] = 1
    cur_m = MatFp(cur, f)

    def solve_one(h: MatFp, current: MatFp) -> MatFp:
        cols = np.flatnonzero(current.data.any(axis=0))
        act = _GammaAction(h, k)
        img = np.zeros((N, len(cols)), dtype=np.int64)
        for j, c in enumerate(cols):
            for b, v in act.image(basis[c]).coeffs.items():
                img[index[b], j] = v
            img[c, j] = f.sub(int(img[c, j]), 1)
        g_minus_i = MatFp(img, f)
        applied = g_minus_i @ MatFp(current.data[:, cols].T, f)
        live = np.flatnonzero(applied.data.any(axis=1))
        if live.size == 0:
            return current
        coeffs = kernel_basis(MatFp(applied.data[live], f))
        if coeffs.rows == 0:
            return MatFp.zeros(0, N, f)
        return coeffs @ current

    for h in others:
        cur_m = solve_one(h, cur_m)
        if cur_m.rows == 0:
            break
    result = row_space(cur_m) if cur_m.rows else cur_m
    _verify_fixed(lambda_images, k, result, threads)
    return result


def _char_value(h: MatFp, a: tuple[int, ...]) -> int:
    f = h.field
    v = 1
    for i, e in enumerate(a):
        if e:
            v = f.mul(v, f.pow(int(h.data[i, i]), e))
    return v


def _verify_fixed(lambda_images: Sequence[MatFp], k: int, result: MatFp, threads: int) -> None:
    if result.rows == 0:
        return
    f = result.field
    d = lambda_images[0].rows
    rows = [GammaElem.from_vector(r, d, k, f) for r in result.tolist()]

    def check(h: MatFp) -> bool:
        act = _GammaAction(h, k)
        for v in rows:
            img = GammaElem(d, k, f)
            for a, c in v.coeffs.items():
                img = img + act.image(a).scale(c)
            if img != v:
                return False
        return True

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        ok = list(pool.map(check, lambda_images))
    if not all(ok):
        raise AssertionError("computed invariant is not fixed by a generator")


def prop_invariants_report(p: int, threads: int = 1) -> dict:
    """Invariants of Gamma^{p-1} and Gamma^{2(p-1)} of Lambda^2 F_p^4 under the
    stabilizer of a 2-plane, with the expected members checked."""
    if p not in (3, 5, 7):
        raise UsageError(f"p must be 3, 5 or 7, got {p}")
    gens = parabolic_generators(4, p, 2)
    group = torus_elements(4, p) + list(gens)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        lam = list(pool.map(induced_lambda2, group))
    f = as_field(p)
    e12 = [1, 0, 0, 0, 0, 0]
    out: dict = {"p": p, "generators": len(gens), "torus_elements": len(group) - len(gens)}
    for name, k in (("low", p - 1), ("high", 2 * (p - 1))):
        inv = gamma_invariants(lam, k, threads=threads)
        plane = divided_power_eval(e12, k, f).to_vector()
        entry = {
            "degree": k,
            "ambient_dim": len(gamma_basis(6, k)),
            "dim": inv.rows,
            "basis": inv.tolist(),
            "contains_gamma_V1": inv.rows > 0 and in_row_space(plane, inv),
        }
        if name == "high":
            cop = copair_vector(p - 1, f).to_vector()
            entry["contains_copairing"] = inv.rows > 0 and in_row_space(cop, inv)
            span = MatFp([plane, cop], f)
            entry["spanned_by_expected"] = rank(span) == inv.rows and rank(span.vstack(inv)) == inv.rows
        else:
            entry["spanned_by_expected"] = inv.rows == 1 and in_row_space(plane, inv)
        out[name] = entry
    out["dims"] = (out["low"]["dim"], out["high"]["dim"])
    return out


def lift_obstruction(N, P, p: int) -> np.ndarray:
    """(I + N + pP)^p reduced mod p^2, with N, P integer matrices.

    ``N`` must square to zero as an integer matrix.
    """
    if p < 3:
        raise UsageError("the lifting computation needs p >= 3")
    n_arr = np.array(N.data if isinstance(N, MatFp) else N, dtype=np.int64)
    p_arr = np.array(P.data if isinstance(P, MatFp) else P, dtype=np.int64)
    if n_arr.shape != p_arr.shape or n_arr.shape[0] != n_arr.shape[1]:
        raise UsageError("N and P must be square of the same size")
    if (n_arr @ n_arr).any():
        raise DomainError("N does not square to zero")
    mod = p * p
    n = n_arr.shape[0]
    base = (np.eye(n, dtype=np.int64) + n_arr + p * p_arr) % mod
    out = np.eye(n, dtype=np.int64)
    for _ in range(p):
        out = (out @ base) % mod
    return out
