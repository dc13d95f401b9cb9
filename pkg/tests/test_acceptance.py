"""Acceptance gate: one test per criterion.

Run ``pytest tests/test_acceptance.py -v`` (a PASS/FAIL line per criterion is
printed in the terminal summary) or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from cy3 import hirokado, k3
from cy3.dickson import apply_D, dickson_report, moore_det
from cy3.errors import DomainError, UsageError
from cy3.exactla import kernel_basis, same_row_space
from cy3.gf import GF
from cy3.groupact import lift_obstruction, prop_invariants_report
from cy3.multilinear import gamma_basis

CRITERIA = {
    1: "Hirokado certificate: 130 lines, 126 monomials, kernel 41, rank 89, < 10 s",
    2: "Kernel reduction: ker(gamma_4 rows) = ker(gamma_4 and gamma_2 rows)",
    3: "Incidence consistency: 40 point vectors annihilated, sums 13 / 4, 520 incidences",
    4: "Hodge diamond table with h21 = 0",
    5: "Parabolic invariants have dims (1, 2) for p = 3, 5, 7 with expected members",
    6: "Lift obstruction: (I+N+3P)^3 = I+3N mod 9 for 100 random P, n in {2, 6}",
    7: "Dickson identities for (n, p) in {(2,2), (2,3), (3,2), (3,3)}",
    8: "Complete-intersection chi values, range edge, Bott vs Euler sequence",
    9: "K3 geometry: 27 isotropic, Witt index 2, 27 lines, 10 meets / 5 planes, 90 period points",
    10: "Gauss map on 500 points over F9 and F27; rational inputs rejected",
    11: "Operator property suites (duality, contraction, splitting, Frobenius, scaling, Pluecker)",
}

SEED = 20240521


def test_criterion_01_hirokado_certificate():
    hirokado.enum_lines.cache_clear()
    start = time.perf_counter()
    lines = hirokado.enum_lines(3)
    d = hirokado.d2_kernel(3)
    elapsed = time.perf_counter() - start
    assert len(lines) == 130
    assert len(gamma_basis(6, 4)) == 126
    assert d["dim"] == 41
    assert d["rank"] == 89
    assert elapsed < 10.0, f"took {elapsed:.1f} s"


def test_criterion_02_kernel_reduction():
    hi, lo = hirokado.d2_matrices(3)
    k_hi = kernel_basis(hi.T)
    k_both = kernel_basis(hi.hstack(lo).T)
    assert same_row_space(k_hi, k_both)
    assert k_hi.rows == 41


def test_criterion_03_incidence():
    r = hirokado.incidence_check(3)
    assert r["points"] == 40
    assert r["annihilated"] == 40 and r["all_annihilated"]
    assert r["row_sums"] == [13] and r["col_sums"] == [4]
    assert r["incidences"] == 520


def test_criterion_04_hodge_diamond():
    h = hirokado.hodge_diamond(hirokado.d2_kernel(3)["dim"])
    expected = [[0] * 4 for _ in range(4)]
    for i, j in ((0, 0), (3, 0), (0, 3), (3, 3)):
        expected[i][j] = 1
    expected[1][1] = expected[2][2] = 42
    assert h == expected
    assert h[2][1] == 0


@pytest.mark.parametrize("p,budget", [(3, 60), (5, 60), (7, 900)])
def test_criterion_05_invariants(p, budget):
    start = time.perf_counter()
    r = prop_invariants_report(p, threads=4)
    elapsed = time.perf_counter() - start
    assert r["dims"] == (1, 2)
    assert r["low"]["contains_gamma_V1"]
    assert r["high"]["contains_gamma_V1"]
    assert r["high"]["contains_copairing"]
    assert elapsed < budget


@pytest.mark.parametrize("n", [2, 6])
def test_criterion_06_lift_obstruction(n):
    p = 3
    rng = np.random.default_rng(SEED + n)
    N = np.zeros((n, n), dtype=np.int64)
    N[0, 1] = 1
    target = (np.eye(n, dtype=np.int64) + p * N) % (p * p)
    assert not (target == np.eye(n, dtype=np.int64)).all()
    failures = 0
    for _ in range(100):
        P = rng.integers(0, p * p, (n, n))
        if not (lift_obstruction(N, P, p) == target).all():
            failures += 1
    assert failures == 0, f"{failures}/100 trials differ from I + 3N mod 9"


def test_criterion_07_dickson():
    signs = {}
    for n, p in ((2, 2), (2, 3), (3, 2), (3, 3)):
        r = dickson_report(n, p)
        for i in range(n + 1):
            if i != 1:
                assert apply_D(moore_det(n, i, p)).is_zero()
        assert r["sign"] in (1, -1)
        assert apply_D(moore_det(n, 1, p)) == (moore_det(n, n, p) ** p) * r["sign"]
        signs[(n, p)] = r["sign"]
    print(f"recorded signs: {signs}")


def test_criterion_08_ci_chi():
    assert hirokado.ci_chi(5, [2, 4], 0) == 0
    assert hirokado.ci_chi(5, [2, 4], 1) == 88
    # j = n - c is the top of the documented range; one past it is rejected
    assert hirokado.ci_chi(5, [2, 4], 3) == 0
    with pytest.raises(UsageError):
        hirokado.ci_chi(5, [2, 4], 4)
    for n in range(1, 6):
        for i in range(n + 1):
            for k in range(-10, 11):
                assert hirokado.bott_chi(n, i, k) == hirokado.euler_sequence_chi(n, i, k)


def test_criterion_09_k3():
    iso = k3.isotropic_census(2)
    assert iso["isotropic_nonzero"] == 27
    assert iso["witt_index"] == 2
    surf = k3.fermat_lines(2)
    assert len(surf.lines) == 27
    assert k3.fermat_report(2)["lines_on_surface"]
    t = k3.tritangent_stats(2)
    assert t["meets"] == [10] and t["planes_per_line"] == [5] and t["all_pairs"]
    pts = k3.period_points(3, 4)
    assert len(pts) == 2 * len(surf.points) == 90
    cmp = k3.period_fermat_compare(4)
    assert cmp["first_injective"] and cmp["second_injective"]
    assert cmp["first_valid"] and cmp["second_valid"]
    assert cmp["disjoint"] and cmp["union_is_enumeration"]


def test_criterion_10_gauss_map():
    rng = np.random.default_rng(SEED)
    for m in (2, 3):
        f = GF(3, m)
        tested = 0
        while tested < 500:
            x = [int(v) for v in rng.integers(0, f.q, 4)]
            if not any(x):
                continue
            try:
                pt = hirokado.gauss_map(x, f)
            except DomainError:
                continue
            assert hirokado.plucker_relation(pt.coords, f) == 0
            assert hirokado.dl_form(pt.coords, f) == 0
            tested += 1
        for _ in range(50):
            x = [int(v) for v in rng.integers(0, 3, 4)]
            if not any(x):
                continue
            c = int(rng.integers(1, f.q))
            with pytest.raises(DomainError):
                hirokado.gauss_map([f.mul(c, f.from_int(v)) for v in x], f)


def test_criterion_11_operator_suites():
    """Runs the exhaustive/sampled operator property tests of the multilinear module."""
    code = pytest.main(["-q", "-p", "no:cacheprovider", str(_here() / "test_multilinear.py")])
    assert code == 0


def _here():
    from pathlib import Path

    return Path(__file__).resolve().parent


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main(["-v", __file__]))
