"""Acceptance checks, one test per criterion, each printing a PASS/FAIL line."""

import random
import subprocess
import sys
import time
from fractions import Fraction
from math import gcd

import pytest

from cusplab.cli import cusp_report
from cusplab.cuspinv import (CuspDatum, bounding_obstruction, cusp_datum, delta, dual_module,
                             l_series_partial, standard_cusp, volume)
from cusplab.dedekind import dedekind_sum, dedekind_sum_direct, rademacher_phi, rademacher_psi
from cusplab.exactnum import QuadIrr, SurdValue
from cusplab.quadfield import class_number, field_data
from cusplab.solbundle import (Representation, build_representation, clear_denominators,
                               eigen_data, parse_presentation, verify_relators)

from oracles import brute_force_unit, ideal_class_number, squarefree_upto
from test_cuspinv import random_submodule
from test_dedekind import random_hyperbolic, random_sl2


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
        assert ok, f"criterion {n} failed: {detail}"
    return emit


def timed(f, *args):
    t = time.perf_counter()
    out = f(*args)
    return out, time.perf_counter() - t


def cold_delta(d):
    field_data.cache_clear()
    return delta(standard_cusp(d)).delta


def cold_class_number(d):
    field_data.cache_clear()
    return class_number(field_data(d))[0], cusp_report(d).cusp_count


def test_01_anchor_deltas(report):
    want = {3: Fraction(-1, 3), 6: Fraction(-2, 3), 21: Fraction(-2, 3), 33: Fraction(-2, 3)}
    ok, worst, got = True, 0.0, {}
    for d, w in want.items():
        val, dt = timed(cold_delta, d)
        got[d] = str(val)
        worst = max(worst, dt)
        ok = ok and val == w and dt < 0.010
    report(1, "standard-cusp delta anchors", ok, f"{got} max {worst * 1e3:.2f} ms")


def test_02_one_cusped_fields(report):
    ok, worst = True, 0.0
    for d in (3, 6, 21, 33):
        (h, cusps), dt = timed(cold_class_number, d)
        worst = max(worst, dt)
        ok = ok and h == 1 and cusps == 1 and dt < 0.100
    report(2, "class number 1 and one cusp", ok, f"max {worst * 1e3:.2f} ms")


def test_03_obstruction_verdicts(report):
    got = {d: bounding_obstruction(standard_cusp(d)).verdict for d in (3, 6, 21, 33, 5)}
    ok = all(got[d] == "OBSTRUCTED" for d in (3, 6, 21, 33)) and got[5] == "INCONCLUSIVE"
    report(3, "bounding obstruction verdicts", ok, str(got))


def test_04_two_route_agreement(report):
    t = time.perf_counter()
    bad = [d for d in squarefree_upto(200) if not delta(standard_cusp(d)).route_agreement]
    rng = random.Random(2024)
    n_sub = 0
    for _ in range(100):
        d = rng.choice(squarefree_upto(200))
        M = random_submodule(rng, d, 5)
        assert M.index_in_Ok() <= 5
        res = delta(cusp_datum(M))
        n_sub += 1
        if res.delta_rademacher != res.delta_cycle:
            bad.append((d, str(M)))
    dt = time.perf_counter() - t
    report(4, "Rademacher and cycle routes agree", not bad and n_sub == 100 and dt < 10,
           f"{len(bad)} mismatches, {dt:.2f} s")


def test_05_dedekind_reciprocity(report):
    rng = random.Random(5)
    pairs = 0
    ok = True
    while pairs < 1000:
        a, c = rng.randint(1, 10**6), rng.randint(1, 10**6)
        if gcd(a, c) != 1:
            continue
        pairs += 1
        lhs = dedekind_sum(a, c) + dedekind_sum(c, a)
        ok = ok and lhs == Fraction(a * a + c * c + 1, 12 * a * c) - Fraction(1, 4)
    direct = all(dedekind_sum(a, c) == dedekind_sum_direct(a, c)
                 for c in range(1, 201) for a in range(c) if gcd(a, c) == 1)
    report(5, "Dedekind reciprocity and direct-sum oracle", ok and direct,
           f"{pairs} pairs, direct match {direct}")


def test_06_rademacher_properties(report):
    rng = random.Random(6)
    ok = True
    for _ in range(100):
        A = random_hyperbolic(rng, 50)
        U = random_sl2(rng, 50)
        p = rademacher_psi(A)
        ok = ok and rademacher_phi(A).denominator == 1
        ok = ok and rademacher_psi(A.conjugate_by(U)) == p
        ok = ok and rademacher_psi(A.inverse()) == -p
        ok = ok and all(rademacher_psi(A ** m) == m * p for m in range(1, 5))
    report(6, "psi conjugation, power, inverse; Phi integral", ok, "100 matrices")


def test_07_unit_oracle(report):
    t = time.perf_counter()
    field_data.cache_clear()
    bad = []
    for d in squarefree_upto(99):
        x, y, den, n = brute_force_unit(d)
        fd = field_data(d)
        if fd.eps0 != QuadIrr(x, y, den, d) or fd.eps0_norm != n:
            bad.append(d)
    for d in squarefree_upto(1000):
        e = field_data(d).eps_plus
        if not (e.norm() == 1 and e.sign(1) > 0 and e.sign(2) > 0 and e > 1):
            bad.append(("tp", d))
    dt = time.perf_counter() - t
    report(7, "fundamental unit vs brute force; tp generator", not bad and dt < 5,
           f"{len(bad)} mismatches, {dt:.2f} s")


def test_08_class_number_oracle(report):
    bad = [d for d in squarefree_upto(99) if field_data(d).h != ideal_class_number(d)]
    h10 = ideal_class_number(10)
    report(8, "form cycles vs ideal enumeration", not bad and h10 == 2 == field_data(10).h,
           f"{len(bad)} mismatches, h(10) = {h10}")


def test_09_lattice_round_trip(report):
    rng = random.Random(9)
    ok = True
    for _ in range(100):
        A = random_hyperbolic(rng, 50)
        ed = eigen_data(A)
        M = ed.module
        ok = ok and M.action_matrix(ed.beta) == [[A.a, A.b], [A.c, A.d]]
        Ms = dual_module(M)
        ok = ok and dual_module(Ms).basis == M.basis
        ok = ok and volume(M) * volume(Ms) == SurdValue(Fraction(1), 1)
    report(9, "eigen lattice round trip and duality", ok, "100 matrices")


def test_10_partial_sums(report):
    base = l_series_partial(standard_cusp(5), 2, 2)
    cd = standard_cusp(3)
    sq = CuspDatum(cd.M, cd.eps_V ** 2, 2)
    doubling = all(l_series_partial(sq, 2, b) == 2 * l_series_partial(cd, 2, b)
                   for b in (10, 100, 1000))
    c = QuadIrr(1, 1, 1, 3)  # norm -2
    scaled = CuspDatum(cd.M.scale(c), cd.eps_V, 1)
    covariance = all(l_series_partial(scaled, 2, 2 * b) == -l_series_partial(cd, 2, b) / 4
                     for b in (10, 100, 500))
    report(10, "partial sums: d=5 zero, doubling, covariance",
           base == 0 and doubling and covariance,
           f"d=5 sum {base}, doubling {doubling}, covariance {covariance}")


def test_11_representation(report):
    P = parse_presentation("fiber_rank 2 / base_rank 1 / holonomy y1 2 1 1 1 / "
                           "rel x1 y1 2 1 / rel x2 y1 1 1")
    rep = build_representation(P)
    ok = verify_relators(rep, P) and rep.fiber_index == 1
    half = Representation(rep.d, tuple(a / 2 for a in rep.alphas), rep.gammas, rep.betas,
                          rep.target)
    cleared, lam = clear_denominators(half)
    restored = (half.alphas[0] == Fraction(1, 2) and lam == 2 and cleared.betas == rep.betas
                and cleared.alphas == rep.alphas and verify_relators(cleared, P))
    report(11, "representation relators, index 1, denominator clearing", ok and restored,
           f"index {rep.fiber_index}, lambda {lam}")


def test_12_survey(report):
    cmd = [sys.executable, "-m", "cusplab", "table", "--dmax", "1000"]
    t = time.perf_counter()
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    dt = time.perf_counter() - t
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    rows = a.decode().strip().split("\n")
    report(12, "table --dmax 1000 deterministic", a == b and dt < 60 and len(rows) == 2 + len(squarefree_upto(1000)),
           f"{dt:.2f} s, {len(rows) - 2} rows, identical {a == b}")
