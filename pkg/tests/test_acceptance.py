"""Acceptance gate; one PASS/FAIL line per criterion is printed at the end of the run."""
import json
import subprocess
import sys
import time

import pytest

from phicantor.classes import check_prop2, class_members_oracle, histogram, multiplicity
from phicantor.cli import main
from phicantor.expected import (
    DEFAULT_P_GRID,
    check_recursion_bounds,
    dimension_estimate,
    dimension_formula,
    expected_count_paper,
    expected_count_tree,
)
from phicantor.golden import GoldenInt, GoldenRational
from phicantor.bands import read_bands_csv
from phicantor.intervals import distinct_intervals, verify_intersection_spectrum
from phicantor.simulate import extinction_by_level, extinction_limit, monte_carlo
from phicantor.words import enumerate_greedy, fibonacci, iter_greedy

crit = pytest.mark.criterion


@pytest.fixture(scope="module")
def hists():
    return {n: histogram(n) for n in range(1, 29)}


@crit("1", "greedy counts n<=25 and distinct intervals n<=16")
def test_counting():
    t0 = time.perf_counter()
    for n in range(1, 26):
        words, _ = enumerate_greedy(n)
        assert len(words) == fibonacci(n + 3) - 1
    for n in range(1, 17):
        all_words = (format(i, f"0{n}b") for i in range(2**n))
        assert len(distinct_intervals(all_words)) == fibonacci(n + 3) - 1
    assert time.perf_counter() - t0 < 60


@crit("2", "DP multiplicity equals brute force n<=16; #[10^h] = 1 + h//2")
def test_multiplicity_oracle():
    for n in range(1, 17):
        for w in iter_greedy(n):
            assert multiplicity(w) == class_members_oracle(w).multiplicity
    for h in range(31):
        assert multiplicity("1" + "0" * h) == 1 + h // 2


@crit("3", "histogram mass identities n<=25")
def test_mass(hists):
    for n in range(1, 26):
        h = hists[n]
        assert sum(m * c for m, c in h.counts.items()) == 2**n
        assert sum(h.counts.values()) == fibonacci(n + 3) - 1


@crit("4", "class relations: oracle n<=14, DP n<=18")
def test_prop2():
    for n in range(1, 15):
        assert check_prop2(n, "oracle") == []
    for n in range(1, 19):
        assert check_prop2(n, "dp") == []


@crit("5", "intersection spectrum n<=10")
def test_spectrum():
    t0 = time.perf_counter()
    for n in range(1, 11):
        rep = verify_intersection_spectrum(n)
        assert rep.violations == [], rep.violations[:5]
    assert time.perf_counter() - t0 < 120


@crit("6", "E_1 = 2p and E_2 = 4p^2 within 1e-12")
def test_small_formulas(hists):
    for i in range(101):
        p = i / 100
        assert abs(expected_count_paper(1, p, hists[1]) - 2 * p) <= 1e-12
        assert abs(expected_count_paper(2, p, hists[2]) - 4 * p * p) <= 1e-12


def _bounds(hists, relation):
    bad = []
    for n in range(3, 26):
        bad += check_recursion_bounds(n, DEFAULT_P_GRID, hists).violations_of(relation)
    return bad


@crit("7a", "upper bound min((2p)^n, F_{n+3}-1), n in [3,25]")
def test_upper_bound(hists):
    assert _bounds(hists, "upper") == []


@crit("7b", "final lower bound (2^{n-1}-2)/2^n min(2^n p^n, phi^n), n in [3,25]")
def test_final_lower_bound(hists):
    assert _bounds(hists, "lower") == []


@crit("7c", "recursion inequality E_n >= E_{n-1} + E_{n-2} + 2^{n-2} p^n (1-p^n), n in [3,25]")
def test_recursion_inequality(hists):
    bad = _bounds(hists, "recursion")
    if bad:
        worst = min(bad, key=lambda v: v[3])
        print(f"\nrecursion violations: {len(bad)}; first {bad[0]}; worst {worst}")
    assert bad == []


@crit("8", "dimension estimate within 0.08 at n=28, error nonincreasing over 16/20/24/28")
def test_dimension_convergence(hists):
    t0 = time.perf_counter()
    histogram(28)
    assert time.perf_counter() - t0 < 600
    for p in (0.55, 0.6, 0.7, 0.8, 0.9, 1.0):
        errs = [abs(dimension_estimate(n, p, hists[n]) - dimension_formula(p)) for n in (16, 20, 24, 28)]
        print(f"\np={p}: errors {errs}")
        assert errs[-1] <= 0.08
        assert all(b <= a for a, b in zip(errs, errs[1:]))


@crit("9", "Monte Carlo within 4 std_err of the exact tree expectation (n=12, p=0.7)")
def test_mc_vs_tree(hists):
    s = monte_carlo(12, 0.7, 10_000, seed=42)
    exact = expected_count_tree(12, 0.7)
    gap = exact - expected_count_paper(12, 0.7, hists[12])
    print(f"\nmean {s.mean_distinct} +- {s.std_err}; tree {exact}; tree - independence formula = {gap:+.6f}")
    assert abs(s.mean_distinct - exact) <= 4 * s.std_err


@crit("10a", "extinction frequency (p=0.45, n=40) within 0.02 of q_40")
def test_extinction_frequency():
    s = monte_carlo(40, 0.45, 10_000, seed=7)
    assert abs(s.extinction_freq - extinction_by_level(0.45, 40)) <= 0.02


@crit("10b", "q_2000 >= 0.999 for p in {0.3, 0.45, 0.5}")
def test_extinction_subcritical():
    qs = {p: extinction_by_level(p, 2000) for p in (0.3, 0.45, 0.5)}
    print(f"\nq_2000: {qs}")
    assert all(q >= 0.999 for q in qs.values())


@crit("10c", "q_2000 matches ((1-p)/p)^2 within 1e-9 at p=0.7")
def test_extinction_supercritical():
    assert abs(extinction_by_level(0.7, 2000) - extinction_limit(0.7)) <= 1e-9
    assert abs(extinction_limit(0.7) - 0.18367) < 1e-5


@crit("11", "simulate output byte-identical across runs; serial equals parallel")
def test_determinism():
    cmd = [sys.executable, "-m", "phicantor", "simulate", "--n", "10", "--p", "0.7", "--trials", "5000", "--seed", "42"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    c = subprocess.run(cmd + ["--workers", "2"], capture_output=True, check=True).stdout
    assert a == b == c
    assert json.loads(a)["trials"] == 5000
    assert monte_carlo(10, 0.7, 5000, 42, workers=1, chunk=700) == monte_carlo(10, 0.7, 5000, 42, workers=3, chunk=700)


@crit("12", "deterministic bands at level 2: four intervals and three overlaps, exact")
def test_level_two_bands(tmp_path):
    path = tmp_path / "bands.csv"
    assert main(["bands", "--deterministic", "--n", "2", "--output", str(path)]) == 0
    rows = [r for r in read_bands_csv(path.read_text()) if r.level == 2]
    r0, r1 = GoldenRational(0), GoldenRational(1)
    i1, i2 = GoldenRational.phi_pow(-1), GoldenRational.phi_pow(-2)
    two_i1, phi = GoldenRational(GoldenInt(2), 1), GoldenRational.phi_pow(1)
    intervals = {(r.left, r.right) for r in rows if r.kind == "interval"}
    overlaps = {(r.left, r.right) for r in rows if r.kind == "overlap"}
    assert intervals == {(r0, i1), (i1, two_i1), (i2, r1), (r1, phi)}
    assert overlaps == {(i2, i1), (i1, r1), (r1, two_i1)}
