import numpy as np
import pytest

from phicantor.expected import expected_count_tree
from phicantor.intervals import distinct_intervals
from phicantor.simulate import (
    extinction_by_level,
    extinction_limit,
    monte_carlo,
    run_trial,
    trial_seed,
)
from phicantor.words import fibonacci


def test_full_retention():
    for n in range(0, 11):
        out = run_trial(n, 1.0, seed=5)
        assert len(out.paths) == 2**n
        assert out.distinct_count == fibonacci(n + 3) - 1


def test_no_retention():
    out = run_trial(6, 0.0, seed=5)
    assert out.extinct and out.distinct_count == 0
    assert run_trial(0, 0.0, seed=5).distinct_count == 1


def test_hereditary_survival():
    out = run_trial(10, 0.75, seed=123, keep_levels=True)
    for k in range(1, 11):
        alive = set(out.level_words(k - 1))
        for t in out.level_words(k):
            assert t[:-1] in alive


def test_distinct_count_matches_intervals():
    for seed in range(20):
        out = run_trial(9, 0.8, seed)
        assert 0 <= out.distinct_count <= min(len(out.paths), fibonacci(12) - 1)
        reversed_words = [t[::-1] for t in out.survivors]
        assert out.distinct_count == len(distinct_intervals(reversed_words))


def test_reproducible():
    a, b = run_trial(12, 0.7, 42), run_trial(12, 0.7, 42)
    assert np.array_equal(a.paths, b.paths)
    assert not np.array_equal(a.paths, run_trial(12, 0.7, 43).paths)
    assert 0 <= run_trial(3, 0.7, 42).distinct_count <= 7


def test_trial_seed_spreads():
    seeds = {trial_seed(0, i) for i in range(10000)}
    assert len(seeds) == 10000


def test_chunking_and_workers_do_not_matter():
    base = monte_carlo(8, 0.7, 3001, seed=9, chunk=3001)
    assert monte_carlo(8, 0.7, 3001, seed=9, chunk=250) == base
    assert monte_carlo(8, 0.7, 3001, seed=9, workers=2, chunk=500) == base


def test_deterministic_summary():
    s = monte_carlo(2, 1.0, 10, seed=1)
    assert s.mean_distinct == 4 and s.std_err == 0 and s.extinction_freq == 0
    s = monte_carlo(3, 0.5, 1, seed=1)
    assert s.std_err == 0.0
    s = monte_carlo(5, 0.6, 777, seed=3)
    assert (s.extinction_freq * s.trials) == pytest.approx(round(s.extinction_freq * s.trials))


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("p", [0.5, 0.7, 0.9])
def test_mc_matches_tree_expectation(n, p):
    s = monte_carlo(n, p, 4000, seed=1000 * n + int(p * 100))
    assert abs(s.mean_distinct - expected_count_tree(n, p)) <= 4 * s.std_err + 1e-12


def test_mc_single_level():
    s = monte_carlo(1, 0.5, 100_000, seed=11)
    assert abs(s.mean_distinct - 1.0) <= 4 * s.std_err


def test_extinction_examples():
    assert extinction_by_level(0.0, 1) == 1.0
    assert all(extinction_by_level(1.0, n) == 0.0 for n in range(50))
    assert extinction_by_level(0.45, 40) >= 0.99
    assert extinction_by_level(0.7, 0) == 0.0
    assert extinction_limit(0.5) == 1.0
    assert extinction_limit(0.7) == pytest.approx((0.3 / 0.7) ** 2)


def test_extinction_monotone_in_depth():
    for p in (0.3, 0.6, 0.9):
        qs = [extinction_by_level(p, n) for n in range(60)]
        assert all(b >= a for a, b in zip(qs, qs[1:]))
        assert qs[-1] <= extinction_limit(p) + 1e-12


def test_argument_checks():
    with pytest.raises(ValueError):
        run_trial(63, 0.5, 1)
    with pytest.raises(ValueError):
        run_trial(3, 1.5, 1)
    with pytest.raises(ValueError):
        monte_carlo(3, 0.5, 0, 1)
