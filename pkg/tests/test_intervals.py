from itertools import combinations, product

import pytest

from phicantor.golden import GoldenRational
from phicantor.intervals import (
    distinct_intervals,
    intersection_length,
    interval_of,
    verify_intersection_spectrum,
)
from phicantor.words import fibonacci

PHI = GoldenRational.phi_pow(1)


def inv(k):
    return GoldenRational.phi_pow(-k)


def test_interval_examples():
    iv = interval_of("0")
    assert iv.left == 0 and iv.right == 1
    assert interval_of("011") == interval_of("100")
    iv = interval_of("11")
    assert iv.left == 1 and iv.right == PHI


def test_intersection_examples():
    assert intersection_length(interval_of("100"), interval_of("011")) == inv(2)
    assert intersection_length(interval_of("00"), interval_of("11")) == 0
    assert intersection_length(interval_of("00"), interval_of("01")) == inv(3)
    assert intersection_length(interval_of("0"), interval_of("1")) == inv(2)
    with pytest.raises(ValueError):
        intersection_length(interval_of("0"), interval_of("00"))


def test_spectrum_brute_force_n4():
    # independent route: pairwise exact lengths through PhiInterval
    n = 4
    allowed = {GoldenRational(0), inv(n + 1), inv(n), inv(n - 1)}
    words = ["".join(t) for t in product("01", repeat=n)]
    for c, d in combinations(words, 2):
        assert intersection_length(interval_of(c), interval_of(d)) in allowed
    rep = verify_intersection_spectrum(n)
    assert rep.ok and rep.pairs == len(words) * (len(words) - 1) // 2


def test_spectrum_small_levels():
    assert verify_intersection_spectrum(1).counts == {"0": 0, "phi^-2": 1, "phi^-1": 0, "phi^-0": 0}
    assert verify_intersection_spectrum(3).counts["phi^-2"] == 1


def test_self_intersection_and_containment():
    for n in range(1, 9):
        for t in product("01", repeat=n):
            iv = interval_of("".join(t))
            assert intersection_length(iv, iv) == inv(n - 1)
            assert iv.right <= PHI and iv.left >= 0


def test_distinct_intervals():
    words = ["".join(t) for t in product("01", repeat=3)]
    assert len(distinct_intervals(words)) == 7
    assert len(distinct_intervals(["100", "011"])) == 1
    assert distinct_intervals([]) == set()
    for n in range(1, 13):
        words = ["".join(t) for t in product("01", repeat=n)]
        assert len(distinct_intervals(words)) == fibonacci(n + 3) - 1
