"""Expected number of surviving intervals and the expected-dimension law.

Two expectations are available at level ``n``:

* :func:`expected_count_paper` prices each class of size ``m`` as
  ``1 - (1 - p**n)**m``, i.e. as if the ``m`` tree paths survived
  independently.  It only needs the multiplicity histogram, so it reaches
  ``n = 30``.
* :func:`expected_count_tree` is the exact expectation under the retention
  tree, where class members sharing ancestors survive together.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .classes import MultiplicityHistogram, histogram, oracle_classes
from .words import fibonacci

__all__ = [
    "BoundsReport",
    "BoundsRow",
    "DEFAULT_P_GRID",
    "ExpectedCurve",
    "LOG_PHI",
    "PHI_F",
    "TREE_MAX_LEN",
    "check_recursion_bounds",
    "dimension_estimate",
    "dimension_formula",
    "dimension_formula_osc",
    "expected_count_paper",
    "expected_count_tree",
    "expected_curve",
    "union_survival",
    "union_survival_inclusion_exclusion",
]

PHI_F = (1 + math.sqrt(5)) / 2
LOG_PHI = math.log(PHI_F)
TREE_MAX_LEN = 16

DEFAULT_P_GRID: tuple[float, ...] = tuple(
    sorted({round(0.5 + 0.05 * i, 2) for i in range(11)} | {PHI_F / 2})
)


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")


def _none_survive(m: int, x: float) -> float:
    # (1 - x)**m without cancellation for small x
    if x >= 1.0:
        return 0.0
    return math.exp(m * math.log1p(-x))


def expected_count_paper(n: int, p: float, hist: MultiplicityHistogram) -> float:
    _check_p(p)
    if hist.n != n:
        raise ValueError(f"histogram is for level {hist.n}, not {n}")
    x = p**n
    if x >= 1.0:
        return float(hist.num_classes)
    return math.fsum(cnt * -math.expm1(m * math.log1p(-x)) for m, cnt in hist.counts.items())


# -- exact tree expectation ---------------------------------------------------


def _prefixes(path: str) -> set[str]:
    return {path[:i] for i in range(1, len(path) + 1)}


def union_survival_inclusion_exclusion(paths: Sequence[str], p: float) -> float:
    """P(at least one path fully retained), by inclusion-exclusion over subsets.

    Cost is ``2**len(paths)``; meant as a cross-check for small classes.
    """
    _check_p(p)
    node_sets = [_prefixes(t) for t in paths]
    total = 0.0
    for r in range(1, len(paths) + 1):
        sgn = 1.0 if r % 2 else -1.0
        for subset in combinations(node_sets, r):
            total += sgn * p ** len(set().union(*subset))
    return total


def _trie_shape(paths: Iterable[str]) -> tuple:
    """Canonical unlabeled shape of the trie of equal-length paths."""
    paths = list(paths)
    if not paths[0]:
        return ()
    kids: dict[str, list[str]] = defaultdict(list)
    for t in paths:
        kids[t[0]].append(t[1:])
    return tuple(sorted(_trie_shape(v) for v in kids.values()))


def _shape_survival(shape: tuple, p: float) -> float:
    # probability that no leaf below a live node is reached, then complement
    def dead(s: tuple) -> float:
        if not s:
            return 0.0
        q = 1.0
        for child in s:
            q *= (1.0 - p) + p * dead(child)
        return q

    return 1.0 - dead(shape)


def union_survival(paths: Sequence[str], p: float) -> float:
    """P(at least one path fully retained) by recursion over the shared-prefix trie."""
    _check_p(p)
    return _shape_survival(_trie_shape(paths), p)


@lru_cache(maxsize=8)
def _class_shapes(n: int) -> tuple[tuple[tuple, int], ...]:
    counts: dict[tuple, int] = defaultdict(int)
    for members in oracle_classes(n).values():
        # retention-tree orientation is the reversed word
        counts[_trie_shape(m[::-1] for m in members)] += 1
    return tuple(counts.items())


def expected_count_tree(n: int, p: float) -> float:
    """Exact expected number of distinct surviving intervals at level ``n``."""
    _check_p(p)
    if not 0 <= n <= TREE_MAX_LEN:
        raise ValueError(f"tree expectation capped at n = {TREE_MAX_LEN}")
    if n == 0:
        return 1.0
    return math.fsum(cnt * _shape_survival(shape, p) for shape, cnt in _class_shapes(n))


# -- dimension ---------------------------------------------------------------


def dimension_formula(p: float) -> float:
    _check_p(p)
    if p <= 0.5:
        return 0.0
    if p >= PHI_F / 2:
        return 1.0
    return math.log(2 * p) / LOG_PHI


def dimension_formula_osc(p: float, q: float) -> float:
    """Expected dimension when the contraction ratio is ``1/q`` with ``q >= 2``."""
    _check_p(p)
    if q < 2:
        raise ValueError("q must be >= 2")
    if p <= 0.5:
        return 0.0
    return math.log(2 * p) / math.log(q)


def dimension_estimate(n: int, p: float, hist: MultiplicityHistogram) -> float:
    e = expected_count_paper(n, p, hist)
    if e <= 0:
        raise ValueError("expected count is zero; estimate undefined")
    return math.log(e) / (n * LOG_PHI)


@dataclass
class ExpectedCurve:
    n: int
    samples: list[tuple[float, float, float | None]] = field(default_factory=list)

    def rows(self) -> list[dict]:
        out = []
        for p, e_paper, e_tree in self.samples:
            formula = dimension_formula(p)
            est = math.log(e_paper) / (self.n * LOG_PHI) if e_paper > 0 else float("nan")
            out.append(
                {
                    "p": p,
                    "e_paper": e_paper,
                    "e_tree": e_tree,
                    "estimate": est,
                    "formula": formula,
                    "abs_err": abs(est - formula),
                }
            )
        return out


def expected_curve(
    n: int,
    p_grid: Iterable[float] = DEFAULT_P_GRID,
    hist: MultiplicityHistogram | None = None,
    tree_exact: bool = False,
) -> ExpectedCurve:
    hist = hist if hist is not None else histogram(n)
    curve = ExpectedCurve(n)
    for p in p_grid:
        e_tree = expected_count_tree(n, p) if tree_exact else None
        curve.samples.append((p, expected_count_paper(n, p, hist), e_tree))
    return curve


# -- bounds ------------------------------------------------------------------


@dataclass
class BoundsRow:
    n: int
    p: float
    e_n: float
    margins: dict[str, float]


@dataclass
class BoundsReport:
    rows: list[BoundsRow] = field(default_factory=list)
    violations: list[tuple[str, int, float, float]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def violations_of(self, relation: str) -> list[tuple[str, int, float, float]]:
        return [v for v in self.violations if v[0] == relation]


RELATIONS = ("upper", "recursion", "lower", "lower_subcritical")


def check_recursion_bounds(
    n: int,
    p_grid: Iterable[float],
    hists: Mapping[int, MultiplicityHistogram],
    rel_tol: float = 1e-9,
) -> BoundsReport:
    """Evaluate the upper bound, recursion inequality and lower bounds at level ``n``.

    Margins are ``larger side - smaller side``; a margin below
    ``-rel_tol * max(1, E_n)`` is a violation.  Relations:

    ``upper``             E_n <= min((2p)^n, F_{n+3} - 1)
    ``recursion``         E_n >= E_{n-1} + E_{n-2} + 2^{n-2} p^n (1 - p^n),
                          the smaller levels evaluated at the same survival
                          probability p^n
    ``lower``             E_n >= (2^{n-1} - 2) / 2^n * min(2^n p^n, phi^n), p >= 1/2
    ``lower_subcritical`` E_n >= (2^{n-1} - 2) p^n, 1/2 <= p <= phi/2
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    report = BoundsReport()
    classes_n = fibonacci(n + 3) - 1
    for p in p_grid:
        _check_p(p)
        x = p**n
        e_n = expected_count_paper(n, p, hists[n])
        e_1 = expected_count_paper(n - 1, x ** (1 / (n - 1)), hists[n - 1])
        e_2 = expected_count_paper(n - 2, x ** (1 / (n - 2)), hists[n - 2])
        margins = {
            "upper": min((2 * p) ** n, classes_n) - e_n,
            "recursion": e_n - (e_1 + e_2 + 2 ** (n - 2) * x * (1 - x)),
        }
        if p >= 0.5:
            margins["lower"] = e_n - (2 ** (n - 1) - 2) / 2**n * min((2 * p) ** n, PHI_F**n)
        if 0.5 <= p <= PHI_F / 2:
            margins["lower_subcritical"] = e_n - (2 ** (n - 1) - 2) * x
        tol = rel_tol * max(1.0, e_n)
        for rel, m in margins.items():
            if m < -tol:
                report.violations.append((rel, n, p, m))
        report.rows.append(BoundsRow(n, p, e_n, margins))
    return report
