"""Exact intervals ``I_w = [value(w), value(w) + phi**-(n-1)]`` and their overlaps."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .classes import oracle_classes
from .golden import GoldenInt, GoldenRational, sign_ab
from .words import check_word, scaled_value, value_of

__all__ = [
    "PhiInterval",
    "SpectrumReport",
    "distinct_intervals",
    "intersection_length",
    "interval_of",
    "overlap_segment",
    "spectrum_labels",
    "verify_intersection_spectrum",
]


@dataclass(frozen=True)
class PhiInterval:
    """Closed interval of length ``phi**-(level-1)`` starting at ``left``."""

    left: GoldenRational
    level: int

    @property
    def length(self) -> GoldenRational:
        return GoldenRational.phi_pow(1 - self.level)

    @property
    def right(self) -> GoldenRational:
        return self.left + self.length

    def __float__(self) -> float:  # midpoint, for plotting
        return float(self.left) + float(self.length) / 2

    def as_tuple(self) -> tuple[float, float]:
        return float(self.left), float(self.right)


def interval_of(w: str) -> PhiInterval:
    check_word(w)
    return PhiInterval(value_of(w), len(w))


def overlap_segment(x: PhiInterval, y: PhiInterval) -> tuple[GoldenRational, GoldenRational] | None:
    """The exact segment ``x ∩ y``, or ``None`` if the intersection is empty."""
    if x.level != y.level:
        raise ValueError("intervals must share a level")
    lo = max(x.left, y.left)
    hi = min(x.right, y.right)
    if hi < lo:
        return None
    return lo, hi


def intersection_length(x: PhiInterval, y: PhiInterval) -> GoldenRational:
    seg = overlap_segment(x, y)
    if seg is None:
        return GoldenRational(0, x.level)
    lo, hi = seg
    return (hi - lo).rescale(max(x.level, lo.scale, hi.scale))


def distinct_intervals(words: Iterable[str]) -> set[PhiInterval]:
    words = list(words)
    if len({len(w) for w in words}) > 1:
        raise ValueError("all words must have the same length")
    return {interval_of(w) for w in words}


def spectrum_labels(n: int) -> dict[tuple[int, int], str]:
    """Allowed overlap lengths at level ``n``, scaled by ``phi**n``, with labels."""
    return {
        (0, 0): "0",
        (-1, 1): f"phi^-{n + 1}",  # phi**-1
        (1, 0): f"phi^-{n}",
        (0, 1): f"phi^-{n - 1}",
    }


@dataclass
class SpectrumReport:
    n: int
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[str, str, GoldenRational]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def pairs(self) -> int:
        return sum(self.counts.values())


def verify_intersection_spectrum(n: int) -> SpectrumReport:
    """Check every pair of distinct words of length ``n`` against the overlap spectrum.

    Words are grouped by interval first; a pair from the same group overlaps
    fully, and pairs from different groups are checked once per interval
    pair and weighted by the group sizes.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    labels = spectrum_labels(n)
    report = SpectrumReport(n, {v: 0 for v in labels.values()})
    groups = sorted(oracle_classes(n).items())
    for (_, members) in groups:
        m = len(members)
        report.counts[labels[(0, 1)]] += m * (m - 1) // 2
    for ((a1, b1), m1), ((a2, b2), m2) in combinations(groups, 2):
        da, db = a2 - a1, b2 - b1
        if sign_ab(da, db) < 0:
            da, db = -da, -db
        # scaled overlap = phi - |delta|
        oa, ob = -da, 1 - db
        if sign_ab(oa, ob) <= 0:
            oa, ob = 0, 0
        label = labels.get((oa, ob))
        if label is None:
            report.violations.append(
                (m1[0], m2[0], GoldenRational(GoldenInt(oa, ob), n))
            )
        else:
            report.counts[label] += len(m1) * len(m2)
    return report
