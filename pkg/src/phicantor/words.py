"""Binary words and their base-phi values.

Words are plain ``str`` objects over ``"01"``, most significant digit first,
so ``value_of(w) == sum(int(w[i-1]) * phi**-i)``.  A word is *greedy* when it
avoids the factor ``011``; every word can be rewritten to the greedy word of
the same length and value by replacing ``011`` with ``100``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .golden import GoldenInt, GoldenRational

__all__ = [
    "FORBIDDEN",
    "check_level_recursion",
    "LevelPartition",
    "check_word",
    "enumerate_greedy",
    "fibonacci",
    "is_greedy",
    "iter_greedy",
    "level_partition",
    "normalize_to_greedy",
    "scaled_value",
    "suffix_class",
    "value_of",
]

FORBIDDEN = "011"
FIB_MAX = 180


def check_word(w: str) -> str:
    if not isinstance(w, str) or w.strip("01"):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def fibonacci(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > FIB_MAX:
        raise OverflowError(f"fibonacci index capped at {FIB_MAX}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def scaled_value(w: str) -> tuple[int, int]:
    """Coefficients ``(a, b)`` of ``value_of(w) * phi**len(w)`` (Horner in Z[phi])."""
    a = b = 0
    for ch in w:
        # x -> phi*x + digit
        a, b = b + (ch == "1"), a + b
    return a, b


def value_of(w: str) -> GoldenRational:
    check_word(w)
    a, b = scaled_value(w)
    return GoldenRational(GoldenInt(a, b), len(w))


def is_greedy(w: str) -> bool:
    return FORBIDDEN not in w


def normalize_to_greedy(w: str) -> str:
    """Rewrite the leftmost ``011`` to ``100`` until none is left."""
    check_word(w)
    i = w.find(FORBIDDEN)
    while i >= 0:
        w = w[:i] + "100" + w[i + 3 :]
        # a new 011 can only start at most two places to the left
        i = w.find(FORBIDDEN, max(i - 2, 0))
    return w


def suffix_class(w: str) -> int:
    """Number of zeros after the last ``1``; ``-1`` for the all-zero word."""
    check_word(w)
    if not is_greedy(w):
        raise ValueError(f"{w!r} is not greedy")
    last = w.rfind("1")
    if last < 0:
        return -1
    return len(w) - 1 - last


# Forbidden-factor automaton for 011.  States track the longest suffix that
# is a proper prefix of 011: 0 -> "", 1 -> "0", 2 -> "01".
_NEXT = {
    (0, "0"): 1,
    (0, "1"): 0,
    (1, "0"): 1,
    (1, "1"): 2,
    (2, "0"): 1,
}


def iter_greedy(n: int) -> Iterator[str]:
    """Yield the greedy words of length ``n`` in lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    stack = [("", 0)]
    while stack:
        prefix, state = stack.pop()
        if len(prefix) == n:
            yield prefix
            continue
        # push "1" first so "0" is expanded first
        nxt = _NEXT.get((state, "1"))
        if nxt is not None:
            stack.append((prefix + "1", nxt))
        stack.append((prefix + "0", _NEXT[(state, "0")]))


@dataclass
class LevelPartition:
    """Sizes of the suffix classes ``G_n^h`` of the greedy words of length ``n``.

    ``count_G0`` is the number of words ending in ``1`` (the ``h == 0`` class)
    and ``count_GH`` the number ending in ``0``, the all-zero word included.
    """

    n: int
    counts: dict[int, int] = field(default_factory=dict)
    count_G0: int = 0
    count_GH: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def add(self, w: str) -> None:
        h = suffix_class(w)
        self.counts[h] = self.counts.get(h, 0) + 1
        if w.endswith("1"):
            self.count_G0 += 1
        else:
            self.count_GH += 1


def level_partition(n: int, words=None) -> LevelPartition:
    part = LevelPartition(n)
    for w in iter_greedy(n) if words is None else words:
        part.add(w)
    return part


def enumerate_greedy(n: int) -> tuple[list[str], LevelPartition]:
    words = list(iter_greedy(n))
    return words, level_partition(n, words)


def check_level_recursion(prev: LevelPartition, cur: LevelPartition) -> list[str]:
    """Check the level-to-level counting system between consecutive partitions.

    Returns the list of failing relations (empty when all hold)::

        #G_{n+1}   = 1 + #G_n^0 + 2 #G_n^H
        #G_{n+1}^0 = #G_n^H + 1
        #G_{n+1}^H = #G_n^0 + #G_n^H
    """
    failures = []
    if cur.total != 1 + prev.count_G0 + 2 * prev.count_GH:
        failures.append("total")
    if cur.count_G0 != prev.count_GH + 1:
        failures.append("G0")
    if cur.count_GH != prev.count_G0 + prev.count_GH:
        failures.append("GH")
    return failures
