"""Classes of words sharing a base-phi value, and their sizes.

Two words of equal length are equivalent when they have the same value, i.e.
when their intervals coincide.  The class size ``#[c]`` is computed three
ways: exhaustive enumeration (:func:`class_members_oracle`), a digit DP over
the scaled running difference (:func:`multiplicity`) and an aggregated DP
over all greedy words at once (:func:`histogram`).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .golden import sign_ab
from .words import (
    check_word,
    fibonacci,
    is_greedy,
    iter_greedy,
    normalize_to_greedy,
    scaled_value,
    suffix_class,
)

__all__ = [
    "ClassRecord",
    "MultiplicityHistogram",
    "Prop2Violation",
    "ORACLE_MAX_LEN",
    "DP_MAX_LEN",
    "HISTOGRAM_MAX_LEN",
    "check_prop2",
    "class_members_oracle",
    "histogram",
    "multiplicity",
    "oracle_classes",
]

ORACLE_MAX_LEN = 20
DP_MAX_LEN = 60
HISTOGRAM_MAX_LEN = 30


@dataclass(frozen=True)
class ClassRecord:
    rep: str
    multiplicity: int
    members: tuple[str, ...] | None = None

    def to_json(self) -> dict:
        out = {"rep": self.rep, "multiplicity": self.multiplicity}
        if self.members is not None:
            out["members"] = list(self.members)
        return out


@dataclass
class MultiplicityHistogram:
    """``counts[m]`` is the number of classes of size ``m`` at level ``n``."""

    n: int
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def num_classes(self) -> int:
        return sum(self.counts.values())

    @property
    def mass(self) -> int:
        return sum(m * c for m, c in self.counts.items())

    def check(self) -> list[str]:
        problems = []
        if self.num_classes != fibonacci(self.n + 3) - 1:
            problems.append(f"class count {self.num_classes} != F_{self.n + 3}-1")
        if self.mass != 2**self.n:
            problems.append(f"mass {self.mass} != 2^{self.n}")
        return problems

    def rows(self) -> list[tuple[int, int, int]]:
        return [(self.n, m, self.counts[m]) for m in sorted(self.counts)]


# -- brute force -------------------------------------------------------------


@lru_cache(maxsize=4)
def oracle_classes(n: int) -> dict[tuple[int, int], tuple[str, ...]]:
    """Group all of ``{0,1}^n`` by exact scaled value (exhaustive)."""
    if not 0 <= n <= ORACLE_MAX_LEN:
        raise ValueError(f"oracle length must be in [0, {ORACLE_MAX_LEN}]")
    level = [("", 0, 0)]
    for _ in range(n):
        level = [
            (w + d, b + int(d), a + b) for w, a, b in level for d in "01"
        ]
    groups: dict[tuple[int, int], list[str]] = defaultdict(list)
    for w, a, b in level:
        groups[(a, b)].append(w)
    return {k: tuple(v) for k, v in groups.items()}


def class_members_oracle(w: str) -> ClassRecord:
    check_word(w)
    if len(w) > ORACLE_MAX_LEN:
        raise ValueError(f"oracle capped at length {ORACLE_MAX_LEN}")
    members = oracle_classes(len(w))[scaled_value(w)]
    return ClassRecord(normalize_to_greedy(w), len(members), members)


# -- digit DP ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _tail_bound(k: int) -> tuple[int, int]:
    """``sum(phi**-j for j in 1..k)`` as ``(a, b)``."""
    if k == 0:
        return (0, 0)
    a, b = _tail_bound(k - 1)
    a += 1
    # divide by phi
    return (b - a, a)


def _viable(a: int, b: int, k: int) -> bool:
    # |a + b*phi| <= tail bound: the remaining k digits can still cancel it
    ta, tb = _tail_bound(k)
    return sign_ab(ta - a, tb - b) >= 0 and sign_ab(ta + a, tb + b) >= 0


@lru_cache(maxsize=None)
def _step(a: int, b: int, wd: int, k: int) -> tuple[tuple[int, int], ...]:
    """Successor differences after one digit of ``w`` with ``k`` digits left."""
    out = []
    for dd in (0, 1):
        # phi*(a + b*phi) + (wd - dd)
        na, nb = b + wd - dd, a + b
        if _viable(na, nb, k):
            out.append((na, nb))
    return tuple(out)


def multiplicity(w: str) -> int:
    """``#[w]`` by DP over the scaled difference ``(value(w) - value(d)) * phi**i``."""
    check_word(w)
    n = len(w)
    if n > DP_MAX_LEN:
        raise ValueError(f"multiplicity capped at length {DP_MAX_LEN}")
    states = {(0, 0): 1}
    for i, ch in enumerate(w, start=1):
        wd = ch == "1"
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        for (a, b), cnt in states.items():
            for s in _step(a, b, wd, n - i):
                nxt[s] += cnt
        states = nxt
    return states.get((0, 0), 0)


# -- histogram ---------------------------------------------------------------

# 011-automaton: state 0 = safe, 1 = last digit 0, 2 = last digits 01
_AUT = ((1, 0), (1, 2), (1, None))


def _histogram_aggregate(n: int) -> dict[int, int]:
    # Greedy prefixes are grouped by (automaton state, per-difference path counts);
    # prefixes sharing a key have identical futures.
    start = ((0, 0), 1)
    cur: dict[tuple, int] = {(0, (start,)): 1}
    for i in range(1, n + 1):
        k = n - i
        nxt: dict[tuple, int] = defaultdict(int)
        memo: dict[tuple, tuple] = {}
        for (aut, vec), cnt in cur.items():
            for wd in (0, 1):
                na = _AUT[aut][wd]
                if na is None:
                    continue
                key = (vec, wd)
                nvec = memo.get(key)
                if nvec is None:
                    acc: dict[tuple[int, int], int] = defaultdict(int)
                    for (a, b), c in vec:
                        for s in _step(a, b, wd, k):
                            acc[s] += c
                    nvec = memo[key] = tuple(sorted(acc.items()))
                nxt[(na, nvec)] += cnt
        cur = nxt
    counts: dict[int, int] = defaultdict(int)
    for (_, vec), cnt in cur.items():
        counts[dict(vec).get((0, 0), 0)] += cnt
    return dict(counts)


def histogram(n: int, method: str = "aggregate") -> MultiplicityHistogram:
    """Count greedy words of length ``n`` by class size.

    ``method="per-word"`` runs :func:`multiplicity` on every greedy word;
    ``"aggregate"`` shares work between prefixes and reaches ``n = 30``
    in seconds.
    """
    if not 0 <= n <= HISTOGRAM_MAX_LEN:
        raise ValueError(f"histogram level must be in [0, {HISTOGRAM_MAX_LEN}]")
    if method == "aggregate":
        counts = _histogram_aggregate(n)
    elif method == "per-word":
        counts = defaultdict(int)
        for w in iter_greedy(n):
            counts[multiplicity(w)] += 1
        counts = dict(counts)
    else:
        raise ValueError(f"unknown method {method!r}")
    return MultiplicityHistogram(n, dict(sorted(counts.items())))


# -- class-size relations ----------------------------------------------------


@dataclass(frozen=True)
class Prop2Violation:
    relation: str
    word: str
    lhs: int
    rhs: int


def check_prop2(n: int, backend: str = "dp") -> list[Prop2Violation]:
    """Check the three class-size relations for every greedy ``c`` of length ``n``.

    (i)   ``c1`` greedy and ending in 1 implies ``#[c1] == #[c]``
    (ii)  ``c0`` ending in ``10`` implies ``#[c0] == #[c]``
    (iii) ``c`` not all-zero implies ``#[c00] >= #[c] + 1``
    """
    if backend == "dp":
        size = multiplicity
    elif backend == "oracle":
        if n + 2 > ORACLE_MAX_LEN:
            raise ValueError("oracle backend needs n + 2 <= %d" % ORACLE_MAX_LEN)

        def size(w: str) -> int:
            return len(oracle_classes(len(w))[scaled_value(w)])
    else:
        raise ValueError(f"unknown backend {backend!r}")

    out = []
    for c in iter_greedy(n):
        m = size(c)
        if is_greedy(c + "1"):
            m1 = size(c + "1")
            if m1 != m:
                out.append(Prop2Violation("i", c, m1, m))
        if c.endswith("1"):
            m0 = size(c + "0")
            if m0 != m:
                out.append(Prop2Violation("ii", c, m0, m))
        if suffix_class(c) >= 0:
            m00 = size(c + "00")
            if m00 < m + 1:
                out.append(Prop2Violation("iii", c, m00, m + 1))
    return out
