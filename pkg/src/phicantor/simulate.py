"""Seeded realizations of the random retention tree.

Every node of the binary tree draws its own uniform from a counter-based hash
of ``(trial seed, node id)``, so a realization does not depend on traversal
order, batching or the number of worker processes.  Tree words are kept in
retention (IFS) order: the first digit is the first map applied, so the
interval of a tree word ``t`` is the interval of the reversed word.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .words import fibonacci

__all__ = [
    "MAX_DEPTH",
    "McSummary",
    "SimulationOutcome",
    "extinction_by_level",
    "extinction_limit",
    "monte_carlo",
    "run_trial",
    "trial_seed",
]

MAX_DEPTH = 62  # node ids (1 << depth) | path must fit in 64 bits
MAX_NODES = 1 << 26
_MASK = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def _mix_int(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _mix(z: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; uint64 array arithmetic wraps modulo 2**64
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def trial_seed(seed: int, index: int) -> int:
    """Seed of trial ``index`` in a Monte Carlo run with master ``seed``."""
    return _mix_int(seed + (index + 1) * _GOLDEN_GAMMA)


def _uniforms(seeds: np.ndarray, node_ids: np.ndarray) -> np.ndarray:
    h = _mix(seeds ^ _mix(node_ids))
    return (h >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _fib_pair(k: int) -> tuple[int, int]:
    # phi**k = F_{k-1} + F_k * phi
    return (fibonacci(k - 1) if k else 1), fibonacci(k)


@dataclass
class _Level:
    trial: np.ndarray  # index into the batch
    path: np.ndarray  # uint64, first tree digit is the most significant bit
    a: np.ndarray  # interval left endpoint * phi**depth = a + b*phi
    b: np.ndarray


def _grow(n: int, p: float, seeds: np.ndarray, keep_levels: bool = False) -> list[_Level]:
    """Expand a batch of independent trees level by level down to depth ``n``."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    lvl = _Level(
        np.arange(len(seeds), dtype=np.int64),
        np.zeros(len(seeds), dtype=np.uint64),
        np.zeros(len(seeds), dtype=np.int64),
        np.zeros(len(seeds), dtype=np.int64),
    )
    levels = [lvl]
    for depth in range(n):
        if len(lvl.path) == 0:
            if keep_levels:
                levels.append(lvl)
            else:
                levels = [lvl]
            continue
        fa, fb = _fib_pair(depth)
        trial = np.repeat(lvl.trial, 2)
        digit = np.tile(np.array([0, 1], dtype=np.uint64), len(lvl.path))
        path = (np.repeat(lvl.path, 2) << np.uint64(1)) | digit
        node_id = path | np.uint64(1 << (depth + 1))
        keep = _uniforms(seeds[trial], node_id) < p
        d = digit[keep].astype(np.int64)
        # left endpoint numerator gains digit * phi**depth
        lvl = _Level(
            trial[keep],
            path[keep],
            np.repeat(lvl.a, 2)[keep] + d * fa,
            np.repeat(lvl.b, 2)[keep] + d * fb,
        )
        if len(lvl.path) > MAX_NODES:
            raise MemoryError(f"more than {MAX_NODES} live nodes at depth {depth + 1}")
        if keep_levels:
            levels.append(lvl)
        else:
            levels = [lvl]
    return levels


def _distinct_per_trial(lvl: _Level, trials: int) -> np.ndarray:
    if len(lvl.path) == 0:
        return np.zeros(trials, dtype=np.int64)
    keys = np.unique(np.stack([lvl.trial, lvl.a, lvl.b], axis=1), axis=0)
    return np.bincount(keys[:, 0], minlength=trials).astype(np.int64)


def _check_args(n: int, p: float) -> None:
    if not 0 <= n <= MAX_DEPTH:
        raise ValueError(f"depth must be in [0, {MAX_DEPTH}]")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")


@dataclass
class SimulationOutcome:
    n: int
    p: float
    seed: int
    paths: np.ndarray  # surviving tree words as integers
    distinct_count: int
    levels: list[np.ndarray] | None = field(default=None, repr=False)

    @property
    def extinct(self) -> bool:
        return len(self.paths) == 0

    @property
    def survivors(self) -> list[str]:
        """Surviving tree words, in retention order."""
        if self.n == 0:
            return [""] * len(self.paths)
        return [format(int(x), f"0{self.n}b") for x in self.paths]

    def level_words(self, k: int) -> list[str]:
        if self.levels is None:
            raise ValueError("trial was run without keep_levels")
        if k == 0:
            return [""] * len(self.levels[0])
        return [format(int(x), f"0{k}b") for x in self.levels[k]]


def run_trial(n: int, p: float, seed: int, keep_levels: bool = False) -> SimulationOutcome:
    _check_args(n, p)
    levels = _grow(n, p, np.array([seed & _MASK], dtype=np.uint64), keep_levels)
    last = levels[-1]
    return SimulationOutcome(
        n,
        p,
        seed,
        np.sort(last.path),
        int(_distinct_per_trial(last, 1)[0]),
        [np.sort(lv.path) for lv in levels] if keep_levels else None,
    )


@dataclass(frozen=True)
class McSummary:
    n: int
    p: float
    trials: int
    seed: int
    mean_distinct: float
    std_err: float
    extinction_freq: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "mean_distinct": self.mean_distinct,
            "std_err": self.std_err,
            "extinction_freq": self.extinction_freq,
        }


def _chunk_counts(n: int, p: float, seed: int, start: int, stop: int) -> np.ndarray:
    seeds = np.array([trial_seed(seed, i) for i in range(start, stop)], dtype=np.uint64)
    return _distinct_per_trial(_grow(n, p, seeds)[-1], stop - start)


def monte_carlo(
    n: int,
    p: float,
    trials: int,
    seed: int,
    workers: int = 1,
    chunk: int = 2000,
) -> McSummary:
    """Distinct-interval counts over ``trials`` independent trees.

    Results are identical for any ``workers`` / ``chunk`` setting: per-trial
    counts are computed from per-trial seeds and reduced in trial order.
    """
    _check_args(n, p)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    bounds = [(s, min(s + chunk, trials)) for s in range(0, trials, chunk)]
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_chunk_counts, *zip(*[(n, p, seed, s, e) for s, e in bounds])))
    else:
        parts = [_chunk_counts(n, p, seed, s, e) for s, e in bounds]
    counts = np.concatenate(parts)
    mean = float(counts.sum()) / trials
    std_err = float(counts.std(ddof=1)) / math.sqrt(trials) if trials > 1 else 0.0
    return McSummary(n, p, trials, seed, mean, std_err, int((counts == 0).sum()) / trials)


def extinction_by_level(p: float, n: int) -> float:
    """P(tree dead by depth ``n``) by iterating ``q -> ((1-p) + p*q)**2`` from 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    if n < 0:
        raise ValueError("n must be non-negative")
    q = 0.0
    for _ in range(n):
        q = ((1.0 - p) + p * q) ** 2
    return q


def extinction_limit(p: float) -> float:
    """Smallest fixed point of the offspring generating function."""
    if p <= 0.5:
        return 1.0
    return ((1.0 - p) / p) ** 2
