"""Band data: the retained intervals of each level and their pairwise overlaps.

One CSV row per distinct interval (``kind == "interval"``) and per
positive-length overlap of two intervals of the same level
(``kind == "overlap"``, ``word`` holds both greedy words joined by ``|``).
Endpoints are exact: ``(a + b*phi) * phi**-scale``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, TextIO

from .golden import GoldenInt, GoldenRational, sign_ab
from .simulate import run_trial
from .words import iter_greedy, normalize_to_greedy, scaled_value

__all__ = [
    "BAND_FIELDS",
    "BandRow",
    "DETERMINISTIC_MAX_LEN",
    "RANDOM_MAX_LEN",
    "emit_bands",
    "read_bands_csv",
    "write_bands_csv",
]

BAND_FIELDS = (
    "kind",
    "level",
    "word",
    "left_a",
    "left_b",
    "left_scale",
    "right_a",
    "right_b",
    "right_scale",
)
DETERMINISTIC_MAX_LEN = 16
RANDOM_MAX_LEN = 24


@dataclass(frozen=True)
class BandRow:
    kind: str
    level: int
    word: str
    left: GoldenRational
    right: GoldenRational

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "level": self.level,
            "word": self.word,
            "left_a": self.left.num.a,
            "left_b": self.left.num.b,
            "left_scale": self.left.scale,
            "right_a": self.right.num.a,
            "right_b": self.right.num.b,
            "right_scale": self.right.scale,
        }


def _cmp(x: tuple[int, int], y: tuple[int, int]) -> int:
    return sign_ab(x[0] - y[0], x[1] - y[1])


def _level_rows(k: int, words: Iterable[str]) -> list[BandRow]:
    by_value: dict[tuple[int, int], str] = {}
    for w in words:
        by_value.setdefault(scaled_value(w), w)
    lefts = sorted(by_value, key=cmp_to_key(_cmp))

    def gr(v: tuple[int, int]) -> GoldenRational:
        return GoldenRational(GoldenInt(*v), k)

    # interval length at scale k is phi
    rights = [(a, b + 1) for a, b in lefts]
    rows = [BandRow("interval", k, by_value[l], gr(l), gr(r)) for l, r in zip(lefts, rights)]
    for i, (li, ri) in enumerate(zip(lefts, rights)):
        for j in range(i + 1, len(lefts)):
            if _cmp(lefts[j], ri) >= 0:
                break
            word = f"{by_value[li]}|{by_value[lefts[j]]}"
            rows.append(BandRow("overlap", k, word, gr(lefts[j]), gr(ri)))
    return rows


def emit_bands(
    n: int,
    p: float | None = None,
    seed: int | None = None,
    deterministic: bool = False,
) -> list[BandRow]:
    """Band rows for levels ``0..n``.

    With ``deterministic=True`` every interval is kept; otherwise the
    realization ``run_trial(n, p, seed)`` is used.
    """
    if deterministic:
        if not 0 <= n <= DETERMINISTIC_MAX_LEN:
            raise ValueError(f"deterministic bands capped at n = {DETERMINISTIC_MAX_LEN}")
        per_level = [iter_greedy(k) for k in range(n + 1)]
    else:
        if p is None or seed is None:
            raise ValueError("random bands need p and seed")
        if not 0 <= n <= RANDOM_MAX_LEN:
            raise ValueError(f"random bands capped at n = {RANDOM_MAX_LEN}")
        outcome = run_trial(n, p, seed, keep_levels=True)
        per_level = [
            (normalize_to_greedy(t[::-1]) for t in outcome.level_words(k)) for k in range(n + 1)
        ]
    rows: list[BandRow] = []
    for k, words in enumerate(per_level):
        rows.extend(_level_rows(k, words))
    return rows


def write_bands_csv(rows: Iterable[BandRow], fh: TextIO) -> None:
    writer = csv.DictWriter(fh, fieldnames=BAND_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_dict())


def read_bands_csv(fh: TextIO | str) -> list[BandRow]:
    if isinstance(fh, str):
        fh = io.StringIO(fh)
    out = []
    for r in csv.DictReader(fh):
        out.append(
            BandRow(
                r["kind"],
                int(r["level"]),
                r["word"],
                GoldenRational(GoldenInt(int(r["left_a"]), int(r["left_b"])), int(r["left_scale"])),
                GoldenRational(GoldenInt(int(r["right_a"]), int(r["right_b"])), int(r["right_scale"])),
            )
        )
    return out
