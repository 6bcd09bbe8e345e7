"""Command-line entry point: ``phicantor <subcommand> ...``.

Exit status: 0 when every check passes, 1 when a check finds a violation,
2 on usage errors or exceeded caps.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager
from typing import Sequence

from . import bands as bands_mod
from .classes import (
    ClassRecord,
    ORACLE_MAX_LEN,
    check_prop2,
    class_members_oracle,
    histogram,
    multiplicity,
)
from .expected import DEFAULT_P_GRID, check_recursion_bounds, expected_curve
from .intervals import distinct_intervals, verify_intersection_spectrum
from .simulate import monte_carlo
from .words import check_level_recursion, fibonacci, iter_greedy, level_partition, normalize_to_greedy

COUNT_MAX = 30
SPECTRUM_MAX = 12
PROP2_MAX = 18
PROP2_ORACLE_MAX = 14


class CheckFailed(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    if x is None:
        return ""
    return str(x)


@contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _emit(rows: list[dict], fields: Sequence[str], args) -> None:
    with _open_out(args.output) as fh:
        if args.format == "json":
            json.dump(rows, fh, indent=2)
            fh.write("\n")
        else:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(fields)
            for r in rows:
                w.writerow([fmt(r[f]) for f in fields])


def parse_grid(text: str | None) -> list[float]:
    """``"0.5,0.6"`` or ``"start:stop:step"`` (inclusive stop)."""
    if not text:
        return list(DEFAULT_P_GRID)
    if ":" in text:
        start, stop, step = (float(t) for t in text.split(":"))
        k = int(round((stop - start) / step))
        return [round(start + i * step, 12) for i in range(k + 1)]
    return [float(t) for t in text.split(",") if t.strip()]


def _cap(name: str, value: int, lo: int, hi: int) -> int:
    if not lo <= value <= hi:
        raise ValueError(f"--{name} must be in [{lo}, {hi}]")
    return value


# -- subcommands ---------------------------------------------------------------


def cmd_count(args) -> None:
    n = _cap("n", args.n, 1, COUNT_MAX)
    rows, prev, bad = [], None, False
    for k in range(1, n + 1):
        part = level_partition(k)
        ok = part.total == fibonacci(k + 3) - 1
        if prev is not None:
            ok = ok and not check_level_recursion(prev, part)
        bad |= not ok
        rows.append(
            {
                "n": k,
                "greedy": part.total,
                "fib": fibonacci(k + 3) - 1,
                "G0": part.count_G0,
                "GH": part.count_GH,
                "ok": ok,
            }
        )
        prev = part
    _emit(rows, ["n", "greedy", "fib", "G0", "GH", "ok"], args)
    if bad:
        raise CheckFailed("counting relations violated")


def _record(w: str) -> ClassRecord:
    if len(w) <= ORACLE_MAX_LEN:
        return class_members_oracle(w)
    return ClassRecord(normalize_to_greedy(w), multiplicity(w))


def cmd_classes(args) -> None:
    if args.word is not None:
        recs = [_record(args.word)]
    else:
        if args.n is None:
            raise ValueError("need --n or --word")
        n = _cap("n", args.n, 0, ORACLE_MAX_LEN)
        recs = [_record(w) for w in iter_greedy(n)]
    rows = [
        {
            "rep": r.rep,
            "multiplicity": r.multiplicity,
            "members": " ".join(r.members) if r.members is not None else "",
        }
        for r in recs
    ]
    if args.format == "json":
        rows = [r.to_json() for r in recs]
    _emit(rows, ["rep", "multiplicity", "members"], args)


def cmd_histogram(args) -> None:
    h = histogram(args.n)
    rows = [{"n": n, "m": m, "count": c} for n, m, c in h.rows()]
    _emit(rows, ["n", "m", "count"], args)


def cmd_expected_dim(args) -> None:
    curve = expected_curve(args.n, parse_grid(args.p_grid), tree_exact=args.tree_exact)
    rows = curve.rows()
    fields = ["p", "e_paper", "e_tree", "estimate", "formula", "abs_err"]
    if not args.tree_exact:
        fields.remove("e_tree")
        for r in rows:
            del r["e_tree"]
    _emit(rows, fields, args)


def cmd_simulate(args) -> None:
    summary = monte_carlo(args.n, args.p, args.trials, args.seed, workers=args.workers)
    with _open_out(args.output) as fh:
        json.dump(summary.to_json(), fh, sort_keys=True)
        fh.write("\n")
    if args.emit_bands:
        rows = bands_mod.emit_bands(args.n, args.p, args.seed)
        with open(args.emit_bands, "w", newline="") as fh:
            bands_mod.write_bands_csv(rows, fh)


def cmd_bands(args) -> None:
    if args.deterministic:
        rows = bands_mod.emit_bands(args.n, deterministic=True)
    else:
        if args.p is None or args.seed is None:
            raise ValueError("bands needs --deterministic or both --p and --seed")
        rows = bands_mod.emit_bands(args.n, args.p, args.seed)
    with _open_out(args.output) as fh:
        if args.format == "json":
            json.dump([r.as_dict() for r in rows], fh, indent=2)
            fh.write("\n")
        else:
            bands_mod.write_bands_csv(rows, fh)


def _verify_prop1(n_max: int) -> dict:
    out = {"count_mismatch": [], "spectrum_violations": 0, "spectrum_levels": 0}
    for n in range(1, min(n_max, COUNT_MAX) + 1):
        expected = fibonacci(n + 3) - 1
        if sum(1 for _ in iter_greedy(n)) != expected:
            out["count_mismatch"].append(n)
        if n <= 16:
            words = (format(i, f"0{n}b") for i in range(2**n))
            if len(distinct_intervals(words)) != expected:
                out["count_mismatch"].append(n)
    for n in range(1, min(n_max, SPECTRUM_MAX) + 1):
        out["spectrum_violations"] += len(verify_intersection_spectrum(n).violations)
        out["spectrum_levels"] += 1
    out["violations"] = len(out["count_mismatch"]) + out["spectrum_violations"]
    return out


def _verify_prop2(n_max: int) -> dict:
    viol = []
    for n in range(1, min(n_max, PROP2_MAX) + 1):
        backend = "oracle" if n <= PROP2_ORACLE_MAX else "dp"
        viol += [v.__dict__ | {"n": n, "backend": backend} for v in check_prop2(n, backend)]
    return {"violations": len(viol), "details": viol[:50]}


def _verify_bounds(n_max: int) -> dict:
    n_max = min(n_max, COUNT_MAX)
    hists = {k: histogram(k) for k in range(1, n_max + 1)}
    table, viol = [], []
    for n in range(3, n_max + 1):
        rep = check_recursion_bounds(n, DEFAULT_P_GRID, hists)
        mins: dict[str, float] = {}
        for row in rep.rows:
            for rel, m in row.margins.items():
                mins[rel] = min(mins.get(rel, float("inf")), m)
        table.append({"n": n, "min_margin": mins})
        viol += [{"relation": r, "n": k, "p": p, "margin": m} for r, k, p, m in rep.violations]
    return {"violations": len(viol), "margins": table, "details": viol}


def cmd_verify(args) -> None:
    suites = ["prop1", "prop2", "bounds"] if args.suite == "all" else [args.suite]
    runners = {"prop1": _verify_prop1, "prop2": _verify_prop2, "bounds": _verify_bounds}
    report = {s: runners[s](args.n_max) for s in suites}
    with _open_out(args.output) as fh:
        json.dump(report, fh, indent=2, default=fmt)
        fh.write("\n")
    failed = [s for s in suites if report[s]["violations"]]
    if failed:
        raise CheckFailed(f"violations in: {', '.join(failed)}")


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phicantor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, formats: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name)
        sp.set_defaults(func=func)
        sp.add_argument("--output", "-o", default=None)
        if formats:
            sp.add_argument("--format", choices=["csv", "json"], default="csv")
        return sp

    sp = add("count", cmd_count)
    sp.add_argument("--n", type=int, required=True)

    sp = add("classes", cmd_classes)
    sp.add_argument("--n", type=int)
    sp.add_argument("--word")

    sp = add("histogram", cmd_histogram)
    sp.add_argument("--n", type=int, required=True)

    sp = add("expected-dim", cmd_expected_dim)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p-grid", default=None)
    sp.add_argument("--tree-exact", action="store_true")

    sp = add("simulate", cmd_simulate, formats=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--emit-bands", default=None)

    sp = add("bands", cmd_bands)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--deterministic", action="store_true")
    sp.add_argument("--p", type=float)
    sp.add_argument("--seed", type=int)

    sp = add("verify", cmd_verify, formats=False)
    sp.add_argument("--suite", choices=["prop1", "prop2", "bounds", "all"], default="all")
    sp.add_argument("--n-max", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CheckFailed as exc:
        print(f"phicantor: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OverflowError, MemoryError) as exc:
        print(f"phicantor: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
