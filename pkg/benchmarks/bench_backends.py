"""Time the level DP on the benchmark families with each available backend.

    python benchmarks/bench_backends.py [--repeat R] [--include-slow] [--json]

Both passes run (rising for the count, falling for first letters), and the
backends must agree on every number.  CB(4,4,4) takes minutes with the
pure-Python backend, so it only runs with ``--include-slow``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from shellkit import _backend
from shellkit.generators import (
    K4_EDGES, gen_chessboard, gen_m2m, gen_partition_matroid, gen_spanning_trees,
    partition_blocks,
)
from shellkit.search import falling_dp, rising_dp
from shellkit.shelling import pss_rows

INSTANCES = [
    ("CB(4,3,2,1)", lambda: gen_chessboard([4, 3, 2, 1]), False),
    ("M(2,6)", lambda: gen_m2m(6), False),
    ("PM(2,2,2,2)", lambda: gen_partition_matroid(partition_blocks([2, 2, 2, 2])), False),
    ("M(K4)", lambda: gen_spanning_trees(K4_EDGES), False),
    ("CB(3,2,2,2,1)", lambda: gen_chessboard([3, 2, 2, 2, 1]), False),
    ("PM(3,3,2)", lambda: gen_partition_matroid(partition_blocks([3, 3, 2])), False),
    ("CB(3,3,2,2,1)", lambda: gen_chessboard([3, 3, 2, 2, 1]), False),
    ("CB(4,4,4)", lambda: gen_chessboard([4, 4, 4]), True),
]


def best_of(repeat: int, fn):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--include-slow", action="store_true")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    names = sorted(_backend.BACKENDS)
    if "compiled" not in names:
        print("compiled backend not built; timing the python backend only", file=sys.stderr)
    rows = []
    for label, make, slow in INSTANCES:
        p = pss_rows(make())
        results = {}
        for name in names:
            if slow and name == "python" and not args.include_slow:
                continue
            t_up, up = best_of(args.repeat, lambda: rising_dp(p, backend=name))
            t_down, down = best_of(args.repeat, lambda: falling_dp(p, backend=name))
            results[name] = (up.total, up.by_last, up.max_partial_length, down, t_up, t_down)
        values = {repr(r[:4]) for r in results.values()}
        if len(values) != 1:
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        row = {"instance": label, "n": p.n, "count": str(next(iter(results.values()))[0])}
        for name, r in results.items():
            row[f"{name}_rise_s"] = round(r[4], 4)
            row[f"{name}_fall_s"] = round(r[5], 4)
        if "compiled" in results and "python" in results:
            row["speedup"] = round((results["python"][4] + results["python"][5])
                                   / max(results["compiled"][4] + results["compiled"][5], 1e-9), 1)
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    cols = ["instance", "n", "count"] + [f"{b}_{d}_s" for b in names for d in ("rise", "fall")]
    if len(names) > 1:
        cols.append("speedup")
    widths = {c: max(len(c), *(len(str(r.get(c, "-"))) for r in rows)) for c in cols}
    print("  ".join(c.ljust(widths[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r.get(c, "-")).ljust(widths[c]) for c in cols))
    return 0


if __name__ == "__main__":
    sys.exit(main())
