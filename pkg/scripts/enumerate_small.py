#!/usr/bin/env python3
"""Count connected biserial quivers (no sinks or sources) on n vertices and how many survive each quiver-level screen.

Usage: python3 scripts/enumerate_small.py [--max-n N]
"""

from __future__ import annotations

import argparse
import time

from quiveralg.quiver import FILTERS, EnumerationStats, degree_sequence, enumerate_biserial_quivers


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()

    header = ["n", "generated"] + [f"after {f}" for f in FILTERS] + ["all 2-regular", "seconds"]
    print("  ".join(f"{h:>22}" if k > 1 else f"{h:>9}" for k, h in enumerate(header)))
    for n in range(1, args.max_n + 1):
        stats = EnumerationStats()
        t0 = time.perf_counter()
        survivors = list(enumerate_biserial_quivers(n, filters=FILTERS, stats=stats))
        dt = time.perf_counter() - t0
        regular = sum(1 for q in survivors if set(degree_sequence(q)) == {(2, 2)})
        row = [n, stats.generated] + [stats.surviving[f] for f in FILTERS] + [regular, f"{dt:.2f}"]
        print("  ".join(f"{v:>22}" if k > 1 else f"{v:>9}" for k, v in enumerate(row)))


if __name__ == "__main__":
    main()
