#!/usr/bin/env python3
"""Screen every presentation in a corpus directory and print one status row per file.

Usage: python3 scripts/run_corpus.py [CORPUS_DIR] [--json OUT]
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from quiveralg.screening import CHECK_ORDER, run_pipeline
from quiveralg.textformat import load

SYMBOL = {"pass": ".", "fail": "F", "inapplicable": "-", "inconclusive": "?"}
SHORT = {"SYMMETRIC": "sym", "PERIOD4": "per4", "L21": "L21", "L22": "L22", "ONE_VERTEX_TRIANGLE": "1vt",
         "DIMVEC_EQ": "dv=", "DIMVEC_STRICT": "dv>", "TRIANGLE_FORCED": "tF", "TRIANGLE_RN": "tRN",
         "SQUARE_FORCED": "sF", "SQUARE_LEMMA": "sq", "PATH4_REDUCTION": "p4", "VERTEX_TYPE_R": "vR",
         "WILD_FACTOR": "wild"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", nargs="?", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    ap.add_argument("--json", help="write all reports to this file")
    args = ap.parse_args()

    files = sorted(Path(args.corpus).glob("*.quiv"))
    width = max(len(f.stem) for f in files)
    print(" " * width + "  " + " ".join(f"{SHORT[c]:>4}" for c in CHECK_ORDER) + "    dim    ms")
    reports = {}
    for f in files:
        t0 = time.perf_counter()
        rep = run_pipeline(load(f))
        ms = (time.perf_counter() - t0) * 1000
        alg = rep.presentation.get("algebra")
        dim = alg["dimension"] if alg else "-"
        print(f"{f.stem:<{width}}  " + " ".join(f"{SYMBOL[c.status]:>4}" for c in rep.checks)
              + f"  {dim:>5} {ms:5.0f}")
        reports[f.stem] = json.loads(rep.dumps())
    print("legend: . pass  F fail  - inapplicable  ? inconclusive")
    if args.json:
        Path(args.json).write_text(json.dumps(reports, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {args.json}")


if __name__ == "__main__":
    main()
