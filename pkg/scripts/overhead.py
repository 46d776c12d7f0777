"""Wall time with and without resolution-graph recording on the curated corpus.

Each run is a timeit batch long enough to be above timer resolution.  The
two modes are measured alternately and the median of three runs is reported.

    python3 scripts/overhead.py [--csv out.csv]
"""

import argparse
import csv
import statistics
import sys
import timeit

from tempcore import SolverConfig, lift_core, parse_ltl, solve, translate
from tempcore.corpus import CURATED, TOY_REQ_GNT


def pipeline(src, record):
    def run():
        p = translate(parse_ltl(src))
        res = solve(p, SolverConfig(record_graph=record))
        if record and res.unsat:
            lift_core(p.formula, p, res.core_indices())
    return run


def per_call(fn):
    timer = timeit.Timer(fn)
    n, _ = timer.autorange()
    return timer.timeit(n) / n


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--csv")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--with-toy", action="store_true")
    args = ap.parse_args()

    corpus = [src for src, _ in CURATED] + ([TOY_REQ_GNT] if args.with_toy else [])
    rows = []
    for src in corpus:
        on, off = [], []
        for _ in range(args.repeats):
            on.append(per_call(pipeline(src, True)))
            off.append(per_call(pipeline(src, False)))
        on, off = statistics.median(on), statistics.median(off)
        rows.append((" ".join(src.split()), on * 1000, off * 1000, on / off))
        print(f"{on * 1000:10.3f} ms {off * 1000:10.3f} ms {on / off:6.2f}x  {rows[-1][0][:60]}")
    ratios = [r[3] for r in rows]
    print(f"median ratio {statistics.median(ratios):.2f}x, max {max(ratios):.2f}x")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["formula", "graph_ms", "no_graph_ms", "ratio"])
            w.writerows(rows)
    return 0 if max(ratios) <= 2.0 else 1


if __name__ == "__main__":
    sys.exit(main())
