"""Compare solver verdicts with the explicit-state oracle on random inputs.

    python3 scripts/differential.py --count 1000 --seed 1
    python3 scripts/differential.py --ltl --count 500 --depth 4
"""

import argparse
import random
import time
from collections import Counter

from tempcore import SolverConfig, solve, translate
from tempcore.generate import GenConfig, random_formula, random_problems
from tempcore.ltl import print_ltl
from tempcore.oracle import AtomBoundExceeded, check_sat
from tempcore.snf import SnfProblem, print_snf


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--ltl", action="store_true", help="random LTL formulas instead of SNF problems")
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--ordered", action="store_true")
    ap.add_argument("--time-limit", type=float, default=10.0)
    ap.add_argument("--check-cores", action="store_true", help="also re-solve every SNF core")
    args = ap.parse_args()
    cfg = SolverConfig(ordered=args.ordered, time_limit=args.time_limit)

    if args.ltl:
        rng = random.Random(args.seed)
        inputs = [translate(random_formula(rng, args.depth)) for _ in range(args.count)]
    else:
        inputs = random_problems(args.seed, args.count, GenConfig())

    tally, t0 = Counter(), time.perf_counter()
    for i, p in enumerate(inputs):
        try:
            want = check_sat(p)
        except AtomBoundExceeded:
            tally["skipped (atom bound)"] += 1
            continue
        res = solve(p, cfg)
        if res.verdict not in ("sat", "unsat"):
            tally[res.verdict] += 1
            continue
        if res.verdict != want:
            tally["MISMATCH"] += 1
            shown = print_ltl(p.formula) if p.formula is not None else print_snf(p)
            print(f"mismatch #{i}: solver {res.verdict}, oracle {want}\n{shown}")
            continue
        tally[want] += 1
        if args.check_cores and res.unsat:
            core = SnfProblem(p.atoms, tuple(res.core()))
            if solve(core, cfg).verdict != "unsat":
                tally["BAD CORE"] += 1
                print(f"core of #{i} is satisfiable")
    print(dict(tally), f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
