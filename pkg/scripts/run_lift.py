"""Solve the lift queries and print their lifted cores.

    python3 scripts/run_lift.py [--unordered] [--time-limit 60]
"""

import argparse
import time

from tempcore import SolverConfig, lift_core, parse_ltl, print_ltl, solve, translate
from tempcore.corpus import LIFT_CONJUNCT_LIMITS, LIFT_QUERIES, lift_query
from tempcore.ltl import tree_size


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--unordered", action="store_true", help="plain (unordered) resolution; very slow here")
    ap.add_argument("--time-limit", type=float, default=None)
    ap.add_argument("queries", nargs="*", default=list(LIFT_QUERIES))
    args = ap.parse_args()
    cfg = SolverConfig(ordered=not args.unordered, time_limit=args.time_limit)

    for q in args.queries:
        p = translate(parse_ltl(lift_query(q)))
        t = time.perf_counter()
        res = solve(p, cfg)
        secs = time.perf_counter() - t
        print(f"== {q} ({LIFT_QUERIES[q]}): {res.verdict} in {secs:.2f}s, "
              f"peak {res.stats['peak_clauses']} clauses, loop iterations {res.stats['loop_iterations']}")
        if not res.unsat:
            continue
        core = res.core_indices()
        lc = lift_core(p.formula, p, core)
        parts = lc.nontrivial_conjuncts()
        print(f"   SNF core {len(core)}/{len(p.clauses)} clauses; "
              f"LTL core size {tree_size(lc.formula)}/{tree_size(p.formula)}; "
              f"{len(parts)} conjuncts (limit {LIFT_CONJUNCT_LIMITS[q]})")
        for g in parts:
            print("   ", print_ltl(g))


if __name__ == "__main__":
    main()
