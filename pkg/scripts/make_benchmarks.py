"""Write the benchmark corpus as input files for the `tempcore` CLI.

    python3 scripts/make_benchmarks.py [--out benchmarks] [--random 200 --seed 2024]
"""

import argparse
from pathlib import Path

from tempcore.corpus import CURATED, LOOP_SNF, LIFT_QUERIES, TOY_REQ_GNT, lift_query
from tempcore.generate import GenConfig, random_problems
from tempcore.snf import print_snf


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="benchmarks")
    ap.add_argument("--random", type=int, default=0, help="also write this many random SNF problems")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {"loop.snf": LOOP_SNF, "toy.ltl": TOY_REQ_GNT.strip() + "\n"}
    for q in LIFT_QUERIES:
        files[f"lift_{q}.ltl"] = lift_query(q)
    for i, (src, verdict) in enumerate(CURATED):
        files[f"curated_{i:02d}_{verdict}.ltl"] = src + "\n"
    for i, p in enumerate(random_problems(args.seed, args.random, GenConfig())):
        files[f"random_{i:03d}.snf"] = print_snf(p)
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")
    print(f"wrote {len(files)} files to {out}/")


if __name__ == "__main__":
    main()
