"""Command-line front end.

Exit codes: 10 sat, 20 unsat, 1 parse error, 2 resource or bound limit,
3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import ltl, oracle
from .engine import SAT, UNSAT, SolverConfig, solve
from .lift import LiftError, lift_core
from .proofgraph import to_dot
from .snf import SnfSyntaxError, parse_snf, print_snf, translate

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_PARSE = 1
EXIT_LIMIT = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _load(path, fmt):
    """Read an input file; returns (problem, formula or None)."""
    p = Path(path)
    if fmt is None:
        if p.suffix == ".ltl":
            fmt = "ltl"
        elif p.suffix == ".snf":
            fmt = "snf"
        else:
            raise UsageError(f"cannot tell the format of {path}; pass --format ltl|snf")
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    if fmt == "ltl":
        f = ltl.parse_ltl(text)
        return translate(f), f
    return parse_snf(text), None


def _exit_for(verdict):
    return {SAT: EXIT_SAT, UNSAT: EXIT_UNSAT}.get(verdict, EXIT_LIMIT)


def cmd_solve(args) -> int:
    problem, formula = _load(args.file, args.format)
    if args.core_ltl and formula is None:
        raise UsageError("--core-ltl needs LTL input (lifting unavailable for SNF input)")
    wants_core = args.core or args.core_ltl or args.core_out
    if args.no_graph and (wants_core or args.graph or args.edges):
        raise UsageError("--no-graph cannot be combined with core or graph output")
    cfg = SolverConfig(
        tautology_deletion=not args.no_taut_del,
        subsumption=not args.no_subsumption,
        record_graph=not args.no_graph,
        ordered=args.ordered,
        step_limit=args.step_limit,
        time_limit=args.time_limit,
    )
    res = solve(problem, cfg)
    out = sys.stdout
    out.write(res.verdict + "\n")

    core_idx = res.core_indices() if res.unsat and res.graph is not None else None
    lifted = None
    if core_idx is not None and formula is not None:
        lifted = lift_core(problem.formula, problem, core_idx)

    if args.core and core_idx is not None:
        out.write(print_snf(problem, [problem.clauses[i] for i in core_idx]))
    if args.core_ltl and lifted is not None:
        out.write(ltl.print_ltl(lifted.display()) + "\n")
    if args.core_out and core_idx is not None:
        text = (ltl.print_ltl(lifted.display()) + "\n") if lifted is not None else \
            print_snf(problem, [problem.clauses[i] for i in core_idx])
        Path(args.core_out).write_text(text, encoding="utf-8")
    if args.graph and res.graph is not None:
        hl = res.graph.backward_reachable(res.graph.empty_vertex()) if res.unsat else set()
        Path(args.graph).write_text(to_dot(res.graph, res.atoms, hl), encoding="utf-8")
    if args.edges and res.graph is not None:
        Path(args.edges).write_text(res.graph.edge_list(), encoding="utf-8")
    if args.stats:
        if formula is not None:
            input_size = ltl.tree_size(problem.formula)
            core_size = ltl.tree_size(lifted.formula) if lifted is not None else None
        else:
            input_size = len(problem.clauses)
            core_size = len(core_idx) if core_idx is not None else None
        report = {
            "verdict": res.verdict,
            "input_size": input_size,
            "core_size": core_size,
            "rule_counts": res.stats["rule_counts"],
            "loop_searches": res.stats["loop_searches"],
            "loop_iterations": res.stats["loop_iterations"],
            "wall_ms": res.stats["wall_ms"],
            "peak_clauses": res.stats["peak_clauses"],
        }
        Path(args.stats).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    return _exit_for(res.verdict)


def cmd_oracle(args) -> int:
    problem, _ = _load(args.file, args.format)
    try:
        verdict = oracle.check_sat(problem, bound=args.bound)
    except oracle.AtomBoundExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LIMIT
    print(verdict)
    return _exit_for(verdict)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tempcore", description="LTL satisfiability by temporal resolution, with unsat cores.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide satisfiability, optionally extract a core")
    s.add_argument("file")
    s.add_argument("--format", choices=("ltl", "snf"))
    s.add_argument("--core", action="store_true", help="print the SNF core")
    s.add_argument("--core-ltl", action="store_true", help="print the lifted LTL core")
    s.add_argument("--core-out", metavar="PATH", help="write the core (LTL if available) to PATH")
    s.add_argument("--graph", metavar="PATH", help="write the resolution graph as dot")
    s.add_argument("--edges", metavar="PATH", help="write the graph as 'src rule dst' lines")
    s.add_argument("--stats", metavar="PATH", help="write run statistics as JSON")
    s.add_argument("--no-graph", action="store_true", help="do not record the resolution graph")
    s.add_argument("--no-taut-del", action="store_true", help="keep tautological clauses")
    s.add_argument("--no-subsumption", action="store_true", help="disable subsumption")
    s.add_argument("--ordered", action="store_true", help="ordered resolution (much faster on large inputs)")
    s.add_argument("--step-limit", type=int, metavar="N")
    s.add_argument("--time-limit", type=float, metavar="SEC")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="explicit-state satisfiability check")
    o.add_argument("file")
    o.add_argument("--format", choices=("ltl", "snf"))
    o.add_argument("--bound", type=int, default=oracle.DEFAULT_ATOM_BOUND, help="maximum number of atoms")
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("step_limit", "time_limit"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            print(f"error: --{name.replace('_', '-')} must be nonnegative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (ltl.LtlSyntaxError, SnfSyntaxError) as e:
        print(f"{args.file}:{e}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, LiftError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
