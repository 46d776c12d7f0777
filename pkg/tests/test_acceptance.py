"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v` (the lines show even under
capture) or directly with `python3 tests/test_acceptance.py`.
"""

import contextlib
import functools
import io
import json
import statistics
import sys
import time
import timeit

import pytest

from tempcore import ltl
from tempcore.cli import main as cli_main
from tempcore.corpus import CURATED, LOOP_SNF, LIFT_CONJUNCT_LIMITS, LIFT_QUERIES, TOY_REQ_GNT, lift_query
from tempcore.engine import SolverConfig, solve
from tempcore.generate import GenConfig, random_problems
from tempcore.lift import lift_core
from tempcore.oracle import check_sat
from tempcore.snf import SnfProblem, parse_snf, print_snf, translate

RANDOM_SEED = 2024
RANDOM_COUNT = 200
ORDERED = SolverConfig(ordered=True)
NO_REDUNDANCY = SolverConfig(tautology_deletion=False, subsumption=False)
TOY_EXPECTED = ["G (~req | (X gnt & X X gnt))", "G (~gnt | X ~gnt)", "F req"]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


# -- shared runs, cached so later criteria reuse earlier work ------------------

@functools.lru_cache(maxsize=None)
def loop_run():
    p = parse_snf(LOOP_SNF)
    t = time.perf_counter()
    res = solve(p)
    core = res.core_indices() if res.unsat else None
    return p, res, core, time.perf_counter() - t


@functools.lru_cache(maxsize=None)
def ltl_run(src, ordered=False):
    """Translate, solve, extract and lift; returns a dict of everything."""
    t = time.perf_counter()
    f = ltl.parse_ltl(src)
    p = translate(f)
    res = solve(p, ORDERED if ordered else None)
    core = lifted = None
    if res.unsat:
        core = res.core_indices()
        lifted = lift_core(p.formula, p, core)
    return dict(problem=p, result=res, core=core, lifted=lifted, seconds=time.perf_counter() - t)


@functools.lru_cache(maxsize=None)
def random_run():
    t = time.perf_counter()
    problems = random_problems(RANDOM_SEED, RANDOM_COUNT, GenConfig())
    rows = []
    for p in problems:
        res = solve(p)
        rows.append((p, res, check_sat(p)))
    return rows, time.perf_counter() - t


def _sub_problem(p, core):
    return SnfProblem(p.atoms, tuple(p.clauses[i] for i in core))


# -- criteria -------------------------------------------------------------------

def test_criterion_1_loop_example(report):
    p, res, core, secs = loop_run()
    problems = []
    if res.verdict != "unsat":
        problems.append(f"verdict {res.verdict}")
    if core != [0, 1, 2, 3]:
        problems.append(f"core {core}")
    if secs >= 1.0:
        problems.append(f"runtime {secs:.3f}s")

    plain = solve(p, NO_REDUNDANCY)
    g, atoms = plain.graph, plain.atoms
    labels = {(v.rule, v.clause.render(atoms)) for v in g.vertices}
    wanted = [
        ("step-nx", "global: a | b | X a"),
        ("aug1", "global: ~a | _wna"),
        ("aug2", "global: ~_wna | X (~a | _wna)"),
        ("loop-conclusion1", "global: ~a"),
        ("loop-conclusion2", "global: ~_wna | X ~a"),
    ]
    for w in wanted:
        if w not in labels:
            problems.append(f"missing vertex {w}")
    loops = [pid for pid in g.partitions if pid[0] == "loop"]
    if len(loops) != 2:
        problems.append(f"{len(loops)} loop partitions")
    empty = g.empty_vertex()
    if empty is None or not g.vertices[empty].clause.is_empty:
        problems.append("no empty clause vertex")
    detail = f"unsat, core {core}, {secs * 1000:.1f} ms, graph labels ok" if not problems else "; ".join(problems)
    report(1, not problems, detail)


def test_criterion_2_toy(report):
    run = ltl_run(TOY_REQ_GNT)
    res, lifted, p = run["result"], run["lifted"], run["problem"]
    problems = []
    if not res.unsat:
        problems.append(f"verdict {res.verdict}")
    else:
        again = solve(translate(lifted.formula))
        if not again.unsat:
            problems.append(f"lifted core re-solves {again.verdict}")
        n_in, n_core = ltl.tree_size(p.formula), ltl.tree_size(lifted.formula)
        if not n_core < n_in:
            problems.append(f"core size {n_core} not below input size {n_in}")
    got = [ltl.print_ltl(c) for c in lifted.nontrivial_conjuncts()] if lifted else []
    advisory = "matches the reference core" if got == TOY_EXPECTED else f"differs from the reference core: {got}"
    detail = (f"unsat, lifted core re-solves unsat, size {ltl.tree_size(lifted.formula)} < "
              f"{ltl.tree_size(p.formula)}; advisory: {advisory}") if not problems else "; ".join(problems)
    report(2, not problems, detail)


@pytest.mark.parametrize("query", list(LIFT_QUERIES))
def test_criterion_3_lift(report, query):
    run = ltl_run(lift_query(query), ordered=True)
    res, lifted = run["result"], run["lifted"]
    limit = LIFT_CONJUNCT_LIMITS[query]
    problems = []
    if not res.unsat:
        problems.append(f"verdict {res.verdict}")
    else:
        again = solve(translate(lifted.formula), ORDERED)
        if not again.unsat:
            problems.append(f"lifted core re-solves {again.verdict}")
        n = len(lifted.nontrivial_conjuncts())
        if n > limit:
            problems.append(f"{n} non-trivial conjuncts > {limit}")
    if run["seconds"] >= 60:
        problems.append(f"runtime {run['seconds']:.1f}s")
    detail = (f"{query}: unsat in {run['seconds']:.2f}s, "
              f"{len(lifted.nontrivial_conjuncts())} conjuncts (limit {limit}), lifted core re-solves unsat"
              if not problems else f"{query}: " + "; ".join(problems))
    report(3, not problems, detail)


def test_criterion_4_differential(report):
    rows, secs = random_run()
    bad = [i for i, (_, res, want) in enumerate(rows) if res.verdict != want]
    n_unsat = sum(want == "unsat" for _, _, want in rows)
    ok = len(rows) >= 200 and not bad and secs < 60
    detail = (f"{len(rows)} problems (seed {RANDOM_SEED}, {n_unsat} unsat), "
              f"{len(rows) - len(bad)}/{len(rows)} agree with the oracle, {secs:.1f}s")
    if bad:
        detail += f"; disagreements at {bad[:10]}"
    report(4, ok, detail)


def _curated_runs():
    return [(src, want, ltl_run(src)) for src, want in CURATED]


def test_criterion_5_core_soundness(report):
    checked, problems = 0, []

    def check_snf(name, p, core, cfg=None):
        nonlocal checked
        checked += 1
        if not set(core) <= set(range(len(p.clauses))):
            problems.append(f"{name}: core not a subset")
        v = solve(_sub_problem(p, core), cfg).verdict
        if v != "unsat":
            problems.append(f"{name}: SNF core re-solves {v}")

    def check_lifted(name, p, lifted, cfg=None):
        nonlocal checked
        checked += 1
        pol = {oid: pp for oid, pp, _ in ltl.occurrences(p.formula)}
        for oid, value in lifted.replaced.items():
            if value != (pol[oid] is ltl.Polarity.POS):
                problems.append(f"{name}: occurrence {oid} replaced against its polarity")
        if ltl.replace_occurrences(p.formula, lifted.replaced) != lifted.formula:
            problems.append(f"{name}: lifted core is not the stated weakening")
        v = solve(translate(lifted.formula), cfg).verdict
        if v != "unsat":
            problems.append(f"{name}: lifted core re-solves {v}")

    p, res, core, _ = loop_run()
    check_snf("loop", p, core)

    toy = ltl_run(TOY_REQ_GNT)
    check_snf("toy", toy["problem"], toy["core"])
    check_lifted("toy", toy["problem"], toy["lifted"])

    for q in LIFT_QUERIES:
        run = ltl_run(lift_query(q), ordered=True)
        check_snf(q, run["problem"], run["core"], ORDERED)
        check_lifted(q, run["problem"], run["lifted"], ORDERED)

    rows, _ = random_run()
    for i, (p, res, _) in enumerate(rows):
        if res.unsat:
            check_snf(f"random[{i}]", p, res.core_indices())

    for src, want, run in _curated_runs():
        got = run["result"].verdict
        if got != want:
            problems.append(f"curated {src!r}: verdict {got}, expected {want}")
        if got == "unsat":
            check_snf(src, run["problem"], run["core"])
            check_lifted(src, run["problem"], run["lifted"])

    detail = f"{checked} cores re-solved unsat, all subsets/weakenings" if not problems else "; ".join(problems[:5])
    report(5, not problems, detail)


def _per_call(fn):
    # batch enough calls to sit well above timer resolution
    timer = timeit.Timer(fn)
    n, _ = timer.autorange()
    return timer.timeit(n) / n


def _pipeline(src, record):
    def run():
        p = translate(ltl.parse_ltl(src))
        res = solve(p, SolverConfig(record_graph=record))
        if record and res.unsat:
            lift_core(p.formula, p, res.core_indices())
    return run


def test_criterion_6_overhead(report):
    worst, bad = 0.0, []
    for src, _ in CURATED:
        # interleave the two modes so slow drift hits both alike
        on, off = [], []
        for _ in range(3):
            on.append(_per_call(_pipeline(src, True)))
            off.append(_per_call(_pipeline(src, False)))
        with_graph, without = statistics.median(on), statistics.median(off)
        ratio = with_graph / without
        worst = max(worst, ratio)
        if ratio > 2.0:
            bad.append(f"{src!r}: {ratio:.2f}x")
    detail = f"{len(CURATED)} instances, worst ratio {worst:.2f}x" + (f"; over 2x: {bad}" if bad else "")
    report(6, not bad, detail)


def _cli(args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(args)
    return code, buf.getvalue()


def test_criterion_7_determinism(report, tmp_path):
    instances = [("loop.snf", LOOP_SNF, []), ("toy.ltl", TOY_REQ_GNT, [])]
    instances += [(f"lift_{q}.ltl", lift_query(q), ["--ordered"]) for q in LIFT_QUERIES]
    rows, _ = random_run()
    instances += [(f"random_{i:03d}.snf", print_snf(p), []) for i, (p, _, _) in enumerate(rows)]
    instances += [(f"curated_{i:02d}.ltl", src, []) for i, (src, _) in enumerate(CURATED)]

    differing = []
    for name, text, extra in instances:
        path = tmp_path / name
        path.write_text(text)
        outs = []
        for k in range(2):
            stats = tmp_path / f"{name}.{k}.json"
            args = ["solve", str(path), "--core", "--stats", str(stats)] + extra
            if name.endswith(".ltl"):
                args.append("--core-ltl")
            code, out = _cli(args)
            d = json.loads(stats.read_text())
            d.pop("wall_ms")
            outs.append((code, out, json.dumps(d, sort_keys=True)))
        if outs[0] != outs[1]:
            differing.append(name)
    detail = f"{len(instances)} instances run twice, outputs identical" if not differing else f"differ: {differing[:5]}"
    report(7, not differing, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
