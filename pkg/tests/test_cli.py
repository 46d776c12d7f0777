import json

import pytest

from tempcore import parse_ltl, parse_snf, solve
from tempcore.cli import main
from tempcore.corpus import LOOP_SNF, TOY_REQ_GNT


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_loop_example_core(tmp_path, capsys):
    f = write(tmp_path, "loop.snf", LOOP_SNF)
    assert main(["solve", f, "--core"]) == 20
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "unsat"
    assert len(out) == 5


def test_sat_exit(tmp_path, capsys):
    assert main(["solve", write(tmp_path, "s.snf", "initial: a\n")]) == 10
    assert capsys.readouterr().out.strip() == "sat"
    assert main(["solve", write(tmp_path, "s.ltl", "G F a & G F ~a")]) == 10


def test_oracle_cmd(tmp_path, capsys):
    assert main(["oracle", write(tmp_path, "loop.snf", LOOP_SNF)]) == 20
    assert main(["oracle", write(tmp_path, "s.ltl", "a U b")]) == 10
    big = " & ".join(f"p{i}" for i in range(20))
    assert main(["oracle", write(tmp_path, "big.ltl", big)]) == 2


def test_parse_error(tmp_path, capsys):
    assert main(["solve", write(tmp_path, "bad.ltl", "a & & b")]) == 1
    assert main(["solve", write(tmp_path, "bad.snf", "sometimes: a\n")]) == 1


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 3
    with pytest.raises(SystemExit) as e:
        main(["solve"])
    assert e.value.code == 3
    assert main(["solve", write(tmp_path, "x.txt", "a")]) == 3
    assert main(["solve", str(tmp_path / "missing.ltl")]) == 3
    snf = write(tmp_path, "f.snf", LOOP_SNF)
    assert main(["solve", snf, "--core-ltl"]) == 3
    assert main(["solve", snf, "--no-graph", "--core"]) == 3
    assert main(["solve", snf, "--step-limit", "-1"]) == 3
    # explicit format overrides the extension
    assert main(["solve", write(tmp_path, "x.txt", "a & ~a"), "--format", "ltl"]) == 20


def test_limit_exit(tmp_path, capsys):
    f = write(tmp_path, "toy.ltl", TOY_REQ_GNT)
    assert main(["solve", f, "--step-limit", "1"]) == 2
    assert capsys.readouterr().out.strip() == "resource-limit"


def test_core_roundtrip(tmp_path, capsys):
    f = write(tmp_path, "loop.snf", LOOP_SNF)
    out = tmp_path / "core.snf"
    assert main(["solve", f, "--core-out", str(out)]) == 20
    assert solve(parse_snf(out.read_text())).unsat
    assert main(["solve", str(out)]) == 20


def test_core_ltl_roundtrip(tmp_path, capsys):
    f = write(tmp_path, "toy.ltl", TOY_REQ_GNT)
    assert main(["solve", f, "--ordered", "--core-ltl"]) == 20
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "unsat"
    core = parse_ltl(lines[1])
    assert main(["solve", write(tmp_path, "core.ltl", lines[1]), "--ordered"]) == 20
    assert core is not None


def test_no_graph_same_verdict(tmp_path, capsys):
    for name, text in [("a.snf", LOOP_SNF), ("b.ltl", "G (a -> X a) & a & F ~a"), ("c.ltl", "F a & G (a -> X b)")]:
        f = write(tmp_path, name, text)
        assert main(["solve", f]) == main(["solve", f, "--no-graph"])


def test_stats_keys(tmp_path, capsys):
    f = write(tmp_path, "loop.snf", LOOP_SNF)
    st = tmp_path / "st.json"
    assert main(["solve", f, "--stats", str(st)]) == 20
    d = json.loads(st.read_text())
    assert set(d) == {"verdict", "input_size", "core_size", "rule_counts", "loop_searches",
                      "loop_iterations", "wall_ms", "peak_clauses"}
    assert d["verdict"] == "unsat" and d["input_size"] == 4 and d["core_size"] == 4
    assert main(["solve", f, "--no-graph", "--stats", str(st)]) == 20
    assert json.loads(st.read_text())["core_size"] is None


def test_graph_outputs(tmp_path, capsys):
    f = write(tmp_path, "loop.snf", LOOP_SNF)
    dot, edges = tmp_path / "g.dot", tmp_path / "g.edges"
    assert main(["solve", f, "--graph", str(dot), "--edges", str(edges)]) == 20
    assert dot.read_text().startswith("digraph")
    assert edges.read_text().strip()


def test_deterministic(tmp_path, capsys):
    f = write(tmp_path, "toy.ltl", TOY_REQ_GNT)
    runs = []
    for i in range(2):
        st = tmp_path / f"s{i}.json"
        main(["solve", f, "--ordered", "--core", "--core-ltl", "--stats", str(st)])
        d = json.loads(st.read_text())
        d.pop("wall_ms")
        runs.append((capsys.readouterr().out, d))
    assert runs[0] == runs[1]
