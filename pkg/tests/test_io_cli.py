import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowply import cli
from lowply.builders import fundamental_generating_set
from lowply.generators import complete, grid, random_interval
from lowply.graph import Graph, cycle_rank
from lowply.io import (
    ParseError,
    emit_basis,
    emit_decomposition,
    emit_graph,
    parse_basis,
    parse_decomposition,
    parse_graph,
)
from lowply.path_decomp import validate


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_graph_examples():
    g = parse_graph("e 1 2\ne 2 3")
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))
    with pytest.raises(ParseError, match="line 1.*self-loop"):
        parse_graph("e 1 1")
    with pytest.raises(ParseError, match="line 3.*duplicate"):
        parse_graph("c hi\ne 1 2\ne 2 1")
    with pytest.raises(ParseError, match="line 2"):
        parse_graph("e 1 2\nx 1 2")
    with pytest.raises(ParseError, match="line 1"):
        parse_graph("e 1 two")


def test_header_and_isolated_vertices():
    g = parse_graph("p edge 5 1\ne 2 3\n")
    assert g.n == 5 and g.m == 1
    assert emit_graph(g) == "p edge 5 1\ne 2 3\n"


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.data())
def test_round_trip_is_canonical(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    flipped = [(v, u) if data.draw(st.booleans()) else (u, v) for u, v in chosen]
    text = f"p edge {n} {len(flipped)}\n" + "".join(f"e {u + 1} {v + 1}\n" for u, v in flipped)
    once = emit_graph(parse_graph(text))
    assert emit_graph(parse_graph(once)) == once
    assert once == emit_graph(Graph(n, sorted(chosen)))


def test_decomposition_and_basis_round_trip():
    g, d = random_interval(12, 3, 1)
    assert parse_decomposition(emit_decomposition(d)) == d
    d2 = parse_decomposition("\n1\n1 2\n")
    assert d2.bags == (frozenset(), frozenset({0}), frozenset({0, 1}))
    B = fundamental_generating_set(g)
    assert parse_basis(emit_basis(B), g).elements == B.elements
    with pytest.raises(ParseError):
        parse_basis(f"{g.m}\n", g)


def test_generate_examples():
    k4 = complete(4)[0]
    assert cycle_rank(k4) == 3
    c4 = grid(2, 2)[0]
    assert c4.m == 4 and all(c4.degree(v) == 2 for v in range(4))
    for seed in range(5):
        g, d = random_interval(20, 3, seed)
        assert validate(g, d) and d.width <= 3


def test_construct_pw4t_on_c8(capsys):
    code, out, _ = run(["construct", "cycle:8", "--method", "pw4t", "--auto-pw", "--no-timing"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["result"]["generating"] is True and rep["result"]["ply"] <= 8
    assert set(rep) == {"version", "instance", "method", "params", "result"}
    assert set(rep["params"]) == {"n", "m", "t", "k", "b", "seed"}
    assert set(rep["result"]) >= {"ply", "size", "generating", "audits", "wall_ms"}


def test_verify_broken_basis_exits_2(tmp_path, capsys):
    gfile = tmp_path / "k4.txt"
    gfile.write_text(emit_graph(complete(4)[0]))
    good = tmp_path / "good.txt"
    code, _, _ = run(["construct", str(gfile), "--method", "fundamental", "--output-basis", str(good)], capsys)
    assert code == 0
    assert run(["verify", str(gfile), str(good)], capsys)[0] == 0
    broken = tmp_path / "broken.txt"
    broken.write_text("\n".join(good.read_text().splitlines()[:2]) + "\n")
    code, out, _ = run(["verify", str(gfile), str(broken), "--no-timing"], capsys)
    assert code == 2 and json.loads(out)["result"]["generating"] is False
    assert run(["verify", str(gfile), str(good), "--bound", "0"], capsys)[0] == 2


def test_usage_errors_exit_1(tmp_path, capsys):
    assert run(["construct", "cycle:8", "--method", "pw4t"], capsys)[0] == 1
    assert run(["construct", "random_adhesion:5,3", "--method", "adhesion"], capsys)[0] == 1
    assert run(["construct", "nosuch:3", "--method", "fh"], capsys)[0] == 1
    assert run(["pw-exact", "grid:5x5"], capsys)[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("e 1 1\n")
    code, _, err = run(["construct", str(bad), "--method", "fh"], capsys)
    assert code == 1 and "line 1" in err
    with pytest.raises(SystemExit) as exc:
        cli.main(["construct"])
    assert exc.value.code == 1


def test_pw_exact_and_adhesion(capsys):
    code, out, _ = run(["pw-exact", "grid:3x3", "--no-timing"], capsys)
    assert code == 0 and json.loads(out)["result"]["pathwidth"] == 3
    argv = ["construct", "random_adhesion:6,3", "--method", "adhesion", "--k", "3", "--bag-basis", "auto"]
    code, out, _ = run(argv + ["--no-timing"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["result"]["generating"] and rep["params"]["k"] == 3


def test_bench_histograms(capsys):
    argv = ["bench", "--methods", "fh,maxply", "--family", "complete", "--n", "16", "--trials", "50", "--no-timing"]
    code, out, _ = run(argv, capsys)
    rep = json.loads(out)
    assert code == 0
    for method in ("fh", "maxply"):
        hist = rep["result"]["methods"][method]["histogram"]
        assert sum(hist.values()) == 50


def test_reports_are_byte_identical(capsys):
    argv = ["construct", "random_interval:25,3", "--method", "fh", "--seed", "7", "--no-timing"]
    outs = {run(argv, capsys)[1] for _ in range(3)}
    assert len(outs) == 1


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "lowply.cli", "construct", "complete:5", "--method", "maxply", "--no-timing"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["ply"] >= 1
