import csv
import io
import json
import logging
import random

import jsonschema
import pytest
from hypothesis import given, settings

from cliqueinterdict.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_TIMEOUT, main
from cliqueinterdict.graph import build_graph, complete_graph, cycle_graph
from cliqueinterdict.io import GraphParseError, load_graph, parse_graph, write_dimacs, write_edge_list
from cliqueinterdict.oracle import brute_force_theta, omega_after_removal
from cliqueinterdict.report import BENCH_COLUMNS, budget_from_fraction, report_schema

from conftest import graphs, random_graph


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_edge_list_examples(tmp_path):
    loaded = load_graph(write(tmp_path, "a.txt", "1 2\n2 3\n"))
    assert loaded.graph.n == 3 and loaded.graph.m == 2 and loaded.index_base == 1
    dimacs = parse_graph(write(tmp_path, "b.txt", "p edge 3 2\ne 1 2\ne 2 3\n"))
    assert dimacs == loaded.graph
    dup = parse_graph(write(tmp_path, "c.txt", "0 1\n1 0\n0 1\n1 2\n"))
    assert dup.n == 3 and dup.m == 2


def test_comments_and_extra_columns(tmp_path):
    g = parse_graph(write(tmp_path, "w.edges", "# header\n% other\n0 1 0.5\n\n1 2 7\n"))
    assert g.m == 2 and g.n == 3


def test_matrix_market(tmp_path):
    text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n4 4 2\n2 1\n4 3\n"
    loaded = load_graph(write(tmp_path, "g.mtx", text))
    assert loaded.graph.n == 4 and loaded.graph.m == 2 and loaded.index_base == 1


def test_malformed_line_reports_line_number(tmp_path):
    with pytest.raises(GraphParseError) as err:
        parse_graph(write(tmp_path, "bad.txt", "0 1\n1 2\nx y\n"))
    assert err.value.line_no == 3 and ":3:" in str(err.value)
    with pytest.raises(GraphParseError) as err:
        parse_graph(write(tmp_path, "bad.clq", "p edge 3 1\ne 1 9\n"))
    assert err.value.line_no == 2


def test_dimacs_header_mismatch_warns(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        g = parse_graph(write(tmp_path, "m.clq", "c x\np edge 3 5\ne 1 2\ne 2 3\n"))
    assert g.m == 2
    assert any("declares 5 edges" in r.message for r in caplog.records)


def test_unknown_format_rejected(tmp_path):
    with pytest.raises(ValueError):
        load_graph(write(tmp_path, "a.txt", "0 1\n"), "xml")


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=12))
def test_round_trip(tmp_path_factory, g):
    d = tmp_path_factory.mktemp("rt")
    write_dimacs(g, d / "g.clq", comment="round trip")
    assert parse_graph(d / "g.clq") == g
    write_edge_list(g, d / "g.txt")
    assert parse_graph(d / "g.txt", "edge-list") == g
    write_edge_list(g, d / "z.txt", index_base=0)
    back = load_graph(d / "z.txt")
    if g.m and min(min(e) for e in g.edge_list()) == 0:
        assert back.graph == g and back.index_base == 0


def test_nodes_header_keeps_isolated_vertices(tmp_path):
    g = parse_graph(write(tmp_path, "s.txt", "# Directed graph\n# Nodes: 6 Edges: 1\n0 1\n"))
    assert g.n == 6 and g.m == 1


def test_cfat_files_have_published_edge_counts(data_dir):
    for name, m in (("c-fat200-1", 1534), ("c-fat200-2", 3235), ("c-fat200-5", 8473)):
        g = parse_graph(data_dir / f"{name}.clq")
        assert g.n == 200 and g.m == m


# --- CLI -------------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out = capsys.readouterr()
    return code, out.out, out.err


def k5_file(tmp_path):
    p = tmp_path / "k5.edges"
    write_edge_list(complete_graph(5), p)
    return p


def test_cli_solve_json(tmp_path, capsys):
    code, out, _ = run(capsys, "solve", "--graph", k5_file(tmp_path), "--k", 2)
    assert code == EXIT_OK
    report = json.loads(out)
    jsonschema.validate(report, report_schema())
    assert report["theta"] == 3 and len(report["interdiction_set"]) == 2


def test_cli_solve_text_and_fraction(tmp_path, capsys):
    code, out, _ = run(capsys, "solve", "--graph", k5_file(tmp_path), "--k-frac", 0.3, "--format", "text")
    assert code == EXIT_OK
    assert "theta      3" in out and "k=2" in out


def test_cli_solve_cfat_without_budget(data_dir, capsys):
    code, out, _ = run(capsys, "solve", "--graph", data_dir / "c-fat200-1.clq", "--k", 0)
    assert code == EXIT_OK and json.loads(out)["theta"] == 12


def test_cli_report_uses_file_ids(tmp_path, capsys):
    p = write(tmp_path, "one.txt", "1 2\n2 3\n1 3\n3 4\n")
    code, out, _ = run(capsys, "solve", "--graph", p, "--k", 1)
    report = json.loads(out)
    assert report["index_base"] == 1 and report["theta"] == 2
    g = parse_graph(p)
    assert omega_after_removal(g, {v - 1 for v in report["interdiction_set"]}) == 2


def test_cli_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--graph", str(k5_file(tmp_path)), "--k", "1", "--k-frac", "0.1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--graph", "x"])
    assert exc.value.code == 2


def test_cli_input_error(tmp_path, capsys):
    code, _, err = run(capsys, "solve", "--graph", tmp_path / "missing.txt", "--k", 1)
    assert code == EXIT_INPUT and "error" in err
    code, _, err = run(capsys, "solve", "--graph", write(tmp_path, "b.txt", "0 x\n"), "--k", 1)
    assert code == EXIT_INPUT and ":1:" in err


def test_cli_timeout_exit_code(tmp_path, capsys):
    g = random_graph(random.Random(3), 200, 0.5)
    p = tmp_path / "dense.txt"
    write_edge_list(g, p)
    code, out, _ = run(capsys, "solve", "--graph", p, "--k", 10, "--time-limit", 0.01)
    report = json.loads(out)
    jsonschema.validate(report, report_schema())
    assert code == EXIT_TIMEOUT and report["status"] == "timeout" and report["theta"] is None


def test_cli_verify(tmp_path, capsys):
    p = tmp_path / "c5.txt"
    write_edge_list(cycle_graph(5), p)
    code, out, _ = run(capsys, "verify", "--graph", p, "--k", 1)
    assert code == EXIT_OK and out.strip().endswith("MATCH")
    big = tmp_path / "big.txt"
    write_edge_list(complete_graph(30), big)
    code, _, err = run(capsys, "verify", "--graph", big, "--k", 1)
    assert code == EXIT_INPUT and "oracle" in err
    assert EXIT_MISMATCH != EXIT_OK


def read_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_cli_bench_rows(tmp_path, capsys):
    d = tmp_path / "graphs"
    d.mkdir()
    write_edge_list(complete_graph(5), d / "k5.txt")
    write_edge_list(cycle_graph(7), d / "c7.txt")
    write_dimacs(random_graph(random.Random(1), 12, 0.5), d / "r12.clq")
    code, out, _ = run(capsys, "bench", "--graphs", d, "--k-frac", 0.1, 0.3)
    assert code == EXIT_OK
    rows = read_rows(out)
    assert len(rows) == 6
    assert list(rows[0]) == BENCH_COLUMNS
    for row in rows:
        assert row["status"] == "OPT"
        g = parse_graph(d / (row["name"] + (".clq" if row["name"] == "r12" else ".txt")))
        k = int(row["k"])
        assert int(row["theta"]) == brute_force_theta(g, k)[0]


def test_cli_bench_parallel_matches_serial(tmp_path, capsys):
    d = tmp_path / "graphs"
    d.mkdir()
    for i in range(3):
        write_edge_list(random_graph(random.Random(i), 14, 0.5), d / f"g{i}.txt")
    _, serial, _ = run(capsys, "bench", "--graphs", d, "--k-frac", 0.1, 0.2)
    _, parallel, _ = run(capsys, "bench", "--graphs", d, "--k-frac", 0.1, 0.2, "--jobs", 2)
    strip = lambda rows: [{c: r[c] for c in BENCH_COLUMNS if c != "seconds" and "removed" not in c} for r in rows]
    assert strip(read_rows(serial)) == strip(read_rows(parallel))


def test_cli_bench_fully_reduced_and_timeout_rows(tmp_path, capsys):
    d = tmp_path / "graphs"
    d.mkdir()
    write_edge_list(cycle_graph(6), d / "c6.txt")
    code, out, _ = run(capsys, "bench", "--graphs", d, "--k-frac", 1.0)
    row, = read_rows(out)
    assert row["theta"] == row["lb"] == "0" and row["master_iterations"] == "0"

    write_edge_list(random_graph(random.Random(3), 200, 0.5), d / "dense.txt")
    manifest = tmp_path / "list.txt"
    manifest.write_text("graphs/dense.txt\n# comment\ngraphs/missing.txt\n")
    code, out, err = run(capsys, "bench", "--manifest", manifest, "--k-frac", 0.05, "--time-limit", 0.01)
    row, = read_rows(out)
    assert row["status"] == "TL" and row["theta"] == ""
    assert int(row["lb"]) <= int(row["ub"])
    assert "missing.txt" in err


def test_budget_from_fraction():
    assert budget_from_fraction(200, 0.005) == 1
    assert budget_from_fraction(1000, 0.005) == 5
    assert budget_from_fraction(1001, 0.005) == 6
    assert budget_from_fraction(10, 0.0) == 0
