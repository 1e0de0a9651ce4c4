import io
import json
import re
from importlib import resources

import jsonschema
import pytest

from mcpherson import cli
from mcpherson.graph import format_edge_list, parse_edge_list

from .conftest import EXAMPLE1_EDGES

SCHEMA = json.loads(resources.files("mcpherson").joinpath("report_schema.json").read_text())


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def run_json(argv, **kw):
    code, text = run(argv + ["--format", "json"], **kw)
    assert code == 0
    report = json.loads(text)
    jsonschema.validate(report, SCHEMA)
    return report


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "example1.txt"
    p.write_text("6 8\n" + "".join(f"{u} {v}\n" for u, v in EXAMPLE1_EDGES))
    return p


def test_compute_example1(example_file):
    rep = run_json(["compute", str(example_file)])
    assert (rep["upsilon"], rep["upsilon_star"], rep["discrepancy"], rep["stable"]) == (3, 5, 2, False)
    assert rep["input"] == "example1.txt"
    assert len(rep["witness"]) == 3
    assert rep["trace"][0] == {"vertex": 6, "arcs": [[6, 1], [6, 3], [6, 4], [6, 5]]}
    assert len(rep["summary"]["mcpherson_graph"]) == 7


def test_compute_text_and_json_agree(example_file):
    code, text = run(["compute", str(example_file)])
    assert code == 0
    rep = run_json(["compute", str(example_file)])
    fields = dict(re.findall(r"^(upsilon|upsilon_star|discrepancy|stable): (\S+)$", text, re.M))
    assert fields == {"upsilon": "3", "upsilon_star": "5", "discrepancy": "2", "stable": "false"}
    assert f"witness: {' '.join(map(str, rep['witness']))}" in text
    for k, step in enumerate(rep["trace"], start=1):
        arcs = " ".join(f"({u},{v})" for u, v in step["arcs"])
        assert f"  {k}. v{step['vertex']}: {arcs}" in text


def test_compute_k1(tmp_path):
    p = tmp_path / "k1.txt"
    p.write_text("1 0\n")
    rep = run_json(["compute", str(p)])
    assert rep["upsilon"] == 0 and rep["trace"] == [] and rep["witness"] == []


def test_compute_greedy_only(example_file):
    rep = run_json(["compute", str(example_file), "--greedy-only"])
    assert "upsilon" not in rep and "upsilon_star" not in rep
    assert [s["vertex"] for s in rep["trace"]] == [6, 2, 4]


def test_compute_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("5 1\n0 5\n")
    code, _ = run(["compute", str(p)])
    assert code == cli.EXIT_PARSE
    assert "line 2" in capsys.readouterr().err


def test_compute_solver_limit(example_file, capsys):
    code, _ = run(["compute", str(example_file), "--solver-limit", "5"])
    assert code == cli.EXIT_LIMIT


def test_compute_policy_violation(example_file):
    code, _ = run(["compute", str(example_file), "--policy", "explicit:1"])
    assert code == cli.EXIT_POLICY


def test_compute_skips_star_above_sequence_limit(tmp_path):
    p = tmp_path / "p14.txt"
    p.write_text("14 13\n" + "".join(f"{i} {i + 1}\n" for i in range(1, 14)))
    rep = run_json(["compute", str(p)])
    assert rep["upsilon"] == 12 and "upsilon_star" not in rep
    assert "upsilon_star_skipped" in rep["summary"]


def test_gen_path_upsilon():
    code, text = run(["gen", "path", "6", "--upsilon"])
    assert code == 0
    assert "# upsilon formula: 4" in text and "# upsilon exact: 4" in text


def test_gen_multipartite_and_platonic():
    _, text = run(["gen", "multipartite", "2,3,4", "--upsilon"])
    assert "# upsilon formula: 6" in text and "# upsilon exact: 6" in text
    _, text = run(["gen", "platonic", "tetrahedron", "--upsilon"])
    assert "# upsilon exact: 0" in text
    rep = run_json(["gen", "join", "path:3", "null:2", "--upsilon"])
    assert rep["upsilon"] == 2 and rep["summary"]["upsilon_formula"] == 2


def test_gen_invalid_spec():
    code, _ = run(["gen", "cycle", "2"])
    assert code == cli.EXIT_USAGE


@pytest.mark.parametrize("argv", [["path", "7"], ["cycle", "6"], ["jaco", "12"],
                                  ["platonic", "icosahedron"], ["union", "path:3", "cycle:4"]])
def test_gen_compute_round_trip(argv, monkeypatch):
    _, text = run(["gen", *argv])
    G = parse_edge_list(text)
    assert format_edge_list(G) == text
    rep = run_json(["compute", "-"], stdin=text, monkeypatch=monkeypatch)
    assert rep["input"] == "<stdin>"
    assert rep["summary"]["n"] == G.n and rep["summary"]["edges"] == G.size


def test_jaco_table_cli():
    code, text = run(["jaco-table", "15"])
    assert code == 0
    assert "12  4  8  v_7  7" in text.splitlines()
    rep = run_json(["jaco-table", "15"])
    assert len(rep["table"]) == 13


def test_jaco_table_below_minimum():
    assert run(["jaco-table", "2"])[0] == cli.EXIT_USAGE


def test_conjecture_cli():
    code, text = run(["conjecture", "15"])
    assert code == 0 and "0 violations" in text
    rep = run_json(["conjecture", "15"])
    assert rep["violations"] == [] and rep["summary"]["unique_upsilon"] == [3, 8, 11]


def test_scan_all_n3_no_flags():
    rep = run_json(["scan", "--all-n", "3"])
    assert rep["summary"]["instances"] == 8
    assert rep["summary"]["policy_sensitive"] == 0
    assert rep["summary"]["hard_counterexamples"] == 0


def test_scan_all_n5_flags_complement_p5():
    rep = run_json(["scan", "--all-n", "5", "--policies", "lowest;explicit:3;exhaustive"])
    row = next(r for r in rep["table"] if r["name"] == "n5-e366")
    assert row["edges"] == [[1, 3], [1, 4], [1, 5], [2, 4], [2, 5], [3, 5]]
    assert row["status"] == "policy-sensitive"
    assert row["lengths"]["explicit:3"] == 3 and row["lengths"]["exhaustive-best"] == 2
    assert row["exact"] == 2


def test_scan_random_deterministic():
    argv = ["scan", "--random", "100", "--max-n", "9", "--seed", "7"]
    a, b = run(argv), run(argv)
    assert a[0] == 0 and a == b
    assert run_json(argv)["summary"]["instances"] == 100


def test_scan_needs_mode():
    assert run(["scan"])[0] == cli.EXIT_USAGE
    assert run(["scan", "--random", "3", "--max-n", "20"])[0] == cli.EXIT_LIMIT


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["compute"])
    assert info.value.code == 2
