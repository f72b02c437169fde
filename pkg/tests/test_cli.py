"""Command-line interface: JSON reports, exit codes and determinism."""

import json

import pytest

from cpmackey.cells import schubert_cells
from cpmackey.cli import main
from cpmackey.verify import ordering_violation


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_point_table_degree_zero(capsys):
    code, rep = run_json(capsys, "point-table", "--p", "3", "--range", "0")
    assert code == 0 and rep["pass"]
    assert rep["command"] == "cpmackey point-table --p 3 --range 0"
    assert rep["inputs"] == {"p": 3, "range": 0, "ring": "Z"}
    assert rep["results"]["rows"][0]["cells"] == ["A_twisted(1)"]


def test_point_table_p2_ascii(capsys):
    code, out = run(capsys, "--ascii", "point-table", "--p", "2", "--range", "1")
    assert code == 0
    rows = out.splitlines()
    assert rows[1].split() == ["0", "|", "R-", "A", "R-"]
    assert rows[0].split() == ["1", "|", ".", "<k>", "."]


def test_point_table_over_field(capsys):
    code, rep = run_json(capsys, "point-table", "--p", "2", "--ring", "F7", "--range", "2")
    assert code == 0 and rep["inputs"]["ring"] == "F7"


def test_freeness_from_file(capsys, tmp_path):
    good, bad = tmp_path / "good.json", tmp_path / "bad.json"
    good.write_text(json.dumps(schubert_cells(3, 9).to_json()))
    bad.write_text(json.dumps(ordering_violation(3).to_json()))
    code, rep = run_json(capsys, "freeness", "--cells", str(good))
    assert code == 0 and rep["pass"]
    code, rep = run_json(capsys, "freeness", "--cells", str(bad))
    assert code == 1 and not rep["pass"]
    assert "dimension-ordering" in json.dumps(rep)


def test_output_file_matches_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out = run(capsys, "--output", str(target), "verify", "freeness", "--p", "3")
    assert code == 0
    assert json.loads(target.read_text()) == json.loads(out)


def test_cpv_products(capsys):
    code, rep = run_json(capsys, "cpv", "--p", "2", "--q", "3", "products", "--max-degree", "1")
    assert code == 0 and rep["pass"]


def test_bo2_single_degree(capsys):
    code, rep = run_json(capsys, "bo2", "--p", "3", "--q", "7", "--degree", "0:1,0")
    assert code == 0 and rep["pass"]


def test_bo2_degree_zero_basis(capsys):
    code, rep = run_json(capsys, "bo2", "--p", "3", "--q", "7", "--max-degree", "0")
    assert code == 0 and "1" in json.dumps(rep["results"])


def test_ext_table(capsys):
    code, out = run(capsys, "--ascii", "ext-table", "--ring", "Z", "--smax", "4", "--tmax", "4")
    assert code == 0 and "Z/2" in out


def test_bo2_nonequivariant(capsys):
    for ring in ("Z", "F3"):
        code, rep = run_json(capsys, "bo2-nonequivariant", "--ring", ring)
        assert code == 0 and rep["pass"], ring


@pytest.mark.parametrize("argv", [
    ["point-table", "--p", "4"],
    ["point-table", "--p", "3", "--range", "-1"],
    ["bo2", "--p", "3", "--q", "3"],
    ["verify", "nonsense"],
    ["freeness"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2
    capsys.readouterr()


def test_missing_cells_file_is_usage_error(capsys, tmp_path):
    assert main(["freeness", "--cells", str(tmp_path / "absent.json")]) == 2
    capsys.readouterr()


def test_output_is_deterministic(capsys, monkeypatch):
    argv = ["verify", "point-ring", "--p", "3"]
    first = run(capsys, *argv)
    monkeypatch.setenv("MACKEY_SEED", "17")
    second = run(capsys, *argv)
    assert first == second


def test_report_shape(capsys):
    _, rep = run_json(capsys, "verify", "mackey-table", "--p", "3")
    assert set(rep) >= {"command", "inputs", "results", "claims", "pass"}
    for claim in rep["claims"]:
        assert set(claim) == {"claim", "theorem", "pass", "detail"}
