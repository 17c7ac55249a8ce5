import csv
import io
import json
import subprocess
import sys

import pytest

from affine_twist import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_info_json(capsys):
    code, doc = run_json(capsys, "info", "--a", "1,1,1")
    assert code == 0
    assert doc["coxeter"] == [[3, 2], [-2, -1]]
    assert doc["cartan"] == [[2, 2], [2, 2]]
    assert doc["euler"] == [[1, 2], [0, 1]]


def test_info_small_system(capsys):
    code, doc = run_json(capsys, "info", "--a", "1,1,2")
    assert code == 0
    assert doc["mu"] == 3
    assert doc["chi"] == {"num": 3, "den": 2}
    assert doc["vertex_order"] == ["1*", "1", "(3,1)"]


def test_info_sorts_input(capsys):
    _, doc = run_json(capsys, "info", "--a", "5,3,2")
    assert doc["input"] == [5, 3, 2]
    assert doc["a"] == [2, 3, 5]


@pytest.mark.parametrize("bad", ["2,3,7", "3,3,3", "1,2", "a,b,c", "0,1,1", "1,1,-1"])
def test_invalid_input_exit_2(capsys, bad):
    code, out, err = run(capsys, "info", "--a", bad)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_table_bad_amax(capsys):
    assert run(capsys, "table", "--amax", "0")[0] == 2


def test_verify_system_without_arms(capsys):
    code, doc = run_json(capsys, "verify", "--a", "1,1,1")
    assert code == 0 and doc["all_pass"]
    assert all(c["pass"] for c in doc["checks"])


@pytest.mark.parametrize("triple", ["1,2,2", "2,3,5"])
def test_verify_examples(capsys, triple):
    code, doc = run_json(capsys, "verify", "--a", triple)
    failed = [c["name"] for c in doc["checks"] if not c["pass"]]
    assert code == 0, failed
    assert doc["all_pass"]


def test_verify_failures_are_reported_not_raised(capsys):
    code, doc = run_json(capsys, "verify", "--a", "2,2,2")
    assert code in (0, 1)
    assert doc["all_pass"] == (code == 0)
    assert doc["all_pass"] == all(c["pass"] for c in doc["checks"])


@pytest.mark.parametrize("triple,count", [("1,1,2", 8), ("2,2,2", 1920)])
def test_count(capsys, triple, count):
    code, doc = run_json(capsys, "count", "--a", triple)
    assert code == 0
    assert doc["count"]["e_count"] == count
    assert doc["count"]["formula_value"] == count
    assert doc["count"]["match"] is True
    assert doc["count"]["capped"] is False


def test_count_state_cap(capsys):
    code, doc = run_json(capsys, "count", "--a", "2,3,5", "--state-cap", "1000")
    assert code == 3
    assert doc["count"]["capped"] is True
    assert doc["count"]["e_count"] > 1000
    assert doc["count"]["match"] is False


def test_table_rows(capsys):
    code, doc = run_json(capsys, "table", "--amax", "2")
    assert code == 0
    assert [(r["a1"], r["a2"], r["a3"]) for r in doc["rows"]] == [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]
    assert all(r["match"] for r in doc["rows"])
    code, doc = run_json(capsys, "table", "--amax", "1")
    assert [(r["a1"], r["a2"], r["a3"]) for r in doc["rows"]] == [(1, 1, 1)]


def test_table_skips_bfs_above_cap(capsys):
    code, doc = run_json(capsys, "table", "--amax", "2", "--state-cap", "100")
    assert code == 0
    big = [r for r in doc["rows"] if r["formula"] > 100]
    assert big and all(r["ecount"] is None and r["match"] is None for r in big)


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--amax", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == list(cli.TABLE_COLUMNS)
    assert [r["formula"] for r in rows] == ["1", "8", "96", "1920"]
    assert all(r["match"] == "true" for r in rows)


def test_text_output(capsys):
    code, out, _ = run(capsys, "info", "--a", "1,1,1")
    assert code == 0
    assert "mu = 2" in out and "coxeter:" in out


@pytest.mark.parametrize(
    "argv",
    [["info", "--a", "2,3,4"], ["verify", "--a", "1,1,3"], ["count", "--a", "1,2,2"], ["table", "--amax", "2"]],
)
def test_json_is_deterministic_and_round_trips(capsys, argv):
    _, first, _ = run(capsys, *argv, "--format", "json")
    _, second, _ = run(capsys, *argv, "--format", "json")
    assert first == second
    assert cli.render_json(json.loads(first)) == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "affine_twist", "count", "--a", "1,1,3", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"]["e_count"] == 81
