import json
import subprocess
import sys

import pytest

from hypercore.cli import EXIT_BAD_T, EXIT_DATA, EXIT_MISSING, EXIT_USAGE, run
from conftest import DATA

GOLDEN = str(DATA / "golden_first.txt")
WORKED = str(DATA / "worked_example.txt")


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_core_json_on_golden_example(capsys):
    code, out, err = call(capsys, "core", "--k", "2", "--t", "3/4", GOLDEN)
    assert code == 0
    doc = json.loads(out)
    assert doc["edges"] == [["1", "2"], ["1", "3"], ["1", "2", "3"]]
    assert "3 nodes, 3 edges" in err


def test_core_json_is_a_fixed_point(capsys, tmp_path):
    _, out, _ = call(capsys, "core", "--k", "2", "--t", "1/2", WORKED)
    saved = tmp_path / "core.json"
    saved.write_text(out)
    _, again, _ = call(capsys, "core", "--k", "2", "--t", "1/2", str(saved))
    assert sorted(map(sorted, json.loads(again)["edges"])) == sorted(map(sorted, json.loads(out)["edges"]))


def test_coreness_csv(capsys):
    code, out, _ = call(capsys, "coreness", "--t", "1/2", WORKED)
    assert code == 0 and "\r" not in out
    lines = out.splitlines()
    assert lines[0] == "node,coreness"
    values = dict(line.split(",") for line in lines[1:])
    assert [values[x] for x in "abcd"] == ["3"] * 4


def test_fraction(capsys):
    _, out, _ = call(capsys, "fraction", "--k", "3", "--format", "json", WORKED)
    doc = json.loads(out)
    assert [doc["k_fraction"][x] for x in "abcd"] == ["4/7"] * 4


def test_txt_and_out_file(capsys, tmp_path):
    target = tmp_path / "up.txt"
    code, out, err = call(capsys, "upscale", "--factor", "3", "--out", str(target), GOLDEN)
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 12
    assert "4 -> 12" in err


def test_collapse_summary_line(capsys):
    code, out, err = call(capsys, "collapse", "--k", "2", "--t", "1/2", "--b", "1", WORKED)
    assert code == 0
    assert out.splitlines()[0] == "round,collapser,reduction,ms"
    method, k, t, b, red, ms = err.strip().splitlines()[-1].split(",")
    assert (method, k, t, b) == ("hycom_plus", "2", "1/2", "1")


def test_hsmd_self_is_zero(capsys):
    _, out, _ = call(capsys, "hsmd", "--grid", "11", "--format", "json", WORKED, WORKED)
    assert json.loads(out)["distance"] == [[0.0, 0.0], [0.0, 0.0]]


def test_cover_single_budget(capsys):
    _, out, _ = call(capsys, "cover", "--k", "3", "--t", "7/10", "--method", "greedy", WORKED)
    assert out.splitlines()[1].startswith("3,greedy,")


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("HYPERCORE_T", "3/4")
    monkeypatch.setenv("HYPERCORE_K", "2")
    _, out, _ = call(capsys, "core", GOLDEN)
    assert json.loads(out)["t"] == "3/4"


def test_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("HYPERCORE_T", "3/4")
    _, out, _ = call(capsys, "core", "--k", "2", "--t", "0", GOLDEN)
    assert json.loads(out)["t"] == "0/1"


def test_decimal_t_warns(capsys):
    code, _, err = call(capsys, "coreness", "--t", "0.5", WORKED)
    assert code == 0 and "decimal" in err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["frobnicate", GOLDEN], EXIT_USAGE),
        (["core", GOLDEN], EXIT_USAGE),
        (["core", "--k", "2", "--t", "5/4", GOLDEN], EXIT_BAD_T),
        (["core", "--k", "2", "--t", "half", GOLDEN], EXIT_BAD_T),
        (["core", "--k", "2", "/nonexistent/h.txt"], EXIT_MISSING),
        (["collapse", "--k", "9", GOLDEN], EXIT_DATA),
    ],
)
def test_exit_codes(capsys, argv, expected):
    assert run(argv) == expected
    capsys.readouterr()


def test_exit_codes_are_distinct():
    assert len({EXIT_USAGE, EXIT_BAD_T, EXIT_MISSING, EXIT_DATA}) == 4


def test_bad_file_is_data_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert run(["stats", str(bad)]) == EXIT_DATA
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hypercore", "stats", GOLDEN], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "n_nodes,6" in proc.stdout
