import json
import subprocess
import sys

import pytest

from lced.cli import main
from lced.greedy import read_sequence, verify_parallel_greedy


def run(*args):
    return main(list(args))


def test_generate_verifies_and_replays(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("generate", "--n", "50", "--s", "8", "--rounds", "20", "--seed", "7", "--out", str(a)) == 0
    assert run("generate", "--n", "50", "--s", "8", "--rounds", "20", "--seed", "7", "--out", str(b)) == 0
    seq = read_sequence(a / "pg_0000.txt")
    assert verify_parallel_greedy(seq, 8).ok
    assert (a / "pg_0000.txt").read_bytes() == (b / "pg_0000.txt").read_bytes()
    manifest = json.loads((a / "manifest.json").read_text())
    assert manifest["instances"][0]["file"] == "pg_0000.txt"


def test_generate_graph_kind(tmp_path):
    assert run("generate", "--kind", "graph", "--n", "6", "--instances", "2", "--out", str(tmp_path)) == 0
    assert (tmp_path / "graph_0001.txt").exists()


def test_invalid_s_is_usage_error(tmp_path):
    assert run("generate", "--n", "50", "--s", "1", "--out", str(tmp_path)) == 1


def test_argparse_errors_exit_1():
    with pytest.raises(SystemExit) as err:
        run("check", "bogus")
    assert err.value.code == 1


def test_check_dispersion_rows(tmp_path):
    assert run("check", "dispersion", "--instances", "100", "--n", "100", "--s", "8", "--out", str(tmp_path)) == 0
    lines = (tmp_path / "dispersion.csv").read_text().splitlines()
    assert len(lines) == 101
    assert all(",PASS," in ln for ln in lines[1:])


def test_check_arboricity_ratio_column(tmp_path):
    assert run("check", "arboricity", "--report-ratio", "--instances", "4", "--out", str(tmp_path)) == 0
    header = (tmp_path / "arboricity.csv").read_text().splitlines()[0]
    assert "alpha_ratio" in header.split(",")


def test_budget_flag_beats_env(tmp_path, monkeypatch):
    monkeypatch.setenv("LCED_BUDGET_CYCLES", "1")
    args = ("check", "cycles", "--instances", "4", "--s", "8", "--n", "30", "--out", str(tmp_path))
    assert run(*args) == 3
    assert run(*args, "--budget-cycles", "10000000") == 0


def test_fixtures_and_decompose(tmp_path, capsys):
    assert run("fixtures", "--out", str(tmp_path)) == 0
    capsys.readouterr()
    code = run("decompose", str(tmp_path / "dumbbell.graph"), "--h", "3", "--s", "2", "--phi", "1/10",
               "--family", "exhaustive")
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["cuts"] == [{"6": "1/1"}] and out["slack"] == "10/7"
    code = run("decompose", str(tmp_path / "k4.graph"), "--h", "1", "--s", "2", "--phi", "1/10",
               "--family", "exhaustive", "--max-edges", "6")
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and out["cuts"] == [] and out["slack"] == "0/1"


def test_decompose_partial_log(tmp_path, capsys):
    run("fixtures", "--out", str(tmp_path))
    capsys.readouterr()
    code = run("decompose", str(tmp_path / "path8.graph"), "--h", "8", "--phi", "1", "--family", "singletons",
               "--budget-iterations", "1")
    out = json.loads(capsys.readouterr().out)
    assert code == 3 and len(out["partial_log"]) == 1


def test_malformed_graph_exit_2(tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("2 1\n0 1 one 1\n")
    assert run("decompose", str(bad), "--phi", "1") == 2
    assert run("decompose", str(tmp_path / "missing.graph"), "--phi", "1") == 2


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "lced.cli", "check", "fixtures", "--out", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "fixtures: 4 pass" in proc.stdout
