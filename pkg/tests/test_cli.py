import csv
import io
import json

import pytest

from kmdb import load_edge_list
from kmdb.cli import BENCH_COLUMNS, EXIT_IO, EXIT_OK, EXIT_TIMEOUT, EXIT_USAGE, main


@pytest.fixture
def g1_file(tmp_path):
    p = tmp_path / "g1.txt"
    p.write_text("% bip\n0 0\n0 1\n1 0\n")
    return str(p)


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_solve_text(g1_file):
    code, text = run("solve", g1_file, "--k", "1", "--theta", "2")
    assert code == EXIT_OK
    assert "status=OPTIMAL edges=3" in text


def test_solve_no_solution_json(g1_file):
    code, text = run("solve", g1_file, "--k", "0", "--theta", "2", "--output", "json")
    rec = json.loads(text)
    assert code == EXIT_OK
    assert rec["status"] == "NO_SOLUTION" and rec["edges"] == 0 and rec["left"] == []
    assert set(rec["stats"]) >= {"branches", "pruned_by_bounds", "reduction_events", "elapsed"}


def test_theta_must_exceed_k(g1_file, capsys):
    code, _ = run("solve", g1_file, "--k", "1", "--theta", "1")
    assert code == EXIT_USAGE
    assert "theta must be greater than k" in capsys.readouterr().err


def test_reports_original_labels(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 1\n1 2\n2 1\n2 2\n")
    code, text = run("solve", str(p), "--k", "0", "--theta", "2", "--one-based", "--output", "json")
    rec = json.loads(text)
    assert rec["left"] == [1, 2] and rec["right"] == [1, 2] and rec["edges"] == 4


@pytest.mark.parametrize("k", [0, 1, 2])
def test_oracle_agrees_with_solve(g1_file, k):
    theta = max(2, k + 1)
    _, a = run("solve", g1_file, "--k", str(k), "--theta", str(theta), "--output", "json")
    _, b = run("oracle", g1_file, "--k", str(k), "--theta", str(theta), "--output", "json")
    assert json.loads(a)["edges"] == json.loads(b)["edges"]


def test_oracle_empty_and_oversize(tmp_path):
    empty = tmp_path / "e.txt"
    empty.write_text("")
    code, text = run("oracle", str(empty), "--k", "0", "--theta", "1")
    assert code == EXIT_OK and "NO_SOLUTION" in text
    big = tmp_path / "big.txt"
    big.write_text("".join(f"{i} {i}\n" for i in range(30)))
    code, _ = run("oracle", str(big), "--k", "1", "--theta", "2", "--max-side", "10")
    assert code == EXIT_USAGE


def test_io_errors(tmp_path):
    assert run("solve", str(tmp_path / "missing.txt"), "--k", "1", "--theta", "2")[0] == EXIT_IO
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\nfoo bar\n")
    assert run("solve", str(bad), "--k", "1", "--theta", "2")[0] == EXIT_IO


def test_unknown_toggle_and_bad_args(g1_file):
    assert run("solve", g1_file, "--k", "1", "--theta", "2", "--disable", "warp")[0] == EXIT_USAGE
    assert run("solve", g1_file, "--k", "1")[0] == EXIT_USAGE
    assert run("solve", g1_file, "--k", "1", "--theta", "2", "--disable", "ub,cnred")[0] == EXIT_OK


def test_timeout_exit_code(tmp_path):
    p = tmp_path / "g.txt"
    assert run("gen", "--density", "0.5", "--seed", "0", "-o", str(p))[0] == EXIT_OK
    code, text = run("solve", str(p), "--k", "3", "--theta", "20", "--time-limit", "0.2", "--disable", "heur")
    assert code == EXIT_TIMEOUT and "TIMEOUT_BEST_KNOWN" in text


def test_gen_reproducible(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run("gen", "--density", "0.2", "--seed", "3", "-o", str(a))
    run("gen", "--density", "0.2", "--seed", "3", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert load_edge_list(a).m == 2000
    code, text = run("gen", "--n-left", "5", "--n-right", "4", "--density", "0.5", "--distribution", "normal")
    assert code == EXIT_OK and load_edge_list(text).m == 10
    assert run("gen", "--density", "1.5")[0] == EXIT_USAGE


def test_bench_rows(tmp_path):
    p = tmp_path / "g.txt"
    run("gen", "--n-left", "20", "--n-right", "20", "--density", "0.4", "--seed", "1", "-o", str(p))
    code, text = run("bench", str(p), "--k", "1-2", "--theta", "4", "--algo", "bb,pivot",
                     "--ablations", "ub,core", "--repeats", "2")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(text)))
    assert tuple(rows[0]) == BENCH_COLUMNS
    assert len(rows) == 2 * 2 * 3 * 2
    key = lambda r: (r["k"], r["algo"], r["toggles"])
    by = {}
    for r in rows:
        by.setdefault(key(r), []).append(r)
    for reps in by.values():
        assert reps[0]["edges"] == reps[1]["edges"] and reps[0]["branches"] == reps[1]["branches"]
    for k in ("1", "2"):
        for algo in ("bb", "pivot"):
            full = int(by[(k, algo, "all")][0]["branches"])
            no_ub = int(by[(k, algo, "-ub")][0]["branches"])
            assert no_ub >= full
            assert len({r["edges"] for r in rows if r["k"] == k}) == 1
    assert {r["toggles"] for r in rows} == {"all", "-ub", "none"}


def test_bench_skips_invalid_theta(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("0 0\n0 1\n1 0\n")
    out = tmp_path / "out.csv"
    assert run("bench", str(p), "--k", "1-3", "--theta", "2", "--algo", "pivot", "-o", str(out))[0] == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert [r["k"] for r in rows] == ["1"]
