import io
import subprocess
import sys

import pytest

from eqtrans.cli import main
from eqtrans.cnfio import read_assignment, read_dimacs, read_rel

K3_REL = "p rel 3 3\n1 1 2\n2 2 3\n3 1 3\n"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    (tmp_path / "k3.rel").write_text(K3_REL)
    (tmp_path / "bad.cnf").write_text("p cnf 3 3\n1 0\n2 0\n-3 0\n")
    (tmp_path / "ok.cnf").write_text("p cnf 3 2\n1 0\n2 0\n")
    return tmp_path


def test_gen_dense(files):
    code, out = run("gen", "--method", "dense", "--rel", str(files / "k3.rel"), "-o", str(files / "out.cnf"))
    assert code == 0
    assert len(read_dimacs((files / "out.cnf").read_text()).clauses) == 3
    assert "clauses=3" in out


def test_gen_merge_and_rel_out_round_trip(files):
    (files / "c4.rel").write_text("p rel 4 4\n1 1 2\n2 2 3\n3 3 4\n4 1 4\n")
    (files / "f.cnf").write_text("p cnf 4 3\n1 0\n2 0\n3 0\n")
    code, _ = run("gen", "--method", "sparse", "--rel", str(files / "c4.rel"), "--cnf", str(files / "f.cnf"),
                  "-o", str(files / "m.cnf"), "--rel-out", str(files / "aug.rel"))
    assert code == 0
    merged = read_dimacs((files / "m.cnf").read_text())
    aug = read_rel((files / "aug.rel").read_text())
    assert merged.clauses[:3] == [[1], [2], [3]]
    assert len(aug.entries) == 5 and merged.num_vars == 5
    # files written by the CLI are accepted by the CLI
    code, _ = run("solve", "--cnf", str(files / "m.cnf"), "--rel", str(files / "aug.rel"), "-o", str(files / "model.txt"))
    assert code == 10
    assert read_assignment((files / "model.txt").read_text())[4] == 1
    code, out = run("check", "--rel", str(files / "aug.rel"), "--assign", str(files / "model.txt"))
    assert code == 0 and out.strip() == "status=consistent"


def test_bench_stats():
    code, out = run("bench", "mesh", "--n", "4", "--method", "direct", "--stats")
    assert code == 0
    assert out == "edges=24 cycles=24 clauses=192\n"


def test_bench_csv_and_table(tmp_path):
    code, out = run("bench", "--table2", "--sizes", "4", "--csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "family,n,method,edges,cycles,clauses,seconds"
    assert [line.split(",")[3:6] for line in lines[1:]] == [["24", "24", "192"], ["120", "560", "1680"], ["42", "44", "132"]]
    code, out = run("bench", "--table2", "--sizes", "4,5", "--jobs", "2")
    assert code == 0 and "M_5" in out and "3056" in out


def test_bench_writes_rel(tmp_path):
    code, _ = run("bench", "random", "--n", "8", "--p", "0.3", "--seed", "42", "-o", str(tmp_path / "r.rel"))
    assert code == 0
    assert len(read_rel((tmp_path / "r.rel").read_text()).entries) == 13


@pytest.mark.parametrize("mode", ["eager", "lazy"])
def test_solve_exit_codes(files, mode):
    assert run("solve", "--cnf", str(files / "bad.cnf"), "--rel", str(files / "k3.rel"), "--mode", mode)[0] == 20
    code, out = run("solve", "--cnf", str(files / "ok.cnf"), "--rel", str(files / "k3.rel"), "--mode", mode)
    assert code == 10 and out.startswith("s SATISFIABLE")
    stats = dict(kv.split("=") for kv in out.splitlines()[1].split())
    assert "conflicts" in stats and "refinement_rounds" in stats


def test_solve_reads_embedded_rel_comments(tmp_path):
    (tmp_path / "e.cnf").write_text("c rel 1 1 2\nc rel 2 2 3\nc rel 3 1 3\np cnf 3 3\n1 0\n2 0\n-3 0\n")
    assert run("solve", "--cnf", str(tmp_path / "e.cnf"), "--mode", "lazy")[0] == 20


def test_stats_stable_with_seed(files):
    a = run("solve", "--cnf", str(files / "ok.cnf"), "--rel", str(files / "k3.rel"), "--seed", "3")
    b = run("solve", "--cnf", str(files / "ok.cnf"), "--rel", str(files / "k3.rel"), "--seed", "3")
    assert a == b


def test_check_reports_witness(files):
    (files / "a.txt").write_text("1 1\n2 1\n3 0\n")
    code, out = run("check", "--rel", str(files / "k3.rel"), "--assign", str(files / "a.txt"))
    assert code == 0
    assert out.strip() == "status=violation cycle=1,2,3 zero_edge=1,3"


def test_obdd_modes(files):
    assert run("obdd", "--reduced-check", "--cnf", str(files / "bad.cnf"), "--rel", str(files / "k3.rel"))[0] == 20
    assert run("obdd", "--reduced-check", "--cnf", str(files / "ok.cnf"), "--rel", str(files / "k3.rel"))[0] == 10
    code, out = run("obdd", "--implicants", "--cnf", str(files / "bad.cnf"), "--rel", str(files / "k3.rel"))
    assert code == 20 and out.strip() == "status=exhausted examined=1"
    code, out = run("obdd", "--probe-growth", "--sizes", "3", "--csv")
    assert code == 0 and out.splitlines()[0] == "n,ordering,nodes,seconds" and ",84," in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["solve", "--cnf", "x.cnf", "--method", "nope"],
    ["bench", "mesh", "--max-cycles", "-4"],
    ["bench", "--stats"],
    ["obdd", "--probe-growth", "--reduced-check"],
    ["obdd", "--implicants"],
])
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert "usage error" in capsys.readouterr().err


def test_parse_error_exit_1(tmp_path, capsys):
    (tmp_path / "broken.cnf").write_text("p cnf 2 1\n3 0\n")
    (tmp_path / "k3.rel").write_text(K3_REL)
    assert run("solve", "--cnf", str(tmp_path / "broken.cnf"), "--rel", str(tmp_path / "k3.rel"))[0] == 1
    assert "error" in capsys.readouterr().err
    assert run("check", "--rel", str(tmp_path / "missing.rel"), "--assign", "x")[0] == 1


def test_limits_exit_2(monkeypatch):
    assert run("bench", "mesh", "--n", "5", "--max-cycles", "10")[0] == 2
    monkeypatch.setenv("EQTRANS_CYCLE_LIMIT", "10")
    assert run("bench", "mesh", "--n", "5")[0] == 2
    monkeypatch.setenv("EQTRANS_CYCLE_LIMIT", "ten")
    assert run("bench", "mesh", "--n", "5")[0] == 1
    monkeypatch.delenv("EQTRANS_CYCLE_LIMIT")
    monkeypatch.setenv("EQTRANS_NODE_LIMIT", "50")
    assert run("obdd", "--probe-growth", "--sizes", "4")[0] == 2


def test_lazy_round_limit_exit_2(tmp_path):
    # Two separate triangles, each with two edges forced to 1: the lazy
    # loop refutes one witness per round and needs two rounds.
    (tmp_path / "two.rel").write_text("p rel 6 6\n1 1 2\n2 2 3\n3 1 3\n4 4 5\n5 5 6\n6 4 6\n")
    (tmp_path / "f.cnf").write_text("p cnf 6 4\n1 0\n2 0\n4 0\n5 0\n")
    argv = ["solve", "--cnf", str(tmp_path / "f.cnf"), "--rel", str(tmp_path / "two.rel"), "--mode", "lazy"]
    assert run(*argv, "--rounds", "1")[0] == 2
    code, out = run(*argv, "--rounds", "2")
    assert code == 10 and "refinement_rounds=2" in out


def test_help_documents_interfaces():
    proc = subprocess.run([sys.executable, "-m", "eqtrans", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "EQTRANS_CYCLE_LIMIT" in proc.stdout
    assert "family,n,method,edges,cycles,clauses,seconds" in proc.stdout
    assert "n,ordering,nodes,seconds" in proc.stdout
