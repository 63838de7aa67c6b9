import subprocess
import sys

import pytest

from pcnsolve.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exact_hamming_and_verify(capsys, tmp_path):
    witness = tmp_path / "w.col"
    code, out, _ = run(capsys, "exact", "--family", "hamming", "--q", "3", "--m", "2", "--out", str(witness))
    assert code == 0
    assert "chi_rho = 7" in out.splitlines()
    assert witness.read_text().startswith("# pcn 7 graph H(3,2)\n")
    code, out, _ = run(capsys, "verify", "--family", "hamming", "--q", "3", "--m", "2", "--coloring", str(witness))
    assert code == 0 and out.startswith("valid")


def test_verify_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.col"
    bad.write_text("# pcn 2 graph P4\n1 1\n2 2\n3 1\n4 2\n")
    code, out, _ = run(capsys, "verify", "--family", "path", "--n", "4", "--coloring", str(bad))
    assert code == 3 and out.startswith("invalid")


def test_exact_prints_witness_to_stdout(capsys):
    code, out, _ = run(capsys, "exact", "--family", "petersen", "--strategy", "starred")
    assert code == 0
    assert "chi_rho = 7" in out
    assert "# pcn 7 graph Petersen" in out


def test_exact_budget_exhausted(capsys):
    code, out, _ = run(capsys, "exact", "--family", "hamming", "--q", "3", "--m", "4", "--budget-nodes", "50")
    assert code == 2
    assert "chi_rho in [45, 48]" in out


def test_capped_strategy_from_file(capsys, tmp_path):
    ub = tmp_path / "ub.col"
    assert run(capsys, "exact", "--family", "cycle", "--n", "9", "--out", str(ub))[0] == 0
    code, out, _ = run(capsys, "exact", "--family", "cycle", "--n", "9",
                       "--strategy", "starred-capped", "--upper-bound-file", str(ub))
    assert code == 0 and "chi_rho = 4" in out
    code, _, err = run(capsys, "exact", "--family", "cycle", "--n", "9", "--strategy", "starred-capped")
    assert code == 1 and "--upper-bound-file" in err


def test_dimacs_source(capsys, tmp_path):
    path = tmp_path / "c5.col"
    assert run(capsys, "gen", "cycle", "--n", "5", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "exact", "--dimacs", str(path))
    assert code == 0 and "chi_rho = 4" in out


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["exact"], "exactly one graph source"),
        (["exact", "--family", "path", "--dimacs", "x.col"], "exactly one graph source"),
        (["exact", "--family", "hamming", "--q", "3"], "--m"),
        (["exact", "--family", "hamming", "--q", "12", "--m", "4"], "budget"),
        (["exact", "--dimacs", "/nonexistent/file.col"], "No such file"),
        (["gen", "two-layer", "--q", "2"], "q >= 3"),
    ],
)
def test_invalid_input_exit_code(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert fragment in err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as info:
        main(["exact", "--budget-nodes", "0", "--family", "petersen"])
    assert info.value.code == 1


def test_vertex_budget_flag(capsys):
    code, _, err = run(capsys, "gen", "hamming", "--q", "3", "--m", "3", "--vertex-budget", "10")
    assert code == 1 and "budget" in err


def test_gen_outputs(capsys):
    code, out, _ = run(capsys, "gen", "hamming", "--q", "2", "--m", "2")
    assert code == 0
    assert out == "c H(2,2)\np edge 4 4\ne 1 2\ne 1 3\ne 2 4\ne 3 4\n"
    code, out, _ = run(capsys, "gen", "diagonal", "--q", "3", "--m", "2")
    assert out == "# layer 1\n1\n6\n8\n"
    code, out, _ = run(capsys, "gen", "two-layer", "--q", "3")
    lines = out.splitlines()
    assert lines[0] == "# layer 1" and "# layer 2" in lines and len(lines) == 14


def test_heuristic_command(capsys, tmp_path):
    set_path, col_path = tmp_path / "s.txt", tmp_path / "w.col"
    code, out, _ = run(capsys, "heuristic", "--q", "2", "--m", "5", "--budget-nodes", "2000",
                       "--set-out", str(set_path), "--out", str(col_path))
    assert code == 0 and "chi_rho in [" in out
    code, out, _ = run(capsys, "verify", "--family", "hamming", "--q", "2", "--m", "5", "--stable-set", str(set_path))
    assert code == 0 and out.startswith("valid layered stable set")
    assert run(capsys, "verify", "--family", "hamming", "--q", "2", "--m", "5", "--coloring", str(col_path))[0] == 0


def test_bounds_command(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "3", "--m", "4")
    assert code == 0
    assert "closed-form lower bound 45" in out
    assert "exact value unknown" in out
    code, out, _ = run(capsys, "bounds", "--q", "4", "--m", "3")
    assert "exact value 46" in out


def test_export_lp_command(capsys, tmp_path):
    code, out, _ = run(capsys, "export-lp", "--family", "path", "--n", "3", "--layers", "1")
    assert code == 0
    assert out.startswith("\\ graph P3 layers 1\nMaximize\n")
    code, _, err = run(capsys, "export-lp", "--family", "path", "--n", "3", "--layers", "1,x")
    assert code == 1 and "--layers" in err


def test_table_command(capsys, tmp_path):
    csv, certs = tmp_path / "t.csv", tmp_path / "certs"
    code, out, _ = run(capsys, "table", "--m", "3", "4", "--q-max", "4", "--budget-nodes", "200000",
                       "--csv", str(csv), "--certificates", str(certs), "--vertex-budget", "100")
    lines = out.splitlines()
    assert lines[0].split() == ["q", "m", "LB", "UB", "status"]
    assert lines[1].split() == ["3", "3", "17", "17", "exact"]
    assert lines[2].split() == ["4", "3", "46", "46", "exact"]
    assert lines[4].split() == ["4", "4", "-", "-", "-"]
    assert code in (0, 2)
    assert csv.read_text().startswith("q,m,lower,upper,status\n3,3,17,17,exact\n")
    assert sorted(p.name for p in certs.iterdir()) == ["H_3_3.col", "H_3_4.col", "H_4_3.col"]


def test_time_budget_warns(capsys):
    code, _, err = run(capsys, "exact", "--family", "petersen", "--budget-seconds", "30")
    assert code == 0 and "nondeterministic" in err


def test_identical_runs_are_byte_identical(tmp_path):
    argv = [sys.executable, "-m", "pcnsolve.cli", "exact", "--family", "hamming", "--q", "3", "--m", "4",
            "--budget-nodes", "3000"]
    a = subprocess.run(argv, capture_output=True, check=False)
    b = subprocess.run(argv, capture_output=True, check=False)
    assert a.returncode == b.returncode == 2
    assert a.stdout == b.stdout and a.stdout
