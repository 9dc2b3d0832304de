import json
import subprocess
import sys

import pytest

from fqminors import cli
from fqminors.gf import field
from fqminors.matrix import FqMatrix, format_matrix


def run_cli(args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "fqminors"] + args,
        capture_output=True, text=True, **kw,
    )


def fano_file(tmp_path):
    entries = []
    for i in range(3):
        for c in range(1, 8):
            entries.append((c >> i) & 1)
    path = tmp_path / "fano.txt"
    path.write_text(format_matrix(FqMatrix(field(2), 3, 7, tuple(entries))))
    return str(path)


def test_formula_gaussian(capsys):
    assert cli.main(["formula", "gaussian", "--n", "4", "--k", "2", "--q", "2"]) == 0
    assert "35" in capsys.readouterr().out


def test_formula_lower_json(capsys):
    rc = cli.main(["formula", "lower", "--q", "2", "--m", "2", "--n", "4",
                   "--target", "name:U:1,2", "--json"])
    assert rc == 0
    d = json.loads(capsys.readouterr().out)
    assert (d["num"], d["den"], d["best_k"]) == ("7", "32", 1)


def test_formula_cq(capsys):
    assert cli.main(["formula", "cq", "--q", "2", "--tol", "1e-9"]) == 0
    out = capsys.readouterr().out
    assert "0.288788095" in out and "1/4" in out


def test_formula_psmq_and_repcount(capsys):
    assert cli.main(["formula", "psmq", "--s", "1", "--q", "2",
                     "--target", "name:U:1,2"]) == 0
    assert "1/4" in capsys.readouterr().out
    assert cli.main(["formula", "repcount", "--m", "2", "--q", "2",
                     "--target", "name:U:2,3"]) == 0
    assert "6" in capsys.readouterr().out


def test_formula_remaining_subcommands(capsys):
    assert cli.main(["formula", "rank-count", "--m", "2", "--n", "2",
                     "--q", "2", "--k", "1"]) == 0
    assert "9" in capsys.readouterr().out
    assert cli.main(["formula", "colrank-prob", "--m", "3", "--n", "2", "--q", "2"]) == 0
    assert "21/32" in capsys.readouterr().out
    assert cli.main(["formula", "upper", "--m", "2", "--n", "2", "--q", "2"]) == 0
    assert "5/8" in capsys.readouterr().out
    assert cli.main(["formula", "block-lower", "--m", "1", "--n", "4", "--q", "2",
                     "--target", "name:U:1,2"]) == 0
    assert "7/16" in capsys.readouterr().out
    assert cli.main(["formula", "liminf", "--q", "2", "--target", "name:U:1,2"]) == 0
    assert "3/16" in capsys.readouterr().out
    assert cli.main(["formula", "free-prob", "--m", "2", "--n", "2",
                     "--q", "2", "--r", "1"]) == 0
    assert "15/16" in capsys.readouterr().out


def test_target_from_matroid_file(tmp_path, capsys):
    from fqminors.matroid import catalog, format_matroid

    path = tmp_path / "u12.matroid"
    path.write_text(format_matroid(catalog("U:1,2")))
    rc = cli.main(["formula", "lower", "--q", "2", "--m", "2", "--n", "4",
                   "--target", str(path), "--json"])
    assert rc == 0
    d = json.loads(capsys.readouterr().out)
    assert (d["num"], d["den"]) == ("7", "32")


def test_minor_found_and_verified(tmp_path, capsys):
    rc = cli.main(["minor", "--host", fano_file(tmp_path), "--target", "name:F7", "--json"])
    assert rc == 0
    d = json.loads(capsys.readouterr().out)
    assert d["outcome"] == "found" and d["verified"] is True
    assert d["witness"]["contract"] == [] and d["witness"]["delete"] == []


def test_minor_absent(tmp_path, capsys):
    path = tmp_path / "ident.txt"
    path.write_text(format_matrix(FqMatrix.identity(field(2), 4)))
    rc = cli.main(["minor", "--host", str(path), "--target", "name:U:1,2"])
    assert rc == 0
    assert "absent" in capsys.readouterr().out


def test_minor_parse_error_exit_3(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 2 2\n1 0\n1 oops\n")
    res = run_cli(["minor", "--host", str(path), "--target", "name:U:1,2"])
    assert res.returncode == 3
    assert "line 3" in res.stderr


def test_missing_file_exit_3(tmp_path):
    res = run_cli(["minor", "--host", str(tmp_path / "nope.txt"), "--target", "name:U:1,2"])
    assert res.returncode == 3


def test_usage_errors_exit_1():
    assert run_cli(["formula", "gaussian", "--n", "4"]).returncode == 1
    assert run_cli(["no-such-command"]).returncode == 1
    res = run_cli(["minor", "--target", "name:U:1,2"])  # no host
    assert res.returncode == 1
    res = run_cli(["minor", "--sample", "2", "2", "2", "--target", "name:U:9,4"])
    assert res.returncode == 1
    res = run_cli(["minor", "--sample", "6", "2", "2", "--target", "name:U:1,2"])
    assert res.returncode == 1 and "prime power" in res.stderr


def test_class_graphic_yes(tmp_path, capsys):
    k4_edges = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    rows = [[1 if v in e else 0 for e in k4_edges] for v in range(4)]
    path = tmp_path / "k4.txt"
    path.write_text(format_matrix(FqMatrix.from_rows(field(2), rows)))
    rc = cli.main(["class", "--host", str(path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "membership: yes" in out


def test_class_graphic_no_u24(tmp_path, capsys):
    path = tmp_path / "u24.txt"
    path.write_text(format_matrix(FqMatrix.from_rows(field(5), [[1, 1, 1, 1], [0, 1, 2, 3]])))
    rc = cli.main(["class", "--host", str(path), "--json"])
    assert rc == 0
    d = json.loads(capsys.readouterr().out)
    assert d["membership"] == "no" and d["outcomes"]["U:2,4"] == "found"


def test_simulate_csv_deterministic():
    args = ["simulate", "--q", "2", "--target", "name:U:1,2",
            "--n-start", "4", "--n-stop", "8", "--n-step", "2",
            "--m-rule", "n-minus:2", "--trials", "200", "--seed", "31"]
    a = run_cli(args)
    b = run_cli(args)
    assert a.returncode == 0 and a.stdout == b.stdout
    lines = a.stdout.strip().splitlines()
    assert lines[0] == "n,m,trials,point,ci_lo,ci_hi,lower_bound,upper_bound"
    assert len(lines) == 4


def test_simulate_out_file(tmp_path):
    out = tmp_path / "rows.csv"
    res = run_cli(["simulate", "--q", "2", "--target", "name:free:2",
                   "--n-start", "3", "--n-stop", "3", "--m-rule", "constant:3",
                   "--trials", "50", "--seed", "1", "--out", str(out)])
    assert res.returncode == 0
    text = out.read_text()
    # free target rows carry the exact probability in both bound columns
    row = text.strip().splitlines()[1].split(",")
    assert row[6] == row[7] != ""


def test_class_sweep_csv(capsys):
    rc = cli.main(["class", "--sweep", "--q", "2", "--n-start", "10", "--n-stop", "12",
                   "--n-step", "2", "--m-rule", "n-minus:8", "--trials", "30",
                   "--seed", "2", "--budget", "5000"])
    assert rc == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0].startswith("# row-floor: q=2 requires m(n) >= 3")
    assert lines[1] == "n,m,trials,nongraphic_found,unknown,frequency"
    assert len(lines) == 4


def test_validate_passes(capsys):
    assert cli.main(["validate"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out and "FAIL" not in out


def test_validate_catches_corrupted_formula(monkeypatch, capsys):
    from fqminors import formulas

    real = formulas.count_rank_matrices

    def corrupted(m, n, q, k):
        v = real(m, n, q, k)
        return v + 1 if (m, n, q, k) == (2, 2, 2, 1) else v

    monkeypatch.setattr(formulas, "count_rank_matrices", corrupted)
    rc = cli.main(["validate"])
    assert rc == 2
    out = capsys.readouterr().out
    assert "FAIL rank-counts-vs-oracle" in out


def test_validate_byte_identical_runs():
    a = run_cli(["validate"])
    b = run_cli(["validate"])
    assert a.returncode == 0
    assert a.stdout == b.stdout
