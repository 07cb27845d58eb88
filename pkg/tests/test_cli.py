import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from traceineq import cli
from traceineq.checkers import InequalityReport
from traceineq.search import COMPLEX_A, COMPLEX_T
from traceineq.spectral import load_matrix, save_matrix

INEQUALITY_ROWS = {
    "amgm_weighted", "check_alpha_interp", "check_araki", "check_bourin_fujii", "check_ordered_fg",
    "check_p1", "check_p2", "check_power_chain_m", "check_rhs_order", "check_thm_2x2",
}


def run(*argv):
    return subprocess.run([sys.executable, "-m", "traceineq", *argv], capture_output=True, text=True)


@pytest.fixture
def complex_files(tmp_path):
    t, a = tmp_path / "T.json", tmp_path / "A.json"
    save_matrix(t, COMPLEX_T)
    save_matrix(a, COMPLEX_A)
    return t, a


def test_verify_text(capsys):
    assert cli.main(["verify", "--dims", "2,3", "--samples", "100", "--seed", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    rows = {line.split()[0] for line in out[2:-1]}
    assert INEQUALITY_ROWS <= rows
    assert rows - INEQUALITY_ROWS == {"arc_parity", "chain_phase_product"}
    assert out[-1] == "PASS"


def test_verify_zero_samples_is_usage_error():
    proc = run("verify", "--samples", "0")
    assert proc.returncode == 2
    assert "usage" in proc.stderr


def test_unknown_flag_rejected():
    assert run("verify", "--bogus").returncode == 2


def test_verify_json_is_report_array(capsys):
    assert cli.main(["verify", "--dims", "2", "--samples", "5", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert isinstance(data, list) and data
    for obj in data:
        rep = InequalityReport.from_json(obj)
        assert rep.to_json() == obj


def test_verify_csv_header(capsys):
    assert cli.main(["verify", "--dims", "2", "--samples", "3", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["checker", "dim", "index"] + cli.REPORT_FIELDS
    assert all(len(r) == len(rows[0]) for r in rows)


def test_verify_fail_exit(monkeypatch, capsys):
    from traceineq import suite
    from traceineq.checkers import make_report

    def broken(n, seed, index, rtol):
        return [make_report("check_p1", 2.0, 1.0, rtol)]

    monkeypatch.setitem(suite.CHECKS, "check_p1", suite.Check(broken, sized=True))
    assert cli.main(["verify", "--dims", "2", "--samples", "2"]) == 1
    assert capsys.readouterr().out.splitlines()[-1].startswith("FAIL")


def test_text_and_json_values_agree(capsys):
    cli.main(["verify", "--dims", "2", "--samples", "20", "--seed", "4", "--format", "json"])
    reports = [InequalityReport.from_json(o) for o in json.loads(capsys.readouterr().out)]
    cli.main(["verify", "--dims", "2", "--samples", "20", "--seed", "4"])
    lines = capsys.readouterr().out.splitlines()[2:-1]
    text_min = {line.split()[0]: float(line.split()[2]) for line in lines}
    from traceineq import suite
    records = suite.run_suite([2], 20, 4)
    for row in suite.summarize(records):
        assert text_min[row.name] == row.min_slack
    assert min(r.slack for r in reports) == min(text_min.values())


def test_seed_env_fallback(monkeypatch, capsys):
    monkeypatch.setenv(cli.SEED_ENV, "0x10")
    cli.main(["verify", "--dims", "2", "--samples", "2"])
    assert "seed=16" in capsys.readouterr().out


def test_counterexample_default():
    proc = run("counterexample")
    assert proc.returncode == 0
    assert "116.0367435" in proc.stdout and "MATCH" in proc.stdout


def test_counterexample_json(capsys):
    assert cli.main(["counterexample", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data) == {"re", "im", "golden_re", "golden_im", "pass"}
    assert data["pass"] is True
    assert abs(data["re"] - 116.037) <= 5e-3 and abs(data["im"] - 0.00260306) <= 5e-8


def test_counterexample_tampered(tmp_path, complex_files):
    bad = tmp_path / "bad.json"
    save_matrix(bad, np.diag([1.0, 2.0, 4.0]))
    assert run("counterexample", "--matrix-t", str(bad)).returncode == 1
    _, a = complex_files
    assert run("counterexample", "--matrix-a", str(a)).returncode == 0


def test_search_deterministic(capsys):
    argv = ["search", "--conjecture", "ii", "--n", "3", "--m", "3", "--samples", "1000", "--seed", "7",
            "--format", "json"]
    assert cli.main(argv) == 0
    a = json.loads(capsys.readouterr().out)
    assert cli.main(argv) == 0
    b = json.loads(capsys.readouterr().out)
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b and a["violations"] == 0


def test_search_n2(capsys):
    assert cli.main(["search", "--conjecture", "i", "--n", "2", "--m", "5", "--samples", "500"]) == 0
    assert "violations=0" in capsys.readouterr().out


def test_search_violation_exit_and_replay(tmp_path):
    out = tmp_path / "report.json"
    proc = run("search", "--conjecture", "i", "--n", "3", "--m", "3", "--samples", "50", "--relax-a",
               "--format", "json", "--output", str(out))
    assert proc.returncode == 3
    report = json.loads(out.read_text())
    inst = json.loads((tmp_path / "report.instance.json").read_text())
    assert set(inst) == {"conjecture", "seed", "sample_index", "T", "A", "weights", "slack", "chain"}
    replay = [line for line in proc.stderr.splitlines() if line.startswith("replay: ")][0]
    args = replay.split()[2:]
    proc2 = run(*args, "--format", "json")
    assert proc2.returncode == 0
    data = json.loads(proc2.stdout)
    assert data["conjecture_i_slack"] == pytest.approx(inst["slack"], rel=1e-12, abs=1e-12)
    assert report["violations"] > 0


def test_search_config_errors():
    assert run("search", "--conjecture", "i", "--n", "1", "--m", "3").returncode == 2
    assert run("search", "--conjecture", "iii", "--n", "3", "--m", "3").returncode == 2
    assert run("search", "--n", "3", "--m", "3").returncode == 2


def test_chain_complex_instance(complex_files, capsys):
    t, a = complex_files
    assert cli.main(["chain", "--matrix-t", str(t), "--matrix-a", str(a), "--weights", "1/6,1/3,1/2",
                     "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert abs(data["chain"]["re"] - 116.037) <= 5e-3
    assert abs(data["chain"]["im"] - 0.00260306) <= 5e-8
    assert data["upper"] == pytest.approx(120.0, rel=1e-12)


def test_chain_m1(tmp_path, capsys):
    rng = np.random.default_rng(0)
    G = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    T, A = G @ G.conj().T, np.diag([1.0, 2.0, 3.0])
    save_matrix(tmp_path / "T.json", T)
    save_matrix(tmp_path / "A.json", A)
    assert cli.main(["chain", "--matrix-t", str(tmp_path / "T.json"), "--matrix-a", str(tmp_path / "A.json"),
                     "--weights", "1.0", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["chain"]["re"] == pytest.approx(np.trace(T @ A).real, rel=1e-12)


def test_chain_errors(tmp_path, complex_files):
    t, a = complex_files
    assert run("chain", "--matrix-t", str(t), "--matrix-a", str(a), "--weights", "0.5,0.4").returncode == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("chain", "--matrix-t", str(bad), "--matrix-a", str(a), "--weights", "1").returncode == 2
    neg = tmp_path / "neg.json"
    save_matrix(neg, np.diag([1.0, -2.0, 3.0]))
    assert run("chain", "--matrix-t", str(neg), "--matrix-a", str(a), "--weights", "1").returncode == 2


def test_matrix_file_roundtrip_precision(tmp_path):
    rng = np.random.default_rng(1)
    M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    save_matrix(tmp_path / "m.json", M)
    np.testing.assert_array_equal(load_matrix(tmp_path / "m.json"), M)
