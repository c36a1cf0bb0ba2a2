import csv
import json
import subprocess
import sys

import pytest

from qcsa.cli import DEFAULT_SEED, OUTPUT_DIR_ENV, main


def run_cli(*argv):
    return main(list(argv))


def test_construct_worked_bundle(tmp_path):
    out = tmp_path / "bundle.json"
    rc = run_cli("construct", "--p", "5", "--N", "2", "--L", "1",
                 "--alpha", "1,2", "--f", "3", "--u", "1,1", "--out", str(out))
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["v"] == [4, 1]
    assert doc["Qu"]["data"] == [3, 1, 1, 1]
    assert doc["Qv"]["data"] == [2, 4, 1, 1]
    assert doc["M_Q"]["data"] == [3, 2, 0, 0, 0, 0, 2, 2]
    assert doc["pi"]["image"] == [2, 4, 1, 3]
    assert doc["seed"] == DEFAULT_SEED


def test_construct_accepts_boundary_field(tmp_path):
    # q = N + L exactly: 3 distinct elements exist in GF(3)
    out = tmp_path / "b.json"
    assert run_cli("construct", "--p", "3", "--N", "2", "--L", "1", "--out", str(out)) == 0
    doc = json.loads(out.read_text())
    assert doc["params"] == {"p": 3, "N": 2, "L": 1, "alpha": [0, 1], "beta": [1, 1], "f": [2]}


def test_construct_rejects_bad_parameters(tmp_path):
    out = tmp_path / "b.json"
    assert run_cli("construct", "--p", "5", "--N", "4", "--L", "3", "--out", str(out)) == 2
    assert run_cli("construct", "--p", "4", "--N", "2", "--L", "1", "--out", str(out)) == 2
    assert run_cli("construct", "--p", "3", "--N", "2", "--L", "2", "--out", str(out)) == 2
    assert not out.exists()


def test_construct_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ("construct", "--p", "13", "--N", "5", "--L", "2")
    assert run_cli(*args, "--out", str(a)) == 0
    assert run_cli(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_construct_with_beta_emits_extra_matrix(tmp_path):
    out = tmp_path / "b.json"
    rc = run_cli("construct", "--p", "5", "--N", "2", "--L", "1",
                 "--alpha", "1,2", "--f", "3", "--u", "1,1", "--beta", "4,1",
                 "--out", str(out))
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["Q_beta"]["data"] == [2, 4, 1, 1]


def test_verify_fresh_bundle_passes(tmp_path, capsys):
    out = tmp_path / "bundle.json"
    run_cli("construct", "--p", "13", "--N", "4", "--L", "2", "--out", str(out))
    rc = run_cli("verify", str(out))
    printed = capsys.readouterr().out
    assert rc == 0
    assert "FAIL" not in printed
    assert "PASS selector_identity" in printed
    assert "PASS g_rank" in printed


@pytest.mark.parametrize("p,n,l", [(3, 2, 1), (11, 5, 2), (17, 7, 3), (101, 8, 4)])
def test_construct_verify_fixed_point(tmp_path, p, n, l):
    out = tmp_path / "bundle.json"
    assert run_cli("construct", "--p", str(p), "--N", str(n), "--L", str(l),
                   "--out", str(out)) == 0
    assert run_cli("verify", str(out)) == 0


def test_verify_detects_corrupted_channel_matrix(tmp_path, capsys):
    out = tmp_path / "bundle.json"
    run_cli("construct", "--p", "13", "--N", "4", "--L", "1", "--out", str(out))
    doc = json.loads(out.read_text())
    doc["M_Q"]["data"][0] = (doc["M_Q"]["data"][0] + 1) % 13
    out.write_text(json.dumps(doc))
    rc = run_cli("verify", str(out))
    printed = capsys.readouterr().out
    assert rc == 1
    assert "FAIL selector_identity" in printed


def test_verify_detects_zeroed_g_column(tmp_path, capsys):
    out = tmp_path / "bundle.json"
    run_cli("construct", "--p", "13", "--N", "4", "--L", "1", "--out", str(out))
    doc = json.loads(out.read_text())
    cols = doc["G"]["cols"]
    for row in range(doc["G"]["rows"]):
        doc["G"]["data"][row * cols] = 0
    out.write_text(json.dumps(doc))
    rc = run_cli("verify", str(out))
    printed = capsys.readouterr().out
    assert rc == 1
    assert "FAIL g_rank" in printed


def test_verify_malformed_file(tmp_path):
    assert run_cli("verify", str(tmp_path / "missing.json")) == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("verify", str(bad)) == 3
    truncated = tmp_path / "truncated.json"
    truncated.write_text(json.dumps({"params": {"p": 5, "N": 2, "L": 1,
                                                "alpha": [1, 2], "beta": [1, 1], "f": [3]}}))
    assert run_cli("verify", str(truncated)) == 3


def test_simulate_trials(tmp_path, capsys):
    out = tmp_path / "trials.jsonl"
    rc = run_cli("simulate", "--p", "13", "--N", "4", "--L", "2",
                 "--seed", "7", "--trials", "1000", "--out", str(out))
    assert rc == 0
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(lines) == 1001  # one per trial + summary
    assert all(row["pass"] for row in lines[:-1])
    assert all(row["costs"]["downloaded_qudits"] == 4 for row in lines[:-1])
    summary = lines[-1]
    assert summary["passed"] == 1000
    assert summary["costs_per_trial"]["downloaded_qudits"] == 4
    assert summary["costs_per_trial"]["desired_symbols"] == 4
    assert "1000/1000 trials passed" in capsys.readouterr().err


def test_simulate_zero_trials(tmp_path):
    out = tmp_path / "trials.jsonl"
    rc = run_cli("simulate", "--p", "13", "--N", "4", "--L", "2",
                 "--trials", "0", "--out", str(out))
    assert rc == 0
    summary = json.loads(out.read_text().splitlines()[-1])
    assert summary["trials"] == 0


def test_simulate_applies_reduction(tmp_path):
    out = tmp_path / "trials.jsonl"
    rc = run_cli("simulate", "--p", "11", "--N", "4", "--L", "3",
                 "--trials", "10", "--out", str(out))
    assert rc == 0
    summary = json.loads(out.read_text().splitlines()[-1])
    assert summary["reduced"] is True
    assert summary["requested"] == {"N": 4, "L": 3}
    assert summary["params"]["N"] == 2 and summary["params"]["L"] == 1
    assert summary["passed"] == 10


def test_simulate_is_deterministic(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    args = ("simulate", "--p", "13", "--N", "5", "--L", "2", "--seed", "3", "--trials", "20")
    assert run_cli(*args, "--out", str(a)) == 0
    assert run_cli(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_rates_table_csv(tmp_path):
    out = tmp_path / "rates.csv"
    rc = run_cli("rates", "--N", "2:6", "--out", str(out))
    assert rc == 0
    with open(out, newline="") as fh:
        rows = {(int(r["N"]), int(r["L"])): r for r in csv.DictReader(fh)}
    assert rows[(4, 1)]["R_C"] == "1/4"
    assert rows[(4, 1)]["R_Q"] == "1/2"
    assert rows[(6, 3)]["R_Q"] == "1"
    assert rows[(4, 3)]["N'"] == "2" and rows[(4, 3)]["L'"] == "1"
    assert rows[(4, 3)]["R_Q"] == "1"
    assert rows[(4, 3)]["qudits_per_symbol"] == "1"
    assert rows[(4, 1)]["dits_per_symbol"] == "4"
    assert rows[(4, 1)]["R_Q_decimal"] == "0.5"
    # full grid: all 1 <= L < N for N in 2..6
    assert len(rows) == sum(n - 1 for n in range(2, 7))


def test_rates_table_json_with_l_filter(tmp_path):
    out = tmp_path / "rates.json"
    rc = run_cli("rates", "--N", "4", "--L", "1:2", "--format", "json", "--out", str(out))
    assert rc == 0
    rows = json.loads(out.read_text())
    assert [(r["N"], r["L"]) for r in rows] == [(4, 1), (4, 2)]


def test_output_dir_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    assert run_cli("rates", "--N", "3", "--out", "env_rates.csv") == 0
    assert (tmp_path / "env_rates.csv").exists()
    # absolute paths ignore the env var
    target = tmp_path / "abs.csv"
    assert run_cli("rates", "--N", "3", "--out", str(target)) == 0
    assert target.exists()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qcsa", "rates", "--N", "4"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "1/4" in proc.stdout


def test_usage_errors_exit_2():
    assert run_cli("construct", "--p", "5", "--N", "2") == 2  # missing --L
    assert run_cli("nonsense") == 2
