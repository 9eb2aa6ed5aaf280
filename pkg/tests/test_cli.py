from __future__ import annotations

import csv
import math
import io
import json
import subprocess
import sys

import pytest

from tricomi_lab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


@pytest.mark.parametrize("sub, argv", [
    ("solve", ["--alpha", "0", "--phi", "cos", "--t", "1", "--x", "0"]),
    ("mc-solve", ["--alpha", "1", "--samples", "1000"]),
    ("field-sample", ["--dx", "0.01"]),
    ("variance", []),
    ("xi-verify", ["--alpha", "2", "--points", "65"]),
    ("study", ["--variant", "wave", "--k-max", "2", "--empirical", "false"]),
])
def test_golden_csv_headers(capsys, sub, argv):
    code, out, _ = run(capsys, sub, *argv, "--format", "csv")
    assert code == 0
    assert tuple(csv_rows(out)[0]) == cli.CSV_HEADERS[sub]


def test_solve_examples(capsys):
    code, out, _ = run(capsys, "solve", "--alpha", "0", "--phi", "cos", "--t", "1", "--x", "0", "--format", "csv")
    assert code == 0
    assert float(csv_rows(out)[1][2]) == pytest.approx(0.841471, abs=1e-6)
    code, out, _ = run(capsys, "solve", "--alpha", "2", "--phi", "one", "--t", "2", "--x", "0", "--format", "csv")
    assert float(csv_rows(out)[1][2]) == pytest.approx(2.0, abs=1e-12)


def test_solve_json_envelope_and_residual(capsys):
    code, out, _ = run(capsys, "solve", "--alpha", "2", "--t", "0.5:1:3", "--x=-1:1:3")
    assert code == 0
    doc = json.loads(out)
    assert doc["tool_version"] == cli.__version__
    assert doc["config"]["subcommand"] == "solve" and doc["config"]["alpha"] == 2.0
    assert len(doc["payload"]["field"]) == 9
    assert doc["payload"]["residual"] is not None


def test_deterministic_output(capsys):
    argv = ["mc-solve", "--alpha", "2", "--samples", "2000", "--x=-1:1:3", "--seed", "5"]
    a = run(capsys, *argv, "--threads", "1")[1]
    b = run(capsys, *argv, "--threads", "1")[1]
    c = run(capsys, *argv, "--threads", "3")[1]
    assert a == b == c


@pytest.mark.parametrize("argv", [
    ["mc-solve"],                                             # missing alpha
    ["xi-verify", "--alpha", "2", "--T", "-1"],
    ["study", "--variant", "tricomi-lower", "--noise", "fractional", "--hurst", "0.4"],
    ["solve", "--alpha", "-1"],
    ["solve", "--alpha", "1", "--format", "both"],            # needs --output-dir
    ["solve", "--alpha", "1", "--t", "-1"],
])
def test_argument_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_malformed_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve", "--alpha", "two"])
    assert exc.value.code == 2


def test_non_contraction_exit_3(capsys):
    code, out, _ = run(capsys, "xi-verify", "--alpha", "2", "--T", "0.5", "--perturb", "0.2", "--points", "257")
    assert code == 3
    doc = json.loads(out)
    assert doc["payload"]["converged"] is False


def test_xi_verify_exact_profile(capsys):
    code, out, _ = run(capsys, "xi-verify", "--alpha", "2", "--points", "1025")
    assert code == 0
    p = json.loads(out)["payload"]
    assert p["converged"] and p["gap_to_xi"] < 1e-6
    assert p["L"] == pytest.approx(2.5)


def test_resource_error_exit_4(capsys):
    code, _, _ = run(capsys, "field-sample", "--dx", "1e-9")
    assert code == 4


def test_config_precedence(capsys, tmp_path, monkeypatch):
    conf = tmp_path / "run.cfg"
    conf.write_text("# comment\nalpha = 1\nsamples=500\nseed=7\n")
    monkeypatch.setenv("TRICOMI_SEED", "99")
    _, out, _ = run(capsys, "mc-solve", "--config", str(conf), "--alpha", "2")
    cfg = json.loads(out)["config"]
    assert cfg["alpha"] == 2.0 and cfg["samples"] == 500 and cfg["seed"] == 7


def test_env_seed_and_default(capsys, monkeypatch):
    monkeypatch.setenv("TRICOMI_SEED", "99")
    assert json.loads(run(capsys, "variance")[1])["config"]["seed"] == 99
    monkeypatch.delenv("TRICOMI_SEED")
    assert json.loads(run(capsys, "variance")[1])["config"]["seed"] == 42
    monkeypatch.setenv("TRICOMI_SEED", "abc")
    assert run(capsys, "variance")[0] == 2


def test_unknown_config_key(capsys, tmp_path):
    conf = tmp_path / "bad.cfg"
    conf.write_text("alpha=1\nbogus=3\n")
    code, _, err = run(capsys, "mc-solve", "--config", str(conf))
    assert code == 2 and "bogus" in err


def test_output_dir_both(capsys, tmp_path):
    code, out, _ = run(capsys, "variance", "--variant", "tricomi-lower", "--hurst", "0.75",
                       "--eps", "0.001", "--format", "both", "--output-dir", str(tmp_path))
    assert code == 0 and out == ""
    assert (tmp_path / "variance.csv").exists() and (tmp_path / "variance.timings.json").exists()
    payload = json.loads((tmp_path / "variance.json").read_text())["payload"]
    assert payload["l2_variance"] == "infinite"
    assert payload["h_norm_variance"] == pytest.approx(payload["h_norm_closed_form"], rel=1e-6)
    assert payload["truncated_lower_variance"] == pytest.approx(0.25 * math.log(1e3), rel=1e-12)


def test_variance_subcommand_values(capsys):
    rows = dict(csv_rows(run(capsys, "variance", "--alpha", "2", "--format", "csv")[1])[1:])
    assert float(rows["l2_variance"]) == pytest.approx(1.0942198076132386, rel=1e-14)
    rows = dict(csv_rows(run(capsys, "variance", "--variant", "wave", "--format", "csv")[1])[1:])
    assert float(rows["l2_variance"]) == 0.5


def test_field_sample_zero_time(capsys):
    code, out, _ = run(capsys, "field-sample", "--t", "0", "--x=-1:1:5", "--dx", "0.01", "--format", "csv")
    assert code == 0
    assert all(float(r[2]) == 0.0 for r in csv_rows(out)[1:])


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tricomi_lab", "variance", "--variant", "wave",
                          "--format", "csv"], capture_output=True, text=True, timeout=120)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "quantity,value"
