"""Command line surface: exit codes, formats, round trips."""

import io
import json
import math

import numpy as np
import pytest

import signalbox as sb
from signalbox.cli import DEMO_NAMES, run


def write_table(tmp_path, corr, name="table.json"):
    path = tmp_path / name
    sb.save_correlation(corr, path)
    return str(path)


def test_analyze_file(tmp_path, capsys):
    path = write_table(tmp_path, sb.pr_box())
    assert run(["analyze", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["lambda"] == pytest.approx(4.0)
    assert payload["classical"] is False
    assert payload["measure"] == "mutual_info"


def test_analyze_measure_flag(tmp_path, capsys):
    path = write_table(tmp_path, sb.unbalanced_pr(0.0))
    assert run(["analyze", path, "--measure", "delta"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["measure"] == "delta"
    assert payload["eta"] == pytest.approx(0.0, abs=1e-12)
    assert payload["classical"] is True


def test_analyze_in_flag_and_conflict(tmp_path, capsys):
    path = write_table(tmp_path, sb.pr_box())
    assert run(["analyze", "--in", path]) == 0
    capsys.readouterr()
    assert run(["analyze", path, "--in", path]) == 1
    assert "not both" in capsys.readouterr().err


def test_analyze_stdin(tmp_path, capsys, monkeypatch):
    text = json.dumps(sb.to_json_dict(sb.pr_box()))
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert run(["analyze"]) == 0
    assert json.loads(capsys.readouterr().out)["lambda"] == pytest.approx(4.0)


def test_analyze_missing_file(tmp_path, capsys):
    assert run(["analyze", str(tmp_path / "nope.json")]) == 2
    assert "invalid input" in capsys.readouterr().err


def test_analyze_invalid_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{oops")
    assert run(["analyze", str(path)]) == 2


def test_analyze_invalid_table(tmp_path, capsys):
    path = tmp_path / "short.json"
    path.write_text(json.dumps({"p": [[0.5, 0.5]]}))
    assert run(["analyze", str(path)]) == 2


def test_analyze_out_file(tmp_path, capsys):
    path = write_table(tmp_path, sb.tsirelson_box())
    out = tmp_path / "report.json"
    assert run(["analyze", path, "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    payload = json.loads(out.read_text())
    assert payload["c_lambda"] == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-9)


def test_analyze_unwritable_out(tmp_path, capsys):
    path = write_table(tmp_path, sb.pr_box())
    assert run(["analyze", path, "--out", str(tmp_path)]) == 2
    assert "cannot write" in capsys.readouterr().err


def test_decompose_outputs_weights(tmp_path, capsys):
    path = write_table(tmp_path, sb.pr_box())
    assert run(["decompose", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cost"] == pytest.approx(1.0, abs=1e-9)
    assert payload["residual"] <= 1e-9
    total = sum(payload["weights"].values())
    assert total == pytest.approx(1.0, abs=1e-6)


def test_decompose_infeasible_table(tmp_path, capsys):
    # the synthetic signal table sits outside the strategy hull
    path = write_table(tmp_path, sb.tsirelson_signal_box())
    assert run(["decompose", path]) == 3
    assert "signalbox:" in capsys.readouterr().err


def test_decompose_tol_flag(tmp_path, capsys):
    path = write_table(tmp_path, sb.pr_box())
    assert run(["decompose", path, "--tol", "-1"]) == 3
    assert "residual" in capsys.readouterr().err


def test_sweep_default_window(capsys):
    assert run(["sweep"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == "theta,lambda,lambda_norm,S_restricted,c_lambda,chi,classical"
    assert lines[-1].startswith("# crossover=")
    assert len(lines) == 63  # header + 61 rows + trailer
    crossover = float(lines[-1].split("=", 1)[1])
    assert crossover == pytest.approx(1.07010498046875, abs=2e-4)


def test_sweep_is_deterministic(capsys):
    assert run(["sweep"]) == 0
    first = capsys.readouterr().out
    assert run(["sweep"]) == 0
    assert capsys.readouterr().out == first


def test_sweep_window_without_crossover(capsys):
    assert run(["sweep", "--theta-min", "0.95", "--theta-max", "1.0"]) == 0
    out = capsys.readouterr().out
    assert "# crossover=" not in out
    assert len(out.strip().split("\n")) == 62


def test_sweep_bad_ranges(capsys):
    assert run(["sweep", "--steps", "1"]) == 1
    assert run(["sweep", "--theta-min", "1.2", "--theta-max", "0.9"]) == 1
    assert run(["sweep", "--theta-min", "1.0", "--theta-max", "1.0"]) == 1


def test_sweep_geometry_domain_error(capsys):
    # theta = 0 is outside the geometry's domain, surfacing as a compute error
    assert run(["sweep", "--theta-min", "0.0", "--theta-max", "0.5"]) == 3
    assert "signalbox:" in capsys.readouterr().err


def test_sweep_out_file(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    assert run(["sweep", "--steps", "5", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("theta,")
    assert capsys.readouterr().out == ""


def test_demo_names_all_run(tmp_path, capsys):
    for name in DEMO_NAMES:
        assert run(["demo", name]) == 0, name
        payload = json.loads(capsys.readouterr().out)
        assert "table" in payload
    assert set(DEMO_NAMES) == {
        "pr-box",
        "d01",
        "tsirelson",
        "tsirelson-signal",
        "sigma",
        "qp",
    }


def test_demo_rejects_unknown_name(capsys):
    assert run(["demo", "unheard-of"]) == 1


def test_demo_sigma_payload(capsys):
    assert run(["demo", "sigma"]) == 0
    payload = json.loads(capsys.readouterr().out)
    mu = math.log2(5.0) - 2.0
    assert payload["mu"] == pytest.approx(mu, abs=1e-9)
    assert payload["alpha_star"] == pytest.approx(0.6, abs=1e-3)
    assert payload["s"] == pytest.approx(0.5, abs=1e-12)
    assert payload["tau"] == pytest.approx(0.5, abs=1e-12)
    assert payload["chi"] == pytest.approx(mu, abs=1e-6)
    assert payload["bound"] == pytest.approx(2.0 * (mu + 1.0), abs=1e-9)


def test_demo_qp_payload(capsys):
    assert run(["demo", "qp", "--p", "0.3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["p"] == pytest.approx(0.3)
    assert payload["s"] == pytest.approx(0.4, abs=1e-12)
    assert payload["intrinsic"] == pytest.approx(0.3, abs=1e-12)
    assert payload["tradeoff"] == pytest.approx(1.0, abs=1e-12)
    assert payload["cloning_violation"] == pytest.approx(0.6, abs=1e-12)
    assert payload["report"]["measure"] == "delta"


def test_demo_qp_above_half_drops_cloning(capsys):
    assert run(["demo", "qp", "--p", "0.75"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "cloning_violation" not in payload
    assert payload["s"] == pytest.approx(0.5, abs=1e-12)


def test_demo_round_trip_through_analyze(tmp_path, capsys):
    assert run(["demo", "pr-box"]) == 0
    payload = json.loads(capsys.readouterr().out)
    path = tmp_path / "pr.json"
    path.write_text(json.dumps(payload["table"]))
    assert run(["analyze", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["lambda"] == pytest.approx(4.0)


def test_missing_subcommand_is_usage_error(capsys):
    assert run([]) == 1
    assert run(["frobnicate"]) == 1


def test_run_reads_sys_argv(monkeypatch, capsys):
    monkeypatch.setattr("sys.argv", ["signalbox", "demo", "pr-box"])
    assert run() == 0
    assert json.loads(capsys.readouterr().out)["report"]["lambda"] == pytest.approx(4.0)
