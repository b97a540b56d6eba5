import json
import subprocess
import sys

import pytest

from netcoop import cli
from netcoop.experiments import VerifyRow
from netcoop.output import read_csv


def run(*args):
    return subprocess.run([sys.executable, "-m", "netcoop", *args], capture_output=True, text=True)


def test_analyze_to_stdout():
    proc = run("analyze")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("scheme,feasible,")
    assert [ln.split(",")[0] for ln in lines[1:]] == ["traditional", "intra", "inter"]


def test_analyze_json(tmp_path):
    out = tmp_path / "a.json"
    assert cli.main(["analyze", "--json", "--out", str(out)]) == 0
    recs = json.loads(out.read_text())
    assert {r["scheme"] for r in recs} == {"traditional", "intra", "inter"}


def test_sweep_file(tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("d_12_m = 5\n")
    out = tmp_path / "sweep.csv"
    assert cli.main(["sweep", "--config", str(cfg), "--points", "4", "--out", str(out)]) == 0
    recs = read_csv(str(out))
    assert [float(r["swept_m"]) for r in recs] == [200.0, 800.0, 1400.0, 2000.0]


def test_log_sweep_range(tmp_path):
    out = tmp_path / "s.csv"
    assert cli.main(["sweep", "--var", "inter_user_distance", "--start", "1", "--stop", "1e4",
                     "--points", "5", "--log", "--out", str(out)]) == 0
    assert float(read_csv(str(out))[-1]["swept_m"]) == pytest.approx(1e4)


def test_bad_config_exits_1(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("pout_target = 1.5\n")
    proc = run("analyze", "--config", str(cfg))
    assert proc.returncode == 1
    assert "pout_target" in proc.stderr and "line 1" in proc.stderr


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["sweep", "--points", "x"],
                                  ["sweep", "--points", "1"], ["sweep", "--start", "5", "--stop", "2"],
                                  ["verify", "--trials", "0"]])
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_unwritable_output_exits_1(tmp_path):
    assert cli.main(["analyze", "--out", str(tmp_path / "missing" / "x.csv")]) == 1


def test_verify_small_run_exits_0(tmp_path):
    out = tmp_path / "v.csv"
    assert cli.main(["verify", "--trials", "1000", "--out", str(out)]) == 0
    recs = read_csv(str(out))
    assert list(recs[0]) == list(VerifyRow.columns)
    assert len(recs) == 9


def test_verify_failure_exits_2(monkeypatch, tmp_path):
    bad = [VerifyRow("inter", "u1", 1e-3, 5e-3, 1e-4, 1.0, 1.0, "fail")]
    monkeypatch.setattr(cli, "run_verify", lambda cfg, plan: bad)
    assert cli.main(["verify", "--trials", "10", "--out", str(tmp_path / "v.csv")]) == 2
