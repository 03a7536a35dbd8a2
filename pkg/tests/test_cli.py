import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from gravdec import cli, config
from gravdec.modes import gaussian_mode, sample_gaussian_grid, save_tabulated_mode
from gravdec.storage import read_sweep_csv, settings_from_manifest


def report(text):
    values = {}
    for line in text.splitlines():
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def body(path):
    return [line for line in Path(path).read_text().splitlines() if not line.startswith("# timestamp")]


def test_delta_weak(capsys):
    assert cli.main(["delta", "--height", "4e5", "--method", "weak"]) == 0
    values = report(capsys.readouterr().out)
    assert abs(float(values["delta_weak_m"]) + 1.7421e-5) < 1e-9
    assert "delta_exact_m" not in values


def test_delta_zero_height(capsys):
    assert cli.main(["delta", "--height", "0", "--method", "both", "--check"]) == 0
    values = report(capsys.readouterr().out)
    assert {float(v) for v in values.values()} == {0.0}


def test_delta_both_methods_agree(capsys):
    assert cli.main(["delta", "--height", "4e5", "--method", "both", "--check"]) == 0
    values = report(capsys.readouterr().out)
    exact, weak = float(values["delta_exact_m"]), float(values["delta_weak_m"])
    assert abs(exact - weak) / abs(weak) < 0.10
    assert float(values["sigma_c_rel_diff"]) < 1e-12
    assert float(values["sigma_sd_rel_diff"]) < 1e-12
    assert values["sigma_c_m"].count("e") == 1
    assert len(values["sigma_c_m"].split("e")[0].replace(".", "").lstrip("-")) == 12


def test_delta_domain_errors(capsys):
    assert cli.main(["delta", "--height", "-1"]) == 3
    assert cli.main(["delta", "--height", "10", "--re", "1e-3"]) == 3
    assert "error" in capsys.readouterr().err


def test_bad_flags_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["delta"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--height", "1", "--source", "laser"])
    assert exc.value.code == 2


def test_run_pdc(capsys):
    assert cli.main(["run", "--height", "4e5", "--source", "pdc", "--chi", "0.01"]) == 0
    values = report(capsys.readouterr().out)
    assert abs(float(values["normalized"]) - 0.048) < 1e-3


def test_run_coherent(capsys):
    assert cli.main(["run", "--height", "4e5", "--source", "coherent", "--alpha", "1"]) == 0
    values = report(capsys.readouterr().out)
    assert float(values["coincidence"]) == 1.0
    assert values["coincidence_second_order"] == "-"


def test_run_swap(capsys):
    assert cli.main(["run", "--height", "4e5", "--source", "pdc", "--chi", "0.01", "--swap"]) == 0
    values = report(capsys.readouterr().out)
    assert float(values["normalized"]) == 1.0
    assert float(values["delta"]) == 0.0


def test_run_json(capsys):
    assert cli.main(["run", "--height", "2e5", "--method", "exact", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["method"] == "exact"
    assert data["config"]["chi"] == 0.01
    assert 0.0 < data["result"]["normalized"] < 1.0


def test_run_config_errors(tmp_path, capsys):
    assert cli.main(["run", "--height", "1", "--chi", "0.5"]) == 2
    conf = tmp_path / "run.conf"
    conf.write_text("re = 6.38e6\ncolour = blue\n")
    assert cli.main(["run", "--height", "1", "--config", str(conf)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_run_with_mode_file(tmp_path, capsys):
    grid = tmp_path / "mode.txt"
    save_tabulated_mode(grid, sample_gaussian_grid(gaussian_mode(1e-5, 1e-3)))
    assert cli.main(["run", "--height", "4e5", "--mode-file", str(grid)]) == 0
    values = report(capsys.readouterr().out)
    assert abs(float(values["normalized"]) - 0.048) < 1e-3
    assert cli.main(["run", "--height", "4e5", "--mode-file", str(tmp_path / "none.txt")]) == 4


def test_sweep_reference_curve(tmp_path, capsys):
    out = tmp_path / "curve.csv"
    svg = tmp_path / "curve.svg"
    assert cli.main(["sweep", "--out", str(out), "--svg", str(svg)]) == 0
    manifest, rows = read_sweep_csv(out)
    assert len(rows) == config.DEFAULT_STEPS
    assert rows[0]["h_m"] == 0.0 and rows[-1]["h_m"] == 8e5
    assert abs(rows[0]["C_N"] - 1.0) < 1e-9
    at_400km = next(r for r in rows if r["h_m"] == 4e5)
    assert abs(at_400km["C_N"] - 0.048) < 1e-3
    assert manifest["method"] == "weak"
    assert svg.read_text().startswith("<?xml")


def test_sweep_two_steps_and_coherent(tmp_path):
    out = tmp_path / "two.csv"
    assert cli.main(["sweep", "--steps", "2", "--out", str(out)]) == 0
    assert len(read_sweep_csv(out)[1]) == 2

    flat = tmp_path / "flat.csv"
    assert cli.main(["sweep", "--steps", "11", "--source", "coherent", "--out", str(flat)]) == 0
    assert {row["C_N"] for row in read_sweep_csv(flat)[1]} == {1.0}


def test_sweep_is_deterministic_and_round_trips(tmp_path):
    args = ["sweep", "--steps", "21", "--method", "exact"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(first)]) == 0
    assert cli.main(args + ["--out", str(second), "--jobs", "2"]) == 0
    assert body(first) == body(second)

    manifest, rows = read_sweep_csv(first)
    settings = settings_from_manifest(manifest)
    from gravdec.experiment import run
    from gravdec.storage.results import format_number

    for row in rows:
        again = run(settings.to_experiment(height=row["h_m"]))
        assert abs(again.normalized - row["C_N"]) < 1e-11
        assert float(format_number(again.normalized)) == row["C_N"]


def test_sweep_errors(tmp_path):
    assert cli.main(["sweep", "--h-min", "5", "--h-max", "1", "--out", str(tmp_path / "x.csv")]) == 2
    assert cli.main(["sweep", "--steps", "2", "--out", str(tmp_path / "missing" / "x.csv")]) == 4
    assert list(tmp_path.iterdir()) == []


def test_relative_output_uses_output_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "OUTPUT_DIR", tmp_path)
    assert cli.main(["sweep", "--steps", "2", "--out", "rel.csv"]) == 0
    assert (tmp_path / "rel.csv").exists()


def test_module_entry_point(tmp_path):
    root = Path(__file__).resolve().parents[1]
    env = dict(os.environ, PYTHONPATH=str(root / "src"))
    cmd = [sys.executable, "-m", "gravdec.cli", "delta", "--height", "4e5", "--method", "weak"]
    proc = subprocess.run(cmd, cwd=tmp_path, env=env, capture_output=True, text=True, check=True)
    assert "delta_weak_m" in proc.stdout

    bad = subprocess.run(cmd[:4] + ["--height", "-5"], cwd=tmp_path, env=env, capture_output=True)
    assert bad.returncode == 3


def test_no_swap_overrides_run_file(tmp_path, capsys):
    conf = tmp_path / "swap.conf"
    conf.write_text("swap = true\n")
    assert cli.main(["run", "--height", "4e5", "--config", str(conf)]) == 0
    assert float(report(capsys.readouterr().out)["normalized"]) == 1.0
    assert cli.main(["run", "--height", "4e5", "--config", str(conf), "--no-swap"]) == 0
    assert abs(float(report(capsys.readouterr().out)["normalized"]) - 0.048) < 1e-3


def test_mismatched_source_flags_exit_two(tmp_path, capsys):
    assert cli.main(["run", "--height", "4e5", "--source", "pdc", "--alpha", "2"]) == 2
    assert cli.main(["run", "--height", "4e5", "--alpha", "2"]) == 2
    assert cli.main(["run", "--height", "4e5", "--source", "coherent", "--chi", "0.01"]) == 2
    out = tmp_path / "x.csv"
    assert cli.main(["sweep", "--steps", "2", "--source", "coherent", "--chi", "0.01", "--out", str(out)]) == 2
    assert not out.exists()
    assert "--alpha" in capsys.readouterr().err


def test_extreme_widths_do_not_escape(capsys):
    args = ["run", "--height", "4e5", "--dt", "1e200", "--dx", "1e200"]
    assert cli.main(args) == 0
    assert float(report(capsys.readouterr().out)["normalized"]) == 1.0
    assert cli.main(["run", "--height", "4e5", "--dt", "1e-200", "--dx", "1e-200"]) == 0
    assert float(report(capsys.readouterr().out)["normalized"]) == 0.0
