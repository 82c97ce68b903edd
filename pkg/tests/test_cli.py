"""Command-line interface, exercised in process through main()."""

import json
import os

import pytest

from gocoexist.cli import main

FAST_RUN = {
    "run": {"slots": 400, "window": 100},
    "solver": {"validation_batches": 300},
}

FAST_SWEEP = {
    "run": {"slots": 400, "mode": "grid-sweep"},
    "solver": {"validation_batches": 300},
    "sweep": {"kind": "per_power", "per_grid": [1e-4, 1e-3], "power_grid_w": [0.0, 0.2]},
}


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_no_subcommand_prints_usage(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_missing_config_and_preset_is_an_error(capsys):
    assert main(["run", "--out", "/tmp/nowhere-cli"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert "--config or --preset" in err


def test_config_and_preset_are_mutually_exclusive(tmp_path, capsys):
    cfg = _write(tmp_path, "c.json", FAST_RUN)
    assert main(["run", "--config", cfg, "--preset", "fig12", "--out", str(tmp_path)]) == 1
    assert "mutually exclusive" in capsys.readouterr().err


def test_unknown_preset_lists_available(tmp_path, capsys):
    assert main(["run", "--preset", "fig99", "--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err
    assert "fig99" in err and "available" in err


def test_run_writes_expected_bundle(tmp_path, capsys):
    cfg = _write(tmp_path, "c.json", FAST_RUN)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == 0
    for name in ("trace.csv", "success_table.csv", "summary.csv", "manifest.json"):
        assert (out / name).exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "run"
    assert manifest["preset"] is None
    assert manifest["figure"] is None
    assert manifest["seed_source"] == "config"
    assert manifest["seed"] == 42
    assert set(manifest["outputs"]) == {"trace.csv", "success_table.csv", "summary.csv"}
    assert "effectiveness" in capsys.readouterr().out


def test_quiet_silences_stdout(tmp_path, capsys):
    cfg = _write(tmp_path, "c.json", FAST_RUN)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out), "--quiet"]) == 0
    assert capsys.readouterr().out == ""


def test_seed_precedence_flag_env_config(tmp_path, monkeypatch):
    cfg = _write(tmp_path, "c.json", FAST_RUN)

    def manifest_after(argv):
        assert main(argv) == 0
        return json.loads((tmp_path / "out" / "manifest.json").read_text())

    monkeypatch.setenv("GOCOEXIST_SEED", "11")
    m = manifest_after(["run", "--config", cfg, "--out", str(tmp_path / "out"),
                        "--seed", "7", "--quiet"])
    assert (m["seed"], m["seed_source"]) == (7, "flag")
    m = manifest_after(["run", "--config", cfg, "--out", str(tmp_path / "out"), "--quiet"])
    assert (m["seed"], m["seed_source"]) == (11, "environment")
    monkeypatch.delenv("GOCOEXIST_SEED")
    m = manifest_after(["run", "--config", cfg, "--out", str(tmp_path / "out"), "--quiet"])
    assert (m["seed"], m["seed_source"]) == (42, "config")


def test_invalid_env_seed_is_reported(tmp_path, monkeypatch, capsys):
    cfg = _write(tmp_path, "c.json", FAST_RUN)
    monkeypatch.setenv("GOCOEXIST_SEED", "many")
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "out")]) == 1
    assert "GOCOEXIST_SEED" in capsys.readouterr().err


def test_run_rejects_omega_list(tmp_path, capsys):
    cfg = _write(tmp_path, "c.json", FAST_RUN)
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "out"),
                 "--omega", "1e-9,1e-8"]) == 1
    assert "single value" in capsys.readouterr().err


def test_frontier_accepts_omega_list(tmp_path):
    data = dict(FAST_RUN)
    data["frontier"] = {"omegas": [1e-9], "include_genie": False}
    cfg = _write(tmp_path, "c.json", data)
    out = tmp_path / "out"
    assert main(["frontier", "--config", cfg, "--out", str(out), "--quiet",
                 "--omega", "1e-9,1e-8"]) == 0
    rows = (out / "frontier.csv").read_text().splitlines()
    assert rows[0].split(",")[:6] == ["omega", "theta_th", "mode", "effectiveness",
                                      "cost", "cost_se"]
    assert len(rows) == 3  # header + 2 omegas x 1 mode x 1 threshold
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["frontier"]["omegas"] == [1e-9, 1e-8]


def test_sweep_writes_heatmap_bundle(tmp_path):
    cfg = _write(tmp_path, "c.json", FAST_SWEEP)
    out = tmp_path / "out"
    assert main(["sweep", "--config", cfg, "--out", str(out), "--quiet"]) == 0
    for name in ("heatmap_1.csv", "heatmap_1_detail.csv", "heatmap_1_contours.csv",
                 "summary.csv", "manifest.json"):
        assert (out / name).exists()
    assert (out / "heatmap_1.csv").read_text().splitlines()[0] == "x,y,effectiveness"


def test_sweep_without_sweep_section_errors(tmp_path, capsys):
    cfg = _write(tmp_path, "c.json", FAST_RUN)
    assert main(["sweep", "--config", cfg, "--out", str(tmp_path / "out")]) == 1
    assert "sweep section" in capsys.readouterr().err


def test_split_and_table_commands(tmp_path):
    data = dict(FAST_RUN)
    data["split"] = {"fractions": [0.5, 0.9]}
    cfg = _write(tmp_path, "c.json", data)
    out1 = tmp_path / "split-out"
    assert main(["split", "--config", cfg, "--out", str(out1), "--quiet"]) == 0
    assert (out1 / "split.csv").exists()
    assert len((out1 / "split.csv").read_text().splitlines()) == 3
    out2 = tmp_path / "table-out"
    assert main(["table", "--config", cfg, "--out", str(out2), "--quiet"]) == 0
    lines = (out2 / "success_table.csv").read_text().splitlines()
    assert lines[0] == "per_level,p_success,n_samples"
    assert len(lines) == 14  # header + 13 grid levels


def test_plots_flag_renders_figures(tmp_path):
    cfg = _write(tmp_path, "c.json", FAST_RUN)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out), "--quiet", "--plots"]) == 0
    figures = os.listdir(out / "figures")
    assert figures
    assert all(name.endswith(".png") for name in figures)


def test_broken_config_path_is_reported(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "missing.json"),
                 "--out", str(tmp_path / "out")]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
