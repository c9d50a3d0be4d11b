"""Command line interface: subcommands, artifacts, exit codes."""

import json

import pytest

from hcflow import cli

SPHERE = """
[flow]
speed = "sigma(k=2)"
intervals = 64
stop_time = 0.05
[scenario]
name = "sphere"
radius = 1.0
"""

PERTURBED = """
[flow]
speed = "sigma(k=2)"
intervals = 64
stop_time = 0.05
[scenario]
name = "perturbed_sphere"
amplitude = 0.05
mode = 2
"""

CONE_VIOLATION = """
[flow]
speed = "sigma(k=2)"
intervals = 128
[scenario]
name = "perturbed_sphere"
amplitude = 0.9
mode = 2
"""


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_simulate_sphere_artifacts(tmp_path, capsys):
    cfg = _write(tmp_path, "sphere.toml", SPHERE)
    out = tmp_path / "out"
    assert cli.main(["simulate", cfg, "--out", str(out)]) == 0

    summary = capsys.readouterr().out
    assert "status=clean_contraction" in summary
    assert "exit=0" in summary

    csv_text = (out / "trajectory.csv").read_text()
    assert csv_text.startswith("t,tau,theta,min_f,max_f,kappa_ratio,")
    assert len(csv_text.strip().split("\n")) >= 3

    payload = json.loads((out / "verdict.json").read_text())
    assert payload["status"] == "clean_contraction"
    assert payload["exit_code"] == 0
    assert payload["verdict"]["all_ok"] is True
    assert payload["eps0"] == pytest.approx(0.41997434161402597, rel=1e-12)

    lines = (out / "profiles.jsonl").read_text().strip().split("\n")
    assert len(lines) == 2
    first = json.loads(lines[0])
    assert first["t"] == 0.0
    assert len(first["u"]) == 65
    assert first["u_tilde"] is not None


def test_simulate_deterministic(tmp_path):
    cfg = _write(tmp_path, "sphere.toml", SPHERE)
    for d in ("a", "b"):
        assert cli.main(["simulate", cfg, "--out", str(tmp_path / d)]) == 0
    for name in ("trajectory.csv", "verdict.json", "profiles.jsonl"):
        assert (tmp_path / "a" / name).read_bytes() \
            == (tmp_path / "b" / name).read_bytes(), name


def test_simulate_osc_verdict_not_in_exit_code(tmp_path, capsys):
    # a short perturbed window leaves the oscillation above the decay
    # factor; that verdict is asymptotic and must not fail the run
    cfg = _write(tmp_path, "pert.toml", PERTURBED)
    assert cli.main(["simulate", cfg, "--out", str(tmp_path / "out")]) == 0
    summary = capsys.readouterr().out
    assert "invariants=ok" in summary
    assert "osc_decay=FAIL" in summary
    payload = json.loads((tmp_path / "out" / "verdict.json").read_text())
    assert payload["exit_code"] == 0
    assert payload["verdict"]["osc_decay"] is False
    assert payload["verdict"]["min_f_monotone"] is True


def test_simulate_emit_plot_data(tmp_path):
    cfg = _write(tmp_path, "pert.toml", PERTURBED)
    out = tmp_path / "out"
    assert cli.main(["simulate", cfg, "--out", str(out),
                     "--emit-plot-data"]) == 0
    assert (out / "oscillation.csv").read_text().startswith("tau,osc_u_tilde\n")
    radii = (out / "radii.csv").read_text().strip().split("\n")
    assert radii[0] == "t,theta,min_u,max_u"
    assert len(radii) >= 3


def test_simulate_output_root_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_ROOT_ENV, str(tmp_path / "root"))
    cfg = _write(tmp_path, "named.toml", SPHERE)
    assert cli.main(["simulate", cfg]) == 0
    assert (tmp_path / "root" / "named.out" / "verdict.json").exists()


def test_simulate_configured_directory(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_ROOT_ENV, str(tmp_path))
    cfg = _write(tmp_path, "cfgdir.toml",
                 SPHERE + "\n[output]\ndirectory = \"placed\"\n")
    assert cli.main(["simulate", cfg]) == 0
    assert (tmp_path / "placed" / "verdict.json").exists()


def test_hypothesis_violation_exit_4(tmp_path, capsys):
    cfg = _write(tmp_path, "reject.toml", CONE_VIOLATION)
    assert cli.main(["simulate", cfg, "--out", str(tmp_path / "out")]) == 4
    err = capsys.readouterr().err
    assert "hypothesis" in err


def test_config_errors_exit_4(tmp_path, capsys):
    bad = _write(tmp_path, "bad.toml", SPHERE + "\nwhat = 1\n")
    assert cli.main(["simulate", bad, "--out", str(tmp_path / "o1")]) == 4
    assert cli.main(["simulate", str(tmp_path / "missing.toml"),
                     "--out", str(tmp_path / "o2")]) == 4
    capsys.readouterr()


def test_verify_assumption(capsys):
    assert cli.main(["verify-assumption", "sigma(k=2)",
                     "--samples", "2000"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["all_ok"] is True
    assert doc["spec"] == "sigma(k=2)"
    assert doc["monotone_ok"] and doc["quadform_ok"]

    assert cli.main(["verify-assumption", "powermean(r=-1)"]) == 4
    assert "cannot parse speed spec" in capsys.readouterr().err


def test_oracle_check(capsys):
    assert cli.main(["oracle-check", "cos2_mild", "--intervals", "256"]) == 0
    assert "-> ok" in capsys.readouterr().out
    assert cli.main(["oracle-check", "cos2_mild", "--intervals", "256",
                     "--inject-sign-flip"]) == 2
    assert "-> FAIL" in capsys.readouterr().out


def test_sweep(tmp_path, capsys):
    a = _write(tmp_path, "a.toml", SPHERE)
    b = _write(tmp_path, "b.toml", PERTURBED)
    root = tmp_path / "sweep"
    assert cli.main(["sweep", a, b, "--out-root", str(root),
                     "--workers", "2"]) == 0
    assert (root / "a" / "verdict.json").exists()
    assert (root / "b" / "verdict.json").exists()
    # a failing member dominates the sweep exit code
    bad = _write(tmp_path, "c.toml", CONE_VIOLATION)
    assert cli.main(["sweep", a, bad, "--out-root", str(tmp_path / "s2"),
                     "--workers", "1"]) == 4
    capsys.readouterr()


def test_suite_fault_injection_exit_codes(capsys):
    # an oversized CFL factor makes the flow runs blow up: exit 3
    assert cli.main(["suite", "--inject-cfl", "5"]) == 3
    out = capsys.readouterr().out
    assert "blow_up" in out
    # a degraded grid keeps runs alive but fails criteria: exit 2
    assert cli.main(["suite", "--inject-intervals", "32"]) == 2
    out = capsys.readouterr().out
    assert "criteria passed" in out
