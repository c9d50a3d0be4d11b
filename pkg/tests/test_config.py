"""TOML run configuration parsing and validation."""

import pytest

from hcflow import load_config, parse_config
from hcflow.errors import ConfigError

MINIMAL = """
[flow]
speed = "sigma(k=2)"
[scenario]
name = "sphere"
"""


def test_minimal_config_defaults():
    cfg = parse_config(MINIMAL)
    flow = cfg.flow
    assert str(flow.speed) == "sigma(k=2)"
    assert flow.scenario.name == "sphere"
    assert flow.scenario.radius == 1.0
    assert flow.dimension == 3
    assert flow.intervals == 256
    assert flow.cfl_safety == 0.15
    assert flow.stop_theta == 0.05
    assert flow.epsilon_policy == 0.5
    assert flow.cadence == 25
    assert flow.derivative_method == "spectral"
    assert flow.tso_rho is None
    assert cfg.output.directory is None
    assert cfg.output.emit_plot_data is False


def test_full_config():
    cfg = parse_config("""
[flow]
speed = "blend(sigma(k=1):0.5,sigma(k=2):0.5)"
dimension = 4
intervals = 128
cfl_safety = 0.1
stop_theta = 0.2
stop_time = 1.5
epsilon_policy = 0.4
cadence = 10
derivative_method = "stencil"
tso_rho = 0.25
[scenario]
name = "two_mode"
radius = 1.1
amplitude = 0.04
mode = 2
amplitude2 = 0.01
mode2 = 4
[output]
directory = "runs/two_mode"
emit_plot_data = true
profile_cadence = 100
""")
    assert cfg.flow.dimension == 4
    assert cfg.flow.scenario.amplitude2 == 0.01
    assert cfg.flow.derivative_method == "stencil"
    assert cfg.flow.tso_rho == 0.25
    # [output].profile_cadence is forwarded to the flow config
    assert cfg.flow.profile_cadence == 100
    assert cfg.output.directory == "runs/two_mode"
    assert cfg.output.emit_plot_data is True


@pytest.mark.parametrize("text,fragment", [
    ("[flow]\nspeed = \"sigma(k=2)\"\nwhat = 1\n[scenario]\nname = \"sphere\"",
     "what"),
    ("[flow]\nspeed = \"sigma(k=2)\"\n[scenario]\nname = \"sphere\"\ncolor = 2",
     "color"),
    ("[flow]\nspeed = \"sigma(k=2)\"\n[scenario]\nname = \"sphere\"\n"
     "[output]\nfolder = \"x\"", "folder"),
    ("[flow]\nspeed = \"sigma(k=2)\"\n[scenario]\nname = \"sphere\"\n"
     "[extra]\nz = 1", "extra"),
])
def test_unknown_keys_rejected(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


def test_missing_required_keys():
    with pytest.raises(ConfigError, match="speed"):
        parse_config("[flow]\nintervals = 128\n[scenario]\nname = \"sphere\"")
    with pytest.raises(ConfigError, match="name"):
        parse_config("[flow]\nspeed = \"sigma(k=2)\"\n[scenario]\nradius = 1.0")


def test_malformed_toml():
    with pytest.raises(ConfigError, match="malformed"):
        parse_config("[flow\nspeed = ")


def test_invalid_values_are_config_errors():
    with pytest.raises(ValueError):
        parse_config(MINIMAL.replace('speed = "sigma(k=2)"',
                                     'speed = "sigma(k=0)"'))
    with pytest.raises(ConfigError):
        parse_config("[flow]\nspeed = \"sigma(k=2)\"\nintervals = 8\n"
                     "[scenario]\nname = \"sphere\"")
    with pytest.raises(ConfigError):
        parse_config("[flow]\nspeed = \"sigma(k=2)\"\ncfl_safety = 2.0\n"
                     "[scenario]\nname = \"sphere\"")
    with pytest.raises(ConfigError):
        parse_config("[flow]\nspeed = \"sigma(k=2)\"\n"
                     "[scenario]\nname = \"cube\"")
    with pytest.raises(ConfigError):
        parse_config("[flow]\nspeed = \"sigma(k=2)\"\n"
                     "[scenario]\nname = \"sphere\"\namplitude = 0.1")


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "absent.toml")
    path = tmp_path / "run.toml"
    path.write_text(MINIMAL)
    assert str(load_config(path).flow.speed) == "sigma(k=2)"
