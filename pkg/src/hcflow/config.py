"""TOML run configuration: [flow], [scenario] and [output] sections.

Unknown keys anywhere are rejected so that a typo fails loudly instead
of silently running with a default.  The parsed document is turned into
a FlowConfig plus output options; speed strings go through the speed
grammar in ``speeds``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .flow import FlowConfig
from .scenarios import Scenario
from .speeds import parse_speed

__all__ = ["OutputConfig", "RunConfig", "load_config", "parse_config"]

_FLOW_KEYS = {
    "speed", "dimension", "intervals", "cfl_safety", "stop_theta",
    "stop_time", "epsilon_policy", "cadence", "profile_cadence",
    "derivative_method", "tso_rho",
}
_SCENARIO_KEYS = {"name", "radius", "amplitude", "mode", "amplitude2", "mode2"}
_OUTPUT_KEYS = {"directory", "profile_cadence", "emit_plot_data"}


@dataclass(frozen=True)
class OutputConfig:
    directory: Optional[str] = None
    emit_plot_data: bool = False


@dataclass(frozen=True)
class RunConfig:
    flow: FlowConfig
    output: OutputConfig


def _reject_unknown(section: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError(f"unknown {where} keys: {', '.join(unknown)}")


def parse_config(text: str) -> RunConfig:
    """Parse a TOML document into a validated RunConfig."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from None

    _reject_unknown(doc, {"flow", "scenario", "output"}, "top-level")
    flow_sec = dict(doc.get("flow", {}))
    scen_sec = dict(doc.get("scenario", {}))
    out_sec = dict(doc.get("output", {}))
    _reject_unknown(flow_sec, _FLOW_KEYS, "[flow]")
    _reject_unknown(scen_sec, _SCENARIO_KEYS, "[scenario]")
    _reject_unknown(out_sec, _OUTPUT_KEYS, "[output]")

    if "speed" not in flow_sec:
        raise ConfigError("[flow] needs a speed, e.g. speed = \"sigma(k=2)\"")
    if "name" not in scen_sec:
        raise ConfigError("[scenario] needs a name")

    speed = parse_speed(str(flow_sec.pop("speed")))
    scenario = Scenario(**scen_sec)

    # profile_cadence historically lives under [output]; accept it there
    if "profile_cadence" in out_sec:
        flow_sec.setdefault("profile_cadence", out_sec.pop("profile_cadence"))

    try:
        flow = FlowConfig(speed=speed, scenario=scenario, **flow_sec)
    except TypeError as exc:
        raise ConfigError(f"bad [flow] value: {exc}") from None

    output = OutputConfig(
        directory=out_sec.get("directory"),
        emit_plot_data=bool(out_sec.get("emit_plot_data", False)),
    )
    return RunConfig(flow=flow, output=output)


def load_config(path) -> RunConfig:
    """Read and parse a TOML config file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)
