"""Named initial profiles and the oracle cross-check test set."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from .errors import ConfigError

__all__ = ["Scenario", "ORACLE_PROFILES", "oracle_profile"]


@dataclass(frozen=True)
class Scenario:
    """Initial radial graph u0(theta) built from a small named family.

    * ``sphere``           -- u0 = radius
    * ``perturbed_sphere`` -- u0 = radius + amplitude * cos(mode * theta)
    * ``two_mode``         -- adds a second cosine term
    """

    name: str = "sphere"
    radius: float = 1.0
    amplitude: float = 0.0
    mode: int = 2
    amplitude2: float = 0.0
    mode2: int = 4

    def __post_init__(self):
        if self.name not in ("sphere", "perturbed_sphere", "two_mode"):
            raise ConfigError(f"unknown scenario {self.name!r}")
        if self.radius <= 0.0:
            raise ConfigError("scenario radius must be positive")
        if self.name == "sphere" and self.amplitude != 0.0:
            raise ConfigError("sphere scenario takes no amplitude")

    def build(self, intervals: int) -> np.ndarray:
        theta = np.linspace(0.0, math.pi, intervals + 1)
        u = np.full(intervals + 1, float(self.radius))
        if self.name in ("perturbed_sphere", "two_mode"):
            u = u + self.amplitude * np.cos(self.mode * theta)
        if self.name == "two_mode":
            u = u + self.amplitude2 * np.cos(self.mode2 * theta)
        if np.any(u <= 0.0):
            raise ConfigError("scenario amplitudes drive the radius nonpositive")
        return u


def _sphere(theta):
    return np.full_like(np.asarray(theta, dtype=float), 1.0)


# Fixed test set for the analytic-vs-oracle agreement check.  All entries
# are smooth (even across the poles) and stay well inside the graph domain.
ORACLE_PROFILES: Dict[str, Callable] = {
    "sphere": _sphere,
    "cos2_mild": lambda th: 1.0 + 0.05 * np.cos(2.0 * np.asarray(th, dtype=float)),
    "offset": lambda th: 1.2 + 0.1 * np.cos(np.asarray(th, dtype=float)),
    "large_radius": lambda th: 2.0 + 0.08 * np.cos(2.0 * np.asarray(th, dtype=float)),
    "wavy": lambda th: 1.0 + 0.03 * np.cos(np.asarray(th, dtype=float))
                          + 0.02 * np.cos(3.0 * np.asarray(th, dtype=float)),
}


def oracle_profile(name: str) -> Callable:
    try:
        return ORACLE_PROFILES[name]
    except KeyError:
        raise ConfigError(
            f"unknown oracle profile {name!r}; "
            f"choose from {sorted(ORACLE_PROFILES)}") from None
