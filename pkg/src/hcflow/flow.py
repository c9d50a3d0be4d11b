"""Time stepper for the contracting flow of axisymmetric radial graphs.

The flow moves each point inward with speed F in the normal direction.
For a radial graph over the equator sphere this reduces to a scalar
parabolic equation for the radius profile u(theta):

    du/dt = -v F,   v = W / sinh(u),   W^2 = sinh(u)^2 + u'^2.

Steps use Heun's method with a parabolic CFL-limited dt.  A step that
throws the profile out of the positive-curvature cone is rejected and
retried with half the dt; persistent rejection is classified as blow-up
rather than silently smoothed over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (BlowUpError, ConfigError, ContractError, DomainError,
                     HypothesisError)
from .geometry import (AxisymmetricProfile, GeometryCache, contraction_rhs,
                       sectional_margin)
from .monitors import MonitorRecord, epsilon0
from .scenarios import Scenario
from .speeds import CurvatureSpeed

__all__ = [
    "GRADIENT_FLOOR",
    "MAX_HALVINGS",
    "MAX_CONSECUTIVE_REJECTS",
    "KAPPA_BLOWUP",
    "spherical_extinction_time",
    "spherical_theta",
    "FlowConfig",
    "FlowResult",
    "run",
    "rescale",
    "tso_quantity",
    "tso_bound",
]

GRADIENT_FLOOR = 1e-12          # keeps the CFL dt finite for flat speeds
MAX_HALVINGS = 20               # dt halvings within a single step attempt
MAX_CONSECUTIVE_REJECTS = 50    # rejected steps in a row before giving up
KAPPA_BLOWUP = 1e8              # curvature magnitude treated as blow-up


def spherical_extinction_time(radius: float) -> float:
    """Extinction time of the round sphere of the given geodesic radius.

    Any normalized speed gives the same spherical solution, and the
    radius Theta(t) satisfies cosh Theta(t) = e^{-t} cosh Theta(0),
    which hits zero at t = log cosh Theta(0).
    """
    if radius <= 0.0:
        raise DomainError("radius must be positive")
    return math.log(math.cosh(radius))


def spherical_theta(t: float, radius: float) -> float:
    """Radius at time t of the shrinking round sphere started at `radius`."""
    extinction = spherical_extinction_time(radius)
    if t >= extinction:
        raise DomainError(
            f"t = {t} is at or past the extinction time {extinction:.6g}")
    return math.acosh(math.exp(extinction - t))


@dataclass(frozen=True)
class FlowConfig:
    """Everything needed to reproduce one simulation run."""

    speed: CurvatureSpeed
    scenario: Scenario
    dimension: int = 3
    intervals: int = 256
    cfl_safety: float = 0.15
    stop_theta: float = 0.05
    stop_time: float = 10.0
    epsilon_policy: float = 0.5
    cadence: int = 25
    profile_cadence: int = 0     # 0 means snapshots only at start and end
    derivative_method: str = "spectral"
    tso_rho: Optional[float] = None   # None: half the current inradius

    def __post_init__(self) -> None:
        if self.dimension < 2:
            raise ConfigError("dimension must be at least 2")
        if self.intervals < 64:
            raise ConfigError("intervals must be at least 64")
        if not 0.0 < self.cfl_safety <= 1.0:
            raise ConfigError("cfl_safety must lie in (0, 1]")
        if not 0.0 < self.stop_theta:
            raise ConfigError("stop_theta must be positive")
        if self.stop_time <= 0.0:
            raise ConfigError("stop_time must be positive")
        if not 0.0 < self.epsilon_policy < 1.0:
            raise ConfigError("epsilon_policy must lie in (0, 1)")
        if self.cadence < 1:
            raise ConfigError("cadence must be at least 1")
        if self.profile_cadence < 0:
            raise ConfigError("profile_cadence must be nonnegative")
        if self.derivative_method not in ("spectral", "stencil"):
            raise ConfigError(
                f"unknown derivative method {self.derivative_method!r}")
        if self.tso_rho is not None and self.tso_rho <= 0.0:
            raise ConfigError("tso_rho must be positive when given")


@dataclass
class FlowResult:
    """Outcome of a run: records, snapshots and the fitted extinction data."""

    config: FlowConfig
    status: str                  # clean_contraction | invariant_violation | blow_up
    stop_reason: str
    records: List[MonitorRecord]
    snapshots: List[AxisymmetricProfile]
    eps0: float
    eps_used: float
    extinction_estimate: float
    steps: int
    final_time: float

    @property
    def final_profile(self) -> AxisymmetricProfile:
        return self.snapshots[-1]


def _speed_rhs(cache: GeometryCache) -> np.ndarray:
    """Right-hand side -v F of the graph evolution equation."""
    return -cache.v * cache.speed


def _proposed_dt(cache: GeometryCache, cfl_safety: float) -> float:
    """Parabolic CFL bound for the quasilinear operator.

    The diffusion coefficient of the linearised equation in theta is
    grad_mer / W^2, so stability needs dt of order dtheta^2 W^2/grad_mer.
    """
    h = math.pi / cache.profile.intervals
    coeff = cache.w2 / (cache.grad_mer + GRADIENT_FLOOR)
    return cfl_safety * h * h * float(np.min(coeff))


def _attempt_step(cache: GeometryCache, speed: CurvatureSpeed, dt: float,
                  method: str) -> GeometryCache:
    """One Heun step of the given size; DomainError means reject."""
    profile = cache.profile
    u0 = profile.u
    k1 = _speed_rhs(cache)
    k2 = contraction_rhs(u0 + dt * k1, profile.dimension, speed,
                         method=method)
    out = AxisymmetricProfile(dimension=profile.dimension,
                              u=u0 + 0.5 * dt * (k1 + k2),
                              t=profile.t + dt)
    return GeometryCache.from_profile(out, speed, method=method)


def _step(cache: GeometryCache, speed: CurvatureSpeed, dt: float,
          method: str) -> Tuple[GeometryCache, float, bool]:
    """Step with halving retries; returns (cache, dt used, was rejected)."""
    rejected = False
    for _ in range(MAX_HALVINGS):
        try:
            return _attempt_step(cache, speed, dt, method), dt, rejected
        except DomainError:
            rejected = True
            dt *= 0.5
    raise BlowUpError(
        f"step at t = {cache.profile.t:.6g} rejected after "
        f"{MAX_HALVINGS} dt halvings")


def _record_from_cache(cache: GeometryCache, eps0_value: float,
                       eps_used: float, step_index: int,
                       tso_rho: Optional[float]) -> MonitorRecord:
    """Record every monitored quantity; Theta-derived fields filled later."""
    hi = np.maximum(cache.kappa_mer, cache.kappa_rot)
    lo = np.minimum(cache.kappa_mer, cache.kappa_rot)
    g_margin = sectional_margin(cache, eps_used)
    psc_margin = sectional_margin(cache, 0.0)
    n = cache.profile.dimension
    roundness = (cache.norm_a2 - n * cache.speed ** 2) / cache.speed ** 2
    u = cache.profile.u
    if tso_rho is not None and float(np.min(u)) < tso_rho:
        phi_max = math.nan    # comparison ball no longer inscribed
    else:
        try:
            phi_max = tso_quantity(cache, tso_rho)
        except ContractError:
            phi_max = math.nan
    return MonitorRecord(
        t=cache.profile.t,
        tau=math.nan,
        theta=math.nan,
        min_f=float(np.min(cache.speed)),
        max_f=float(np.max(cache.speed)),
        kappa_ratio=float(np.max(hi / lo)),
        eps0=eps0_value,
        eps_used=eps_used,
        g_margin=g_margin,
        psc_margin=psc_margin,
        osc_u_tilde=math.nan,
        roundness_ratio=float(np.max(roundness)),
        min_u=float(np.min(u)),
        max_u=float(np.max(u)),
        chi_min=float(np.min(cache.chi)),
        phi_max=phi_max,
        step_index=step_index,
    )


def _fill_rescaled_fields(records: List[MonitorRecord],
                          extinction: float) -> None:
    """Fill tau, theta and the rescaled oscillation from the fitted time."""
    for rec in records:
        arg = extinction - rec.t
        if arg <= 0.0:
            theta = math.nan
        else:
            theta = math.acosh(math.exp(arg)) if arg > 0 else math.nan
        rec.theta = theta
        if math.isfinite(theta) and theta > 0.0:
            rec.tau = -math.log(theta)
            rec.osc_u_tilde = (rec.max_u - rec.min_u) / theta
        else:
            rec.tau = math.nan
            rec.osc_u_tilde = math.nan


def _fit_extinction(records: Sequence[MonitorRecord]) -> float:
    """Extinction time from the spherical law applied to the inradius.

    For the exact sphere t + log cosh(min u) is constant; near extinction
    any solution is nearly spherical, so the tail average of that
    combination estimates the extinction time.
    """
    tail = records[max(0, len(records) - 10):]
    values = [r.t + math.log(math.cosh(r.min_u)) for r in tail]
    return float(np.mean(values))


def run(config: FlowConfig,
        observer: Optional[Callable[[GeometryCache, int], None]] = None,
        ) -> FlowResult:
    """Run the contracting flow until the stop radius, time, or failure.

    The observer, when given, is called with (cache, step_index) after
    every accepted step, including step 0.  Raises HypothesisError when
    the initial surface fails the curvature hypothesis and ConfigError
    for malformed scenarios; numerical failure ends with status blow_up
    or invariant_violation instead of raising.
    """
    u0 = config.scenario.build(config.intervals)
    profile = AxisymmetricProfile(dimension=config.dimension, u=u0, t=0.0)
    try:
        cache = GeometryCache.from_profile(profile, config.speed,
                                           method=config.derivative_method)
    except DomainError as exc:
        raise HypothesisError(
            "initial surface leaves the admissible curvature cone, so the "
            "positive-sectional-curvature hypothesis fails before the flow "
            f"starts: {exc}") from exc

    eps0_value = epsilon0(cache)  # HypothesisError when not satisfied
    eps_used = config.epsilon_policy * eps0_value

    records: List[MonitorRecord] = []
    snapshots: List[AxisymmetricProfile] = [cache.profile]
    status = "clean_contraction"
    stop_reason = "stop_time"

    step_index = 0
    consecutive_rejects = 0
    if observer is not None:
        observer(cache, step_index)
    records.append(_record_from_cache(cache, eps0_value, eps_used, 0,
                                      config.tso_rho))

    try:
        while cache.profile.t < config.stop_time:
            if float(np.min(cache.profile.u)) <= config.stop_theta:
                stop_reason = "stop_theta"
                break
            dt = _proposed_dt(cache, config.cfl_safety)
            dt = min(dt, config.stop_time - cache.profile.t)
            cache, _, was_rejected = _step(cache, config.speed, dt,
                                           config.derivative_method)
            consecutive_rejects = consecutive_rejects + 1 if was_rejected else 0
            if consecutive_rejects > MAX_CONSECUTIVE_REJECTS:
                raise BlowUpError(
                    f"{consecutive_rejects} consecutive rejected steps")
            kappa_max = max(float(np.max(np.abs(cache.kappa_mer))),
                            float(np.max(np.abs(cache.kappa_rot))))
            if kappa_max > KAPPA_BLOWUP:
                raise BlowUpError(
                    f"curvature reached {kappa_max:.3g} at "
                    f"t = {cache.profile.t:.6g}")
            step_index += 1
            if observer is not None:
                observer(cache, step_index)
            if step_index % config.cadence == 0:
                records.append(_record_from_cache(
                    cache, eps0_value, eps_used, step_index, config.tso_rho))
            if config.profile_cadence and step_index % config.profile_cadence == 0:
                snapshots.append(cache.profile)
        else:
            stop_reason = "stop_time"
    except BlowUpError as exc:
        status = "blow_up"
        stop_reason = str(exc)
    except DomainError as exc:
        status = "invariant_violation"
        stop_reason = str(exc)

    if records[-1].step_index != step_index:
        records.append(_record_from_cache(
            cache, eps0_value, eps_used, step_index, config.tso_rho))
    if snapshots[-1] is not cache.profile:
        snapshots.append(cache.profile)

    if status == "clean_contraction":
        if min(r.g_margin for r in records) <= -1e-8:
            status = "invariant_violation"
        if min(r.psc_margin for r in records) <= 0.0:
            status = "invariant_violation"

    extinction = _fit_extinction(records)
    _fill_rescaled_fields(records, extinction)

    return FlowResult(
        config=config,
        status=status,
        stop_reason=stop_reason,
        records=records,
        snapshots=snapshots,
        eps0=eps0_value,
        eps_used=eps_used,
        extinction_estimate=extinction,
        steps=step_index,
        final_time=cache.profile.t,
    )


def rescale(profile: AxisymmetricProfile, theta: float
            ) -> Tuple[float, np.ndarray, float]:
    """Rescale by the comparison radius: (tau, u/theta, oscillation).

    theta is the matched comparison-sphere radius at the profile's time;
    tau = -log theta is the rescaled time and the oscillation is
    max - min of the rescaled profile.
    """
    if theta <= 0.0:
        raise DomainError("comparison radius must be positive")
    u_tilde = profile.u / theta
    osc = float(np.max(u_tilde) - np.min(u_tilde))
    return -math.log(theta), u_tilde, osc


def tso_quantity(cache: GeometryCache, rho: Optional[float] = None) -> float:
    """Max of F / (chi - sinh(rho)/2), the bounded-speed quantity.

    Valid while the surface encloses the geodesic ball of radius rho
    about the origin; a nonpositive denominator means that premise
    failed, which is a caller error here.
    """
    if rho is None:
        rho = 0.5 * float(np.min(cache.profile.u))
    if rho <= 0.0:
        raise ContractError("rho must be positive")
    denom = cache.chi - 0.5 * math.sinh(rho)
    if np.any(denom <= 0.0):
        raise ContractError(
            "support function does not dominate sinh(rho)/2; the surface "
            "no longer encloses the comparison ball")
    return float(np.max(cache.speed / denom))


def tso_bound(phi0: float, max_u0: float, rho: float) -> float:
    """A priori ceiling for the bounded-speed quantity along the flow."""
    if rho <= 0.0:
        raise ContractError("rho must be positive")
    return max(phi0, 2.0 * math.cosh(2.0 * max_u0) / (0.5 * math.sinh(rho)) ** 2)
