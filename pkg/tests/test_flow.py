"""Time stepper: spherical closed forms, comparison bounds, stop logic."""

import math

import numpy as np
import pytest

from hcflow import (
    AxisymmetricProfile,
    FlowConfig,
    GeometryCache,
    Scenario,
    parse_speed,
    rescale,
    run,
    spherical_extinction_time,
    spherical_theta,
    tso_bound,
    tso_quantity,
)
from hcflow.errors import ConfigError, ContractError, DomainError, HypothesisError
from hcflow.flow import _attempt_step

SPEED = parse_speed("sigma(k=2)")


def _sphere_cache(radius=1.0, m=128):
    return GeometryCache.from_profile(
        AxisymmetricProfile(dimension=3, u=np.full(m + 1, radius)), SPEED)


def test_spherical_closed_form():
    assert spherical_extinction_time(1.0) == pytest.approx(
        math.log(math.cosh(1.0)), rel=1e-15)
    assert spherical_theta(0.0, 1.0) == pytest.approx(1.0, abs=1e-12)
    # the radius satisfies dTheta/dt = -coth(Theta)
    h = 1e-6
    for t in (0.1, 0.3, 0.42):
        dtheta = (spherical_theta(t + h, 1.0) - spherical_theta(t - h, 1.0)) / (2 * h)
        theta = spherical_theta(t, 1.0)
        assert dtheta == pytest.approx(-math.cosh(theta) / math.sinh(theta),
                                       rel=1e-8)
    with pytest.raises(DomainError):
        spherical_extinction_time(0.0)
    with pytest.raises(DomainError):
        spherical_theta(spherical_extinction_time(1.0), 1.0)


def test_heun_step_third_order_on_sphere():
    # one Heun step against the exact spherical solution: local error O(dt^3),
    # and the value sits below the Euler prediction because the exact radius
    # curves downward (Theta'' < 0)
    cache = _sphere_cache()
    errs = []
    for dt in (1e-2, 5e-3, 2.5e-3):
        stepped = _attempt_step(cache, SPEED, dt, "spectral")
        got = float(stepped.profile.u[0])
        errs.append(abs(got - spherical_theta(dt, 1.0)))
        euler = 1.0 - dt * math.cosh(1.0) / math.sinh(1.0)
        assert got < euler
    assert errs[0] / errs[1] == pytest.approx(8.0, rel=0.25)
    assert errs[1] / errs[2] == pytest.approx(8.0, rel=0.25)


def test_sphere_run_tracks_exact_solution():
    cfg = FlowConfig(speed=SPEED, scenario=Scenario(name="sphere", radius=1.0),
                     intervals=128, cfl_safety=0.15, stop_theta=0.3, cadence=10)
    result = run(cfg)
    assert result.status == "clean_contraction"
    assert result.stop_reason == "stop_theta"
    worst = max(abs(rec.min_u - spherical_theta(rec.t, 1.0))
                for rec in result.records)
    assert worst <= 1e-6
    # the sphere is an invariant manifold: the profile stays uniform
    final = result.final_profile.u
    assert float(np.max(final) - np.min(final)) <= 1e-11
    assert result.eps0 == pytest.approx(0.41997434161402597, rel=1e-12)
    assert result.eps_used == pytest.approx(0.5 * result.eps0, rel=1e-15)
    assert result.extinction_estimate == pytest.approx(
        math.log(math.cosh(1.0)), abs=1e-6)


def test_extinction_estimates_ordered():
    fits = []
    for radius in (1.0, 1.2):
        cfg = FlowConfig(speed=SPEED,
                         scenario=Scenario(name="sphere", radius=radius),
                         intervals=128, stop_theta=0.1, cadence=50)
        result = run(cfg)
        fits.append(result.extinction_estimate)
        assert result.extinction_estimate == pytest.approx(
            math.log(math.cosh(radius)), abs=1e-5)
    assert fits[0] < fits[1]


def test_comparison_principle_perturbed_run():
    # initial data between two round spheres stays between their evolutions
    cfg = FlowConfig(speed=SPEED,
                     scenario=Scenario(name="perturbed_sphere", radius=1.0,
                                       amplitude=0.05, mode=2),
                     intervals=128, cfl_safety=0.15, stop_theta=0.2, cadence=10)
    result = run(cfg)
    assert result.status == "clean_contraction"
    t_inner = spherical_extinction_time(0.95)
    for rec in result.records:
        assert rec.t < t_inner
        assert rec.min_u >= spherical_theta(rec.t, 0.95) - 1e-8
        assert rec.max_u <= spherical_theta(rec.t, 1.05) + 1e-8


def test_monitor_margins_ordered():
    cfg = FlowConfig(speed=SPEED,
                     scenario=Scenario(name="perturbed_sphere", radius=1.0,
                                       amplitude=0.05, mode=2),
                     intervals=128, stop_theta=0.3, cadence=25)
    result = run(cfg)
    for rec in result.records:
        # g_margin subtracts eps F^2 > 0 on top of the sectional margin
        assert rec.g_margin <= rec.psc_margin
        assert rec.g_margin > 0.0
        assert rec.min_f <= rec.max_f
        assert rec.kappa_ratio >= 1.0


def test_stop_time_and_cadence():
    cfg = FlowConfig(speed=SPEED, scenario=Scenario(name="sphere", radius=1.0),
                     intervals=128, stop_time=0.02, cadence=7)
    result = run(cfg)
    assert result.stop_reason == "stop_time"
    assert result.final_time == pytest.approx(0.02, abs=1e-12)
    steps = [rec.step_index for rec in result.records]
    assert steps[0] == 0
    assert all(b - a == 7 for a, b in zip(steps[1:-1], steps[2:-1]))
    assert steps[-1] == result.steps
    assert len(result.snapshots) == 2
    assert result.snapshots[0].t == 0.0
    assert result.snapshots[-1].t == result.final_time


def test_hypothesis_gate_cone_violation():
    # amplitude 0.9 throws the initial curvature out of the positive cone
    cfg = FlowConfig(speed=SPEED,
                     scenario=Scenario(name="perturbed_sphere", radius=1.0,
                                       amplitude=0.9, mode=2), intervals=128)
    with pytest.raises(HypothesisError, match="hypothesis"):
        run(cfg)


def test_hypothesis_gate_sectional_violation():
    # positive curvatures whose pair products still dip below 1
    cfg = FlowConfig(speed=parse_speed("sigma(k=1)"),
                     scenario=Scenario(name="perturbed_sphere", radius=3.0,
                                       amplitude=0.5, mode=3), intervals=64)
    with pytest.raises(HypothesisError, match="sectional"):
        run(cfg)


def test_flow_config_validation():
    scen = Scenario(name="sphere", radius=1.0)
    with pytest.raises(ConfigError):
        FlowConfig(speed=SPEED, scenario=scen, dimension=1)
    with pytest.raises(ConfigError):
        FlowConfig(speed=SPEED, scenario=scen, intervals=32)
    with pytest.raises(ConfigError):
        FlowConfig(speed=SPEED, scenario=scen, cfl_safety=0.0)
    with pytest.raises(ConfigError):
        FlowConfig(speed=SPEED, scenario=scen, epsilon_policy=1.0)
    with pytest.raises(ConfigError):
        FlowConfig(speed=SPEED, scenario=scen, derivative_method="magic")
    with pytest.raises(ConfigError):
        FlowConfig(speed=SPEED, scenario=scen, tso_rho=-0.5)


def test_rescale():
    prof = AxisymmetricProfile(dimension=3, u=np.full(129, 0.8), t=0.1)
    tau, u_tilde, osc = rescale(prof, 0.4)
    assert tau == pytest.approx(-math.log(0.4), rel=1e-15)
    assert np.allclose(u_tilde, 2.0)
    assert osc == 0.0
    with pytest.raises(DomainError):
        rescale(prof, 0.0)


def test_tso_quantity_hand_value():
    cache = _sphere_cache()
    # unit sphere, rho = 1/2: coth(1) / (sinh(1) - sinh(1/2)/2)
    assert tso_quantity(cache, 0.5) == pytest.approx(
        1.4355548049502356, rel=1e-12)
    # default rho is half the inradius
    assert tso_quantity(cache) == tso_quantity(cache, 0.5)
    with pytest.raises(ContractError):
        tso_quantity(cache, -0.1)
    with pytest.raises(ContractError):
        tso_quantity(cache, 3.0)   # ball of radius 3 is not enclosed


def test_tso_bound_hand_value():
    phi0 = 1.4355548049502356
    assert tso_bound(phi0, 1.0, 0.25) == pytest.approx(
        471.6526998248205, rel=1e-12)
    # when the a priori term is smaller, the initial value wins
    assert tso_bound(1000.0, 1.0, 0.25) == 1000.0
    with pytest.raises(ContractError):
        tso_bound(phi0, 1.0, 0.0)


def test_phi_max_recorded_and_bounded():
    cfg = FlowConfig(speed=SPEED, scenario=Scenario(name="sphere", radius=1.0),
                     intervals=128, stop_theta=0.3, cadence=20, tso_rho=0.25)
    result = run(cfg)
    phis = [rec.phi_max for rec in result.records if math.isfinite(rec.phi_max)]
    assert phis
    ceiling = tso_bound(phis[0], result.records[0].max_u, 0.25)
    assert max(phis) <= ceiling
