"""The acceptance battery: every numbered check the package must satisfy.

Each criterion runs as an independent function returning a
:class:`CriterionResult`; expensive flow runs are shared through a small
cache (the benchmark sphere run feeds four criteria, the perturbed runs
feed two).  ``run_battery`` drives the whole set and is used by both the
``suite`` subcommand and the acceptance test module.

The two ``inject_*`` arguments exist only for fault-injection tests of
the exit-code contract; they bypass config validation on purpose.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .errors import BlowUpError
from .flow import FlowConfig, FlowResult, run, spherical_extinction_time
from .geometry import GeometryCache, derivatives_on_grid, principal_curvatures, \
    speed_diffusion_term
from .hyperboloid import fd_fundamental_forms
from .monitors import TrajectoryVerdict, verdict
from .scenarios import ORACLE_PROFILES, Scenario, oracle_profile
from .speeds import KAPPA_HI, KAPPA_LO, builtin_speeds, geometric_mean_gap, \
    inverse_concavity_margin, log_hessian_min_eigenvalue, \
    matrix_second_derivative, ordering_margin, parse_speed

__all__ = ["CriterionResult", "run_battery", "oracle_discrepancy",
           "fd_matrix_second_derivative", "PERTURBED_SPEED_SPECS"]

# The five speeds of the perturbed-contraction property suite.
PERTURBED_SPEED_SPECS = [
    "sigma(k=1)",
    "sigma(k=2)",
    "sigma(k=3)",
    "powermean(r=0.5)",
    "blend(sigma(k=1):0.5,sigma(k=2):0.5)",
]

ORACLE_POLE_MARGIN = 0.05  # the embedding oracle needs this much clearance


@dataclass
class CriterionResult:
    name: str
    passed: bool
    value: str
    seconds: float
    blew_up: bool = False


@dataclass
class _SphereRun:
    """Benchmark sphere run plus the per-step data several criteria need."""

    result: FlowResult
    max_error: float            # max over steps and grid of |u - Theta(t)|
    times: np.ndarray           # accepted-step times
    speed_at_pole: np.ndarray   # F at the first grid node, per step
    reaction_at_pole: np.ndarray  # (sum F'k^2 - sum F') F there, per step
    seconds: float


def _apply_injection(cfg: FlowConfig, inject_cfl: Optional[float],
                     inject_intervals: Optional[int]) -> FlowConfig:
    """Fault injection bypasses the config validators by design."""
    if inject_cfl is not None:
        object.__setattr__(cfg, "cfl_safety", float(inject_cfl))
    if inject_intervals is not None:
        object.__setattr__(cfg, "intervals", int(inject_intervals))
    return cfg


class _Battery:
    """Shared state (cached runs, injections, seed) for one battery pass."""

    def __init__(self, seed: int, inject_cfl: Optional[float],
                 inject_intervals: Optional[int]):
        self.seed = seed
        self.inject_cfl = inject_cfl
        self.inject_intervals = inject_intervals
        self._sphere_runs: Dict[int, _SphereRun] = {}
        self._perturbed: Optional[List[Tuple[str, FlowResult,
                                             TrajectoryVerdict]]] = None
        self._perturbed_seconds = 0.0

    # -- shared runs -----------------------------------------------------

    def sphere_intervals(self) -> int:
        return self.inject_intervals or 256

    def perturbed_intervals(self) -> int:
        return self.inject_intervals or 128

    def sphere_run(self, intervals: int) -> _SphereRun:
        if intervals in self._sphere_runs:
            return self._sphere_runs[intervals]
        cfg = FlowConfig(speed=parse_speed("sigma(k=2)"),
                         scenario=Scenario(name="sphere", radius=1.0),
                         dimension=3, intervals=max(intervals, 64),
                         cfl_safety=0.18, stop_theta=0.05, cadence=25,
                         tso_rho=0.25)
        if intervals < 64:
            object.__setattr__(cfg, "intervals", intervals)
        if self.inject_cfl is not None:
            object.__setattr__(cfg, "cfl_safety", float(self.inject_cfl))

        extinction = spherical_extinction_time(1.0)
        n = cfg.dimension
        errors: List[float] = []
        times: List[float] = []
        f_pole: List[float] = []
        reaction_pole: List[float] = []

        def observe(cache: GeometryCache, _step: int) -> None:
            t = cache.profile.t
            exact = math.acosh(math.exp(extinction - t))
            errors.append(float(np.max(np.abs(cache.profile.u - exact))))
            times.append(t)
            f_pole.append(float(cache.speed[0]))
            gm, gr = float(cache.grad_mer[0]), float(cache.grad_rot[0])
            km, kr = float(cache.kappa_mer[0]), float(cache.kappa_rot[0])
            reaction_pole.append(
                (gm * km * km + (n - 1) * gr * kr * kr - (gm + (n - 1) * gr))
                * float(cache.speed[0]))

        start = time.perf_counter()
        result = run(cfg, observer=observe)
        elapsed = time.perf_counter() - start
        bundle = _SphereRun(result=result,
                            max_error=max(errors) if errors else math.inf,
                            times=np.asarray(times),
                            speed_at_pole=np.asarray(f_pole),
                            reaction_at_pole=np.asarray(reaction_pole),
                            seconds=elapsed)
        self._sphere_runs[intervals] = bundle
        return bundle

    def perturbed_runs(self) -> List[Tuple[str, FlowResult, TrajectoryVerdict]]:
        if self._perturbed is not None:
            return self._perturbed
        out: List[Tuple[str, FlowResult, TrajectoryVerdict]] = []
        start = time.perf_counter()
        for spec in PERTURBED_SPEED_SPECS:
            cfg = FlowConfig(
                speed=parse_speed(spec),
                scenario=Scenario(name="perturbed_sphere", radius=1.0,
                                  amplitude=0.05, mode=2),
                dimension=3, intervals=max(self.perturbed_intervals(), 64),
                cfl_safety=0.15, stop_theta=0.05, cadence=25)
            _apply_injection(cfg, self.inject_cfl,
                             self.inject_intervals)
            result = run(cfg)
            if len(result.records) >= 2:
                ver = verdict(result.records, cfg.dimension)
            else:
                ver = None
            out.append((spec, result, ver))
        self._perturbed_seconds = time.perf_counter() - start
        self._perturbed = out
        return out


# -- oracles shared with the CLI and the tests ---------------------------


def oracle_discrepancy(profile: str, intervals: int = 512,
                       h_step: float = 1e-4, dimension: int = 3,
                       sign_flip: bool = False) -> float:
    """Max relative gap between grid curvatures and the embedding oracle.

    Compares both principal curvatures at every grid node far enough from
    the poles for the oracle's differencing stencil.  ``sign_flip``
    corrupts the oracle on purpose (fault-injection tests only).
    """
    func = oracle_profile(profile)
    theta = np.linspace(0.0, math.pi, intervals + 1)
    u = func(theta)
    du, d2u = derivatives_on_grid(u, method="spectral")
    kmer, krot = principal_curvatures(u, du, d2u)

    margin = ORACLE_POLE_MARGIN + 2.0 * h_step
    worst = 0.0
    for i in range(intervals + 1):
        if theta[i] < margin or theta[i] > math.pi - margin:
            continue
        forms = fd_fundamental_forms(func, float(theta[i]), h_step=h_step,
                                     dimension=dimension)
        o_mer = -forms.kappa_mer if sign_flip else forms.kappa_mer
        worst = max(worst,
                    abs(kmer[i] - o_mer) / max(abs(o_mer), 1e-12),
                    abs(krot[i] - forms.kappa_rot)
                    / max(abs(forms.kappa_rot), 1e-12))
    return worst


class FdSecondDerivative(NamedTuple):
    value: float
    noise: float   # resolution limit of the stencil at this point


def fd_matrix_second_derivative(speed, kappa, direction,
                                h_scale: float = 0.01) -> FdSecondDerivative:
    """Finite-difference oracle for the matrix second derivative.

    Differentiates s -> F(eigenvalues(diag(kappa) + s B)) twice at s = 0
    with a Richardson-extrapolated central stencil.  The direction is
    Frobenius-normalised first (the second derivative is quadratic in B)
    and the step is scaled to the eigenvalue gap so the path stays on
    smooth eigenvalue branches.  ``noise`` estimates the cancellation
    error of the stencil; discrepancies below it are unresolvable.
    """
    k = np.asarray(kappa, dtype=float)
    b = np.asarray(direction, dtype=float)
    norm = float(np.linalg.norm(b))
    if norm == 0.0:
        return FdSecondDerivative(0.0, 0.0)
    bhat = b / norm
    gaps = np.diff(np.sort(k))
    h = h_scale * min(float(np.min(gaps)) if gaps.size else float(np.min(k)),
                      float(np.min(k)))

    base = np.diag(k)

    def value(s: float) -> float:
        eigs = np.linalg.eigvalsh(base + s * bhat)
        return float(speed.value(eigs))

    f0 = value(0.0)

    def second(step: float) -> float:
        return (value(step) - 2.0 * f0 + value(-step)) / (step * step)

    coarse, fine = second(h), second(0.5 * h)
    estimate = (4.0 * fine - coarse) / 3.0 * norm * norm
    noise = 100.0 * np.finfo(float).eps * abs(f0) * norm * norm / (h * h)
    return FdSecondDerivative(estimate, noise)


# -- the criteria ---------------------------------------------------------


def _criterion_sphere_regression(bat: _Battery) -> CriterionResult:
    """1: the benchmark sphere tracks the closed-form solution."""
    bundle = bat.sphere_run(bat.sphere_intervals())
    result = bundle.result
    if result.status == "blow_up":
        return CriterionResult("sphere_regression", False,
                               f"blow_up: {result.stop_reason}",
                               bundle.seconds, blew_up=True)
    ext_err = abs(result.extinction_estimate - spherical_extinction_time(1.0))
    ok = (result.status == "clean_contraction"
          and bundle.max_error <= 1e-4
          and ext_err <= 1e-3
          and bundle.seconds <= 10.0)
    return CriterionResult(
        "sphere_regression", ok,
        f"max_err={bundle.max_error:.3g} (<=1e-4) "
        f"extinction_err={ext_err:.3g} (<=1e-3)",
        bundle.seconds)


def _criterion_convergence_order(bat: _Battery) -> CriterionResult:
    """2: the sphere error drops at order >= 1.8 under grid doubling."""
    if bat.inject_intervals is not None:
        ladder = [bat.inject_intervals, 2 * bat.inject_intervals,
                  4 * bat.inject_intervals]
    else:
        ladder = [128, 256, 512]
    start = time.perf_counter()
    bundles = [bat.sphere_run(m) for m in ladder]
    elapsed = time.perf_counter() - start
    if any(b.result.status == "blow_up" for b in bundles):
        return CriterionResult("convergence_order", False, "blow_up",
                               elapsed, blew_up=True)
    errs = [b.max_error for b in bundles]
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(len(errs) - 1)]
    ok = min(orders) >= 1.8
    return CriterionResult(
        "convergence_order", ok,
        "errors=" + "/".join(f"{e:.3g}" for e in errs)
        + " orders=" + "/".join(f"{o:.2f}" for o in orders) + " (>=1.8)",
        elapsed)


def _criterion_contraction_invariants(bat: _Battery) -> CriterionResult:
    """3: all four runtime invariants hold for the five perturbed runs."""
    runs = bat.perturbed_runs()
    elapsed = bat._perturbed_seconds
    bad: List[str] = []
    blew_up = False
    for spec, result, ver in runs:
        if result.status == "blow_up":
            bad.append(f"{spec}: blow_up ({result.stop_reason})")
            blew_up = True
            continue
        if ver is None:
            bad.append(f"{spec}: fewer than two records")
            continue
        flags = {"min_f_monotone": ver.min_f_monotone,
                 "pinching": ver.pinching_ok,
                 "g_positive": ver.g_positive,
                 "psc_preserved": ver.psc_preserved}
        failed = [name for name, flag in flags.items() if not flag]
        if result.status != "clean_contraction":
            failed.append(result.status)
        if failed:
            bad.append(f"{spec}: {','.join(failed)}")
    ok = not bad and elapsed <= 60.0
    value = (f"5 speeds x 4 invariants green, {elapsed:.1f}s (<=60s)"
             if not bad else "; ".join(bad))
    return CriterionResult("contraction_invariants", ok, value, elapsed,
                           blew_up=blew_up)


def _criterion_roundness_decay(bat: _Battery) -> CriterionResult:
    """4: rescaled oscillation and roundness defect both shrink."""
    runs = bat.perturbed_runs()
    worst_osc = -math.inf
    worst_slope = -math.inf
    worst_round = -math.inf
    blew_up = False
    for spec, result, ver in runs:
        if result.status == "blow_up" or ver is None:
            blew_up = blew_up or result.status == "blow_up"
            return CriterionResult("roundness_decay", False,
                                   f"{spec}: {result.status}", 0.0,
                                   blew_up=blew_up)
        worst_osc = max(worst_osc, ver.final_osc / ver.initial_osc)
        worst_slope = max(worst_slope, ver.osc_slope)
        records = result.records
        worst_round = max(worst_round, records[-1].roundness_ratio
                          / records[0].roundness_ratio)
    ok = worst_osc <= 0.2 and worst_slope < 0.0 and worst_round <= 0.5
    return CriterionResult(
        "roundness_decay", ok,
        f"osc_factor={worst_osc:.3f} (<=0.2) slope={worst_slope:.3g} (<0) "
        f"roundness_factor={worst_round:.3f} (<=0.5)",
        0.0)


def _criterion_symmetric_functions(bat: _Battery) -> CriterionResult:
    """5: the sampled inequality suite for every built-in speed."""
    start = time.perf_counter()
    worst: Dict[str, float] = {"geometric_mean_gap": math.inf,
                               "inverse_concavity": math.inf,
                               "ordering": math.inf,
                               "log_hessian": math.inf,
                               "euler": 0.0}
    for n in (3, 4, 5):
        rng = np.random.default_rng(bat.seed + n)
        kappa = np.exp(rng.uniform(math.log(KAPPA_LO), math.log(KAPPA_HI),
                                   size=(10_000, n)))
        for speed in builtin_speeds(n).values():
            f, g = speed.value_gradient(kappa)
            worst["geometric_mean_gap"] = min(
                worst["geometric_mean_gap"],
                float(np.min(geometric_mean_gap(speed, kappa) / f)))
            worst["inverse_concavity"] = min(
                worst["inverse_concavity"],
                float(np.min(inverse_concavity_margin(speed, kappa)
                             / (f * f))))
            for i in range(n):
                for j in range(i):
                    worst["ordering"] = min(
                        worst["ordering"],
                        float(np.min(ordering_margin(speed, kappa, i, j))))
            worst["log_hessian"] = min(
                worst["log_hessian"],
                float(np.min(log_hessian_min_eigenvalue(speed,
                                                        np.log(kappa)))))
            worst["euler"] = max(
                worst["euler"],
                float(np.max(np.abs(np.sum(g * kappa, axis=-1) - f) / f)))
    elapsed = time.perf_counter() - start
    ok = (worst["geometric_mean_gap"] >= -1e-12
          and worst["inverse_concavity"] >= -1e-12
          and worst["ordering"] >= -1e-12
          and worst["log_hessian"] >= -1e-8
          and worst["euler"] <= 1e-10
          and elapsed <= 30.0)
    return CriterionResult(
        "symmetric_functions", ok,
        f"gm={worst['geometric_mean_gap']:.1e} "
        f"inv={worst['inverse_concavity']:.1e} "
        f"ord={worst['ordering']:.1e} "
        f"logH={worst['log_hessian']:.1e} (>=-1e-8) "
        f"euler={worst['euler']:.1e} (<=1e-10)",
        elapsed)


def _criterion_matrix_derivative(bat: _Battery) -> CriterionResult:
    """6: closed-form matrix second derivative vs the eigenvalue oracle.

    Samples where 1e-6 of the magnitude exceeds the stencil noise are
    compared at 1e-6 relative; the rest (both sides at the oracle's
    resolution floor, e.g. linear speeds whose second derivative is
    identically zero) must agree within that noise.
    """
    start = time.perf_counter()
    n = 3
    worst_rel = 0.0
    worst_noise_excess = 0.0
    resolved = 0
    total = 0
    for offset, speed in enumerate(builtin_speeds(n).values()):
        rng = np.random.default_rng(bat.seed + 1000 + offset)
        count = 0
        while count < 100:
            kappa = np.exp(rng.uniform(math.log(KAPPA_LO),
                                       math.log(KAPPA_HI), size=n))
            if float(np.min(np.diff(np.sort(kappa)))) <= 1e-3:
                continue
            raw = rng.uniform(-1.0, 1.0, size=(n, n))
            direction = 0.5 * (raw + raw.T)
            count += 1
            total += 1
            analytic = matrix_second_derivative(speed, kappa, direction)
            oracle = fd_matrix_second_derivative(speed, kappa, direction)
            gap = abs(analytic - oracle.value)
            mag = max(abs(analytic), abs(oracle.value))
            if 1e-6 * mag >= oracle.noise:
                resolved += 1
                worst_rel = max(worst_rel, gap / mag)
            else:
                worst_noise_excess = max(
                    worst_noise_excess,
                    gap / oracle.noise if oracle.noise > 0 else 0.0)
    elapsed = time.perf_counter() - start
    ok = worst_rel <= 1e-6 and worst_noise_excess <= 1.0
    return CriterionResult(
        "matrix_second_derivative", ok,
        f"max_rel_err={worst_rel:.3g} (<=1e-6, {resolved}/{total} resolved) "
        f"noise_excess={worst_noise_excess:.2f} (<=1)",
        elapsed)


def _criterion_oracle_equivalence(bat: _Battery) -> CriterionResult:
    """7: analytic curvatures match the embedding oracle on the test set."""
    start = time.perf_counter()
    worst = 0.0
    for name in sorted(ORACLE_PROFILES):
        worst = max(worst, oracle_discrepancy(name, intervals=512,
                                              h_step=1e-4))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6
    return CriterionResult(
        "oracle_equivalence", ok,
        f"max_rel_discrepancy={worst:.3g} (<=1e-6, 5 profiles, M=512)",
        elapsed)


def _speed_evolution_rhs(cache: GeometryCache) -> np.ndarray:
    """Fixed-coordinate time derivative of F predicted by the evolution
    identity: diffusion + reaction minus the advective term that converts
    the normal-flow derivative to the graph parametrisation."""
    n = cache.profile.dimension
    f = cache.speed
    reaction = (cache.grad_mer * cache.kappa_mer ** 2
                + (n - 1) * cache.grad_rot * cache.kappa_rot ** 2
                - (cache.grad_mer + (n - 1) * cache.grad_rot)) * f
    df, _ = derivatives_on_grid(f, method=cache.method)
    drift = cache.du * cache.v * f / cache.w2
    return speed_diffusion_term(cache) + reaction - drift * df


def _perturbed_residual(bat: _Battery, intervals: int) -> float:
    """Residual of the speed-evolution identity on a short perturbed run.

    Integrated form: (F(T) - F(0))/T against the trapezoid time average
    of the identity's right side, max over grid nodes.  Per-step
    differencing would divide the spectral round-off of each state by a
    single dt and grow like M^4; the window average keeps the genuine
    O(dt^2) consistency error visible instead.
    """
    cfg = FlowConfig(speed=parse_speed("sigma(k=2)"),
                     scenario=Scenario(name="perturbed_sphere", radius=1.0,
                                       amplitude=0.05, mode=2),
                     dimension=3, intervals=max(intervals, 64),
                     cfl_safety=0.15, stop_theta=0.05, stop_time=0.02,
                     cadence=10_000)
    if intervals < 64:
        object.__setattr__(cfg, "intervals", intervals)
    if bat.inject_cfl is not None:
        object.__setattr__(cfg, "cfl_safety", float(bat.inject_cfl))
    times: List[float] = []
    first: List[np.ndarray] = []
    last: List[np.ndarray] = []
    integral: List[np.ndarray] = []
    prev_rhs: List[np.ndarray] = []

    def observe(cache: GeometryCache, _step: int) -> None:
        rhs = _speed_evolution_rhs(cache)
        if times:
            dt = cache.profile.t - times[-1]
            integral[0] = integral[0] + 0.5 * dt * (prev_rhs[0] + rhs)
            last[0] = np.array(cache.speed)
        else:
            first.append(np.array(cache.speed))
            last.append(np.array(cache.speed))
            integral.append(np.zeros_like(cache.speed))
        prev_rhs[:] = [rhs]
        times.append(cache.profile.t)

    result = run(cfg, observer=observe)
    if result.status != "clean_contraction" or len(times) < 2:
        return math.inf
    window = times[-1] - times[0]
    return float(np.max(np.abs((last[0] - first[0]) - integral[0]))) / window


def _criterion_speed_evolution(bat: _Battery) -> CriterionResult:
    """8: discrete dF/dt obeys the evolution identity."""
    bundle = bat.sphere_run(bat.sphere_intervals())
    if bundle.result.status == "blow_up":
        return CriterionResult("speed_evolution", False, "sphere blow_up",
                               bundle.seconds, blew_up=True)
    t = bundle.times
    f = bundle.speed_at_pole
    psi = bundle.reaction_at_pole
    dts = np.diff(t)
    lhs = np.diff(f) / dts
    mid = 0.5 * (psi[:-1] + psi[1:])
    rel = np.abs(lhs - mid) / np.abs(mid)
    sphere_ratio = float(np.max(rel / (2.0 * dts)))

    start = time.perf_counter()
    base = bat.perturbed_intervals()
    coarse = _perturbed_residual(bat, base)
    fine = _perturbed_residual(bat, 2 * base)
    elapsed = time.perf_counter() - start
    drop = coarse / fine if fine > 0 else math.inf
    ok = sphere_ratio <= 1.0 and drop >= 2.8
    return CriterionResult(
        "speed_evolution", ok,
        f"sphere_rel_err/(2dt)={sphere_ratio:.3g} (<=1) "
        f"residual_drop_M_to_2M={drop:.1f}x (>=2.8)",
        elapsed)


def _criterion_interior_ball_bound(bat: _Battery) -> CriterionResult:
    """9: the interior-ball gradient quantity respects its a-priori bound."""
    bundle = bat.sphere_run(bat.sphere_intervals())
    if bundle.result.status == "blow_up":
        return CriterionResult("interior_ball_bound", False, "blow_up",
                               0.0, blew_up=True)
    records = bundle.result.records
    rho = bundle.result.config.tso_rho
    phi0 = records[0].phi_max
    bound = max(phi0, 2.0 * math.cosh(2.0 * records[0].max_u)
                / (0.5 * math.sinh(rho)) ** 2)
    finite = [r.phi_max for r in records if math.isfinite(r.phi_max)]
    peak = max(finite) if finite else math.inf
    ok = bool(finite) and peak <= bound
    return CriterionResult(
        "interior_ball_bound", ok,
        f"max_phi={peak:.4f} bound={bound:.4f} (rho={rho})",
        0.0)


def _criterion_hypothesis_gate(bat: _Battery) -> CriterionResult:
    """10: bad initial data exits 4; n=2 runs but is flagged."""
    import contextlib
    import io
    import tempfile

    from . import cli

    start = time.perf_counter()
    config_text = (
        "[flow]\n"
        'speed = "sigma(k=2)"\n'
        "intervals = 128\n"
        "[scenario]\n"
        'name = "perturbed_sphere"\n'
        "amplitude = 0.9\n"
        "mode = 2\n")
    with tempfile.TemporaryDirectory() as tmp:
        cfg_path = f"{tmp}/reject.toml"
        with open(cfg_path, "w", encoding="utf-8") as fh:
            fh.write(config_text)
        with contextlib.redirect_stderr(io.StringIO()), \
                contextlib.redirect_stdout(io.StringIO()):
            code = cli.main(["simulate", cfg_path, "--out", f"{tmp}/out"])
    gate_ok = code == 4

    low_cfg = FlowConfig(speed=parse_speed("sigma(k=1)"),
                         scenario=Scenario(name="sphere", radius=1.0),
                         dimension=2, intervals=64, cfl_safety=0.15,
                         stop_time=0.05, cadence=5)
    _apply_injection(low_cfg, bat.inject_cfl, None)
    low = run(low_cfg)
    low_ver = (verdict(low.records, dimension=2)
               if len(low.records) >= 2 else None)
    low_ok = (low.status == "clean_contraction" and low_ver is not None
              and not low_ver.theorem_conformant)
    elapsed = time.perf_counter() - start
    ok = gate_ok and low_ok
    return CriterionResult(
        "hypothesis_gate", ok,
        f"psc_violation_exit={code} (==4) "
        f"n2_status={low.status} n2_conformant="
        f"{low_ver.theorem_conformant if low_ver else 'n/a'} (False)",
        elapsed, blew_up=low.status == "blow_up")


_CRITERIA: List[Callable[[_Battery], CriterionResult]] = [
    _criterion_sphere_regression,
    _criterion_convergence_order,
    _criterion_contraction_invariants,
    _criterion_roundness_decay,
    _criterion_symmetric_functions,
    _criterion_matrix_derivative,
    _criterion_oracle_equivalence,
    _criterion_speed_evolution,
    _criterion_interior_ball_bound,
    _criterion_hypothesis_gate,
]


def run_battery(seed: int = 0, inject_cfl: Optional[float] = None,
                inject_intervals: Optional[int] = None
                ) -> List[CriterionResult]:
    """Run all acceptance criteria; never raises from a criterion."""
    bat = _Battery(seed=seed, inject_cfl=inject_cfl,
                   inject_intervals=inject_intervals)
    results: List[CriterionResult] = []
    for func in _CRITERIA:
        name = func.__name__.replace("_criterion_", "")
        start = time.perf_counter()
        try:
            results.append(func(bat))
        except BlowUpError as exc:
            results.append(CriterionResult(
                name, False, f"blow_up: {exc}",
                time.perf_counter() - start, blew_up=True))
        except Exception as exc:  # a broken criterion must not hide others
            results.append(CriterionResult(
                name, False, f"{type(exc).__name__}: {exc}",
                time.perf_counter() - start))
    return results

