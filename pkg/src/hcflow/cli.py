"""Command line front end.

Subcommands: ``simulate`` (one run, artifacts to a directory),
``verify-assumption`` (sampled admissibility report for a speed spec),
``oracle-check`` (analytic curvatures vs the embedding oracle),
``suite`` (the full acceptance battery) and ``sweep`` (several configs
on a worker pool).

Exit codes: 0 success / all checks green, 2 an invariant or tolerance
check failed, 3 numerical blow-up, 4 configuration or hypothesis error.
Output is deterministic: no timestamps, floats via repr, identical
config and seed give byte-identical files.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from pathlib import Path
from typing import List, Optional

from .config import RunConfig, load_config
from .errors import ConfigError, ContractError, HypothesisError
from .flow import FlowResult, run
from .monitors import records_to_csv, verdict
from .scenarios import ORACLE_PROFILES
from .speeds import check_assumption, parse_speed

__all__ = ["main", "EXIT_OK", "EXIT_CHECK_FAILED", "EXIT_BLOWUP", "EXIT_CONFIG"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_BLOWUP = 3
EXIT_CONFIG = 4

OUTPUT_ROOT_ENV = "HCFLOW_OUTPUT_ROOT"
ORACLE_THRESHOLD = 1e-6


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_CONFIG


def _output_root() -> Path:
    return Path(os.environ.get(OUTPUT_ROOT_ENV, "."))


def _resolve_out_dir(arg_out: Optional[str], cfg: RunConfig,
                     config_path: str) -> Path:
    """Output directory: CLI flag, then [output].directory, then
    $HCFLOW_OUTPUT_ROOT/<config stem>."""
    if arg_out:
        return Path(arg_out)
    if cfg.output.directory:
        configured = Path(cfg.output.directory)
        return configured if configured.is_absolute() else _output_root() / configured
    return _output_root() / (Path(config_path).stem + ".out")


def _flag(value: bool) -> str:
    return "ok" if value else "FAIL"


def _snapshot_theta(extinction: float, t: float) -> Optional[float]:
    arg = extinction - t
    if arg <= 0.0:
        return None
    return math.acosh(math.exp(arg))


def _write_profiles(path: Path, result: FlowResult) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for prof in result.snapshots:
            theta = _snapshot_theta(result.extinction_estimate, prof.t)
            u = [float(x) for x in prof.u]
            row = {
                "t": prof.t,
                "theta": theta,
                "u": u,
                "u_tilde": [x / theta for x in u] if theta else None,
            }
            fh.write(json.dumps(row) + "\n")


def _write_plot_data(out_dir: Path, result: FlowResult) -> None:
    """Figure-equivalent tables: rescaled oscillation and radii history."""
    with (out_dir / "oscillation.csv").open("w", encoding="utf-8") as fh:
        fh.write("tau,osc_u_tilde\n")
        for rec in result.records:
            if math.isfinite(rec.tau) and math.isfinite(rec.osc_u_tilde):
                fh.write(f"{rec.tau!r},{rec.osc_u_tilde!r}\n")
    with (out_dir / "radii.csv").open("w", encoding="utf-8") as fh:
        fh.write("t,theta,min_u,max_u\n")
        for rec in result.records:
            fh.write(f"{rec.t!r},{rec.theta!r},{rec.min_u!r},{rec.max_u!r}\n")


def _simulate_to_dir(config_path: str, out_dir: Path,
                     emit_plot_data: bool) -> int:
    """Shared core of ``simulate`` and ``sweep``; returns the exit code."""
    try:
        cfg = load_config(config_path)
    except ConfigError as exc:
        return _fail(str(exc))
    try:
        result = run(cfg.flow)
    except (HypothesisError, ConfigError) as exc:
        return _fail(str(exc))

    code = {"clean_contraction": EXIT_OK,
            "invariant_violation": EXIT_CHECK_FAILED,
            "blow_up": EXIT_BLOWUP}[result.status]

    ver = None
    if len(result.records) >= 2:
        ver = verdict(result.records, cfg.flow.dimension)
        invariants_ok = (ver.min_f_monotone and ver.pinching_ok
                         and ver.g_positive and ver.psc_preserved)
        if code == EXIT_OK and not invariants_ok:
            code = EXIT_CHECK_FAILED
    else:
        invariants_ok = False

    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "trajectory.csv").write_text(records_to_csv(result.records),
                                            encoding="utf-8")
    _write_profiles(out_dir / "profiles.jsonl", result)
    payload = {
        "status": result.status,
        "stop_reason": result.stop_reason,
        "eps0": result.eps0,
        "eps_used": result.eps_used,
        "extinction_estimate": result.extinction_estimate,
        "steps": result.steps,
        "final_time": result.final_time,
        "exit_code": code,
        "verdict": ver.to_dict() if ver is not None else None,
    }
    (out_dir / "verdict.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if emit_plot_data or cfg.output.emit_plot_data:
        _write_plot_data(out_dir, result)

    if ver is not None:
        tail = (f"invariants={_flag(invariants_ok)} "
                f"osc_decay={_flag(ver.osc_decay)} "
                f"conformant={_flag(ver.theorem_conformant)}")
    else:
        tail = "invariants=n/a (fewer than two records)"
    print(f"status={result.status} steps={result.steps} "
          f"final_t={result.final_time!r} "
          f"extinction_fit={result.extinction_estimate!r} {tail} exit={code}")
    return code


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        return _fail(str(exc))
    out_dir = _resolve_out_dir(args.out, cfg, args.config)
    return _simulate_to_dir(args.config, out_dir, args.emit_plot_data)


def cmd_verify_assumption(args: argparse.Namespace) -> int:
    try:
        speed = parse_speed(args.spec)
    except (ContractError, ConfigError) as exc:
        return _fail(f"cannot parse speed spec: {exc}")
    try:
        report = check_assumption(speed, args.dimension,
                                  sample_count=args.samples, seed=args.seed)
    except ContractError as exc:
        return _fail(str(exc))
    print(report.to_json())
    return EXIT_OK if report.all_ok else EXIT_CHECK_FAILED


def cmd_oracle_check(args: argparse.Namespace) -> int:
    from .acceptance import oracle_discrepancy

    try:
        disc = oracle_discrepancy(args.profile, intervals=args.intervals,
                                  h_step=args.h_step,
                                  dimension=args.dimension,
                                  sign_flip=args.inject_sign_flip)
    except ConfigError as exc:
        return _fail(str(exc))
    ok = disc <= ORACLE_THRESHOLD
    print(f"profile={args.profile} intervals={args.intervals} "
          f"h_step={args.h_step:g} max_relative_discrepancy={disc:.6e} "
          f"threshold={ORACLE_THRESHOLD:g} -> {'ok' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_suite(args: argparse.Namespace) -> int:
    from .acceptance import run_battery

    results = run_battery(seed=args.seed, inject_cfl=args.inject_cfl,
                          inject_intervals=args.inject_intervals)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  {r.value}  [{r.seconds:.1f}s]")
    failed = [r for r in results if not r.passed]
    blew_up = [r for r in results if r.blew_up]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed, "
          f"total {sum(r.seconds for r in results):.1f}s")
    if blew_up:
        return EXIT_BLOWUP
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


def _sweep_one(config_path: str, out_dir: str) -> int:
    return _simulate_to_dir(config_path, Path(out_dir), emit_plot_data=False)


def cmd_sweep(args: argparse.Namespace) -> int:
    root = Path(args.out_root) if args.out_root else _output_root()
    jobs = [(path, str(root / Path(path).stem)) for path in args.configs]
    codes: List[int] = []
    with concurrent.futures.ProcessPoolExecutor(max_workers=args.workers) as pool:
        futures = [pool.submit(_sweep_one, path, out) for path, out in jobs]
        for (path, out), fut in zip(jobs, futures):
            code = fut.result()
            codes.append(code)
            print(f"sweep {path} -> {out} exit={code}")
    return max(codes, default=EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcflow",
        description="Contracting curvature flows of axisymmetric "
                    "hypersurfaces in hyperbolic space.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "simulate", help="run one config and write artifacts",
        description="Runs the flow described by a TOML config and writes "
                    "trajectory.csv, profiles.jsonl and verdict.json. The "
                    "exit code reflects the run: 0 clean with all runtime "
                    "invariants green (oscillation decay is reported in the "
                    "verdict but does not affect the code), 2 invariant "
                    "violation, 3 blow-up, 4 config or hypothesis error.")
    p.add_argument("config", help="path to a TOML config")
    p.add_argument("-o", "--out", default=None,
                   help=f"output directory (default: [output].directory or "
                        f"${OUTPUT_ROOT_ENV}/<config stem>)")
    p.add_argument("--emit-plot-data", action="store_true",
                   help="also write oscillation.csv and radii.csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "verify-assumption", help="sampled admissibility report for a speed",
        description="Parses a speed spec, samples the admissibility "
                    "conditions and prints the report as JSON. Exit 0 iff "
                    "all flags hold, 2 otherwise, 4 on a parse error.")
    p.add_argument("spec", help="speed spec, e.g. 'sigma(k=2)' or "
                                "'blend(sigma(k=1):0.5,sigma(k=2):0.5)'")
    p.add_argument("-n", "--dimension", type=int, default=3,
                   help="number of principal curvatures (default 3)")
    p.add_argument("--samples", type=int, default=10_000,
                   help="sample count (default 10000)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.set_defaults(func=cmd_verify_assumption)

    p = sub.add_parser(
        "oracle-check", help="analytic curvatures vs the embedding oracle",
        description="Compares the grid curvature formulas against the "
                    "finite-difference embedding oracle on a named profile. "
                    "Exit 0 iff the max relative discrepancy is at most "
                    "1e-6, else 2.")
    p.add_argument("profile", choices=sorted(ORACLE_PROFILES),
                   help="named test profile")
    p.add_argument("-M", "--intervals", type=int, default=512,
                   help="grid intervals (default 512)")
    p.add_argument("--h-step", type=float, default=1e-4,
                   help="oracle differencing step (default 1e-4)")
    p.add_argument("-n", "--dimension", type=int, default=3,
                   help="hypersurface dimension (default 3)")
    p.add_argument("--inject-sign-flip", action="store_true",
                   help="testing only: corrupt the oracle sign to force a "
                        "discrepancy")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser(
        "suite", help="run the acceptance battery",
        description="Runs every acceptance criterion and prints one "
                    "pass/fail line each. Exit 0 all pass, 2 any failure, "
                    "3 if a flow run blew up.")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the sampled criteria (default 0)")
    p.add_argument("--inject-cfl", type=float, default=None,
                   help="testing only: override cfl_safety on every flow "
                        "run, bypassing validation")
    p.add_argument("--inject-intervals", type=int, default=None,
                   help="testing only: override the base grid resolution, "
                        "bypassing validation")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser(
        "sweep", help="run several configs on a worker pool",
        description="Simulates each config in its own output directory "
                    "under the output root; exits with the worst per-run "
                    "code.")
    p.add_argument("configs", nargs="+", help="TOML config paths")
    p.add_argument("-o", "--out-root", default=None,
                   help=f"root for per-run directories (default "
                        f"${OUTPUT_ROOT_ENV} or .)")
    p.add_argument("-w", "--workers", type=int, default=None,
                   help="worker processes (default: cpu count)")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
