"""Trajectory monitors: per-record theorem quantities and the final verdict.

Every simulation emits a sequence of MonitorRecords, one per cadence step.
The verdict is a pure function of that sequence: it re-checks the monotone
speed minimum, the pinching certificate, positivity of the sectional
margins, and decay of the rescaled oscillation, each with the pinned
tolerances.  Pointwise checks are order-independent; only the monotonicity
checks depend on record order.
"""

from __future__ import annotations

import io
import csv
import math
from dataclasses import dataclass, field, fields
from typing import List, Sequence

import numpy as np

from .errors import ContractError, HypothesisError
from .geometry import GeometryCache, min_pair_product

__all__ = [
    "CSV_COLUMNS",
    "MonitorRecord",
    "VerdictTolerances",
    "TrajectoryVerdict",
    "epsilon0",
    "pinching_bound",
    "verdict",
    "records_to_csv",
]

# Column order of trajectory.csv is part of the external interface.
CSV_COLUMNS = [
    "t", "tau", "theta", "min_f", "max_f", "kappa_ratio", "eps0", "eps_used",
    "g_margin", "psc_margin", "osc_u_tilde", "roundness_ratio", "min_u",
    "max_u", "chi_min", "phi_max",
]


@dataclass
class MonitorRecord:
    """One time slice of every tracked theorem quantity."""

    t: float
    tau: float
    theta: float
    min_f: float
    max_f: float
    kappa_ratio: float
    eps0: float
    eps_used: float
    g_margin: float
    psc_margin: float
    osc_u_tilde: float
    roundness_ratio: float
    min_u: float
    max_u: float
    chi_min: float
    phi_max: float
    step_index: int = field(default=0, compare=False)  # not serialised

    def csv_row(self) -> List[str]:
        return [repr(getattr(self, c)) for c in CSV_COLUMNS]


def records_to_csv(records: Sequence[MonitorRecord]) -> str:
    """Serialise records deterministically (shortest-repr floats)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def epsilon0(cache: GeometryCache) -> float:
    """Largest eps with kappa_a kappa_b - 1 >= eps F^2 on the initial surface.

    Raises HypothesisError when the surface has a nonpositive sectional
    margin somewhere, i.e. the curvature hypothesis fails.
    """
    margin = min_pair_product(cache) - 1.0
    value = float(np.min(margin / cache.speed ** 2))
    if value <= 0.0:
        raise HypothesisError(
            "initial surface violates the sectional curvature hypothesis: "
            f"min (kappa_a kappa_b - 1)/F^2 = {value:.6g}")
    return value


def pinching_bound(eps_used: float, dimension: int) -> float:
    """Pinching certificate kappa_max/kappa_min <= eps^(-n/2)."""
    if eps_used <= 0.0:
        raise ContractError("pinching bound needs a positive epsilon")
    return eps_used ** (-dimension / 2.0)


@dataclass(frozen=True)
class VerdictTolerances:
    min_f_step_rel: float = 1e-6   # allowed relative dip of min F per step
    margin_floor: float = -1e-8    # sectional margin with frozen epsilon
    osc_decay_factor: float = 0.2  # required final/initial oscillation ratio
    osc_floor: float = 1e-10       # oscillation below this is "already round"


@dataclass
class TrajectoryVerdict:
    """Boolean theorem checks over a full record sequence, plus evidence."""

    min_f_monotone: bool
    pinching_ok: bool
    g_positive: bool
    psc_preserved: bool
    osc_decay: bool
    dimension: int
    theorem_conformant: bool
    notes: List[str]
    pinching_limit: float
    max_kappa_ratio: float
    min_g_margin: float
    min_psc_margin: float
    worst_min_f_drop: float
    initial_osc: float
    final_osc: float
    osc_slope: float

    @property
    def all_ok(self) -> bool:
        return (self.min_f_monotone and self.pinching_ok and self.g_positive
                and self.psc_preserved and self.osc_decay)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)} | {
            "all_ok": self.all_ok}


def verdict(records: Sequence[MonitorRecord], dimension: int,
            tolerances: VerdictTolerances = VerdictTolerances()) -> TrajectoryVerdict:
    """Evaluate the theorem checks on a recorded trajectory."""
    if len(records) < 2:
        raise ContractError("verdict needs at least two records")
    tol = tolerances

    # monotone speed minimum, allowing the per-step tolerance accumulated
    # over the steps separating consecutive records
    monotone = True
    worst_drop = 0.0
    for prev, cur in zip(records, records[1:]):
        gap = max(1, cur.step_index - prev.step_index)
        slack = tol.min_f_step_rel * prev.min_f * gap
        drop = prev.min_f - cur.min_f
        worst_drop = max(worst_drop, drop)
        if drop > slack:
            monotone = False

    eps_used = records[0].eps_used
    limit = pinching_bound(eps_used, dimension)
    ratios = [r.kappa_ratio for r in records]
    pinching_ok = max(ratios) <= limit

    g_min = min(r.g_margin for r in records)
    psc_min = min(r.psc_margin for r in records)

    osc0 = records[0].osc_u_tilde
    osc1 = records[-1].osc_u_tilde
    slope = 0.0
    if osc0 <= tol.osc_floor:
        osc_ok = True
    else:
        osc_ok = osc1 <= tol.osc_decay_factor * osc0
        pts = [(r.tau, math.log(r.osc_u_tilde)) for r in records
               if r.osc_u_tilde > tol.osc_floor and math.isfinite(r.tau)]
        if len(pts) >= 2:
            taus, logs = zip(*pts)
            slope = float(np.polyfit(taus, logs, 1)[0])
            osc_ok = osc_ok and slope < 0.0
        else:
            osc_ok = osc_ok and osc1 <= tol.osc_floor

    notes = []
    conformant = dimension >= 3
    if not conformant:
        notes.append(f"dimension {dimension} is below 3; the contraction "
                     "theorem does not apply")

    return TrajectoryVerdict(
        min_f_monotone=monotone,
        pinching_ok=pinching_ok,
        g_positive=g_min > tol.margin_floor,
        psc_preserved=psc_min > 0.0,
        osc_decay=osc_ok,
        dimension=dimension,
        theorem_conformant=conformant,
        notes=notes,
        pinching_limit=limit,
        max_kappa_ratio=max(ratios),
        min_g_margin=g_min,
        min_psc_margin=psc_min,
        worst_min_f_drop=worst_drop,
        initial_osc=osc0,
        final_osc=osc1,
        osc_slope=slope,
    )
