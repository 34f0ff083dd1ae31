"""Experiment execution: single runs, parameter sweeps, verification suites.

run() classifies the drift, simulates, evaluates diagnostics and invariant
checks, cross-checks the predicted asymptotics against the observed ones, and
writes frames.csv / diagnostics.csv / report.json.  verify() executes the
named verification suite at a fixed reference resolution and reports one
pass/fail line per check with the measured numbers.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .grid import RadialField, RadialGrid
from .oracles import GaussianData, liftoff_limit, mass_growth_check, ou_solution
from .profiles import Linear, LogCorrected, PowerLaw, Tabulated, Zero
from .scenario import Scenario, apply_parameter
from .solver import SolverConfig, Trajectory, solve, step
from .weights import (
    ClassificationResult,
    DiagnosticSeries,
    Verdict,
    WeightFunction,
    classify,
    diagnostics,
    phi_tail_bound,
    predict_liftoff_level,
)

# observed-vs-predicted thresholds for the verdict cross-check
LIFTOFF_LEVEL_RTOL = 0.02       # plateau within 2% of the predicted level
DECAY_SUP_FRACTION = 0.1        # sup must drop below 10% of its initial value
CONSERVATION_DRIFT_RTOL = 1e-3  # full-weight I_R drift budget
MONOTONE_MASS_RTOL = 1e-6       # per-frame slack of the positive-part I_R


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# output files


def write_frames_csv(path, traj: Trajectory) -> None:
    r = traj.grid.nodes
    with open(path, "w") as fh:
        fh.write("t,r,u\n")
        for t, fld in traj:
            ts = _fmt(t)
            for ri, ui in zip(r, fld.values):
                fh.write(f"{ts},{_fmt(ri)},{_fmt(ui)}\n")


def write_diagnostics_csv(path, series: DiagnosticSeries) -> None:
    with open(path, "w") as fh:
        fh.write("t,I_R,sup_u,center_u,mass\n")
        for k in range(len(series)):
            fh.write(
                f"{_fmt(series.times[k])},{_fmt(series.weighted_mass[k])},"
                f"{_fmt(series.sup[k])},{_fmt(series.center[k])},{_fmt(series.mass[k])}\n"
            )


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    raise TypeError(f"not JSON-serializable: {type(x).__name__}")


# ---------------------------------------------------------------------------
# single run


@dataclass
class RunReport:
    """Everything run() measured, plus the classification it started from."""

    name: str
    classification: ClassificationResult
    series: DiagnosticSeries
    weight_kind: str
    final_sup: float
    final_center: float
    h_pred: float | None
    h_tail_bound: float | None
    h_obs: float | None
    discrepancy: float | None
    verdict_behavior_match: bool | None
    invariants: dict
    converged: bool
    resolution: dict
    elapsed_seconds: float

    def to_dict(self) -> dict:
        cls = self.classification
        return {
            "name": self.name,
            "verdict": cls.verdict.value,
            "growth_limit": None if cls.growth_limit is None else float(cls.growth_limit),
            "growth_bounds": None if cls.growth_bounds is None else list(cls.growth_bounds),
            "phi_mass": None if cls.phi_mass is None else float(cls.phi_mass),
            "classifier_note": cls.note,
            "weight_kind": self.weight_kind,
            "h_pred": self.h_pred,
            "h_tail_bound": self.h_tail_bound,
            "h_obs": self.h_obs,
            "discrepancy": self.discrepancy,
            "final_sup": self.final_sup,
            "final_center": self.final_center,
            "verdict_behavior_match": self.verdict_behavior_match,
            "converged": self.converged,
            "invariants": self.invariants,
            "resolution": self.resolution,
            "elapsed_seconds": self.elapsed_seconds,
        }


def _invariant_flags(traj: Trajectory, u0: RadialField, series: DiagnosticSeries,
                     lifts_off: bool | None) -> dict:
    """Pass/fail flags for the invariants this run can certify; None = not applicable."""
    cfg = traj.config
    v0 = u0.values
    sup0 = float(np.max(np.abs(v0))) or 1.0
    flags: dict = {}

    if np.all(v0 >= 0) and np.any(v0 > 0):
        ok = all(np.min(f.values) >= -1e-12 * sup0 for _, f in traj)
        ok = ok and all(f.values[0] > 0 for t, f in traj if t > 0)
        flags["positivity"] = bool(ok)
    else:
        flags["positivity"] = None

    certified = cfg.theta == 1.0 and cfg.advection == "upwind"
    if u0.is_radially_nonincreasing(tol=0.0):
        tol = (1e-10 if certified else 1e-6) * max(1.0, sup0)
        flags["radial_monotonicity"] = bool(
            all(np.all(np.diff(f.values) <= tol) for _, f in traj)
        )
    else:
        flags["radial_monotonicity"] = None

    if certified:
        lo, hi = float(np.min(v0)), float(np.max(v0))
        tol = 1e-12 * max(1.0, abs(lo), abs(hi))
        flags["max_principle"] = bool(
            all(np.min(f.values) >= lo - tol and np.max(f.values) <= hi + tol for _, f in traj)
        )
    else:
        flags["max_principle"] = None

    iw = series.weighted_mass
    if lifts_off is None or abs(iw[0]) < 1e-300:
        flags["weighted_mass_conserved"] = None
        flags["weighted_mass_monotone"] = None
    elif lifts_off:
        drift = float(np.max(np.abs(iw - iw[0])) / abs(iw[0]))
        flags["weighted_mass_conserved"] = bool(drift <= CONSERVATION_DRIFT_RTOL)
        flags["weighted_mass_monotone"] = None
    else:
        ok = bool(np.all(iw[1:] <= iw[:-1] * (1 + MONOTONE_MASS_RTOL) + 1e-300))
        flags["weighted_mass_monotone"] = ok
        flags["weighted_mass_conserved"] = None
    return flags


def _convergence_flag(traj: Trajectory, series: DiagnosticSeries, sup0: float) -> bool:
    """Has the center value settled: flat in space (vs. R/2) and in time (last 10%)."""
    final = traj.final.values
    r = traj.grid.nodes
    k_half = int(np.argmin(np.abs(r - series.radius / 2)))
    flat_space = abs(final[0] - final[k_half]) < 1e-4 * max(sup0, 1e-300)
    t_end = series.times[-1]
    t_cut = t_end - 0.1 * t_end
    k0 = int(np.searchsorted(series.times, t_cut))
    k0 = min(max(k0, 0), len(series) - 2)
    dt_tail = series.times[-1] - series.times[k0]
    if dt_tail <= 0:
        return False
    slope = abs(series.center[-1] - series.center[k0]) / dt_tail
    return bool(flat_space and slope < 1e-5 * max(sup0, 1.0))


def run(scenario: Scenario, out_dir=None, quiet: bool = True) -> RunReport:
    """Classify, simulate, diagnose, check invariants, and emit artifacts."""
    t_start = time.perf_counter()
    result = classify(scenario.profile, scenario.n_dim)

    u0 = scenario.initial_field()
    sup0 = float(np.max(u0.values))
    traj = solve(u0, scenario.profile, scenario.solver, scenario.t_end)

    lifts = result.verdict.lifts_off
    use_full_weight = lifts or result.verdict is Verdict.UNDETERMINED
    w = WeightFunction(scenario.profile, positive_part=not use_full_weight)
    series = diagnostics(traj, w, scenario.diag_radius)

    h_pred = h_tail = h_obs = discrepancy = None
    match: bool | None = None
    final_center = float(traj.final.values[0])
    final_sup = float(np.max(traj.final.values))
    if lifts:
        h_pred = predict_liftoff_level(u0, w, scenario.n_dim)
        h_tail = phi_tail_bound(w, scenario.n_dim, scenario.grid.r_max)
        h_obs = final_center
        discrepancy = abs(h_obs - h_pred) / abs(h_pred) if h_pred else None
        match = discrepancy is not None and discrepancy <= LIFTOFF_LEVEL_RTOL
    elif result.verdict.decays:
        match = bool(np.min(series.sup) < DECAY_SUP_FRACTION * sup0)

    flags = _invariant_flags(traj, u0, series, lifts if match is not None else None)
    converged = _convergence_flag(traj, series, sup0)

    report = RunReport(
        name=scenario.name,
        classification=result,
        series=series,
        weight_kind="full" if use_full_weight else "positive_part",
        final_sup=final_sup,
        final_center=final_center,
        h_pred=h_pred,
        h_tail_bound=h_tail,
        h_obs=h_obs,
        discrepancy=discrepancy,
        verdict_behavior_match=match,
        invariants=flags,
        converged=converged,
        resolution={
            "n_dim": scenario.n_dim,
            "r_max": scenario.grid.r_max,
            "num_nodes": scenario.grid.num_nodes,
            "dt": scenario.solver.dt,
            "theta": scenario.solver.theta,
            "advection": scenario.solver.advection,
            "outer_bc": scenario.solver.outer_bc,
            "t_end": scenario.t_end,
            "diag_radius": scenario.diag_radius,
        },
        elapsed_seconds=time.perf_counter() - t_start,
    )

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_frames_csv(out / "frames.csv", traj)
        write_diagnostics_csv(out / "diagnostics.csv", series)
        with open(out / "report.json", "w") as fh:
            json.dump(report.to_dict(), fh, indent=2, default=_jsonable)
            fh.write("\n")
    if not quiet:
        print(
            f"[{scenario.name}] verdict={result.verdict.value} "
            f"final_center={final_center:.6g} final_sup={final_sup:.6g}"
            + (f" h_pred={h_pred:.6g}" if h_pred is not None else "")
        )
    return report


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepRow:
    value: float
    report: RunReport | None = None
    error: str | None = None


@dataclass
class SweepResult:
    parameter: str
    rows: list
    table: str


def _sweep_one(base: Scenario, parameter: str, value, out_dir, quiet) -> SweepRow:
    try:
        scen = apply_parameter(base, parameter, value)
        scen_out = None if out_dir is None else Path(out_dir) / f"{parameter}={value:g}"
        return SweepRow(value=value, report=run(scen, out_dir=scen_out, quiet=quiet))
    except Exception as exc:  # recorded per row; the sweep continues
        return SweepRow(value=value, error=f"{type(exc).__name__}: {exc}")


def _sweep_table(parameter: str, rows) -> str:
    header = f"{parameter:>12}  {'verdict':<20} {'L':>10} {'h_pred':>12} {'h_obs':>12} {'final_sup':>12}  note"
    lines = [header, "-" * len(header)]
    for row in rows:
        if row.error is not None:
            lines.append(f"{row.value:>12g}  {'ERROR':<20} {row.error}")
            continue
        rep = row.report
        L = rep.classification.growth_limit
        lines.append(
            f"{row.value:>12g}  {rep.classification.verdict.value:<20}"
            f" {'-' if L is None else format(L, '>10.4g'):>10}"
            f" {'-' if rep.h_pred is None else format(rep.h_pred, '.6g'):>12}"
            f" {'-' if rep.h_obs is None else format(rep.h_obs, '.6g'):>12}"
            f" {rep.final_sup:>12.6g}"
            f"  match={rep.verdict_behavior_match}"
        )
    return "\n".join(lines)


def sweep(base: Scenario, parameter: str, values, threads: int = 1,
          out_dir=None, quiet: bool = True) -> SweepResult:
    """Independent runs of the base scenario with one parameter swept.

    Row order follows the given values regardless of execution order; a row
    failure is recorded in place and does not abort the remaining runs.
    """
    values = list(values)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_sweep_one, base, parameter, v, out_dir, True) for v in values]
            rows = [f.result() for f in futures]
    else:
        rows = [_sweep_one(base, parameter, v, out_dir, True) for v in values]
    table = _sweep_table(parameter, rows)
    if not quiet:
        print(table)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep_summary.txt").write_text(table + "\n")
    return SweepResult(parameter=parameter, rows=rows, table=table)


# ---------------------------------------------------------------------------
# verification suites


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    comparator: str = "<="
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = (
            f"[{status}] {self.name}: measured {self.measured:.6g} "
            f"{self.comparator} {self.threshold:.6g}"
        )
        return out + (f"  ({self.detail})" if self.detail else "")


@dataclass
class SuiteReport:
    suite: str
    checks: list
    resolution: dict = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "measured": c.measured,
                    "threshold": c.threshold,
                    "comparator": c.comparator,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "resolution": self.resolution,
            "elapsed_seconds": self.elapsed_seconds,
        }


def _check_le(name, measured, threshold, detail="") -> CheckResult:
    return CheckResult(name, bool(measured <= threshold), float(measured), float(threshold),
                       "<=", detail)


def _check_ge(name, measured, threshold, detail="") -> CheckResult:
    return CheckResult(name, bool(measured >= threshold), float(measured), float(threshold),
                       ">=", detail)


def _frame_at(traj: Trajectory, t_target: float) -> RadialField:
    for t, fld in traj:
        if abs(t - t_target) <= 1e-9 * max(1.0, abs(t_target)):
            return fld
    raise KeyError(f"no snapshot at t = {t_target}")


def _linear_oracle_run(t_end: float, stride: int):
    g = GaussianData(sigma=1.0, n_dim=2)
    grid = RadialGrid(r_max=20.0, num_nodes=2001, n_dim=2)
    cfg = SolverConfig(dt=1e-3, theta=0.5, advection="centered",
                       outer_bc="dirichlet_frozen", snapshot_stride=stride)
    traj = solve(g.field(grid), Linear(), cfg, t_end)
    return g, grid, traj


def _supercritical_run():
    profile = PowerLaw(amplitude=3.0, exponent=-1.0, r0=1.0)
    grid = RadialGrid(r_max=40.0, num_nodes=4001, n_dim=2)
    g = GaussianData(sigma=1.0, n_dim=2)
    cfg = SolverConfig(dt=1e-3, theta=0.5, advection="centered",
                       outer_bc="dirichlet_frozen", snapshot_stride=250)
    u0 = g.field(grid)
    traj = solve(u0, profile, cfg, 10.0)
    return profile, grid, u0, traj


def _suite_oracle():
    checks = []
    g, grid, traj = _linear_oracle_run(t_end=3.0, stride=500)
    r = grid.nodes
    mask = r <= 0.8 * grid.r_max
    worst = 0.0
    for t_target in (0.5, 1.0, 2.0, 3.0):
        fld = _frame_at(traj, t_target)
        exact = ou_solution(g, r[mask], t_target)
        worst = max(worst, float(np.max(np.abs(fld.values[mask] - exact))))
    checks.append(_check_le("oracle_equivalence", worst, 1e-3,
                            "max |numeric - exact| over r <= 16, t in {0.5,1,2,3}, sup u0 = 1"))

    grid2 = RadialGrid(r_max=30.0, num_nodes=3001, n_dim=2)
    cfg2 = SolverConfig(dt=1e-3, theta=0.5, advection="centered",
                        outer_bc="dirichlet_frozen", snapshot_stride=100)
    traj2 = solve(GaussianData(1.0, 2).field(grid2), Linear(), cfg2, 1.5)
    rows = mass_growth_check(traj2)
    worst2 = max(abs(mass - pred) / pred for _, mass, pred in rows)
    checks.append(_check_le("mass_growth", worst2, 0.02,
                            "relative error of mass(t) against e^{2t} * mass(0), t in [0, 1.5]"))
    return checks, {"oracle": "r_max=20, 2001 nodes, dt=1e-3, theta=0.5 centered",
                    "mass_growth": "r_max=30, 3001 nodes, dt=1e-3, t_end=1.5"}


def _suite_liftoff():
    checks = []
    g, grid, traj = _linear_oracle_run(t_end=6.0, stride=1000)
    target = liftoff_limit(g)  # 2/3 for sigma=1, n=2
    center = float(traj.final.values[0])
    checks.append(_check_le("liftoff_level", abs(center - target) / target, 0.02,
                            f"|u(0, 6) - {target:.6g}| relative to the exact plateau"))

    profile, sgrid, u0, straj = _supercritical_run()
    w = WeightFunction(profile)
    h_pred = predict_liftoff_level(u0, w, 2)
    center2 = float(straj.final.values[0])
    checks.append(_check_le("liftoff_prediction", abs(center2 - h_pred) / h_pred, 0.02,
                            f"u(0, 10) = {center2:.6g} vs h_pred = {h_pred:.6g} from quadrature"))
    return checks, {"linear": "r_max=20, 2001 nodes, dt=1e-3, t_end=6",
                    "bounded_drift": "A=3, beta=-1, r_max=40, 4001 nodes, dt=1e-3, t_end=10"}


def _suite_conservation():
    profile, grid, u0, traj = _supercritical_run()
    w = WeightFunction(profile)
    series = diagnostics(traj, w, 32.0)
    iw = series.weighted_mass
    drift = float(np.max(np.abs(iw - iw[0])) / abs(iw[0]))
    checks = [_check_le("weighted_mass_conservation", drift, 1e-3,
                        "max relative drift of I_R, R=32, full weight")]
    return checks, {"run": "A=3, beta=-1, r0=1, n=2, r_max=40, 4001 nodes, dt=1e-3, t_end=10"}


def _suite_decay():
    profile = PowerLaw(amplitude=1.0, exponent=-1.0, r0=1.0)
    grid = RadialGrid(r_max=80.0, num_nodes=4001, n_dim=2)
    g = GaussianData(sigma=1.0, n_dim=2)
    cfg = SolverConfig(dt=2e-3, theta=1.0, advection="upwind",
                       outer_bc="dirichlet_frozen", snapshot_stride=1000)
    u0 = g.field(grid)
    traj = solve(u0, profile, cfg, 200.0)
    sups = np.array([float(np.max(f.values)) for _, f in traj])
    sup0 = sups[0]

    checks = [
        _check_le("decay_sup_monotone", float(np.max(np.diff(sups))), 1e-8,
                  "largest framewise increase of sup u"),
        _check_le("decay_sup_small", float(np.min(sups)) / sup0, DECAY_SUP_FRACTION,
                  "min over frames of sup u / sup u0, t <= 200"),
    ]
    w_plus = WeightFunction(profile, positive_part=True)
    series = diagnostics(traj, w_plus, 64.0)
    iw = series.weighted_mass
    rise = float(np.max((iw[1:] - iw[:-1]) / iw[:-1]))
    checks.append(_check_le("decay_weighted_mass_monotone", rise, MONOTONE_MASS_RTOL,
                            "largest framewise relative increase of the psi_+ weighted I_R"))
    return checks, {"run": "A=1, beta=-1, r0=1, n=2, r_max=80, 4001 nodes, dt=2e-3, "
                           "theta=1 upwind, t_end=200"}


def _suite_critical():
    checks = []
    cases = [
        (LogCorrected(n_dim=2, alpha=2.0), 2, Verdict.CRITICAL_LIFT_OFF),
        (LogCorrected(n_dim=2, alpha=1.0), 2, Verdict.CRITICAL_DECAY),
        (LogCorrected(n_dim=2, alpha=0.5), 2, Verdict.CRITICAL_DECAY),
    ]
    hits = sum(classify(p, n).verdict is want for p, n, want in cases)
    checks.append(_check_ge("critical_family", hits, len(cases),
                            "log-corrected verdicts at alpha = 2, 1, 0.5 (n=2)"))

    table = [
        (PowerLaw(3.0, -1.0, 1.0), 2, Verdict.LIFT_OFF),
        (PowerLaw(1.0, 0.0, 1.0), 2, Verdict.LIFT_OFF),
        (PowerLaw(1.0, -1.0, 1.0), 2, Verdict.DECAY),
        (PowerLaw(5.0, -2.0, 1.0), 3, Verdict.DECAY),
    ]
    hits2 = sum(classify(p, n).verdict is want for p, n, want in table)
    checks.append(_check_ge("classifier_table", hits2, len(table),
                            "power-law verdicts: (A=3,b=-1,n=2), (A=1,b=0,n=2) lift off; "
                            "(A=1,b=-1,n=2), (A=5,b=-2,n=3) decay"))
    return checks, {"method": "symbolic growth limits and integrability"}


def _invariant_matrix():
    return [
        ("powerlaw", PowerLaw(3.0, -1.0, 1.0), 2),
        ("logcorrected", LogCorrected(n_dim=2, alpha=2.0), 2),
        ("linear", Linear(), 2),
        ("zero", Zero(), 3),
        ("tabulated", Tabulated([0.0, 2.0, 10.0], [0.0, 2.0, 2.0]), 2),
    ]


def _suite_invariants():
    worst = {"constant": 0.0, "max_principle": 0.0, "monotonicity": 0.0,
             "positivity": 0.0, "linearity": 0.0}
    t_end = 1.0
    for _, profile, n in _invariant_matrix():
        grid = RadialGrid(r_max=10.0, num_nodes=201, n_dim=n)
        r = grid.nodes
        u0 = GaussianData(1.0, n).field(grid)
        v0 = RadialField(grid, np.exp(-((r - 2.0) ** 2)))
        cert = SolverConfig(dt=5e-3, theta=1.0, advection="upwind",
                            outer_bc="dirichlet_frozen", snapshot_stride=20)
        acc = SolverConfig(dt=5e-3, theta=0.5, advection="centered",
                           outer_bc="dirichlet_frozen", snapshot_stride=20)

        for cfg in (cert, acc):
            const = RadialField(grid, np.full(grid.num_nodes, 0.7))
            dev = float(np.max(np.abs(step(const, profile, cfg).values - 0.7))) / 0.7
            worst["constant"] = max(worst["constant"], dev)

        traj = solve(u0, profile, cert, t_end)
        lo, hi = float(np.min(u0.values)), float(np.max(u0.values))
        for t, fld in traj:
            v = fld.values
            worst["max_principle"] = max(worst["max_principle"],
                                         float(max(lo - np.min(v), np.max(v) - hi)) / max(1.0, hi))
            worst["monotonicity"] = max(worst["monotonicity"], float(np.max(np.diff(v))))
            worst["positivity"] = max(worst["positivity"], float(-np.min(v)))
            if t > 0 and v[0] <= 0:
                worst["positivity"] = math.inf

        for cfg in (cert, acc):
            mix0 = RadialField(grid, 2.0 * u0.values + 3.0 * v0.values)
            tm = solve(mix0, profile, cfg, t_end)
            ta = solve(u0, profile, cfg, t_end)
            tb = solve(v0, profile, cfg, t_end)
            for (_, fm), (_, fa), (_, fb) in zip(tm, ta, tb):
                lin = 2.0 * fa.values + 3.0 * fb.values
                scale = float(np.max(np.abs(lin))) or 1.0
                worst["linearity"] = max(worst["linearity"],
                                         float(np.max(np.abs(fm.values - lin))) / scale)

    checks = [
        _check_le("constant_preservation", worst["constant"], 1e-12, "relative, both schemes"),
        _check_le("max_principle", worst["max_principle"], 1e-12,
                  "range excess, theta=1 upwind, 5-profile matrix"),
        _check_le("radial_monotonicity", worst["monotonicity"], 1e-10,
                  "largest positive radial increment"),
        _check_le("positivity", worst["positivity"], 1e-12, "most negative node value"),
        _check_le("linearity", worst["linearity"], 1e-12, "relative framewise, both schemes"),
    ]
    return checks, {"matrix": "5 profile families, r_max=10, 201 nodes, dt=5e-3, t_end=1"}


def _suite_convergence():
    g = GaussianData(sigma=1.0, n_dim=2)
    levels = [(301, 4e-3), (601, 2e-3), (1201, 1e-3)]
    errors = []
    for num_nodes, dt in levels:
        grid = RadialGrid(r_max=12.0, num_nodes=num_nodes, n_dim=2)
        cfg = SolverConfig(dt=dt, theta=0.5, advection="centered",
                           outer_bc="dirichlet_frozen", snapshot_stride=10**9)
        traj = solve(g.field(grid), Linear(), cfg, 1.0)
        r = grid.nodes
        mask = r <= 0.8 * grid.r_max
        exact = ou_solution(g, r[mask], 1.0)
        errors.append(float(np.max(np.abs(traj.final.values[mask] - exact))))
    p1 = math.log2(errors[0] / errors[1])
    p2 = math.log2(errors[1] / errors[2])
    order = 0.5 * math.log2(errors[0] / errors[2])
    detail = (f"errors {errors[0]:.3e} -> {errors[1]:.3e} -> {errors[2]:.3e}, "
              f"pairwise orders {p1:.3f}, {p2:.3f}")
    checks = [_check_ge("convergence_order", order, 1.9, detail)]
    return checks, {"levels": "(301, 4e-3), (601, 2e-3), (1201, 1e-3) on r_max=12, t_end=1"}


_SUITES = {
    "oracle": _suite_oracle,
    "conservation": _suite_conservation,
    "liftoff": _suite_liftoff,
    "decay": _suite_decay,
    "critical": _suite_critical,
    "invariants": _suite_invariants,
    "convergence": _suite_convergence,
}


def suite_names() -> tuple:
    return tuple(sorted(_SUITES))


def verify(suite: str, quiet: bool = True) -> SuiteReport:
    """Run one named verification suite at its reference resolution."""
    if suite not in _SUITES:
        raise ValueError(f"unknown suite {suite!r}; valid suites: {', '.join(suite_names())}")
    t0 = time.perf_counter()
    checks, resolution = _SUITES[suite]()
    report = SuiteReport(suite=suite, checks=checks, resolution=resolution,
                         elapsed_seconds=time.perf_counter() - t0)
    if not quiet:
        for c in checks:
            print(c.line())
        print(f"suite {suite}: {'PASS' if report.passed else 'FAIL'} "
              f"({report.elapsed_seconds:.1f}s)")
    return report
