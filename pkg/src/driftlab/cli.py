"""Command-line front end: simulate, classify, sweep, verify."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import lab
from .scenario import ScenarioError, parse_scenario
from .weights import classify


def _load_scenario(path: str):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read config {path!r}: {exc}") from exc
    return parse_scenario(text, name=p.stem)


def _cmd_simulate(args) -> int:
    scenario = _load_scenario(args.config)
    out = Path(args.out) / scenario.name if args.out else None
    report = lab.run(scenario, out_dir=out, quiet=args.quiet)
    if not args.quiet and out is not None:
        print(f"wrote frames.csv, diagnostics.csv, report.json under {out}")
    return 0


def _cmd_classify(args) -> int:
    scenario = _load_scenario(args.config)
    result = classify(scenario.profile, scenario.n_dim)
    payload = {
        "name": scenario.name,
        "verdict": result.verdict.value,
        "growth_limit": result.growth_limit,
        "growth_bounds": result.growth_bounds,
        "phi_mass": result.phi_mass,
        "note": result.note,
    }
    if not args.quiet:
        L = result.growth_limit
        print(f"verdict: {result.verdict.value}")
        print(f"growth limit: {'n/a' if L is None else L}")
        print(f"weight mass: {'n/a' if result.phi_mass is None else result.phi_mass}")
        print(f"note: {result.note}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / f"{scenario.name}_classification.json", "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def _parse_values(parameter: str, raw: str):
    vals = []
    for tok in raw.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            vals.append(int(tok) if parameter in ("n_dim", "num_nodes") else float(tok))
        except ValueError:
            raise ScenarioError(f"--values: expected a number, got {tok!r}") from None
    if not vals:
        raise ScenarioError("--values: empty list")
    return vals


def _cmd_sweep(args) -> int:
    scenario = _load_scenario(args.config)
    values = _parse_values(args.param, args.values)
    result = lab.sweep(scenario, args.param, values, threads=args.threads,
                       out_dir=args.out, quiet=True)
    if not args.quiet:
        print(result.table)
    failed = sum(1 for row in result.rows if row.error is not None)
    return 1 if failed == len(result.rows) else 0


def _cmd_verify(args) -> int:
    report = lab.verify(args.suite, quiet=args.quiet)
    if args.quiet:
        # still emit the single-line summary so scripts can grep it
        print(f"suite {report.suite}: {'PASS' if report.passed else 'FAIL'}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / f"verify_{report.suite}.json", "w") as fh:
            json.dump(report.to_dict(), fh, indent=2, default=_json_default)
            fh.write("\n")
    return 0 if report.passed else 1


def _json_default(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return str(x)


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, metavar="DIR",
                        help="directory for output artifacts (default: no files)")
    common.add_argument("--quiet", action="store_true", help="suppress progress output")
    common.add_argument("--threads", type=int, default=1, metavar="K",
                        help="worker threads for sweeps (default 1)")

    parser = argparse.ArgumentParser(
        prog="driftlab",
        description="Radial advection-diffusion laboratory: simulate drift scenarios, "
                    "classify their long-time behavior, and verify the solver.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", parents=[common],
                           help="run one scenario and write frames/diagnostics/report")
    p_sim.add_argument("config", help="scenario config file")

    p_cls = sub.add_parser("classify", parents=[common],
                           help="classify the scenario's drift profile without simulating")
    p_cls.add_argument("config", help="scenario config file")

    p_swp = sub.add_parser("sweep", parents=[common],
                           help="repeat a scenario over a list of parameter values")
    p_swp.add_argument("config", help="scenario config file")
    p_swp.add_argument("--param", required=True,
                       choices=["A", "beta", "alpha", "sigma", "n_dim", "r_max", "num_nodes", "dt"])
    p_swp.add_argument("--values", required=True, metavar="CSV",
                       help="comma-separated parameter values")

    p_ver = sub.add_parser("verify", parents=[common],
                           help="run a named verification suite at reference resolution")
    p_ver.add_argument("suite", help=f"one of: {', '.join(lab.suite_names())}")

    args = parser.parse_args(argv)
    handlers = {
        "simulate": _cmd_simulate,
        "classify": _cmd_classify,
        "sweep": _cmd_sweep,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
