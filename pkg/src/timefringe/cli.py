"""Command-line entry points: estimate, simulate, scan, fringes.

All data files are CSV with a header row naming columns and units; figures
are self-contained SVG carrying the scenario hash. Exit codes: 0 success,
2 configuration, 3 resolution, 4 domain, 5 I/O.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (ConfigError, DomainError, IoError, NoFringes,
                     ResolutionError, SingularKernel)
from .estimates import compare_estimates, report_to_dict
from .experiments import (IntensityTrace, extract_fringes, two_gate_run,
                          visibility_scan)
from .propagation import SCHRODINGER, STUECKELBERG
from .scenario import Scenario, parse_scenario
from .svgplot import line_chart

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOLUTION = 3
EXIT_DOMAIN = 4
EXIT_IO = 5

_G = "{:.17g}".format


def _scenario_hash(scenario: Scenario) -> str:
    return hashlib.sha256(scenario.to_json().encode()).hexdigest()[:16]


def _load_scenario(args) -> Scenario:
    scenario = (parse_scenario(args.scenario) if args.scenario
                else Scenario())
    if getattr(args, "engine", None):
        scenario = replace(scenario, engine=args.engine)
    if getattr(args, "theory", None):
        scenario = replace(scenario, theory=args.theory)
    return scenario


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_report(out: Path, report: dict) -> None:
    (out / "report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n")


def _write_trace_csv(path: Path, trace: IntensityTrace) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t (internal time)", "intensity (internal, |psi|^2)"])
        for t, i in zip(trace.times, trace.intensity):
            w.writerow([_G(t), _G(i)])


def cmd_estimate(args) -> int:
    scenario = _load_scenario(args)
    t0 = time.perf_counter()
    result = compare_estimates(scenario.physical_setup())
    crude, covariant = result["crude"], result["covariant"]

    rows = [
        ("photon energy (eV)", covariant.inputs_echo["photon_energy_ev"]),
        ("kinetic energy (eV)", covariant.inputs_echo["kinetic_energy_ev"]),
        ("derived cp (eV)", covariant.inputs_echo["cp_ev"]),
        ("quoted cp (eV)", result["quoted_cp_ev"]),
        ("covariant eps*T (s^2)", covariant.epsilon_T_product),
        ("covariant T for eps=T (s)", covariant.equal_spacing_T),
        ("covariant eps*T from quoted cp (s^2)",
         result["covariant_product_from_quoted_cp"]),
        ("crude eps*T (s^2)", crude.epsilon_T_product),
        ("crude T for eps=T (s)", crude.equal_spacing_T),
        ("ratio crude/covariant", result["ratio"]),
    ]
    width = max(len(r[0]) for r in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value:.6g}")

    out = _out_dir(args)
    with open(out / "estimate.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["quantity (units in name)", "value"])
        for name, value in rows:
            w.writerow([name, _G(value)])
    _write_report(out, {
        "command": "estimate",
        "scenario": scenario.to_dict(),
        "scenario_hash": _scenario_hash(scenario),
        "crude": report_to_dict(crude),
        "covariant": report_to_dict(covariant),
        "ratio": result["ratio"],
        "quoted_cp_ev": result["quoted_cp_ev"],
        "covariant_product_from_quoted_cp": result["covariant_product_from_quoted_cp"],
        "wall_time_s": time.perf_counter() - t0,
    })
    return EXIT_OK


def cmd_simulate(args) -> int:
    scenario = _load_scenario(args)
    cfg = scenario.two_gate_config()
    t0 = time.perf_counter()
    outcome = two_gate_run(scenario.theory, cfg)

    fringes = None
    fringe_error = None
    try:
        fringes = extract_fringes(outcome.trace,
                                  scenario.analysis["threshold_fraction"],
                                  outcome.predicted_spacing)
    except NoFringes as exc:
        fringe_error = str(exc)
        if scenario.theory == STUECKELBERG:
            print(f"error: expected fringes but found none: {exc}",
                  file=sys.stderr)
            return EXIT_DOMAIN

    out = _out_dir(args)
    _write_trace_csv(out / "trace.csv", outcome.trace)
    shash = _scenario_hash(scenario)
    line_chart(out / "trace.svg", outcome.trace.times,
               outcome.trace.intensity,
               peaks=fringes.peak_times if fringes else None,
               title=f"{scenario.theory} two-gate intensity at detector",
               xlabel="t (internal time)", ylabel="intensity",
               meta=f"scenario-sha256:{shash}")
    report = {
        "command": "simulate",
        "scenario": scenario.to_dict(),
        "scenario_hash": shash,
        "theory": scenario.theory,
        "engine": scenario.engine,
        "s_elapsed": outcome.s_elapsed,
        "interference_visibility": outcome.interference_visibility,
        "norm_drift": outcome.norm_drift,
        "predicted_spacing_T": outcome.predicted_spacing,
        "fringes": None if fringes is None else {
            "peak_times": fringes.peak_times,
            "spacing_T": fringes.spacing_T,
            "visibility": fringes.visibility,
            "relative_error": fringes.relative_error,
        },
        "no_fringes": fringe_error,
        "no_fringes_expected": scenario.theory == SCHRODINGER,
        "wall_time_s": time.perf_counter() - t0,
    }
    _write_report(out, report)
    vis = outcome.interference_visibility
    spacing = fringes.spacing_T if fringes else None
    print(f"theory={scenario.theory} visibility={vis:.6g} "
          f"spacing_T={'n/a' if spacing is None else f'{spacing:.6g}'} "
          f"norm_drift={outcome.norm_drift:.3g}")
    return EXIT_OK


def cmd_scan(args) -> int:
    scenario = _load_scenario(args)
    cfg = scenario.two_gate_config()
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"--values must be comma-separated numbers: {exc}")
    if len(values) < 2:
        raise ConfigError("--values needs at least 2 entries")
    t0 = time.perf_counter()

    if args.param == "gate_spacing":
        rows = visibility_scan(scenario.theory, cfg, values,
                               scenario.analysis["threshold_fraction"],
                               workers=args.workers)
        param_header = "gate_spacing epsilon (internal time)"
        params = values
    elif args.param == "flight_distance":
        rows = []
        for L in values:
            sub = visibility_scan(scenario.theory,
                                  replace(cfg, flight_distance=L),
                                  [cfg.gate_spacing, cfg.gate_spacing],
                                  scenario.analysis["threshold_fraction"],
                                  workers=1)
            rows.append(sub[0])
        param_header = "flight_distance L (internal length)"
        params = values
    else:
        raise ConfigError("--param must be gate_spacing or flight_distance")

    out = _out_dir(args)
    with open(out / "scan.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([param_header, "interference visibility (dimensionless)",
                    "spacing_T (internal time)", "error"])
        for p, row in zip(params, rows):
            w.writerow([_G(p), _G(row.visibility),
                        "" if row.spacing_T is None else _G(row.spacing_T),
                        row.error or ""])
    _write_report(out, {
        "command": "scan",
        "scenario": scenario.to_dict(),
        "scenario_hash": _scenario_hash(scenario),
        "param": args.param,
        "values": params,
        "rows": [{"param": p, "visibility": r.visibility,
                  "spacing_T": r.spacing_T, "error": r.error}
                 for p, r in zip(params, rows)],
        "wall_time_s": time.perf_counter() - t0,
    })
    for p, row in zip(params, rows):
        spacing = "n/a" if row.spacing_T is None else f"{row.spacing_T:.6g}"
        print(f"{args.param}={p:g} visibility={row.visibility:.6g} "
              f"spacing_T={spacing}" + (f" error={row.error}" if row.error else ""))
    return EXIT_OK


def cmd_fringes(args) -> int:
    path = Path(args.trace)
    if not path.exists():
        raise IoError(f"trace file not found: {path}")
    times, intensity = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ConfigError("trace CSV is empty")
        for row in reader:
            times.append(float(row[0]))
            intensity.append(float(row[1]))
    trace = IntensityTrace(times=np.asarray(times),
                           intensity=np.asarray(intensity),
                           detector_x=float("nan"), theory="reanalysis")
    out = _out_dir(args)
    try:
        fr = extract_fringes(trace, args.threshold)
    except NoFringes as exc:
        _write_report(out, {"command": "fringes", "trace": str(path),
                            "no_fringes": str(exc)})
        print(f"no fringes: {exc}")
        return EXIT_OK
    _write_report(out, {
        "command": "fringes",
        "trace": str(path),
        "peak_times": fr.peak_times,
        "spacing_T": fr.spacing_T,
        "visibility": fr.visibility,
    })
    line_chart(out / "fringes.svg", trace.times, trace.intensity,
               peaks=fr.peak_times, title="re-analyzed trace",
               xlabel="t (internal time)", ylabel="intensity",
               meta=f"trace:{path.name}")
    print(f"peaks={len(fr.peak_times)} spacing_T={fr.spacing_T:.6g} "
          f"visibility={fr.visibility:.6g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timefringe",
        description="Matter-wave interference-in-time simulator and "
                    "estimate toolkit.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario JSON file "
                        "(defaults to the built-in desk-scale scenario)")
    common.add_argument("--out", default="out", help="output directory")

    p_est = sub.add_parser("estimate", parents=[common],
                           help="closed-form eps*T prediction chain")
    p_est.set_defaults(func=cmd_estimate)

    p_sim = sub.add_parser("simulate", parents=[common],
                           help="run the two-gate experiment")
    p_sim.add_argument("--engine", choices=["closed_form", "quadrature"])
    p_sim.add_argument("--theory", choices=["schrodinger_control", "floquet",
                                            "stueckelberg"])
    p_sim.set_defaults(func=cmd_simulate)

    p_scan = sub.add_parser("scan", parents=[common],
                            help="scan a parameter and tabulate fringes")
    p_scan.add_argument("--param", required=True,
                        choices=["gate_spacing", "flight_distance"])
    p_scan.add_argument("--values", required=True,
                        help="comma-separated values")
    p_scan.add_argument("--workers", type=int, default=1)
    p_scan.add_argument("--engine", choices=["closed_form", "quadrature"])
    p_scan.add_argument("--theory", choices=["schrodinger_control", "floquet",
                                             "stueckelberg"])
    p_scan.set_defaults(func=cmd_scan)

    p_fr = sub.add_parser("fringes", help="re-analyze an existing CSV trace")
    p_fr.add_argument("--trace", required=True, help="trace CSV path")
    p_fr.add_argument("--threshold", type=float, default=0.1)
    p_fr.add_argument("--out", default="out")
    p_fr.set_defaults(func=cmd_fringes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResolutionError as exc:
        print(f"resolution error: {exc}", file=sys.stderr)
        return EXIT_RESOLUTION
    except (DomainError, SingularKernel, NoFringes) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (IoError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
