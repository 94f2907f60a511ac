"""
Quasi-Herglotz approximation pipeline (command line)

    python approx_pipeline.py solve  --preset passive_5_1
    python approx_pipeline.py sweep  --preset nonpassive_5_2 --axis B --values 0.02:0.056:10
    python approx_pipeline.py verify --preset sumrule_5_4 --rep outputs/sumrule_5_4/rep.json
    python approx_pipeline.py history
    python approx_pipeline.py show-config
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime

import numpy as np
from colorama import Fore, Style, init as colorama_init

import config
import run_history
from approx import (
    assemble,
    residuals_frame,
    solve_approximation,
    summarize,
    sweep,
    sweep_frame,
    weighted_norm,
)
from errors import (
    DivergentMomentError,
    InvalidArgumentError,
    SchemaError,
    SolverFailedError,
    UnavailableExpansionError,
)
from presets import PRESETS, SWEEP_DEFAULTS, get_preset
from representation import load_rep, save_rep
from scenario_io import load_scenario, save_scenario, scenario_from_dict
from sum_rules import sum_rule_integral, verify_sum_rule

EXIT_OK = 0
EXIT_SOLVER = 1
EXIT_CONFIG = 2

SUM_RULE_TOL = 1e-6
IDENTITY_POWERS = (-2, 0, 2)


@dataclass
class RunConfig:
    command: str
    preset: str = None
    scenario_path: str = None
    output_dir: str = None
    tol: float = None
    max_iter: int = None
    solver: str = None
    axis: str = None
    values: str = None
    rep_path: str = None
    plot: bool = False
    record: bool = True

    def __post_init__(self):
        if self.command in ("solve", "sweep", "verify"):
            if (self.preset is None) == (self.scenario_path is None):
                raise InvalidArgumentError("give exactly one of --preset or --scenario")
            if self.preset is not None and self.preset not in PRESETS:
                raise InvalidArgumentError(
                    f"unknown preset {self.preset!r}; available: {', '.join(PRESETS)}"
                )


def parse_values(text):
    """'lo:hi:n' -> n evenly spaced values; 'a,b,c' -> the listed values."""
    try:
        if ":" in text:
            lo, hi, n = text.split(":")
            return list(np.linspace(float(lo), float(hi), int(n)))
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise InvalidArgumentError(f"cannot parse sweep values {text!r}: {e}") from e


def load_scenario_step(run):
    """Load the scenario from a preset or a scenario file"""
    try:
        if run.preset:
            scenario = scenario_from_dict(get_preset(run.preset))
            print(f"📋 Preset: {run.preset}")
        else:
            scenario = load_scenario(run.scenario_path)
            print(f"📋 Scenario file: {run.scenario_path}")
        basis = scenario.basis_spec
        print(f"   Ω = {list(scenario.omega)}, norm = {scenario.norm_p}, "
              f"splines = {basis.count if basis else 0}, masses = {len(scenario.mass_locations)}")
        return scenario
    except (SchemaError, InvalidArgumentError) as e:
        print(f"❌ Scenario error: {e}")
        return None


def output_directory(run, label):
    if run.output_dir:
        path = run.output_dir
    else:
        stamp = datetime.now().strftime(config.RESULT_TIME_FORMAT)
        path = os.path.join(config.OUTPUT_DIR, f"{label}_{stamp}")
    os.makedirs(path, exist_ok=True)
    return path


def constraint_residuals(rep, scenario):
    """|int x^k d beta - rhs| for every sum-rule row of the scenario."""
    return {
        str(row.power): abs(sum_rule_integral(rep, row.power) - row.rhs)
        for row in scenario.sum_rule_rows
    }


def identity_residuals(rep):
    out = {}
    for k in IDENTITY_POWERS:
        try:
            out[str(k)] = verify_sum_rule(rep, k)
        except (DivergentMomentError, UnavailableExpansionError):
            out[str(k)] = None
    return out


def save_solve_outputs(result, out_dir):
    """Write rep JSON, residual CSV, scenario copy and summary JSON"""
    try:
        summary = summarize(result)
        summary["timestamp"] = datetime.now().isoformat()
        summary["sum_rule_residuals"] = constraint_residuals(result.rep, result.scenario)

        rep_path = save_rep(result.rep, os.path.join(out_dir, "rep.json"))
        residual_path = os.path.join(out_dir, "residuals.csv")
        residuals_frame(result).to_csv(residual_path, index=False)
        save_scenario(result.scenario, os.path.join(out_dir, "scenario.json"))
        summary_path = os.path.join(out_dir, "summary.json")
        with open(summary_path, "w") as f:
            json.dump(summary, f, indent=2, default=str)

        print(f"💾 Representation: {rep_path}")
        print(f"💾 Residuals: {residual_path}")
        print(f"💾 Summary: {summary_path}")
        return summary
    except Exception as e:
        print(f"❌ Error saving outputs: {e}")
        return None


def print_summary(summary):
    print("\n📊 Summary:")
    print(f"   📉 Error: {summary['error']:.6g}")
    if summary.get("bound") is not None:
        print(f"   📏 Passive bound Δ: {summary['bound']:.6g}")
    print(f"   b = {summary['b']:.6g}")
    for m in summary["masses"]:
        shown = m.get("display_amplitude")
        extra = f" (reported {shown:.4g})" if shown is not None else ""
        print(f"   mass at {m['location']:.6g}: {m['amplitude']:.6g}{extra}")
    for k, value in summary.get("sum_rule_residuals", {}).items():
        print(f"   sum rule k={k}: residual {value:.3g}")


def record(run, summary, command):
    if not run.record:
        return
    try:
        run_history.save_run({**summary, "command": command})
    except Exception as e:
        print(f"⚠️  Could not record run history: {e}")


def run_solve(run):
    scenario = load_scenario_step(run)
    if scenario is None:
        return EXIT_CONFIG

    print("🚀 Solving...")
    try:
        result = solve_approximation(
            scenario, tol_rel=run.tol, max_iter=run.max_iter, solver=run.solver, verbose=True
        )
    except SolverFailedError as e:
        print(f"❌ {e}")
        record(run, {"label": scenario.label, "status": e.status or "failed"}, "solve")
        return EXIT_SOLVER
    except (InvalidArgumentError, ValueError) as e:
        print(f"❌ Assembly error: {e}")
        return EXIT_CONFIG

    out_dir = output_directory(run, scenario.label)
    summary = save_solve_outputs(result, out_dir)
    if summary is None:
        return EXIT_SOLVER
    print_summary(summary)
    record(run, summary, "solve")

    if run.plot or config.SAVE_PLOTS:
        from plots import plot_permittivity
        path = plot_permittivity(result, out_dir, bound=summary.get("bound"))
        print(f"📈 Plot: {path}")
    return EXIT_OK


def run_sweep(run):
    scenario = load_scenario_step(run)
    if scenario is None:
        return EXIT_CONFIG

    default = SWEEP_DEFAULTS.get(run.preset)
    axis = run.axis or (default[0] if default else None)
    if axis is None:
        print("❌ --axis is required for scenario files")
        return EXIT_CONFIG
    try:
        if run.values:
            values = parse_values(run.values)
        elif default and default[0] == axis:
            values = list(np.linspace(default[1], default[2], default[3]))
        else:
            print("❌ --values is required for this axis")
            return EXIT_CONFIG
    except InvalidArgumentError as e:
        print(f"❌ {e}")
        return EXIT_CONFIG

    print(f"🚀 Sweeping {axis} over {len(values)} values...")
    try:
        points = sweep(scenario, axis, values, tol_rel=run.tol, max_iter=run.max_iter,
                       solver=run.solver)
    except InvalidArgumentError as e:
        print(f"❌ {e}")
        return EXIT_CONFIG

    frame = sweep_frame(points)
    out_dir = output_directory(run, f"{scenario.label}_sweep_{axis}")
    csv_path = os.path.join(out_dir, "sweep.csv")
    frame.to_csv(csv_path, index=False)
    print(f"💾 Sweep table: {csv_path}")
    for point in points:
        mark = "✅" if point.status == "optimal" else "❌"
        print(f"   {mark} {axis}={point.value:.6g}: error={point.error:.6g} {point.message}")
        if point.summary:
            record(run, {**point.summary, "label": f"{scenario.label}[{axis}={point.value:.6g}]"},
                   "sweep")

    if run.plot or config.SAVE_PLOTS:
        from plots import plot_sweep
        print(f"📈 Plot: {plot_sweep(frame, axis, scenario.label, out_dir)}")

    failed = [p for p in points if p.status != "optimal"]
    if failed:
        print(f"⚠️  {len(failed)} of {len(points)} sweep points failed")
    return EXIT_OK if not failed else EXIT_SOLVER


def run_verify(run):
    scenario = load_scenario_step(run)
    if scenario is None:
        return EXIT_CONFIG

    if run.rep_path:
        try:
            rep = load_rep(run.rep_path)
            print(f"📥 Representation: {run.rep_path}")
        except SchemaError as e:
            print(f"❌ Representation error: {e}")
            return EXIT_CONFIG
    else:
        print("🚀 No stored representation given; solving first...")
        try:
            rep = solve_approximation(scenario, tol_rel=run.tol, max_iter=run.max_iter,
                                      solver=run.solver).rep
        except SolverFailedError as e:
            print(f"❌ {e}")
            return EXIT_SOLVER

    try:
        assembly = assemble(scenario)
        q = np.asarray(
            assembly.design @ rep.parameter_vector(), dtype=complex
        )
    except ValueError as e:
        print(f"❌ Representation does not fit the scenario: {e}")
        return EXIT_CONFIG
    residual = assembly.weight_values * (q - assembly.target_values)
    error = weighted_norm(residual, assembly.quad_weights, scenario.norm_p)

    constraints = constraint_residuals(rep, scenario)
    identities = identity_residuals(rep)
    report = {
        "label": scenario.label,
        "error": error,
        "sum_rule_residuals": constraints,
        "identity_residuals": identities,
    }

    recorded = None
    if run.rep_path:
        summary_path = os.path.join(os.path.dirname(run.rep_path), "summary.json")
        if os.path.exists(summary_path):
            with open(summary_path) as f:
                recorded = json.load(f).get("error")
            report["recorded_error"] = recorded

    print("\n📊 Verification:")
    print(f"   📉 Error on the scenario grid: {error:.6g}")
    if recorded is not None:
        print(f"   📉 Recorded error: {recorded:.6g} (difference {abs(error - recorded):.3g})")
    for k, value in constraints.items():
        mark = "✅" if value <= SUM_RULE_TOL else "❌"
        print(f"   {mark} sum-rule row k={k}: residual {value:.3g}")
    for k, value in identities.items():
        shown = "n/a" if value is None else f"{value:.3g}"
        print(f"   identity k={k}: residual {shown}")

    out_dir = output_directory(run, f"{scenario.label}_verify")
    with open(os.path.join(out_dir, "verify.json"), "w") as f:
        json.dump(report, f, indent=2, default=str)

    ok = all(v <= SUM_RULE_TOL for v in constraints.values())
    return EXIT_OK if ok else EXIT_SOLVER


def run_history_command(args):
    df = run_history.get_run_history(scenario=args.scenario_label, limit=args.limit)
    if len(df) == 0:
        print("⚠️  No runs recorded yet")
        return EXIT_OK
    print(df[["id", "timestamp", "command", "scenario", "norm", "error", "bound", "status"]]
          .to_string(index=False))
    return EXIT_OK


def run_show_config():
    try:
        config.validate_config()
    except ValueError as e:
        print(f"\n❌ Configuration Error: {e}\n")
        return EXIT_CONFIG
    config.print_config_summary()
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(description="Quasi-Herglotz approximation with sign and sum-rule constraints")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_args(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--preset", choices=sorted(PRESETS), help="Built-in scenario")
        group.add_argument("--scenario", dest="scenario_path", help="Scenario JSON file")
        p.add_argument("--out", dest="output_dir", help="Output directory")
        p.add_argument("--tol", type=float, help="Solver relative tolerance")
        p.add_argument("--max-iter", dest="max_iter", type=int, help="Solver iteration budget")
        p.add_argument("--solver", choices=config.SUPPORTED_SOLVERS, help="Cone solver")
        p.add_argument("--no-record", dest="record", action="store_false",
                       help="Do not write the run history")

    solve_p = sub.add_parser("solve", help="Solve one scenario")
    scenario_args(solve_p)
    solve_p.add_argument("--plot", action="store_true", help="Save permittivity plots")

    sweep_p = sub.add_parser("sweep", help="Solve a scenario over a parameter axis")
    scenario_args(sweep_p)
    sweep_p.add_argument("--axis", choices=["B", "x_u", "eps_s"], help="Sweep axis")
    sweep_p.add_argument("--values", help="lo:hi:n or a comma-separated list")
    sweep_p.add_argument("--plot", action="store_true", help="Save the error curve")

    verify_p = sub.add_parser("verify", help="Check sum rules and error of a representation")
    scenario_args(verify_p)
    verify_p.add_argument("--rep", dest="rep_path", help="Stored representation JSON")

    history_p = sub.add_parser("history", help="Show recorded runs")
    history_p.add_argument("--scenario", dest="scenario_label", help="Filter by scenario label")
    history_p.add_argument("--limit", type=int, default=20)

    sub.add_parser("show-config", help="Validate and print the configuration")
    return parser


def main(argv=None):
    """Main pipeline entry point; returns the process exit status"""
    colorama_init(autoreset=True)
    args = build_parser().parse_args(argv)

    print(f"🚀 Quasi-Herglotz approximation: {args.command}")
    print("="*60)

    if args.command == "history":
        return run_history_command(args)
    if args.command == "show-config":
        return run_show_config()

    try:
        run = RunConfig(
            command=args.command,
            preset=args.preset,
            scenario_path=args.scenario_path,
            output_dir=args.output_dir,
            tol=args.tol,
            max_iter=args.max_iter,
            solver=args.solver,
            axis=getattr(args, "axis", None),
            values=getattr(args, "values", None),
            rep_path=getattr(args, "rep_path", None),
            plot=getattr(args, "plot", False),
            record=args.record,
        )
    except InvalidArgumentError as e:
        print(f"❌ {e}")
        return EXIT_CONFIG

    handler = {"solve": run_solve, "sweep": run_sweep, "verify": run_verify}[run.command]
    status = handler(run)

    print("="*60)
    if status == EXIT_OK:
        print(Fore.GREEN + Style.BRIGHT + f"🎉 {run.command} completed successfully!")
    else:
        print(Fore.RED + Style.BRIGHT + f"❌ {run.command} finished with exit status {status}")
    return status


if __name__ == "__main__":
    sys.exit(main())
