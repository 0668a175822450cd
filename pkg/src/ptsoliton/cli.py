"""Command-line front end.

Subcommands: validate, spectrum, sweep, propagate, band, figures.
Exit codes: 0 success, 2 configuration problems, 3 numerical failures.
"""
import argparse
import os
import sys

import numpy as np

from . import output
from .config import RunConfig
from .errors import ConfigError, ConfigurationError, NumericalError
from .model import evaluate_solution, power_flow, stationary_residual
from .presets import preset, preset_names
from .propagate import measure_growth, perturbed, split_step
from .spectra import (classify, compute_spectrum, continuous_band,
                      separate_discrete, stability_report)
from .sweep import detect_bifurcation, refine_event, run_sweep


def _parse_grid(text: str):
    try:
        n_str, l_str = text.split(",")
        return int(n_str), float(l_str)
    except ValueError:
        raise ConfigError(f"--grid expects N,L (got '{text}')") from None


def _load_config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    cfg.apply_overrides(args.set or [])
    if args.grid:
        n, half_width = _parse_grid(args.grid)
        cfg.data["grid"]["n"] = n
        cfg.data["grid"]["half_width"] = half_width
    if args.seed is not None:
        cfg.data["seed"] = args.seed
    if args.no_plots:
        cfg.data["output"]["plots"] = False
    if args.out:
        cfg.data["output"]["directory"] = args.out
    return cfg


def _out_dir(cfg) -> str:
    return output.resolve_out_dir(cfg.data["output"]["directory"])


def _spectrum_artifacts(out_dir, prefix, cfg, spec, sol, grid, tols, write_manifest=True):
    """Shared by `spectrum` and the figure presets: CSV, report, plot."""
    from .linearize import build_operators

    op = build_operators(spec, sol, grid)
    spectrum = compute_spectrum(op.block, grid)
    band = continuous_band(spec, sol)
    discrete, continuous, spurious = separate_discrete(spectrum, band, grid, tols)
    counts = {"discrete": len(discrete), "continuous": len(continuous),
              "spurious": len(spurious)}
    report = classify(discrete, band, spectrum.scale, tols, counts=counts)

    labeled = ([(p, "discrete") for p in discrete]
               + [(p, "continuous") for p in continuous]
               + [(p, "spurious") for p in spurious])
    output.write_spectrum_csv(os.path.join(out_dir, f"{prefix}spectrum.csv"), labeled)
    output.write_report(os.path.join(out_dir, f"{prefix}report.txt"), report, tols)
    if cfg.data["output"]["plots"]:
        buckets = {"continuous": continuous, "discrete": discrete,
                   "spurious": spurious}
        output.plot_spectrum(os.path.join(out_dir, f"{prefix}spectrum.svg"),
                             buckets, band, title=prefix.rstrip("-_"))
    if write_manifest:
        output.write_manifest(out_dir, "spectrum", cfg,
                              extra={"verdict": report.verdict})
    return report


def cmd_validate(args) -> int:
    cfg = _load_config(args)
    spec, sol = cfg.resolve()
    grid = cfg.grid()
    field = evaluate_solution(sol, grid)
    residual = stationary_residual(field, spec, sol.lam, grid)
    flow = power_flow(field, grid)
    print(f"family: {spec.family.value}")
    print(f"phi0: {sol.phi0:.12g}  mu: {sol.mu:.12g}  lambda: {sol.lam:.12g}")
    print(f"stationary_residual: {residual:.6e} (sup over middle 80%)")
    print(f"power_flow: max |S| = {float(np.max(np.abs(flow))):.6e}")
    return 0


def cmd_spectrum(args) -> int:
    cfg = _load_config(args)
    spec, sol = cfg.resolve()
    grid, tols = cfg.grid(), cfg.tolerances()
    out_dir = _out_dir(cfg)
    report = _spectrum_artifacts(out_dir, "", cfg, spec, sol, grid, tols)
    print(f"verdict: {report.verdict}")
    print(f"max_growth: {report.max_growth:.6e}")
    print(f"modes: {report.counts}")
    print(f"artifacts: {out_dir}")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    grid, tols = cfg.grid(), cfg.tolerances()
    sw = cfg.data["sweep"]
    values = np.linspace(float(sw["start"]), float(sw["stop"]), int(sw["steps"]))
    result = run_sweep(cfg.family, cfg.knowns(), sw["parameter"], values,
                       grid, tols, workers=int(sw["workers"]))
    events = detect_bifurcation(result, collision_tol=float(sw["collision_tol"]),
                                tols=tols)
    if sw["refine"] and events:
        events = [refine_event(cfg.family, cfg.knowns(), sw["parameter"], ev,
                               grid, tols, workers=int(sw["workers"]))
                  for ev in events]
    out_dir = _out_dir(cfg)
    output.write_sweep_csv(os.path.join(out_dir, "sweep.csv"), result)
    output.write_events_json(os.path.join(out_dir, "events.json"), events,
                             sw["parameter"])
    if cfg.data["output"]["plots"]:
        output.plot_sweep(os.path.join(out_dir, "sweep.svg"), result)
    output.write_manifest(out_dir, "sweep", cfg,
                          extra={"n_events": len(events),
                                 "n_failures": len(result.failures)})
    print(f"points: {len(values)}  failures: {len(result.failures)}")
    for ev in events:
        print(f"event: {ev.colliding_axis}->real/imag collision in "
              f"({ev.param_low:.6g}, {ev.param_high:.6g})")
    if not events:
        print("events: none")
    print(f"artifacts: {out_dir}")
    return 0


def cmd_propagate(args) -> int:
    cfg = _load_config(args)
    spec, sol = cfg.resolve()
    grid = cfg.grid()
    prop = cfg.data["propagation"]
    field = evaluate_solution(sol, grid)
    initial = perturbed(field, float(prop["noise_amplitude"]), int(cfg.data["seed"]))
    record = split_step(initial, spec, grid, float(prop["z_end"]),
                        float(prop["dz"]), int(prop["sample_every"]))
    growth = measure_growth(record, field)
    out_dir = _out_dir(cfg)
    output.write_propagation_csv(os.path.join(out_dir, "propagation.csv"), record)
    if cfg.data["output"]["plots"]:
        output.plot_propagation(os.path.join(out_dir, "propagation.svg"), record)
    output.write_manifest(out_dir, "propagate", cfg,
                          extra={"measured_growth": growth})
    print(f"measured_growth: {growth:.6e}")
    print(f"final_peak: {record.peak_amplitude[-1]:.6e}")
    print(f"artifacts: {out_dir}")
    return 0


def cmd_band(args) -> int:
    cfg = _load_config(args)
    spec, sol = cfg.resolve()
    band = continuous_band(spec, sol)
    lo, hi = band.edges
    print(f"band locus: Re eta = +-{band.re_offset:.12g}, "
          f"|Im eta| >= {band.im_min:.12g}")
    print(f"edges: {lo.real:+.12g}{lo.imag:+.12g}i, {hi.real:+.12g}{hi.imag:+.12g}i")
    return 0


def cmd_figures(args) -> int:
    ps = preset(args.preset)
    base_out = output.resolve_out_dir(args.out or None)
    for label, cfg in ps.runs:
        if args.no_plots:
            cfg.data["output"]["plots"] = False
        if args.seed is not None:
            cfg.data["seed"] = args.seed
        run_dir = os.path.join(base_out, ps.name)
        os.makedirs(run_dir, exist_ok=True)
        grid, tols = cfg.grid(), cfg.tolerances()
        if ps.kind == "sweep":
            sw = cfg.data["sweep"]
            values = np.linspace(float(sw["start"]), float(sw["stop"]),
                                 int(sw["steps"]))
            result = run_sweep(cfg.family, cfg.knowns(), sw["parameter"],
                               values, grid, tols)
            events = detect_bifurcation(result, tols=tols)
            output.write_sweep_csv(os.path.join(run_dir, f"{label}-sweep.csv"),
                                   result)
            output.write_events_json(os.path.join(run_dir, f"{label}-events.json"),
                                     events, sw["parameter"])
            if cfg.data["output"]["plots"]:
                output.plot_sweep(os.path.join(run_dir, f"{label}-sweep.svg"),
                                  result)
            for value in ps.panel_values:
                knowns = dict(cfg.knowns())
                knowns[sw["parameter"]] = value
                from .model import solve_constraints
                spec, sol = solve_constraints(cfg.family, **knowns)
                _spectrum_artifacts(run_dir, f"{label}-{value:g}-", cfg, spec,
                                    sol, grid, tols, write_manifest=False)
            output.write_manifest(run_dir, f"figures:{ps.name}", cfg,
                                  extra={"n_events": len(events)})
            print(f"{ps.name}/{label}: sweep of {len(values)} points, "
                  f"{len(events)} event(s)")
        else:
            spec, sol = cfg.resolve()
            report = _spectrum_artifacts(run_dir, f"{label}-", cfg, spec, sol,
                                         grid, tols, write_manifest=False)
            output.write_manifest(run_dir, f"figures:{ps.name}", cfg,
                                  extra={"verdict": report.verdict})
            print(f"{ps.name}/{label}: {report.verdict}")
    print(f"artifacts: {base_out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptsol",
        description="Closed-form solitons in complex potentials with competing "
                    "nonlinearities: construction, spectra, sweeps, propagation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="YAML run configuration")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="dotted-path config override (repeatable)")
        p.add_argument("--grid", metavar="N,L",
                       help="grid override: points N and half-width L")
        p.add_argument("--out", help="output directory")
        p.add_argument("--seed", type=int, help="RNG seed override")
        p.add_argument("--no-plots", action="store_true",
                       help="skip SVG rendering")

    for name, fn, blurb in [
            ("validate", cmd_validate, "solve constraints and check the residual"),
            ("spectrum", cmd_spectrum, "eigenvalue spectrum and stability verdict"),
            ("sweep", cmd_sweep, "parameter sweep with collision detection"),
            ("propagate", cmd_propagate, "split-step evolution of a noisy solution"),
            ("band", cmd_band, "print the analytic continuous-spectrum locus")]:
        p = sub.add_parser(name, help=blurb)
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("figures", help="run a canned preset end to end")
    p.add_argument("--preset", required=True, choices=preset_names())
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int, help="RNG seed override")
    p.add_argument("--no-plots", action="store_true")
    p.set_defaults(fn=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
