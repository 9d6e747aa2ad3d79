"""
Command-line front end.

    nhqa run --schedule linear --g 2 --delta 0 --tau 1.5e4 --log2n 40 --out fig1.csv
    nhqa figure --figure fig3 --out fig3.csv --plot
    nhqa sweep --axis delta --grid 0,1e-4,1e-3,1e-2 --parallel 4 --out sweep.csv
    nhqa scaling --delta 0.01 --grid 10,14,18,22,26,30 --target-p 0.9
    nhqa compare-analytic --g 2 --delta 0 --tau 100 --log2n 10

Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 I/O failure.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import NHQAError
from .formats import dump_json, write_table_csv, write_trajectory_csv
from .model import make_params
from .propagate import IntegratorConfig
from .runs import (
    FIGURES,
    SWEEP_AXES,
    RunConfig,
    compare_analytic,
    default_rel_tol,
    figure_config,
    run,
    scaling,
    sweep,
)

log = logging.getLogger("nhqa")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

# the fig1_left preset when nothing else is given
DEFAULTS = {"g": 2.0, "delta": 0.0, "tau": 1.5e4, "log2n": 40}


class UsageError(Exception):
    pass


def _float_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    return values


def _add_run_flags(p, schedule=True):
    if schedule:
        p.add_argument("--schedule", choices=["linear", "nonlinear"], default=None)
    p.add_argument("--g", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--log2n", type=int, default=None)
    _add_integrator_flags(p)
    p.add_argument("--config", type=Path, default=None, help="JSON file mirroring RunConfig")


def _add_integrator_flags(p):
    p.add_argument("--samples", type=int, default=None, help="output samples (default 2000)")
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--abs-tol", type=float, default=None)


def _add_output_flags(p, plot=True):
    p.add_argument("--out", type=Path, default=None, help="output path (default stdout)")
    if plot:
        p.add_argument("--plot", action="store_true", help="also write a PNG next to --out")


def build_parser():
    parser = argparse.ArgumentParser(prog="nhqa", description="Non-Hermitian quantum annealing for Grover search.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="integrate one configuration")
    _add_run_flags(p)
    p.add_argument("--no-spectra", action="store_true", help="omit eigenvalue columns")
    _add_output_flags(p)

    p = sub.add_parser("figure", help="rerun a figure's parameter set")
    p.add_argument("--figure", required=True, choices=sorted(FIGURES))
    _add_integrator_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="vary one parameter over a grid")
    _add_run_flags(p)
    p.add_argument("--axis", required=True, choices=SWEEP_AXES)
    p.add_argument("--grid", required=True, type=_float_list)
    p.add_argument("--parallel", type=int, default=1)
    _add_output_flags(p)

    p = sub.add_parser("scaling", help="minimal tau reaching a target probability versus N")
    p.add_argument("--g", type=float, default=2.0)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--grid", required=True, type=_float_list, help="log2 N values")
    p.add_argument("--target-p", type=float, default=0.9)
    p.add_argument("--parallel", type=int, default=1)
    _add_output_flags(p)

    p = sub.add_parser("compare-analytic", help="integrator against the closed forms")
    _add_run_flags(p)
    _add_output_flags(p, plot=False)
    return parser


# -- configuration -----------------------------------------------------------


def _load_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})")
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: expected a JSON object")
    unknown = set(doc) - {"params", "schedule_kind", "integrator", "outputs", "emit_spectra"}
    if unknown:
        raise UsageError(f"{path}: unknown keys {sorted(unknown)}")
    return doc


def _integrator_from(base, args):
    kw = {"rel_tol": default_rel_tol()}
    kw.update(base or {})
    if getattr(args, "samples", None) is not None:
        kw["output_samples"] = args.samples
    if getattr(args, "rel_tol", None) is not None:
        kw["rel_tol"] = args.rel_tol
    if getattr(args, "abs_tol", None) is not None:
        kw["abs_tol"] = args.abs_tol
    try:
        return IntegratorConfig(**kw)
    except TypeError as exc:
        raise UsageError(f"bad integrator settings: {exc}")


def resolve_config(args):
    """Defaults, then the --config file, then explicit flags."""
    doc = _load_config_file(args.config) if getattr(args, "config", None) else {}
    params = dict(DEFAULTS)
    params.update(doc.get("params", {}))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    kind = getattr(args, "schedule", None) or doc.get("schedule_kind", "linear")
    emit = doc.get("emit_spectra", True) and not getattr(args, "no_spectra", False)
    return RunConfig(
        params=make_params(params["g"], params["delta"], params["tau"], params["log2n"]),
        schedule_kind=kind,
        integrator=_integrator_from(doc.get("integrator"), args),
        outputs=dict(doc.get("outputs", {})),
        emit_spectra=emit,
    )


# -- output helpers ----------------------------------------------------------


def _sibling(path, suffix):
    return path.with_name(path.stem + suffix)


def _emit_json(obj, args, suffix=".json"):
    """Print the record; with --out also keep it on disk next to the CSV."""
    text = dump_json(obj)
    sys.stdout.write(text)
    if args.out is not None and suffix:
        _sibling(args.out, suffix).write_text(text, encoding="utf-8")


def _write_trajectory(traj, config, args, title):
    if args.out is None:
        write_trajectory_csv(traj, sys.stdout, config.emit_spectra)
        return
    write_trajectory_csv(traj, args.out, config.emit_spectra)
    if args.plot:
        from .plotting import plot_trajectory

        plot_trajectory(traj, _sibling(args.out, ".png"), title=title)


# -- commands ----------------------------------------------------------------


def cmd_run(args):
    config = resolve_config(args)
    if args.out is None and config.outputs.get("csv"):
        args.out = Path(config.outputs["csv"])
    if args.out is not None:
        config.outputs["csv"] = str(args.out)
    traj, summary = run(config)
    _write_trajectory(traj, config, args, title=None)
    if args.out is None:
        sys.stderr.write(dump_json(summary))
    else:
        _emit_json(summary, args, ".summary.json")


def cmd_figure(args):
    integrator = _integrator_from(None, args)
    config = figure_config(args.figure, integrator=integrator)
    traj, summary = run(config)
    summary["figure"] = args.figure
    if args.out is None:
        args.out = Path(f"{args.figure}.csv")
    _write_trajectory(traj, config, args, title=args.figure)
    _emit_json(summary, args, ".summary.json")


def cmd_sweep(args):
    if args.parallel < 1:
        raise UsageError("--parallel must be >= 1")
    config = resolve_config(args)
    result = sweep(config, args.axis, args.grid, parallelism=args.parallel)
    for row, seconds in zip(result.rows, result.wall_times):
        log.info("%s=%s: %s (%s s)", args.axis, row["value"], row["status"], seconds)
    target = sys.stdout if args.out is None else args.out
    write_table_csv([args.axis] + result.columns[1:], result.table(), target)
    if args.out is not None and args.plot:
        from .plotting import plot_sweep

        plot_sweep(result, _sibling(args.out, ".png"))


def cmd_scaling(args):
    if args.parallel < 1:
        raise UsageError("--parallel must be >= 1")
    grid = []
    for v in args.grid:
        if not float(v).is_integer():
            raise UsageError(f"log2 N must be an integer, got {v}")
        grid.append(int(v))
    result = scaling(grid, args.target_p, args.delta, args.g, parallelism=args.parallel)
    if args.out is not None:
        write_table_csv(result.columns, result.table(), args.out)
        if args.plot:
            from .plotting import plot_scaling

            plot_scaling(result, _sibling(args.out, ".png"))
    report = {
        "g": result.g,
        "delta": result.delta,
        "target_p": result.target_p,
        "regressor": result.regressor,
        "fit": result.fit,
        "rows": result.rows,
    }
    _emit_json(report, args, ".fit.json")


def cmd_compare(args):
    config = resolve_config(args)
    report = compare_analytic(config)
    for message in report["warnings"]:
        log.warning("%s", message)
    if args.out is None:
        sys.stdout.write(dump_json(report))
    else:
        dump_json(report, args.out)


COMMANDS = {
    "run": cmd_run,
    "figure": cmd_figure,
    "sweep": cmd_sweep,
    "scaling": cmd_scaling,
    "compare-analytic": cmd_compare,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"nhqa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NHQAError, ArithmeticError) as exc:
        print(f"nhqa: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"nhqa: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
