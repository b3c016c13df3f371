"""Command-line front end.

Subcommands::

    bertrand-curves analyze <config> [--out report.json] [--csv plot.csv]
    bertrand-curves frenet <config>
    bertrand-curves residuals <config>
    bertrand-curves plot-data <config> --csv <path>

Reports go to stdout unless ``--out`` is given. Tolerance flags override the
config. ``BERTRAND_CURVES_LOG`` sets the log level (e.g. ``INFO``, ``DEBUG``).

Exit status: 0 ok, 2 config error, 3 not a Bertrand pair, 4 degenerate,
5 numeric failure, 6 output not writable. A curve without a Frenet frame
(zero curvature or speed) counts as degenerate.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace

from . import __version__, config as config_mod, pipeline
from .errors import ConfigError, CurveError

LOG_ENV = "BERTRAND_CURVES_LOG"

_STAGES = {
    "analyze": pipeline.STAGES,
    "frenet": ("frames",),
    "residuals": ("frames", "pair", "residuals"),
    "plot-data": ("frames", "pair", "residuals"),
}


def _configure_logging() -> None:
    level = os.environ.get(LOG_ENV, "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bertrand-curves",
                                     description="Frenet frames and Bertrand pair analysis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="YAML or JSON config document")
    tol = common.add_argument_group("tolerance overrides")
    for name in ("tol_pair", "eps_class", "eps_theta", "eps_flat"):
        tol.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float, default=None)

    a = sub.add_parser("analyze", parents=[common], help="full pipeline")
    a.add_argument("--out", help="write the JSON report here instead of stdout")
    a.add_argument("--csv", help="also write plot data (when 'plot_data' is among outputs)")
    f = sub.add_parser("frenet", parents=[common], help="frame table only")
    f.add_argument("--out")
    r = sub.add_parser("residuals", parents=[common], help="ODE residual checks only")
    r.add_argument("--out")
    p = sub.add_parser("plot-data", parents=[common], help="CSV plot data")
    p.add_argument("--csv", required=True)
    return parser


def _select(report: dict, command: str) -> dict:
    if command == "frenet":
        keep = ("frames",)
    elif command == "residuals":
        keep = ("pair", "residuals")
    else:
        return report
    drop = {"frames", "pair", "classification", "residuals"} - set(keep)
    return {k: v for k, v in report.items() if k not in drop}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    log = logging.getLogger("bertrand_curves")
    try:
        cfg = config_mod.load(args.config).with_tolerances(
            tol_pair=args.tol_pair, eps_class=args.eps_class,
            eps_theta=args.eps_theta, eps_flat=args.eps_flat)
        stages = _STAGES[args.command]
        if args.command == "plot-data":
            cfg = replace(cfg, outputs=config_mod.OUTPUTS)
        report = pipeline.run_analyze(cfg, stages)
        if args.command == "plot-data":
            pipeline.emit_plot_data(report, args.csv)
        else:
            text = pipeline.dumps(_select(report, args.command))
            if args.out:
                pipeline.write_text(args.out, text)
            else:
                sys.stdout.write(text)
            if args.command == "analyze" and args.csv and "plot_data" in cfg.outputs:
                pipeline.emit_plot_data(report, args.csv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_status
    except CurveError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_status
    for err in report["errors"]:
        log.warning("%s stage: [%s] %s", err["stage"], err["code"], err["message"])
    return pipeline.exit_status(report)


def main(argv=None) -> int:
    _configure_logging()
    return run(argv)
