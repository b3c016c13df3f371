"""Analysis pipeline: frames, pair validation, classification, residuals.

:func:`run_analyze` turns an :class:`AnalysisConfig` into a plain report
dictionary. A failing stage is recorded under ``errors`` and later stages that
depend on it are skipped, so partial results survive. Non-finite floats are
written as ``null`` and every number is produced in grid order, which keeps
repeated runs byte-identical apart from ``timestamp``.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .bertrand import (
    BertrandPair,
    partner_curvatures_closed_form,
    partner_frame,
    partner_point,
    partner_speed,
    validate_pair,
)
from .classify import ClassificationReport, classify
from .config import AnalysisConfig
from .curves import eval_jet
from .errors import CurveError, Degenerate, DegeneratePartner, IoError
from .frenet import frame_at
from .odes import residual_row

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
TOOL_NAME = "bertrand-curves"
STAGES = ("frames", "pair", "classification", "residuals")
CSV_COLUMNS = (
    "t", "alpha_x", "alpha_y", "alpha_z", "beta_x", "beta_y", "beta_z",
    "kappa", "tau", "kappa_beta", "tau_beta", "tangent_ode", "binormal_ode", "normal_ode_T", "normal_ode_N",
)


def sanitize(obj):
    """Plain JSON types only; NaN and infinities become ``None``."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    return obj


def _error(stage: str, exc: CurveError, **extra) -> dict:
    out = {"stage": stage, **exc.to_dict(), **extra}
    out["exit_status"] = exc.exit_status
    return out


def _frame_rows(config: AnalysisConfig, grid):
    rows, failures = [], []
    spec, order, eps_flat = config.curve, config.jet_order, config.tolerances.eps_flat
    for t in grid:
        try:
            fr = frame_at(spec, t, order, eps_flat=eps_flat)
        except CurveError as exc:
            rows.append({"t": t, "position": eval_jet(spec, t, 0).value.tolist(), "error": exc.to_dict()})
            failures.append(exc)
            continue
        rows.append({**fr.as_dict(), "error": None})
    return rows, failures


def _pair_rows(pair: BertrandPair, config: AnalysisConfig, grid) -> list[dict]:
    rows = []
    for t in grid:
        fr = frame_at(pair.base, t, config.jet_order, eps_flat=config.tolerances.eps_flat)
        pf = partner_frame(pair.base, pair.lam, t, config.jet_order, eps_flat=config.tolerances.eps_flat)
        try:
            kb, tb = partner_curvatures_closed_form(fr.kappa, fr.tau, pair)
        except CurveError:
            kb = tb = None
        identity = partner_speed(fr.tau, pair, fr.speed)
        rows.append({
            "t": t,
            "position": partner_point(pair.base, pair.lam, t).tolist(),
            "kappa_direct": pf.kappa,
            "tau_direct": pf.tau,
            "kappa_closed": kb,
            "tau_closed": tb,
            "speed_direct": pf.speed,
            "speed_identity": identity,
            "speed_gap": abs(pf.speed - identity),
            "normal_gap": float(np.linalg.norm(pf.N - pair.normal_sign * fr.N)),
        })
    return rows


def run_analyze(config: AnalysisConfig, stages=STAGES, timestamp: str | None = None) -> dict:
    """Run the requested ``stages`` and return the report document."""
    grid = [float(t) for t in config.grid.points()]
    if "residuals" not in config.outputs:
        stages = tuple(s for s in stages if s != "residuals")
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": __version__},
        "timestamp": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": config.to_document(),
        "stages": list(stages),
        "frames": [],
        "pair": None,
        "classification": None,
        "residuals": None,
        "errors": [],
    }
    errors = report["errors"]

    log.info("frames: %d samples", len(grid))
    rows, failures = _frame_rows(config, grid)
    report["frames"] = rows
    if failures:
        errors.append(_error("frames", failures[0], failed_samples=len(failures)))

    pair = None
    lam = config.bertrand_lambda
    wants_pair = any(s in stages for s in ("pair", "classification", "residuals"))
    if lam is not None and wants_pair and not failures:
        tol = config.tolerances
        try:
            pair = validate_pair(config.curve, lam, grid, tol.tol_pair, tol.eps_theta,
                                 tol.eps_flat, config.jet_order)
            report["pair"] = {"summary": pair.summary(), "samples": _pair_rows(pair, config, grid)}
        except CurveError as exc:
            log.info("pair stage failed: %s", exc)
            errors.append(_error("pair", exc))
            if isinstance(exc, DegeneratePartner) and "classification" in stages:
                report["classification"] = ClassificationReport.degenerate(str(exc)).to_dict()

    if pair is not None and "classification" in stages:
        try:
            report["classification"] = classify(pair, grid, config.tolerances.eps_class,
                                                config.jet_order).to_dict()
        except Degenerate as exc:
            report["classification"] = ClassificationReport.degenerate(str(exc)).to_dict()
            errors.append(_error("classification", exc))
        except CurveError as exc:
            errors.append(_error("classification", exc))

    if "residuals" in stages and not failures:
        table, first = [], None
        for t in grid:
            try:
                table.append({**residual_row(pair, config.curve, t, config.jet_order), "error": None})
            except CurveError as exc:
                table.append({"t": t, "error": exc.to_dict()})
                first = first or exc
        report["residuals"] = table
        if first is not None:
            errors.append(_error("residuals", first))

    report["status"] = "error" if errors else "ok"
    return sanitize(report)


def exit_status(report: dict) -> int:
    errors = report.get("errors") or []
    return errors[0]["exit_status"] if errors else 0


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def write_text(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror}", path=str(path)) from exc


def plot_rows(report: dict) -> list[list]:
    """Rows of the plot table, one per frame sample; missing values are empty strings."""
    pair_samples = (report.get("pair") or {}).get("samples") or []
    residuals = report.get("residuals") or []
    rows = []
    for i, fr in enumerate(report["frames"]):
        ps = pair_samples[i] if i < len(pair_samples) else {}
        res = residuals[i] if i < len(residuals) else {}
        beta = ps.get("position") or [None] * 3
        values = [fr["t"], *fr["position"], *beta, fr.get("kappa"), fr.get("tau"),
                  ps.get("kappa_direct"), ps.get("tau_direct"),
                  res.get("tangent_ode"), res.get("binormal_ode"), res.get("normal_ode_T"), res.get("normal_ode_N")]
        rows.append(["" if v is None else repr(float(v)) for v in values])
    return rows


def emit_plot_data(report: dict, path) -> Path:
    if not report.get("frames"):
        raise ValueError("report has no frame table")
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            writer.writerows(plot_rows(report))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror}", path=str(path)) from exc
    return path
