"""Analysis configuration documents.

Configs are YAML (JSON is accepted too, being a YAML subset)::

    version: 1
    curve:
      family: CircularHelix      # or x/y/z expression strings
      params: []
    bertrand_lambda: sqrt(2)/4   # numbers may be constant expressions
    grid: {t_start: 0, t_end: 6.283185307179586, samples: 50}
    jet_order: 6
    tolerances: {tol_pair: 1.0e-8, eps_class: 1.0e-7, eps_theta: 1.0e-6, eps_flat: 1.0e-9}
    outputs: [report, residuals, plot_data]
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np
import yaml

from . import expr
from .bertrand import EPS_THETA, TOL_PAIR
from .classify import EPS_CLASS
from .curves import CurveSpec
from .errors import ConfigError, ExpressionError
from .frenet import EPS_FLAT

CONFIG_VERSION = 1
OUTPUTS = ("report", "residuals", "plot_data")
_KEYS = {"version", "curve", "bertrand_lambda", "grid", "jet_order", "tolerances", "outputs"}


@dataclass(frozen=True)
class Tolerances:
    tol_pair: float = TOL_PAIR
    eps_class: float = EPS_CLASS
    eps_theta: float = EPS_THETA
    eps_flat: float = EPS_FLAT


@dataclass(frozen=True)
class Grid:
    t_start: float
    t_end: float
    samples: int

    def points(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.samples)


@dataclass(frozen=True)
class AnalysisConfig:
    curve: CurveSpec
    grid: Grid
    bertrand_lambda: Optional[float] = None
    jet_order: int = 6
    tolerances: Tolerances = field(default_factory=Tolerances)
    outputs: tuple = OUTPUTS

    def __post_init__(self):
        g = self.grid
        if not g.t_start < g.t_end:
            raise ConfigError(f"grid needs t_start < t_end, got {g.t_start} >= {g.t_end}")
        if g.samples < 2:
            raise ConfigError(f"grid needs at least 2 samples, got {g.samples}")
        if self.jet_order < 5:
            raise ConfigError(f"jet_order must be >= 5, got {self.jet_order}")
        for name in ("tol_pair", "eps_class", "eps_theta", "eps_flat"):
            if not getattr(self.tolerances, name) > 0:
                raise ConfigError(f"tolerance {name} must be positive")
        bad = set(self.outputs) - set(OUTPUTS)
        if bad:
            raise ConfigError(f"unknown outputs {sorted(bad)}; expected a subset of {list(OUTPUTS)}")

    def with_tolerances(self, **overrides) -> "AnalysisConfig":
        given = {k: v for k, v in overrides.items() if v is not None}
        if not given:
            return self
        return replace(self, tolerances=replace(self.tolerances, **given))

    def to_document(self) -> dict:
        return {
            "version": CONFIG_VERSION,
            "curve": self.curve.to_document(),
            "bertrand_lambda": self.bertrand_lambda,
            "grid": {"t_start": self.grid.t_start, "t_end": self.grid.t_end,
                     "samples": self.grid.samples},
            "jet_order": self.jet_order,
            "tolerances": {
                "tol_pair": self.tolerances.tol_pair,
                "eps_class": self.tolerances.eps_class,
                "eps_theta": self.tolerances.eps_theta,
                "eps_flat": self.tolerances.eps_flat,
            },
            "outputs": list(self.outputs),
        }


def _number(value, name: str) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"{name} must be a number")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            node = expr.parse_expression(value)
        except ExpressionError as exc:
            raise ConfigError(f"{name}: {exc}") from exc
        if _mentions_t(node):
            raise ConfigError(f"{name} must be constant, found 't' in {value!r}")
        return expr.evaluate(node, 0.0)
    raise ConfigError(f"{name} must be a number, got {type(value).__name__}")


def _mentions_t(node) -> bool:
    if isinstance(node, expr.Param):
        return True
    return any(_mentions_t(child) for child in vars(node).values() if not isinstance(child, (int, float)))


def from_document(doc) -> AnalysisConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping")
    unknown = set(doc) - _KEYS
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    version = doc.get("version", CONFIG_VERSION)
    if version != CONFIG_VERSION:
        raise ConfigError(f"unsupported config version {version!r}")
    if "curve" not in doc:
        raise ConfigError("config needs a 'curve' section")
    if "grid" not in doc or not isinstance(doc["grid"], dict):
        raise ConfigError("config needs a 'grid' mapping")
    g = doc["grid"]
    try:
        samples = g["samples"]
        grid = Grid(_number(g["t_start"], "grid.t_start"), _number(g["t_end"], "grid.t_end"), samples)
    except KeyError as exc:
        raise ConfigError(f"grid is missing {exc.args[0]!r}") from None
    if not isinstance(samples, int) or isinstance(samples, bool):
        raise ConfigError("grid.samples must be an integer")
    lam = doc.get("bertrand_lambda")
    tol_doc = doc.get("tolerances") or {}
    bad = set(tol_doc) - set(Tolerances.__dataclass_fields__)
    if bad:
        raise ConfigError(f"unknown tolerances {sorted(bad)}")
    tolerances = Tolerances(**{k: _number(v, f"tolerances.{k}") for k, v in tol_doc.items()})
    jet_order = doc.get("jet_order", 6)
    if not isinstance(jet_order, int) or isinstance(jet_order, bool):
        raise ConfigError("jet_order must be an integer")
    outputs = doc.get("outputs", list(OUTPUTS))
    if not isinstance(outputs, list):
        raise ConfigError("outputs must be a list")
    return AnalysisConfig(
        curve=CurveSpec.from_document(doc["curve"]),
        grid=grid,
        bertrand_lambda=None if lam is None else _number(lam, "bertrand_lambda"),
        jet_order=jet_order,
        tolerances=tolerances,
        outputs=tuple(outputs),
    )


def loads(text: str) -> AnalysisConfig:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from exc
    return from_document(doc)


def load(path) -> AnalysisConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}", path=str(path)) from exc
    return loads(text)
