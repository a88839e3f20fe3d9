"""Scenario files: JSON documents validated against schemas/scenario.schema.json.

Rationals travel as strings ("3/16", "-2", "1"); grids are either explicit
lists or {start, stop, step} objects. Any problem is a ConfigError carrying
the offending field and, when it can be located, the source line.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

import jsonschema

from ._rational import grid, q
from .metrize import HOHLE, FilterBase, Grids, Radii
from .spaces import Gauge, PNSpaceSpec, Vector, embed_normed, sample_vectors
from .tnorm import TNorm, by_name, from_table

SCENARIO_SCHEMA = "scenario.schema.json"
REPORT_SCHEMA = "report.schema.json"

DEFAULTS = {
    "command": "metrize",
    "space": "metrize",
    "radii": {"kind": "one_over_n", "n_max": 64},
    "variant": HOHLE,
    "delta": "1",
    "hypotheses": True,
    "seed": 0,
    "sample_count": 200,
    "boundary_n": {"start": 1, "stop": 20},
    "extra_vectors": [],
    "lambda_grid": {"start": "0", "stop": "1", "step": "1/20"},
    "x_grid": {"start": "0", "stop": "5", "step": "1/16"},
    "t_grid": ["1/64", "1/32", "1/16", "1/8", "1/4", "1/2", "3/4", "1", "3/2"],
    "tnorm_grid": {"start": "0", "stop": "1", "step": "1/64"},
    "horizon": "5",
    "n_range": {"start": 1, "stop": 20},
    "triple_count": 500,
    "topology_samples": 60,
    "topology": False,
}


class ConfigError(ValueError):
    def __init__(self, message: str, field: str = "", line: Optional[int] = None) -> None:
        self.message = message
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def load_schema(name: str = SCENARIO_SCHEMA) -> dict:
    return json.loads(resources.files("pnspace").joinpath("schemas", name).read_text())


def _line_of(text: str, path: list) -> Optional[int]:
    """Best-effort source line of the last named key on ``path``."""
    keys = [p for p in path if isinstance(p, str)]
    if not keys or not text:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(keys[-1]), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _dotted(path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _rational_grid(spec, name: str) -> tuple:
    if isinstance(spec, dict):
        pts = grid(spec["start"], spec["stop"], spec["step"])
    else:
        pts = tuple(q(v) for v in spec)
    if not pts:
        raise ConfigError("grid is empty", name)
    return tuple(sorted(set(pts)))


def _int_range(spec, name: str) -> tuple:
    if isinstance(spec, dict):
        if spec["stop"] < spec["start"]:
            raise ConfigError("stop is below start", name)
        return tuple(range(spec["start"], spec["stop"] + 1))
    return tuple(sorted(set(spec)))


def _gauge(spec, dim: int) -> Gauge:
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = spec["kind"]
    if kind == "custom-table":
        weights = spec.get("weights")
        if weights is None:
            raise ConfigError("custom-table gauge needs weights", "gauge.weights")
        if len(weights) != dim:
            raise ConfigError(f"{len(weights)} weights for dimension {dim}", "gauge.weights")
        return Gauge("table", tuple(q(w) for w in weights))
    if "weights" in spec:
        raise ConfigError(f"weights only apply to custom-table, not {kind}", "gauge.weights")
    return Gauge(kind)


def _radii(spec: dict) -> Radii:
    try:
        return Radii(spec["kind"], ratio=spec.get("ratio"), values=spec.get("values"),
                     n_max=spec.get("n_max", 64))
    except (TypeError, ValueError) as err:
        raise ConfigError(str(err), "radii") from None


def _tnorm(spec) -> TNorm:
    if isinstance(spec, str):
        try:
            return by_name(spec)
        except ValueError as err:
            raise ConfigError(str(err), "tnorm") from None
    pts, rows = spec["grid"], spec["values"]
    if len(rows) != len(pts) or any(len(r) != len(pts) for r in rows):
        raise ConfigError(f"values must be a {len(pts)}x{len(pts)} table", "tnorm.values")
    triples = [(x, y, rows[i][j]) for i, x in enumerate(pts) for j, y in enumerate(pts)]
    try:
        return from_table(spec["name"], triples)
    except ValueError as err:
        raise ConfigError(str(err), "tnorm") from None


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    command: str
    space: str
    dimension: int
    gauge: Gauge
    radii: Radii
    tnorm: Optional[TNorm]
    variant: str
    delta: Fraction
    hypotheses: bool
    seed: int
    sample_count: int
    boundary_n: tuple
    extra_vectors: tuple
    grids: Grids
    topology: bool
    raw: dict = field(default_factory=dict, compare=False)

    @property
    def base(self) -> FilterBase:
        return FilterBase(self.gauge, self.radii, self.dimension)

    def samples(self) -> list:
        extras = list(self.base.boundary_vectors(self.boundary_n)) + list(self.extra_vectors)
        return sample_vectors(self.dimension, self.sample_count, self.seed, extras)

    def embedding(self) -> PNSpaceSpec:
        if self.gauge.kind == "l2sq":
            raise ConfigError("embedding needs a rational norm: l1, linf, halfspace or custom-table", "gauge")
        return embed_normed(self.gauge.value, self.dimension, name=f"embed[{self.gauge.kind}]",
                            horizon=self.grids.horizon, lambda_grid=self.grids.lambda_grid,
                            x_grid=self.grids.x_grid)

    def require_tnorm(self) -> TNorm:
        if self.tnorm is None:
            raise ConfigError(f"command {self.command} needs a t-norm", "tnorm")
        return self.tnorm

    def with_seed(self, seed: int) -> "ScenarioConfig":
        raw = dict(self.raw, seed=seed)
        return replace(self, seed=seed, grids=replace(self.grids, seed=seed), raw=raw)

    def echo(self) -> dict:
        return dict(self.raw)


def parse(data: dict, text: str = "") -> ScenarioConfig:
    """Validate and build a ScenarioConfig from a decoded document."""
    validator = jsonschema.Draft202012Validator(load_schema())
    err = jsonschema.exceptions.best_match(validator.iter_errors(data))
    if err is not None:
        path = list(err.absolute_path)
        raise ConfigError(err.message, _dotted(path), _line_of(text, path))
    merged = dict(DEFAULTS)
    merged.update(data)
    if isinstance(data.get("tnorm"), dict) and "tnorm_grid" not in data:
        merged["tnorm_grid"] = data["tnorm"]["grid"]
    try:
        return _build(merged)
    except ConfigError as err:
        if err.line is None:
            raise ConfigError(err.message, err.field, _line_of(text, err.field.split("."))) from None
        raise
    except (ValueError, ZeroDivisionError) as err:
        raise ConfigError(str(err)) from None


def _build(m: dict) -> ScenarioConfig:
    dim = m["dimension"]
    lambdas = _rational_grid(m["lambda_grid"], "lambda_grid")
    xs = _rational_grid(m["x_grid"], "x_grid")
    horizon = q(m["horizon"])
    if horizon <= 0:
        raise ConfigError("horizon must be positive", "horizon")
    grids = Grids(lambda_grid=lambdas, x_grid=xs, horizon=horizon,
                  n_range=_int_range(m["n_range"], "n_range"),
                  t_grid=_rational_grid(m["t_grid"], "t_grid"),
                  tnorm_grid=_rational_grid(m["tnorm_grid"], "tnorm_grid"),
                  triple_count=m["triple_count"], seed=m["seed"], topology_samples=m["topology_samples"])
    extras = []
    for i, coords in enumerate(m["extra_vectors"]):
        if len(coords) != dim:
            raise ConfigError(f"vector has {len(coords)} coordinates, dimension is {dim}", f"extra_vectors[{i}]")
        extras.append(Vector(tuple(q(c) for c in coords)))
    return ScenarioConfig(
        name=m["name"],
        command=m["command"],
        space=m["space"],
        dimension=dim,
        gauge=_gauge(m["gauge"], dim),
        radii=_radii(m["radii"]),
        tnorm=_tnorm(m["tnorm"]) if "tnorm" in m else None,
        variant=m["variant"],
        delta=q(m["delta"]),
        hypotheses=m["hypotheses"],
        seed=m["seed"],
        sample_count=m["sample_count"],
        boundary_n=_int_range(m["boundary_n"], "boundary_n"),
        extra_vectors=tuple(extras),
        grids=grids,
        topology=m["topology"],
        raw={k: v for k, v in sorted(m.items()) if k != "description"},
    )


def loads(text: str) -> ScenarioConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"invalid JSON: {err.msg} (column {err.colno})", line=err.lineno) from None
    if not isinstance(data, dict):
        raise ConfigError("top level must be an object")
    return parse(data, text)


def load(path) -> ScenarioConfig:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err.strerror}") from None
    return loads(text)


def scenario_names() -> list:
    root = resources.files("pnspace").joinpath("scenarios")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_scenario(name: str) -> ScenarioConfig:
    root = resources.files("pnspace").joinpath("scenarios")
    entry = root.joinpath(f"{name}.json")
    if not entry.is_file():
        raise ConfigError(f"unknown scenario {name!r}; shipped: {', '.join(scenario_names())}")
    return loads(entry.read_text())
