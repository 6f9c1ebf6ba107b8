"""Model configuration: parsing, validation, catalog wiring.

Configs are JSON objects (nested key-value sections); the exact schema is
documented in the README.  Custom defects supply closed-form transmission
and reflection entries in the expression grammar.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .defect import (
    DefectPair,
    delta_defect,
    pure_reflection_defect,
    pure_transmission_defect,
)
from .doubling import DoubledModel, build_doubled_model
from .grammar import parse_expression
from .smatrix import BulkSMatrix, identity_S, permutation_S, rational_S

DEFAULT_TOLERANCE = 1e-9
DEFAULT_SAMPLES = 50
DEFAULT_RADIUS = 1e-3
TOLERANCE_ENV_VAR = "RTCHECK_TOLERANCE"

BULK_CATALOG = ("identity", "permutation", "rational")
DEFECT_CATALOG = ("delta", "pure-transmission", "pure-reflection", "custom")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ModelConfig:
    bulk: dict
    defect: dict
    doubled: bool = True
    samples: int = DEFAULT_SAMPLES
    exclusion_radius: float = DEFAULT_RADIUS
    seed: int = 0
    tolerance: float = DEFAULT_TOLERANCE
    checks: tuple[str, ...] = ()  # empty means the default list for the model

    def echo(self) -> dict:
        return {
            "bulk": dict(self.bulk),
            "defect": dict(self.defect),
            "doubled": self.doubled,
            "samples": self.samples,
            "exclusion_radius": self.exclusion_radius,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "checks": list(self.checks),
        }


_KNOWN_KEYS = {
    "bulk", "defect", "doubled", "samples", "exclusion_radius", "seed",
    "tolerance", "checks",
}


def _expand_shorthand(entry) -> dict:
    """Catalog shorthand "name:key=value,key=value" -> parameter object."""
    if isinstance(entry, dict):
        return entry
    if not isinstance(entry, str):
        raise ConfigError(f"catalog entry must be an object or string, got {entry!r}")
    name, _, params = entry.partition(":")
    out: dict = {"name": name.strip()}
    if params:
        for item in params.split(","):
            key, sep, value = item.partition("=")
            if not sep or not key.strip():
                raise ConfigError(f"bad catalog parameter {item!r} in {entry!r}")
            try:
                out[key.strip()] = float(value)
            except ValueError as exc:
                raise ConfigError(f"bad catalog parameter {item!r}: {exc}") from exc
    return out


def parse_config(text: str) -> ModelConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    bulk = _expand_shorthand(raw.get("bulk", {"name": "identity", "dim": 1}))
    defect = _expand_shorthand(raw.get("defect", {"name": "delta", "eta": 1.0}))
    for section, catalog in (("bulk", BULK_CATALOG), ("defect", DEFECT_CATALOG)):
        entry = bulk if section == "bulk" else defect
        if not isinstance(entry, dict) or "name" not in entry:
            raise ConfigError(f"{section} section must be an object with a 'name'")
        if entry["name"] not in catalog:
            raise ConfigError(
                f"unknown {section} catalog entry {entry['name']!r}; "
                f"available: {list(catalog)}"
            )
    cfg = ModelConfig(
        bulk=bulk,
        defect=defect,
        doubled=bool(raw.get("doubled", True)),
        samples=int(raw.get("samples", DEFAULT_SAMPLES)),
        exclusion_radius=float(raw.get("exclusion_radius", DEFAULT_RADIUS)),
        seed=int(raw.get("seed", 0)),
        tolerance=float(raw.get("tolerance", _env_tolerance())),
        checks=tuple(raw.get("checks", ())),
    )
    if cfg.tolerance <= 0:
        raise ConfigError("tolerance must be > 0")
    if cfg.samples < 1:
        raise ConfigError("samples must be >= 1")
    if cfg.exclusion_radius <= 0:
        raise ConfigError("exclusion_radius must be > 0")
    build_bulk(cfg)  # validates parameters eagerly
    build_half_line_defect(cfg)
    return cfg


def _env_tolerance() -> float:
    value = os.environ.get(TOLERANCE_ENV_VAR)
    if value is None:
        return DEFAULT_TOLERANCE
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"bad {TOLERANCE_ENV_VAR} value {value!r}") from exc


def build_bulk(cfg: ModelConfig) -> BulkSMatrix:
    b = cfg.bulk
    name = b["name"]
    try:
        if name == "identity":
            return identity_S(int(b.get("dim", 1)))
        if name == "permutation":
            return permutation_S(int(b.get("dim", 1)))
        if name == "rational":
            return rational_S(int(b.get("N", 2)), float(b.get("c", 1.0)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad bulk parameters for {name!r}: {exc}") from exc
    raise ConfigError(f"unknown bulk catalog entry {name!r}")


def build_half_line_defect(cfg: ModelConfig) -> DefectPair:
    d = cfg.defect
    name = d["name"]
    if name == "delta":
        try:
            return delta_defect(float(d.get("eta", 1.0)))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad delta parameters: {exc}") from exc
    if name == "pure-transmission":
        return pure_transmission_defect()
    if name == "pure-reflection":
        return pure_reflection_defect()
    if name == "custom":
        try:
            t_fn = parse_expression(str(d["transmission"]))
            r_fn = parse_expression(str(d["reflection"]))
        except KeyError as exc:
            raise ConfigError(f"custom defect needs {exc.args[0]!r} entry") from exc
        except ValueError as exc:
            raise ConfigError(f"bad custom defect expression: {exc}") from exc
        return DefectPair(
            1,
            lambda k: np.array([[r_fn(k)]]),
            lambda k: np.array([[t_fn(k)]]),
            name="custom",
        )
    raise ConfigError(f"unknown defect catalog entry {name!r}")


def scalar_times_identity(pair: DefectPair, N: int):
    """Lift a scalar defect to N isotopic dimensions: tau = T * I etc."""
    eye = np.eye(N, dtype=complex)

    def tau(k: float) -> np.ndarray:
        return complex(pair.T(k)[0, 0]) * eye

    def rho(k: float) -> np.ndarray:
        return complex(pair.R(k)[0, 0]) * eye

    return tau, rho


def build_model(cfg: ModelConfig) -> "AssembledModel":
    bulk = build_bulk(cfg)
    half = build_half_line_defect(cfg)
    if half.dim == 1 and bulk.leg_dim > 1:
        tau, rho = scalar_times_identity(half, bulk.leg_dim)
        half = DefectPair(bulk.leg_dim, rho, tau, name=half.name)
    else:
        tau, rho = half.transmission, half.reflection
    doubled = None
    if cfg.doubled:
        doubled = build_doubled_model(bulk, tau=tau, rho=rho)
    return AssembledModel(cfg=cfg, bulk=bulk, half_line=half, doubled=doubled)


@dataclass(frozen=True)
class AssembledModel:
    """Everything the verification suite needs for one configuration."""

    cfg: ModelConfig
    bulk: BulkSMatrix
    half_line: DefectPair
    doubled: DoubledModel | None = None
