"""Experiment configuration: dataclass, key-value file parsing, validation."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from ..errors import ValidationError
from ..numberfield import euler_phi
from ..residue import DEFAULT_ENUM_CAP, grassmannian_count, is_prime
from ..zlattice import DEFAULT_DIM_CAP
from ..zlattice.ball import MAX_PRECISION

KINDS = ("first-moment", "moments", "svp", "rank-count", "split-prime", "construct")
MODES = ("auto", "exhaustive", "sample")
METHODS = ("auto", "brute", "colinear")

# execution-only keys: never part of provenance, never change results
EXECUTION_KEYS = ("jobs",)


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    k: int = 4
    t: int = 2
    s: int = 1
    primes: tuple[int, ...] = ()
    prime_index: int | None = None  # None: every prime above p (svp) / the first one (moments)
    norm_target: int | None = None
    n_primes: int = 1
    V: Fraction = Fraction(40)
    volumes: tuple[Fraction, ...] = ()
    n: int = 2
    m: int = 1
    T: tuple[Fraction, ...] = ()
    method: str = "auto"
    mode: str = "auto"
    samples: int = 30
    seed: int = 0
    jobs: int = 1
    tolerance: float = 0.10
    dim_cap: int = DEFAULT_DIM_CAP
    enum_cap: int = DEFAULT_ENUM_CAP
    precision_cap: int = MAX_PRECISION
    search_cap: int = 10_000_000

    @property
    def N(self) -> int:
        return self.t * euler_phi(self.k)

    def provenance(self) -> dict[str, Any]:
        out = {}
        for f in dataclasses.fields(self):
            if f.name in EXECUTION_KEYS:
                continue
            out[f.name] = _plain(getattr(self, f.name))
        return out

    def replace(self, **kw) -> "ExperimentConfig":
        return dataclasses.replace(self, **kw)


def _plain(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    return v


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(ExperimentConfig)}


def _convert(key: str, raw: Any):
    typ = _FIELD_TYPES[key]
    if raw is None:
        return None
    if isinstance(raw, str):
        raw = raw.strip()
    if typ in ("int", "int | None"):
        if raw in ("", "none", "None"):
            return None
        return int(raw)
    if typ == "float":
        return float(raw)
    if typ == "Fraction":
        return Fraction(str(raw))
    if typ == "tuple[int, ...]":
        items = raw.split(",") if isinstance(raw, str) else raw
        return tuple(int(x) for x in items if str(x).strip())
    if typ == "tuple[Fraction, ...]":
        items = raw.split(",") if isinstance(raw, str) else raw
        return tuple(Fraction(str(x).strip()) for x in items if str(x).strip())
    return str(raw)


def normalize_key(key: str) -> str:
    key = key.strip().lstrip("-").replace("-", "_")
    aliases = {"p": "primes", "prime": "primes", "M": "samples", "volume": "V"}
    return aliases.get(key, key)


def read_config_file(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` (or ``key: value``) lines; '#' starts a comment."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        for sep in ("=", ":"):
            if sep in line:
                key, value = line.split(sep, 1)
                break
        else:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
        out[normalize_key(key)] = value.strip()
    return out


def build_config(kind: str, values: dict[str, Any]) -> ExperimentConfig:
    kw = {}
    for key, raw in values.items():
        key = normalize_key(key)
        if key == "kind":
            continue
        if key not in _FIELD_TYPES:
            raise ValidationError(f"unknown config key {key!r}")
        try:
            kw[key] = _convert(key, raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad value for {key}: {raw!r}") from exc
    cfg = ExperimentConfig(kind=kind, **kw)
    validate(cfg)
    return cfg


def validate(cfg: ExperimentConfig) -> None:
    if cfg.kind not in KINDS:
        raise ValidationError(f"unknown experiment kind {cfg.kind!r}")
    if cfg.k < 1:
        raise ValidationError("k must be >= 1")
    if cfg.mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}")
    if cfg.method not in METHODS:
        raise ValidationError(f"method must be one of {METHODS}")
    if cfg.jobs < 1:
        raise ValidationError("jobs must be >= 1")
    if cfg.samples < 1:
        raise ValidationError("samples must be >= 1")
    for p in cfg.primes:
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
    if cfg.kind in ("first-moment", "moments", "svp", "construct"):
        if not 1 <= cfg.s <= cfg.t:
            raise ValidationError("need 1 <= s <= t")
        if not cfg.primes and cfg.norm_target is None:
            raise ValidationError("give primes or norm_target")
        if cfg.V <= 0 or any(v <= 0 for v in cfg.volumes):
            raise ValidationError("volumes must be positive")
    if cfg.kind == "moments":
        if cfg.k % 2:
            raise ValidationError("moment experiments use even k (omega_K = k)")
        if cfg.n < 1:
            raise ValidationError("moment order n must be >= 1")
    if cfg.kind == "svp" and cfg.N > cfg.dim_cap:
        raise ValidationError(f"dimension {cfg.N} exceeds dim_cap {cfg.dim_cap}")
    if cfg.kind == "rank-count":
        if not 1 <= cfg.m <= cfg.n < cfg.t:
            raise ValidationError("need 1 <= m <= n < t")
        if not cfg.T:
            raise ValidationError("rank-count needs at least one T")
    if cfg.kind == "split-prime" and not cfg.primes:
        raise ValidationError("split-prime needs p")


def exhaustive_allowed(cfg: ExperimentConfig, q: int) -> bool:
    return grassmannian_count(q, cfg.t, cfg.s) <= cfg.enum_cap
