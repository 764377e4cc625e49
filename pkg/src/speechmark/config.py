"""Pipeline configuration: defaults, TOML file, environment, flag overrides.

Precedence (lowest to highest): built-in defaults, config file, the
SPEECHMARK_SEED environment variable, command-line flags.
"""

import os
from dataclasses import dataclass, fields, replace

from .errors import ConfigError

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

SEED_ENV_VAR = "SPEECHMARK_SEED"


@dataclass(frozen=True)
class PipelineConfig:
    pause_threshold_s: float = 0.300
    min_chunk_words: int = 200
    mattr_windows: tuple = (10, 25, 50)
    quantiles: tuple = (10, 25, 50, 75, 95)
    gzip_level: int = 6
    hdd_sample_size: int = 42
    mtld_threshold: float = 0.72
    proto_floor: float = 1e-6
    svc_C: float = 0.1
    svc_max_iter: int = 50000
    svc_tol: float = 1e-4
    svr_C: float = 0.1
    svr_epsilon: float = 0.1
    seed: int = 0
    jobs: int = 1
    input_dir: str | None = None
    healthy_dir: str | None = None
    out_dir: str | None = None

    def validate(self):
        if self.pause_threshold_s <= 0:
            raise ConfigError(f"pause_threshold_s must be positive, got {self.pause_threshold_s}")
        if self.min_chunk_words < 1:
            raise ConfigError(f"min_chunk_words must be >= 1, got {self.min_chunk_words}")
        qs = tuple(self.quantiles)
        if not qs or any(not 0 < q < 100 for q in qs) or list(qs) != sorted(set(qs)):
            raise ConfigError(f"quantiles must be strictly increasing in (0, 100), got {qs}")
        ws = tuple(self.mattr_windows)
        if not ws or any(w < 1 for w in ws) or list(ws) != sorted(set(ws)):
            raise ConfigError(f"mattr_windows must be strictly increasing and >= 1, got {ws}")
        if not 0 <= self.gzip_level <= 9:
            raise ConfigError(f"gzip_level must be in [0, 9], got {self.gzip_level}")
        if self.hdd_sample_size < 1:
            raise ConfigError(f"hdd_sample_size must be >= 1, got {self.hdd_sample_size}")
        if not 0 < self.mtld_threshold < 1:
            raise ConfigError(f"mtld_threshold must be in (0, 1), got {self.mtld_threshold}")
        if self.proto_floor <= 0:
            raise ConfigError(f"proto_floor must be positive, got {self.proto_floor}")
        for name in ("svc_C", "svr_C", "svc_tol"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.svr_epsilon < 0:
            raise ConfigError(f"svr_epsilon must be non-negative, got {self.svr_epsilon}")
        if self.svc_max_iter < 1:
            raise ConfigError(f"svc_max_iter must be >= 1, got {self.svc_max_iter}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        return self


_FIELDS = {f.name for f in fields(PipelineConfig)}


def load_config(path=None, overrides=None, env=os.environ):
    """Build a validated PipelineConfig from file + environment + overrides."""
    values = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                doc = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        for key, value in doc.items():
            if key not in _FIELDS:
                raise ConfigError(f"unknown config key {key!r} in {path}")
            if isinstance(value, list):
                value = tuple(value)
            values[key] = value
    config = PipelineConfig(**values)
    if SEED_ENV_VAR in env:
        try:
            config = replace(config, seed=int(env[SEED_ENV_VAR]))
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer") from exc
    if overrides:
        clean = {}
        for key, value in overrides.items():
            if key not in _FIELDS:
                raise ConfigError(f"unknown config override {key!r}")
            if value is not None:
                clean[key] = tuple(value) if isinstance(value, list) else value
        config = replace(config, **clean)
    return config.validate()
