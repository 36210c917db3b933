"""External configuration loading and normalization for innovacs experiments.

- External configuration file support (YAML, JSON, TOML or key = value text)
- One flat key namespace shared by every format
- CLI flag > config file > built-in defaults
"""

from __future__ import annotations

import json
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

from .allocation.criteria import CRITERIA, get_criterion
from .exceptions import ConfigValueError, MissingInputError, UnknownConfigKeyError
from .pipeline.run_config import (
    DEFAULT_ALLOCATOR,
    DEFAULT_BLOCK_SIZE,
    DEFAULT_FINAL_ITERATIONS,
    DEFAULT_IE_ITERATIONS,
    DEFAULT_IE_LAMBDA_END,
    DEFAULT_LAMBDA_END,
    DEFAULT_LAMBDA_START,
    DEFAULT_SEED,
    DEFAULT_SR_INIT,
    DEFAULT_STAGES,
    RunConfig,
)
from .sensing.matrix import MAX_BLOCK_SIZE
from .solver.reconstruction import SolverConfig

DEFAULT_SR = 0.25
DEFAULT_CORPUS_SEED = 42
DEFAULT_OUT = "acs_output"


@dataclass
class ExperimentConfig:
    """Top-level experiment config shape."""

    image: list[str] = field(default_factory=list)
    corpus: str | None = None
    corpus_seed: int = DEFAULT_CORPUS_SEED
    sr: float = DEFAULT_SR
    sr_init: float = DEFAULT_SR_INIT
    sr_is: float | None = None
    stages: int = DEFAULT_STAGES
    block_size: int = DEFAULT_BLOCK_SIZE
    allocator: str = DEFAULT_ALLOCATOR
    seed: int = DEFAULT_SEED
    criteria: list[str] = field(default_factory=lambda: list(CRITERIA))
    out: str = DEFAULT_OUT
    emit_heatmaps: bool = True
    emit_traces: bool = True
    emit_recon: bool = True
    ie_iterations: int = DEFAULT_IE_ITERATIONS
    ie_lambda_end: float = DEFAULT_IE_LAMBDA_END
    final_iterations: int = DEFAULT_FINAL_ITERATIONS
    lambda_start: float = DEFAULT_LAMBDA_START
    lambda_end: float = DEFAULT_LAMBDA_END
    geometric: bool = True
    accelerated: bool = True
    data_consistency: bool = False
    dc_row: bool = True
    workers: int = 1
    verbose: bool = False

    @property
    def has_input(self) -> bool:
        """Return True when an image or a corpus is configured."""
        return bool(self.image) or self.corpus is not None

    def solver_config(self, iterations: int, lambda_end: float) -> SolverConfig:
        """Return a solver config with this experiment's threshold schedule."""
        return SolverConfig(
            iterations=iterations,
            lambda_start=self.lambda_start,
            lambda_end=lambda_end,
            geometric=self.geometric,
            accelerated=self.accelerated,
            data_consistency=self.data_consistency,
        )

    def run_config(self) -> RunConfig:
        """Return the pipeline settings of this experiment."""
        return RunConfig(
            sr=self.sr,
            sr_init=self.sr_init,
            stages=self.stages,
            sr_is=self.sr_is,
            block_size=self.block_size,
            allocator=self.allocator,
            ie_solver=self.solver_config(self.ie_iterations, self.ie_lambda_end),
            final_solver=self.solver_config(self.final_iterations, self.lambda_end),
            seed=self.seed,
            dc_row=self.dc_row,
            workers=self.workers,
        )


####################################################################
# Value parsing
####################################################################

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def _parse_bool(key: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigValueError(key, value, "expected a boolean")


def _parse_int(key: str, value: Any) -> int:
    if isinstance(value, bool):
        raise ConfigValueError(key, value, "expected an integer")
    try:
        return int(str(value).strip(), 0) if isinstance(value, str) else int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigValueError(key, value, "expected an integer") from exc


def _parse_float(key: str, value: Any) -> float:
    if isinstance(value, bool):
        raise ConfigValueError(key, value, "expected a number")
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigValueError(key, value, "expected a number") from exc


def _parse_optional_float(key: str, value: Any) -> float | None:
    if value is None or str(value).strip().lower() in {"", "none", "null", "auto"}:
        return None
    return _parse_float(key, value)


def _parse_optional_str(key: str, value: Any) -> str | None:
    if value is None or str(value).strip().lower() in {"", "none", "null"}:
        return None
    return str(value).strip()


def _parse_str(key: str, value: Any) -> str:
    if value is None:
        raise ConfigValueError(key, value, "expected a string")
    return str(value).strip()


def _parse_list(key: str, value: Any) -> list[str]:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        items = [str(v).strip() for v in value]
    else:
        items = [part.strip() for part in str(value).split(",")]
    return [item for item in items if item]


_PARSERS: dict[str, Callable[[str, Any], Any]] = {
    "image": _parse_list,
    "corpus": _parse_optional_str,
    "corpus_seed": _parse_int,
    "sr": _parse_float,
    "sr_init": _parse_float,
    "sr_is": _parse_optional_float,
    "stages": _parse_int,
    "block_size": _parse_int,
    "allocator": _parse_str,
    "seed": _parse_int,
    "criteria": _parse_list,
    "out": _parse_str,
    "emit_heatmaps": _parse_bool,
    "emit_traces": _parse_bool,
    "emit_recon": _parse_bool,
    "ie_iterations": _parse_int,
    "ie_lambda_end": _parse_float,
    "final_iterations": _parse_int,
    "lambda_start": _parse_float,
    "lambda_end": _parse_float,
    "geometric": _parse_bool,
    "accelerated": _parse_bool,
    "data_consistency": _parse_bool,
    "dc_row": _parse_bool,
    "workers": _parse_int,
    "verbose": _parse_bool,
}

CONFIG_KEYS = tuple(f.name for f in fields(ExperimentConfig))


####################################################################
# File loaders
####################################################################


def _load_yaml(path: str) -> dict[str, Any]:
    """Load a YAML config file into a dict.

    Args:
        path (str): Path to the YAML file.

    Returns:
        dict[str, Any]: Parsed YAML data as a dictionary.
    """
    try:
        import yaml
    except ImportError as exc:
        raise ImportError(
            "PyYAML is required for YAML config files. Install with: pip install pyyaml"
        ) from exc

    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    return data or {}


def _load_json(path: str) -> dict[str, Any]:
    """Load a JSON config file into a dict."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return data or {}


def _load_toml(path: str) -> dict[str, Any]:
    """Load a TOML config file into a dict."""
    import tomllib

    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    return data or {}


def _load_text(path: str) -> dict[str, Any]:
    """Load a line-oriented ``key = value`` file.

    Blank lines and everything after ``#`` are ignored. Later lines win
    over earlier ones.

    Raises:
        ConfigValueError: If a non-blank line has no ``=``.
    """
    data: dict[str, Any] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for number, line in enumerate(fh, 1):
            content = line.split("#", 1)[0].strip()
            if not content:
                continue
            if "=" not in content:
                raise ConfigValueError(f"line {number}", content, "expected 'key = value'")
            key, value = content.split("=", 1)
            data[key.strip()] = value.strip()
    return data


def load_config(path: str | None) -> dict[str, Any]:
    """Load the raw key/value mapping of a config file.

    The loader is chosen by suffix: ``.yaml``/``.yml``, ``.json``, ``.toml``;
    anything else is read as ``key = value`` text.

    Args:
        path (str | None): Path to the config file, or None for no file.

    Returns:
        dict[str, Any]: The flat mapping, values not yet validated.

    Raises:
        UnknownConfigKeyError: If the file holds a key no setting consumes.
        ConfigValueError: If the file is not a flat mapping.
    """
    if not path:
        return {}

    suffix = Path(path).suffix.lower()
    if suffix in (".yaml", ".yml"):
        raw = _load_yaml(path)
    elif suffix == ".json":
        raw = _load_json(path)
    elif suffix == ".toml":
        raw = _load_toml(path)
    else:
        raw = _load_text(path)

    if not isinstance(raw, dict):
        raise ConfigValueError(str(path), type(raw).__name__, "config must be a key/value mapping")
    for key in raw:
        if key not in _PARSERS:
            raise UnknownConfigKeyError(str(key))
    return raw


####################################################################
# Resolution and validation
####################################################################


def validate_config(cfg: ExperimentConfig) -> ExperimentConfig:
    """Range-check a resolved config.

    Raises:
        ConfigValueError: On any out-of-range value.
        UnknownCriterionError: On an unregistered allocator or criterion.
    """
    if not 0.0 < cfg.sr <= 1.0:
        raise ConfigValueError("sr", cfg.sr, "must satisfy 0 < sr <= 1")
    if not 0.0 < cfg.sr_init < cfg.sr:
        raise ConfigValueError("sr_init", cfg.sr_init, f"must satisfy 0 < sr_init < sr={cfg.sr}")
    if cfg.sr_is is not None and cfg.sr_is < 0:
        raise ConfigValueError("sr_is", cfg.sr_is, "must be >= 0")
    if cfg.stages < 1:
        raise ConfigValueError("stages", cfg.stages, "must be >= 1")
    if not 1 <= cfg.block_size <= MAX_BLOCK_SIZE:
        raise ConfigValueError("block_size", cfg.block_size, f"must be in [1, {MAX_BLOCK_SIZE}]")
    for key in ("ie_iterations", "final_iterations", "workers"):
        if getattr(cfg, key) < 1:
            raise ConfigValueError(key, getattr(cfg, key), "must be >= 1")
    if not cfg.criteria:
        raise ConfigValueError("criteria", cfg.criteria, "needs at least one criterion")

    get_criterion(cfg.allocator)
    for name in cfg.criteria:
        get_criterion(name)
    # Solver settings validate themselves.
    cfg.solver_config(cfg.ie_iterations, cfg.ie_lambda_end)
    cfg.solver_config(cfg.final_iterations, cfg.lambda_end)
    return cfg


def parse_config(
    path: str | None = None,
    flags: Mapping[str, Any] | None = None,
    require_input: bool = False,
) -> ExperimentConfig:
    """Resolve an experiment config from a file and command-line flags.

    Args:
        path (str | None): Config file, if any.
        flags (Mapping[str, Any] | None): Flag values keyed like the config;
            ``None`` values mean "not given on the command line".
        require_input (bool): Demand an image or a corpus.

    Returns:
        ExperimentConfig: Fully resolved, validated config.

    Raises:
        UnknownConfigKeyError: On unknown keys in the file or the flags.
        ConfigValueError: On unparseable or out-of-range values.
        MissingInputError: If *require_input* and no input is configured.
    """
    file_values = load_config(path)
    flags = dict(flags or {})
    for key in flags:
        if key not in _PARSERS:
            raise UnknownConfigKeyError(key)

    def _coalesce(key: str):
        cli_value = flags.get(key)
        return cli_value if cli_value is not None else file_values.get(key)

    resolved: dict[str, Any] = {}
    for key, parser in _PARSERS.items():
        value = _coalesce(key)
        if value is not None:
            resolved[key] = parser(key, value)

    cfg = validate_config(ExperimentConfig(**resolved))
    if require_input and not cfg.has_input:
        raise MissingInputError()
    return cfg
