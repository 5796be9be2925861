"""
Environment settings and run configs.

Settings come from the process environment (and a .env file, if present);
run configs are TOML or JSON files with [model], [flag] and [run] tables.
"""
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import load_dotenv

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .flags import FlagSpec, flag_from_config
from .models import Model, model_from_config
from .okounkov import DEFAULT_WITNESS_CAP
from .utils import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_MAX_LEVEL_CAP = 12
DEFAULT_LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

RUN_KEYS = {"max_level", "c", "m", "seed", "trials", "point", "level"}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    """
    Process-wide limits.

    Attributes:
        max_level_cap (int): Largest accepted max_level K
        witness_cap (int): Largest m (and N) tried by the witness search
        log_level (str): Logging level name for the entry points
    """
    max_level_cap: int = DEFAULT_MAX_LEVEL_CAP
    witness_cap: int = DEFAULT_WITNESS_CAP
    log_level: str = DEFAULT_LOG_LEVEL

    @classmethod
    def from_env(cls, dotenv: bool = True) -> "Settings":
        if dotenv:
            load_dotenv()
        level = os.getenv("OKOUNKOV_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ConfigError(f"OKOUNKOV_LOG_LEVEL must be a logging level name, got {level!r}")
        return cls(
            max_level_cap=_env_int("OKOUNKOV_MAX_LEVEL_CAP", DEFAULT_MAX_LEVEL_CAP),
            witness_cap=_env_int("OKOUNKOV_WITNESS_CAP", DEFAULT_WITNESS_CAP),
            log_level=level,
        )

    def check_max_level(self, K: int) -> int:
        if not isinstance(K, int) or isinstance(K, bool) or K < 1:
            raise ConfigError(f"max_level must be a positive integer, got {K!r}")
        if K > self.max_level_cap:
            raise ConfigError(f"max_level {K} exceeds OKOUNKOV_MAX_LEVEL_CAP = {self.max_level_cap}")
        if K > self.max_level_cap // 2:
            logger.warning(f"max_level {K} is close to the cap {self.max_level_cap}; expect long runtimes")
        return K


@dataclass(frozen=True)
class RunConfig:
    """A parsed config file: model, flag and the optional [run] parameters."""
    model: Model
    flag: FlagSpec
    run: Dict[str, Any] = field(default_factory=dict)
    source: Optional[Path] = None

    @property
    def max_level(self) -> int:
        return int(self.run.get("max_level", 1))

    def get(self, key: str, default: Any = None) -> Any:
        return self.run.get(key, default)

    def to_dict(self) -> Dict[str, Any]:
        return {"model": self.model.to_dict(), "flag": self.flag.to_dict(), "run": dict(self.run)}


def _read_tables(path: Path) -> Dict[str, Any]:
    try:
        if path.suffix == ".json":
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        with open(path, "rb") as f:
            return tomllib.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"Config file not found: {path}") from e
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"Cannot parse {path}: {e}") from e


def parse_run_config(data: Dict[str, Any], source: Optional[Path] = None) -> RunConfig:
    """
    Build a RunConfig from already-loaded tables.

    Raises:
        ConfigError: If a table is missing or malformed
    """
    if not isinstance(data, dict):
        raise ConfigError("Config root must be a table")
    for key in ("model", "flag"):
        if key not in data:
            raise ConfigError(f"Config is missing the [{key}] table")
    model = model_from_config(data["model"])
    flag = flag_from_config(data["flag"], model)
    run = data.get("run", {})
    if not isinstance(run, dict):
        raise ConfigError("[run] must be a table")
    unknown = set(run) - RUN_KEYS
    if unknown:
        raise ConfigError(f"Unknown [run] keys: {sorted(unknown)}")
    return RunConfig(model, flag, dict(run), source)


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Read a .toml or .json run config."""
    path = Path(path)
    config = parse_run_config(_read_tables(path), path)
    logger.info(f"Loaded {config.model} with a {config.flag.variant} flag from {path}")
    return config


def configure_logging(settings: Settings) -> None:
    """Entry-point logging setup; writes to standard error."""
    logging.basicConfig(level=settings.log_level, format=LOG_FORMAT, stream=sys.stderr)
