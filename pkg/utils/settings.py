"""
Run settings: defaults < settings file < environment < command line
"""
import json
import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from core.errors import ConfigError
from utils.constants import (
    BUDGET_ENV_VAR,
    DEFAULT_BUDGET,
    FIELD_ORDER_CEILING,
    MODULUS_TABLE_FILE,
    SETTINGS_FILE,
)

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class Settings:
    """
    Effective configuration of one run.

    Attributes:
        budget: Elementary operation budget per certificate
        field_ceiling: Largest field order the workbench will build
        modulus_table: Path of the shipped or user modulus table
        search_moduli: Search an irreducible polynomial when the table has none
        workers: Table regeneration processes; None means one per physical core
        log_level: Root logging level
        log_to_file: Also log to ~/.config/constamax/constamax.log
    """
    budget: int = DEFAULT_BUDGET
    field_ceiling: int = FIELD_ORDER_CEILING
    modulus_table: Path = MODULUS_TABLE_FILE
    search_moduli: bool = True
    workers: Optional[int] = None
    log_level: str = "WARNING"
    log_to_file: bool = False

    def __post_init__(self):
        if not isinstance(self.budget, int) or self.budget <= 0:
            raise ConfigError(f"budget must be a positive integer, got {self.budget!r}")
        if not isinstance(self.field_ceiling, int) or self.field_ceiling < 2:
            raise ConfigError(f"field_ceiling must be an integer >= 2, got {self.field_ceiling!r}")
        if self.workers is not None and (not isinstance(self.workers, int) or self.workers < 1):
            raise ConfigError(f"workers must be a positive integer, got {self.workers!r}")
        level = str(self.log_level).upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"log_level must be one of {', '.join(LOG_LEVELS)}, got {self.log_level!r}")
        object.__setattr__(self, "log_level", level)
        object.__setattr__(self, "modulus_table", Path(self.modulus_table).expanduser())

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Copy with the non-None overrides applied."""
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ConfigError(f"unknown settings: {', '.join(sorted(unknown))}")
        applied = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **applied) if applied else self

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["modulus_table"] = str(self.modulus_table)
        return data


def _read_settings_file(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Settings file {path} unreadable, using defaults: {e}")
        return {}
    if not isinstance(data, dict):
        logger.error(f"Settings file {path} must hold a JSON object, ignoring it")
        return {}
    known = {f.name for f in fields(Settings)}
    for key in sorted(set(data) - known):
        logger.warning(f"Unknown setting '{key}' in {path} ignored")
    return {key: value for key, value in data.items() if key in known}


def _read_environment() -> Dict[str, Any]:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None or not raw.strip():
        return {}
    try:
        return {"budget": int(raw.strip().replace("_", ""))}
    except ValueError:
        raise ConfigError(f"{BUDGET_ENV_VAR}={raw!r} is not an integer") from None


def load_settings(path: Optional[Path] = None, **overrides: Any) -> Settings:
    """
    Builds the effective settings.

    Args:
        path: Settings file; ~/.config/constamax/settings.json when omitted
        **overrides: Command-line values; None entries are ignored

    Returns:
        Settings: Merged and validated settings
    """
    values: Dict[str, Any] = {}
    values.update(_read_settings_file(Path(path) if path else SETTINGS_FILE))
    values.update(_read_environment())
    settings = Settings(**values).with_overrides(**overrides)
    logger.debug(f"Settings: {settings.to_dict()}")
    return settings
