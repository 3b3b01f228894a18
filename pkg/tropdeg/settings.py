"""
Runtime Settings for tropdeg

Loads budgets and runtime defaults from ``configs/tropdeg.yaml``. Values may
reference environment variables with the ``${VAR:-default}`` syntax, so a
``.env`` file or the process environment can override any budget without
editing the YAML.

Features:
- YAML loading with environment placeholder expansion
- pydantic validation of every budget (positive integers)
- Built-in defaults with a warning when the file is missing
- Process-wide cache with explicit reset for tests

Usage:
    from tropdeg.settings import get_settings

    budgets = get_settings().budgets
    if size > budgets.rank_bruteforce:
        ...
"""

from __future__ import annotations

import logging
import os
import re
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "configs" / "tropdeg.yaml"

_PLACEHOLDER = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)(?::-([^}]*))?\}")


class BudgetSettings(BaseModel):
    """Explicit limits for the exhaustive parts of the library."""

    matching_enumeration: int = Field(8, ge=1)
    rank_bruteforce: int = Field(8, ge=1)
    search_nodes: int = Field(20000, ge=1)
    candidate_depth: int = Field(2, ge=0)
    grid_max: int = Field(200000, ge=1)
    refine_halvings: int = Field(40, ge=1)
    co_ordered_halvings: int = Field(64, ge=1)


class RuntimeSettings(BaseModel):
    workers: int = Field(1, ge=1)
    default_shape: str = Field("simplex", pattern="^(simplex|box)$")


class LoggingSettings(BaseModel):
    config_path: str = "configs/logging.yaml"


class TropdegSettings(BaseModel):
    """Validated view of ``configs/tropdeg.yaml``."""

    budgets: BudgetSettings = Field(default_factory=BudgetSettings)
    runtime: RuntimeSettings = Field(default_factory=RuntimeSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    def logging_config_path(self) -> Path:
        path = Path(self.logging.config_path)
        return path if path.is_absolute() else PROJECT_ROOT / path


def expand_placeholders(value: Any, environ: Optional[Dict[str, str]] = None) -> Any:
    """Recursively replace ``${VAR:-default}`` placeholders in loaded YAML."""

    env = os.environ if environ is None else environ
    if isinstance(value, dict):
        return {key: expand_placeholders(item, env) for key, item in value.items()}
    if isinstance(value, list):
        return [expand_placeholders(item, env) for item in value]
    if isinstance(value, str):
        def _substitute(match: "re.Match[str]") -> str:
            name, default = match.group(1), match.group(2)
            return env.get(name) or (default if default is not None else "")

        return _PLACEHOLDER.sub(_substitute, value)
    return value


def load_settings(
    config_path: Optional[Path] = None, environ: Optional[Dict[str, str]] = None
) -> TropdegSettings:
    """
    Load and validate settings from YAML.

    Args:
        config_path: explicit file; defaults to ``$TROPDEG_CONFIG`` or
            ``configs/tropdeg.yaml``
        environ: mapping used for placeholder expansion (defaults to os.environ)

    Raises:
        ValueError: if the file exists but fails validation
    """

    env = os.environ if environ is None else environ
    path = Path(config_path or env.get("TROPDEG_CONFIG") or DEFAULT_CONFIG_PATH)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = yaml.safe_load(handle) or {}
    except FileNotFoundError:
        logger.warning("Settings file not found at %s, using defaults", path)
        return TropdegSettings()

    try:
        return TropdegSettings.model_validate(expand_placeholders(raw, env))
    except ValidationError as exc:
        raise ValueError(f"Invalid settings in {path}: {exc}") from exc


@lru_cache(maxsize=1)
def get_settings() -> TropdegSettings:
    """Return the process-wide settings, loading them on first use."""

    return load_settings()


def reset_settings_cache() -> None:
    get_settings.cache_clear()
