"""
Settings for budgets, worker pools and rendering.

Settings come from a YAML file, either a bare mapping or one nested under a
top-level ``settings:`` key::

    settings:
      enumeration_budget: 5
      max_workers: 8
"""

import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from .exceptions import BudgetExceededError, ConfigurationError

CONFIG_ENV_VAR = "GROVE_MOVES_CONFIG"


@dataclass(frozen=True)
class Settings:
    """Tunable limits. All values are positive integers."""

    enumeration_budget: int = 5
    move_graph_budget: int = 4
    search_state_limit: int = 250_000
    recurrence_budget: int = 5
    max_workers: int = 4
    render_unit: int = 40
    render_radius: int = 3

    def check(self, budget: str, requested: int) -> None:
        """Raise BudgetExceededError if ``requested`` is above the named budget."""
        limit = getattr(self, budget)
        if requested > limit:
            raise BudgetExceededError(budget, requested, limit)

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


DEFAULT_SETTINGS = Settings()


def _coerce(data: Dict[str, Any], source: str) -> Settings:
    known = {f.name for f in fields(Settings)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigurationError(
            f"Unknown setting(s) in {source}: {', '.join(unknown)}"
        )
    values: Dict[str, int] = {}
    for key, value in data.items():
        # bool is an int subclass; reject it explicitly
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ConfigurationError(
                f"Setting '{key}' in {source} must be a positive integer, got {value!r}"
            )
        values[key] = value
    return replace(DEFAULT_SETTINGS, **values)


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """Load settings from ``path`` or from the file named by GROVE_MOVES_CONFIG.

    Args:
        path: Optional YAML file. When omitted the environment variable is
            consulted; when neither is set, defaults are returned.

    Returns:
        Settings: The merged settings.

    Raises:
        ConfigurationError: If the file cannot be read or has invalid content.
    """
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return DEFAULT_SETTINGS

    config_path = Path(path)
    if not config_path.exists():
        raise ConfigurationError(f"Settings file not found: {config_path}")
    try:
        data = yaml.safe_load(config_path.read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(
            f"Cannot read settings file {config_path}: {e}", original_error=e
        )

    if data is None:
        return DEFAULT_SETTINGS
    if isinstance(data, dict) and "settings" in data:
        data = data["settings"]
    if not isinstance(data, dict):
        raise ConfigurationError(
            f"Settings file {config_path} must contain a mapping"
        )
    return _coerce(data, str(config_path))
