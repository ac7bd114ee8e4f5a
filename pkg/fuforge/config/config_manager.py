"""
Application Configuration Management.

This module handles loading, saving, and providing default values for the
application's configuration, and resolves the per-run `RunConfig` from the
command line, the environment and the stored file.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Optional

from .config import CACHE_ENV, CONFIG_DIR_ENV

logger = logging.getLogger(__name__)

# --- Configuration Path Setup ---
# FUFORGE_CONFIG_DIR wins, then the XDG Base Directory location.
if os.environ.get(CONFIG_DIR_ENV):
    CONF_DIR = os.environ[CONFIG_DIR_ENV]
else:
    CONF_DIR = os.path.join(
        os.environ.get("XDG_CONFIG_HOME") or os.path.expanduser("~/.config"), "fuforge")
CONF_PATH = os.path.join(CONF_DIR, "config.json")


class ConfigManager:
    """
    Manages loading and saving of the application's configuration file.
    """
    @staticmethod
    def get_defaults() -> dict:
        """
        Returns the default configuration dictionary.
        """
        cache_home = os.environ.get("XDG_CACHE_HOME") or os.path.expanduser("~/.cache")
        return {
            "cache_path": os.path.join(cache_home, "fuforge", "results.jsonl"),
            "workers": 1,
            "seed": 20240601,
            "budget": 2_000_000,
            "log_level": "INFO",
            "universe": 64,
            "pow2_length": 13,
            "max_enumeration_length": 24,
            "naive_budget": 2 ** 16,
            "growth_trials": 1000,
            "heredity_trials": 200,
        }

    @classmethod
    def load(cls, path: Optional[str] = None) -> dict:
        """
        Loads the configuration from `config.json`.

        A missing file yields the defaults without touching the disk; an
        unreadable one is logged and replaced by the defaults. Loaded values
        are merged over the defaults so that keys added in later versions are
        always present.

        Args:
            path: An explicit config file, mainly for tests.

        Returns:
            A dictionary containing the application configuration.
        """
        conf_path = path or CONF_PATH
        defaults = cls.get_defaults()
        if not os.path.exists(conf_path):
            return defaults

        try:
            with open(conf_path, "r", encoding="utf-8") as f:
                loaded_config = json.load(f)
            if not isinstance(loaded_config, dict):
                raise ValueError("top level is not an object")
            config = defaults.copy()
            config.update({k: v for k, v in loaded_config.items() if k in defaults})
            return config
        except (json.JSONDecodeError, OSError, ValueError) as e:
            logger.warning("Error loading '%s'. Resetting to defaults. Error: %s", conf_path, e)
            return defaults

    @staticmethod
    def save(config_dict: dict, path: Optional[str] = None):
        """
        Saves the given configuration dictionary to `config.json`.

        Args:
            config_dict: The configuration dictionary to save.
            path: An explicit config file, mainly for tests.
        """
        conf_path = path or CONF_PATH
        try:
            os.makedirs(os.path.dirname(conf_path) or ".", exist_ok=True)
            with open(conf_path, "w", encoding="utf-8") as f:
                json.dump(config_dict, f, ensure_ascii=False, indent=4)
        except OSError as e:
            logger.error("Could not save config to '%s': %s", conf_path, e)


@dataclass(frozen=True)
class RunConfig:
    """The resolved settings of one CLI invocation."""
    subcommand: str
    seed: int
    budget: int
    workers: int = 1
    output_format: str = "text"
    cache_path: Optional[str] = None
    use_cache: bool = True
    oracle: bool = False
    timing: bool = False
    pow2_length: int = 13
    max_enumeration_length: int = 24
    naive_budget: int = 2 ** 16
    growth_trials: int = 1000
    heredity_trials: int = 200
    extras: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.workers <= 0:
            raise ValueError("workers must be positive")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


def resolve_run_config(subcommand: str, args, stored: Optional[dict] = None) -> RunConfig:
    """
    Builds a RunConfig with precedence flag > environment > file > defaults.

    Args:
        subcommand: The CLI subcommand being run.
        args: The parsed argparse namespace (missing attributes are ignored).
        stored: A loaded configuration dictionary; loaded from disk if omitted.

    Returns:
        The frozen RunConfig for this invocation.
    """
    stored = stored if stored is not None else ConfigManager.load()

    def pick(name, key=None):
        value = getattr(args, name, None)
        return stored[key or name] if value is None else value

    cache_path = getattr(args, "cache", None) or os.environ.get(CACHE_ENV) or stored["cache_path"]
    return RunConfig(
        subcommand=subcommand,
        seed=int(pick("seed")),
        budget=int(pick("budget")),
        workers=int(pick("workers")),
        output_format="json" if getattr(args, "json", False) else "text",
        cache_path=os.path.expanduser(cache_path) if cache_path else None,
        use_cache=not getattr(args, "no_cache", False),
        oracle=bool(getattr(args, "oracle", False)),
        timing=bool(getattr(args, "timing", False)),
        pow2_length=int(stored["pow2_length"]),
        max_enumeration_length=int(stored["max_enumeration_length"]),
        naive_budget=int(stored["naive_budget"]),
        growth_trials=int(stored["growth_trials"]),
        heredity_trials=int(stored["heredity_trials"]),
    )
