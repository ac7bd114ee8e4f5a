"""
Application-wide Constants and Path Definitions.

This module centralizes the definition of paths, metadata, and other constants
used throughout the application.
"""
import json
import logging
import os
import tempfile
from typing import Optional

logger = logging.getLogger(__name__)

# --- Path Constants ---
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
APP_INFO_FILE = os.path.join(BASE_DIR, "../app_info.json")

# --- Environment Overrides ---
CACHE_ENV = "FUFORGE_CACHE"
CONFIG_DIR_ENV = "FUFORGE_CONFIG_DIR"

# --- Exit Codes ---
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_UNRESOLVED = 3

# Names accepted by `verify`; the first ten are the published suites.
VERIFY_SUITES = (
    "tricks", "idempotent", "galvin", "growth", "unique-sums",
    "trivial-sum", "uzn", "telescoping", "carry-bound", "parity-core",
    "heredity",
)

SEARCH_DOMAINS = ("fs", "fs-threshold", "fu", "pairs")


def load_app_info() -> dict:
    """
    Loads application metadata (version, author, etc.) from app_info.json.

    Returns:
        A dictionary containing the application's metadata.
    """
    with open(APP_INFO_FILE, "r", encoding="utf-8") as f:
        return json.load(f)


def get_app_paths(cache_path: Optional[str] = None) -> dict:
    """
    Resolves and returns a dictionary of essential application paths.

    The cache directory is created if necessary, falling back to a temporary
    directory when the requested location is not writable.

    Args:
        cache_path: The resolved cache file; the configured default when omitted.

    Returns:
        A dictionary containing key application paths.
    """
    if not cache_path:
        # Avoid circular import by importing ConfigManager only when needed.
        from .config_manager import ConfigManager
        cache_path = os.environ.get(CACHE_ENV) or ConfigManager.get_defaults()["cache_path"]

    cache_path = os.path.expanduser(cache_path)
    try:
        os.makedirs(os.path.dirname(cache_path) or ".", exist_ok=True)
    except OSError as e:
        logger.error("Failed to create cache directory at %s: %s", os.path.dirname(cache_path), e)
        fallback_dir = os.path.join(tempfile.gettempdir(), "fuforge_fallback")
        os.makedirs(fallback_dir, exist_ok=True)
        cache_path = os.path.join(fallback_dir, os.path.basename(cache_path) or "results.jsonl")
        logger.info("Using temporary fallback cache at: %s", cache_path)

    return {
        "APP_INFO": load_app_info(),
        "CACHE_DIR": os.path.dirname(cache_path),
        "CACHE_PATH": cache_path,
    }
