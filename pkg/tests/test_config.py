import argparse
import io
import json
import logging

import pytest

from fuforge.application_manager import ApplicationManager, run_partitioned
from fuforge.config import config_manager
from fuforge.config.config import get_app_paths, load_app_info
from fuforge.config.config_manager import ConfigManager, RunConfig, resolve_run_config
from fuforge.db.cache_controller import ResultCache
from fuforge.log import LOG_FORMAT, setup_logging


def _args(**values):
    return argparse.Namespace(**values)


# --- Stored configuration ---

def test_missing_config_gives_defaults():
    assert ConfigManager.load() == ConfigManager.get_defaults()


def test_save_and_load_round_trip(tmp_path):
    path = str(tmp_path / "conf" / "config.json")
    stored = dict(ConfigManager.get_defaults(), seed=7, workers=3)
    ConfigManager.save(stored, path)
    assert ConfigManager.load(path) == stored


def test_unknown_keys_are_dropped(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"seed": 5, "colour": "red"}), encoding="utf-8")
    loaded = ConfigManager.load(str(path))
    assert loaded["seed"] == 5
    assert "colour" not in loaded
    assert loaded["budget"] == ConfigManager.get_defaults()["budget"]


@pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
def test_corrupt_config_falls_back_to_defaults(tmp_path, content):
    path = tmp_path / "config.json"
    path.write_text(content, encoding="utf-8")
    assert ConfigManager.load(str(path)) == ConfigManager.get_defaults()


def test_default_config_path_is_patched(isolated_config):
    ConfigManager.save(dict(ConfigManager.get_defaults(), seed=99))
    assert (isolated_config / "config" / "config.json").exists()
    assert ConfigManager.load()["seed"] == 99
    assert config_manager.CONF_PATH.startswith(str(isolated_config))


# --- Run configuration ---

def test_flags_override_the_stored_file():
    stored = dict(ConfigManager.get_defaults(), seed=1, budget=10)
    config = resolve_run_config("search", _args(seed=2, budget=None, workers=None, json=True), stored)
    assert (config.seed, config.budget) == (2, 10)
    assert config.output_format == "json"
    assert config.use_cache and not config.oracle


def test_cache_path_precedence(monkeypatch, tmp_path):
    stored = dict(ConfigManager.get_defaults(), cache_path=str(tmp_path / "file.jsonl"))
    monkeypatch.setenv("FUFORGE_CACHE", str(tmp_path / "env.jsonl"))
    assert resolve_run_config("search", _args(), stored).cache_path.endswith("env.jsonl")
    flagged = resolve_run_config("search", _args(cache=str(tmp_path / "flag.jsonl")), stored)
    assert flagged.cache_path.endswith("flag.jsonl")
    monkeypatch.delenv("FUFORGE_CACHE")
    assert resolve_run_config("search", _args(), stored).cache_path.endswith("file.jsonl")


@pytest.mark.parametrize("field, value", [("budget", 0), ("workers", 0), ("output_format", "xml")])
def test_run_config_validation(field, value):
    values = dict(subcommand="verify", seed=1, budget=10)
    values[field] = value
    with pytest.raises(ValueError):
        RunConfig(**values)


def test_app_paths_create_the_cache_dir(tmp_path):
    paths = get_app_paths(str(tmp_path / "deep" / "results.jsonl"))
    assert paths["CACHE_DIR"] == str(tmp_path / "deep")
    assert (tmp_path / "deep").is_dir()
    assert paths["APP_INFO"]["service_name"] == "fuforge"


def test_app_paths_default_to_the_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("FUFORGE_CACHE", str(tmp_path / "env" / "results.jsonl"))
    assert get_app_paths()["CACHE_PATH"] == str(tmp_path / "env" / "results.jsonl")


def test_app_info():
    info = load_app_info()
    assert info["version"]
    assert info["service_name"] == "fuforge"


# --- Result cache ---

def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "cache" / "results.jsonl")
    cache = ResultCache(path, "1.0.0")
    key = ResultCache.key_for({"domain": "fs", "k": 2})
    assert key not in cache
    cache.put(key, {"result": "none"})
    reopened = ResultCache(path, "1.0.0")
    assert reopened.get(key) == {"result": "none"}
    assert len(reopened) == 1


def test_cache_keys_ignore_key_order():
    assert ResultCache.key_for({"a": 1, "b": [1, 2]}) == ResultCache.key_for({"b": [1, 2], "a": 1})
    assert ResultCache.key_for({"a": 1}) != ResultCache.key_for({"a": 2})


def test_cache_skips_corrupt_and_stale_lines(tmp_path):
    path = tmp_path / "results.jsonl"
    good = {"key": "k1", "version": "1.0.0", "result": {"x": 1}}
    stale = {"key": "k2", "version": "0.9.0", "result": {"x": 2}}
    path.write_text("\n".join([json.dumps(good), "{broken", json.dumps({"key": "k3"}),
                               json.dumps(stale), ""]), encoding="utf-8")
    cache = ResultCache(str(path), "1.0.0")
    assert cache.get("k1") == {"x": 1}
    assert "k2" not in cache
    assert len(cache) == 1


# --- Application manager ---

def _config(**overrides):
    values = dict(subcommand="search", seed=1, budget=100, use_cache=False)
    values.update(overrides)
    return RunConfig(**values)


def test_run_partitioned_keeps_chunk_order():
    assert run_partitioned(abs, [-3, 1, -2]) == [3, 1, 2]
    assert run_partitioned(abs, [-3, 1, -2], workers=2) == [3, 1, 2]


def test_mapper_only_with_workers():
    assert ApplicationManager(_config()).mapper is None
    mapper = ApplicationManager(_config(workers=2)).mapper
    assert mapper(abs, [-1, -2]) == [1, 2]


def test_cached_computes_once(tmp_path):
    app = ApplicationManager(_config(use_cache=True, cache_path=str(tmp_path / "c.jsonl")))
    calls = []

    def compute():
        calls.append(1)
        return {"result": 42}

    assert app.cached({"q": 1}, compute) == ({"result": 42}, False)
    assert app.cached({"q": 1}, compute) == ({"result": 42}, True)
    assert len(calls) == 1


def test_cached_respects_store_predicate(tmp_path):
    app = ApplicationManager(_config(use_cache=True, cache_path=str(tmp_path / "c.jsonl")))
    app.cached({"q": 2}, lambda: {"result": "unresolved"}, store=lambda res: False)
    assert len(app.cache) == 0


def test_emit_json_is_canonical():
    out = io.StringIO()
    ApplicationManager(_config(output_format="json"), out=out).emit({"b": 1, "a": [2]}, ["ignored"])
    assert out.getvalue() == '{"a": [2], "b": 1}\n'


def test_emit_text_and_timing():
    out = io.StringIO()
    ApplicationManager(_config(timing=True), out=out).emit({"a": 1}, ["line one", "line two"])
    lines = out.getvalue().splitlines()
    assert lines[:2] == ["line one", "line two"]
    assert lines[2].startswith("wall_time=")


# --- Logging ---

def test_setup_logging_installs_one_handler():
    setup_logging("DEBUG")
    setup_logging("WARNING")
    logger = logging.getLogger("fuforge")
    handlers = [h for h in logger.handlers if getattr(h, "_fuforge", False)]
    assert len(handlers) == 1
    assert handlers[0].formatter._fmt == LOG_FORMAT
    assert logger.level == logging.WARNING
