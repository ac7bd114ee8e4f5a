import io
import json

import pytest

from fuforge import main as cli
from fuforge.config import config_manager


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keeps every test away from the real config file and result cache."""
    monkeypatch.setattr(config_manager, "CONF_PATH", str(tmp_path / "config" / "config.json"))
    monkeypatch.setenv("FUFORGE_CACHE", str(tmp_path / "cache" / "results.jsonl"))
    return tmp_path


@pytest.fixture
def run_cli():
    """Runs the CLI in-process and returns (exit code, stdout text)."""
    def run(*argv):
        out = io.StringIO()
        code = cli.main(list(argv), out=out)
        return code, out.getvalue()
    return run


@pytest.fixture
def run_json(run_cli):
    def run(*argv):
        code, text = run_cli(*argv, "--json")
        return code, json.loads(text)
    return run
