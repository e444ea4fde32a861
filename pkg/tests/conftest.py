"""
Shared fixtures
"""
import json

import pytest

from core.cosets import CosetProfile
from core.field import build_tower


@pytest.fixture
def tower_9_4():
    """GF(9) ⊂ GF(81), r = 4, n = 10 (shape L1)."""
    return build_tower(CosetProfile(9, 4, 10))


@pytest.fixture
def tower_5_2():
    """GF(5) ⊂ GF(25), r = 2, n = 6 (shape L1)."""
    return build_tower(CosetProfile(5, 2, 6))


@pytest.fixture
def run_cli(tmp_path, monkeypatch, capsys):
    """Runs the entry point with an empty settings file; returns (exit code, stdout, stderr)."""
    from main import App
    from utils.constants import BUDGET_ENV_VAR

    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    settings = tmp_path / "none.json"

    def run(*argv):
        code = App.main([*argv, "--settings", str(settings), "--workers", "1"])
        out, err = capsys.readouterr()
        return code, out, err

    return run


@pytest.fixture
def run_cli_json(run_cli):
    def run(*argv):
        code, out, err = run_cli(*argv, "--json")
        return code, json.loads(out) if out else None
    return run
