"""
Settings Test Suite

Test Coverage:
- ${VAR:-default} expansion in nested YAML values
- Environment overrides through the process-wide cache
- TROPDEG_CONFIG pointing at another file
- Missing file falls back to defaults; invalid values are rejected
- Default grid shape and the Python floor declared in the manifest

Usage:
    pytest tests/test_settings.py -v
"""

import logging

import pytest

from tropdeg.algebra.scalars import ExtRat, PerturbedScalar
from tropdeg.settings import (
    PROJECT_ROOT,
    expand_placeholders,
    get_settings,
    load_settings,
    reset_settings_cache,
)


def test_placeholders_expand_recursively():
    raw = {"a": "${X:-1}", "b": ["${Y:-two}", 3], "c": {"d": "${Z}"}}
    expanded = expand_placeholders(raw, {"Y": "seven"})
    assert expanded == {"a": "1", "b": ["seven", 3], "c": {"d": ""}}


def test_empty_variable_uses_the_default():
    assert expand_placeholders("${X:-5}", {"X": ""}) == "5"


def test_bundled_defaults(monkeypatch):
    for name in ("TROPDEG_GRID_MAX", "TROPDEG_WORKERS", "TROPDEG_LOGGING_CONFIG", "TROPDEG_DEFAULT_SHAPE"):
        monkeypatch.delenv(name, raising=False)
    settings = load_settings()
    assert settings.budgets.grid_max == 200000
    assert settings.budgets.matching_enumeration == 8
    assert settings.runtime.workers == 1
    assert settings.runtime.default_shape == "simplex"
    assert settings.logging_config_path() == PROJECT_ROOT / "configs" / "logging.yaml"


def test_environment_overrides_reach_the_cache(monkeypatch):
    monkeypatch.setenv("TROPDEG_SEARCH_NODES", "17")
    reset_settings_cache()
    assert get_settings().budgets.search_nodes == 17
    assert get_settings() is get_settings()


def test_config_path_from_the_environment(tmp_path, monkeypatch):
    config = tmp_path / "custom.yaml"
    config.write_text("budgets:\n  candidate_depth: 0\nruntime:\n  default_shape: box\n")
    monkeypatch.setenv("TROPDEG_CONFIG", str(config))
    settings = load_settings()
    assert settings.budgets.candidate_depth == 0
    assert settings.budgets.grid_max == 200000
    assert settings.runtime.default_shape == "box"


def test_absolute_logging_path_is_kept(tmp_path):
    config = tmp_path / "custom.yaml"
    config.write_text(f"logging:\n  config_path: {tmp_path / 'log.yaml'}\n")
    assert load_settings(config).logging_config_path() == tmp_path / "log.yaml"


def test_missing_file_uses_defaults(tmp_path, caplog):
    with caplog.at_level(logging.WARNING, logger="tropdeg"):
        settings = load_settings(tmp_path / "absent.yaml")
    assert settings.budgets.search_nodes == 20000
    assert "not found" in caplog.text


def test_empty_file_uses_defaults(tmp_path):
    config = tmp_path / "empty.yaml"
    config.write_text("")
    assert load_settings(config).budgets.refine_halvings == 40


@pytest.mark.parametrize(
    "text",
    [
        "budgets:\n  grid_max: 0\n",
        "budgets:\n  search_nodes: many\n",
        "runtime:\n  default_shape: triangle\n",
    ],
)
def test_invalid_values_are_rejected(tmp_path, text):
    config = tmp_path / "bad.yaml"
    config.write_text(text)
    with pytest.raises(ValueError, match="Invalid settings"):
        load_settings(config)


def test_default_shape_from_the_environment(monkeypatch):
    monkeypatch.setenv("TROPDEG_DEFAULT_SHAPE", "box")
    reset_settings_cache()
    assert get_settings().runtime.default_shape == "box"


def test_manifest_supports_slotted_dataclasses():
    manifest = (PROJECT_ROOT / "pyproject.toml").read_text()
    assert 'requires-python = ">=3.10"' in manifest
    assert "__slots__" in vars(ExtRat)
    assert "__slots__" in vars(PerturbedScalar)
