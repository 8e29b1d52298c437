import logging

import pytest

import config
from config.exceptions import (
    BoundExceeded,
    ComputationRefused,
    InternalInconsistency,
    NonMarkovTrace,
    NotHadamardError,
    PhaseParseError,
    SpecError,
)
from tests import update_config, get_config


def test_update_config_basic():
    """Test basic config update functionality"""

    original_config = get_config()()
    new_settings = {"batch_concurrency": 2}

    update_config(new_settings)
    updated_config = get_config()

    assert updated_config()["batch_concurrency"] == 2
    # Reset config to original state
    update_config(original_config)


def test_update_config_multiple_values():
    """Test updating multiple config values"""
    original_config = get_config()()
    new_settings = {
        "batch_concurrency": 8,
        "server_port": 9000,
    }

    update_config(new_settings)
    updated_config = get_config()

    assert updated_config()["batch_concurrency"] == 8
    assert updated_config()["server_port"] == 9000
    # Reset config to original state
    update_config(original_config)


def test_update_config_empty_dict():
    """Test updating with empty dictionary"""
    original_config = get_config()()
    update_config({})

    assert get_config()() == original_config


def test_update_config_new_key():
    """Test adding new key to config"""
    original_config = get_config()()
    new_settings = {"new_key": "new_value"}

    update_config(new_settings)
    updated_config = get_config()

    assert "new_key" in updated_config()
    assert updated_config()["new_key"] == "new_value"
    # Reset config to original state
    update_config(original_config)


def test_sub_config_defaults():
    assert config.get_group_config()["max_group_order"] == 4096
    assert config.get_graph_config()["default_radius"] == 2
    numerics = config.get_numerics_config()
    assert numerics["rank_tolerance"] == pytest.approx(1e-7)
    assert numerics["max_level2_size"] == 6


def test_sub_config_override():
    """A partial override is merged over the defaults"""
    original = config.get_numerics_config()
    update_config({"NUMERICS_CONFIGURATION": {"rank_tolerance": 1e-6}})
    try:
        numerics = config.get_numerics_config()
        assert numerics["rank_tolerance"] == pytest.approx(1e-6)
        assert numerics["guard_band"] == original["guard_band"]
    finally:
        update_config({"NUMERICS_CONFIGURATION": original})


def test_initialize_reads_environment(monkeypatch):
    original = config.get_group_config()
    monkeypatch.setenv("GROUP_CONFIGURATION", '{"automorphism_bound": 24}')
    monkeypatch.setenv("LOGGING_LEVEL", "debug")
    try:
        config.initialize()
        assert config.get_group_config()["automorphism_bound"] == 24
        assert config.get_config()["logging_level"] == logging.DEBUG
    finally:
        monkeypatch.delenv("GROUP_CONFIGURATION")
        monkeypatch.delenv("LOGGING_LEVEL")
        config.initialize()
    assert config.get_group_config() == original


def test_get_logger_requires_name():
    with pytest.raises(ValueError):
        config.get_logger("")


def test_exception_taxonomy():
    assert issubclass(PhaseParseError, SpecError)
    assert issubclass(NotHadamardError, SpecError)
    assert issubclass(SpecError, ValueError)
    assert issubclass(BoundExceeded, ComputationRefused)
    assert issubclass(NonMarkovTrace, InternalInconsistency)
    assert not issubclass(ComputationRefused, InternalInconsistency)
