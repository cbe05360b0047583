"""Tests for configuration loading."""

from fractions import Fraction
from unittest.mock import patch

import pytest

from trirep.config import DEFAULT_CONFIG, load_config, resolve_config, to_fraction


# Test rational parsing
def test_to_fraction():
    assert to_fraction("7/2") == Fraction(7, 2)
    assert to_fraction(3) == 3
    assert to_fraction(0.1) == Fraction(1, 10)
    with pytest.raises(ValueError):
        to_fraction(True)


# Test defaults when no file exists
def test_load_config_defaults(tmp_path):
    with patch.dict("os.environ", {"HOME": str(tmp_path)}):
        config = load_config()
    assert config == DEFAULT_CONFIG


# Test values from a YAML file
@patch("trirep.config.logger")
def test_load_config_file(mock_logger, tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("sphere_offset: 7/2\nbridge_rise: 6\ncube_size: 0.5\nworkers: 2\nbogus: 1\n")
    config = load_config(str(path))
    assert config["sphere_offset"] == Fraction(7, 2)
    assert config["bridge_rise"] == 6
    assert config["cube_size"] == Fraction(1, 2)
    assert config["workers"] == 2
    assert "bogus" not in config
    mock_logger.warning.assert_called_once_with("Ignoring unknown config key 'bogus'")


# Test invalid values keep the default
@patch("trirep.config.logger")
def test_load_config_invalid(mock_logger, tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("workers: 0\nsphere_offset: abc\n")
    config = load_config(str(path))
    assert config["workers"] == DEFAULT_CONFIG["workers"]
    assert config["sphere_offset"] == DEFAULT_CONFIG["sphere_offset"]
    assert mock_logger.error.call_count == 2


# Test a missing explicit file warns
@patch("trirep.config.logger")
def test_load_config_missing(mock_logger, tmp_path):
    config = load_config(str(tmp_path / "nope.yaml"))
    assert config == DEFAULT_CONFIG
    mock_logger.warning.assert_called_once()


# Test a file that is not a mapping
@patch("trirep.config.logger")
def test_load_config_not_mapping(mock_logger, tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("- 1\n- 2\n")
    assert load_config(str(path)) == DEFAULT_CONFIG
    mock_logger.error.assert_called_once()


# Test partial configs are completed
def test_resolve_config():
    config = resolve_config({"cube_size": Fraction(2)})
    assert config["cube_size"] == 2
    assert config["sphere_offset"] == DEFAULT_CONFIG["sphere_offset"]
    assert resolve_config(None) == DEFAULT_CONFIG
