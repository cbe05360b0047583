"""Construction constants and the optional YAML configuration file."""

import os
import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional, Dict, Any, Union

import yaml

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "~/.config/trirep/config.yaml"

# Default config values
DEFAULT_CONFIG: Dict[str, Any] = {
    # x1 distance between consecutive spheres in R3
    "sphere_offset": Fraction(5),
    # height of the across leg of a tunnel bridge above the face plane
    "bridge_rise": Fraction(5),
    # x2 plane holding isolated triangles of all-zero coordinates in R3
    "isolated_plane": Fraction(-5),
    "isolated_spacing": Fraction(3),
    # edge length of the R4 cubes
    "cube_size": Fraction(1),
    # largest code dimension the exhaustive 2-basis oracle accepts
    "oracle_max_dim": 6,
    # process count for embedding validation
    "workers": 1,
}

_INTEGER_KEYS = {"oracle_max_dim", "workers"}


def to_fraction(value: Union[str, int, float, Fraction]) -> Fraction:
    """Parse "p/q", integers and decimal strings into an exact Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"Not a rational value: {value!r}")
    if isinstance(value, float):
        # YAML floats such as 0.5 are taken at their decimal spelling
        return Fraction(str(value))
    return Fraction(value)


def _coerce(key: str, value: Any) -> Any:
    if key in _INTEGER_KEYS:
        number = int(value)
        if number < 1:
            raise ValueError(f"{key} must be positive, got {number}")
        return number
    return to_fraction(value)


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from a YAML file or use defaults.

    Args:
        path: Explicit config file. Defaults to ~/.config/trirep/config.yaml,
            which is optional.

    Returns:
        Dictionary of construction constants
    """
    config = DEFAULT_CONFIG.copy()
    config_file = Path(os.path.expanduser(path or DEFAULT_CONFIG_PATH))

    if not config_file.exists():
        if path:
            logger.warning(f"Config file not found: {config_file}")
        else:
            logger.debug(f"No config file at {config_file}, using defaults")
        return config

    try:
        with open(config_file, "r", encoding="utf-8") as f:
            file_config = yaml.safe_load(f) or {}
    except (yaml.YAMLError, IOError, UnicodeDecodeError) as e:
        logger.error(f"Failed to load config from {config_file}: {e}")
        return config

    if not isinstance(file_config, dict):
        logger.error(f"Config file {config_file} must hold a mapping")
        return config

    for key, value in file_config.items():
        if key not in DEFAULT_CONFIG:
            logger.warning(f"Ignoring unknown config key '{key}'")
            continue
        try:
            config[key] = _coerce(key, value)
        except (ValueError, TypeError, ZeroDivisionError) as e:
            logger.error(f"Invalid value for '{key}' in {config_file}: {e}")

    logger.debug(f"Loaded config from {config_file}")
    return config


def resolve_config(config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Fill a partial configuration with defaults."""
    merged = DEFAULT_CONFIG.copy()
    if config:
        merged.update(config)
    return merged
