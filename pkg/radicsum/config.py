"""
radicsum.config
===============

Run-time configuration of radicsum. Settings are read from an optional YAML
file named by the ``RADICSUM_CONFIG`` environment variable and from individual
``RADICSUM_*`` environment variables, which take precedence over the file.
"""
from dataclasses import dataclass, field
from functools import lru_cache
import logging
from numbers import Integral
import os
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from radicsum.definitions import (
    DEFAULT_CHUNK_SIZE,
    DEFAULT_LIMIT_TOLERANCE,
    DEFAULT_N_CAP,
    DEFAULT_N_VALUES,
    DEFAULT_R_VALUES,
)
from radicsum.errors import DomainError


LOGGER = logging.getLogger(__name__)

ENV_VARIABLES = {
    "n_cap": ("RADICSUM_N_CAP", int),
    "chunk_size": ("RADICSUM_CHUNK_SIZE", int),
    "oracle_workers": ("RADICSUM_ORACLE_WORKERS", int),
    "grid_workers": ("RADICSUM_GRID_WORKERS", int),
    "limit_tolerance": ("RADICSUM_LIMIT_TOLERANCE", float),
}


def to_integer(value: Any) -> int:
    """
    Convert a value to an integer without truncating it.

    Strings in exponent notation such as '1e9' are accepted as long as they
    denote a whole number.

    Raises:
        ValueError: If the value is not a whole number.
    """
    if isinstance(value, bool):
        raise ValueError(f"Expected an integer, got '{value}'.")
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    number = float(value)
    if not number.is_integer():
        raise ValueError(f"Expected an integer, got '{value}'.")
    return int(number)


def get_config_attr(
        name: str,
        constr: type,
        config_dict: Dict[str, Any],
        what: str,
        default: Any = None,
        required: bool = False
) -> Any:
    """
    Get a configuration attribute from a dictionary of settings.

    Args:
        name: The name of the attribute.
        constr: Constructor used to convert the raw value.
        config_dict: The dictionary holding the settings.
        what: Description of the configuration section used in error
            messages.
        default: Value returned if the attribute is absent.
        required: If 'True', a missing attribute raises an error.

    Return:
        The converted attribute value or the default.
    """
    if name not in config_dict:
        if required:
            raise DomainError(
                f"Expected attribute '{name}' in {what} but it is missing."
            )
        return default
    value = config_dict[name]
    try:
        if constr is int:
            return to_integer(value)
        return constr(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(
            f"Attribute '{name}' in {what} must be convertible to "
            f"{constr.__name__}, got '{value}'."
        ) from exc


@dataclass(frozen=True)
class RadicsumConfig:
    """
    Settings shared by the oracles, the calculus routines and the experiments.

    Attributes:
        n_cap: Largest n accepted by the brute-force oracles.
        chunk_size: Number of terms evaluated per vectorized block.
        oracle_workers: Number of processes over which a single oracle sum
            is range-partitioned. 1 means sequential and bit-reproducible.
        grid_workers: Number of processes used to evaluate independent grid
            or ladder points.
        limit_tolerance: Largest accepted difference between the last two
            extrapolants of a limit.
        n_values: Default n grid of the experiments.
        r_values: Default r grid of the experiments.
    """
    n_cap: int = DEFAULT_N_CAP
    chunk_size: int = DEFAULT_CHUNK_SIZE
    oracle_workers: int = 1
    grid_workers: int = 1
    limit_tolerance: float = DEFAULT_LIMIT_TOLERANCE
    n_values: Tuple[int, ...] = field(default=DEFAULT_N_VALUES)
    r_values: Tuple[float, ...] = field(default=DEFAULT_R_VALUES)

    def __post_init__(self):
        if self.n_cap < 1:
            raise DomainError("The oracle cap 'n_cap' must be at least 1.")
        if self.chunk_size < 1:
            raise DomainError("'chunk_size' must be positive.")
        if self.oracle_workers < 1 or self.grid_workers < 1:
            raise DomainError("Worker counts must be positive.")
        if not self.limit_tolerance > 0:
            raise DomainError("'limit_tolerance' must be positive.")

    @classmethod
    def parse(cls, config_dict: Dict[str, Any]) -> "RadicsumConfig":
        """
        Parse configuration from a dictionary of settings.

        Args:
            config_dict: Dictionary as loaded from a YAML config file, with
                environment overrides already applied.

        Return:
            A RadicsumConfig object holding the settings.
        """
        what = "radicsum configuration"
        n_cap = get_config_attr("n_cap", int, config_dict, what, DEFAULT_N_CAP)
        chunk_size = get_config_attr(
            "chunk_size", int, config_dict, what, DEFAULT_CHUNK_SIZE
        )
        oracle_workers = get_config_attr("oracle_workers", int, config_dict, what, 1)
        grid_workers = get_config_attr("grid_workers", int, config_dict, what, 1)
        limit_tolerance = get_config_attr(
            "limit_tolerance", float, config_dict, what, DEFAULT_LIMIT_TOLERANCE
        )
        grid = get_config_attr("grid", dict, config_dict, what, {})
        n_values = get_config_attr(
            "n_values", list, grid, "grid configuration", list(DEFAULT_N_VALUES)
        )
        r_values = get_config_attr(
            "r_values", list, grid, "grid configuration", list(DEFAULT_R_VALUES)
        )
        try:
            n_values = tuple(to_integer(n) for n in n_values)
            r_values = tuple(float(r) for r in r_values)
        except (TypeError, ValueError) as exc:
            raise DomainError(
                "The grid configuration must list integer n values and real r "
                f"values, got {n_values} and {r_values}."
            ) from exc
        return cls(
            n_cap=n_cap,
            chunk_size=chunk_size,
            oracle_workers=oracle_workers,
            grid_workers=grid_workers,
            limit_tolerance=limit_tolerance,
            n_values=n_values,
            r_values=r_values,
        )


def read_config_file(path: Optional[Path]) -> Dict[str, Any]:
    """
    Read settings from a YAML file.

    Args:
        path: Path to the YAML file or 'None'.

    Return:
        The dictionary of settings, empty if no path is given.
    """
    if path is None:
        return {}
    path = Path(path)
    if not path.exists():
        raise DomainError(f"The config file '{path}' does not exist.")
    with open(path) as config_file:
        settings = yaml.safe_load(config_file)
    if settings is None:
        return {}
    if not isinstance(settings, dict):
        raise DomainError(
            f"The config file '{path}' must contain a mapping of settings."
        )
    return settings


def _config_file_key(path: Optional[str]) -> Optional[Tuple[str, int, int]]:
    """
    Identify the state of the config file by path, modification time and size.
    """
    if path is None:
        return None
    try:
        stat = os.stat(path)
    except OSError as exc:
        raise DomainError(f"The config file '{path}' does not exist.") from exc
    return (path, stat.st_mtime_ns, stat.st_size)


@lru_cache(maxsize=16)
def _load_config(
        file_key: Optional[Tuple[str, int, int]],
        overrides: Tuple[Tuple[str, str], ...]
) -> RadicsumConfig:
    settings = read_config_file(None if file_key is None else file_key[0])
    for name, value in overrides:
        settings[name] = value
    config = RadicsumConfig.parse(settings)
    LOGGER.debug("Loaded configuration %s.", config)
    return config


def get_config() -> RadicsumConfig:
    """
    Return the active configuration.

    The environment is checked on every call, so changes to the
    ``RADICSUM_*`` variables take effect immediately. The config file is only
    parsed again when its modification time or size changes.
    """
    file_key = _config_file_key(os.environ.get("RADICSUM_CONFIG", None))
    overrides = []
    for name, (variable, _) in ENV_VARIABLES.items():
        value = os.environ.get(variable, None)
        if value is not None:
            overrides.append((name, value))
    return _load_config(file_key, tuple(overrides))
