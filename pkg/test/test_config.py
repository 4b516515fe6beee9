"""
Tests for the radicsum.config module.
"""
import pytest

import radicsum.config
from radicsum.config import RadicsumConfig, get_config, get_config_attr, to_integer
from radicsum.definitions import DEFAULT_N_CAP, DEFAULT_N_VALUES, DEFAULT_R_VALUES
from radicsum.errors import DomainError


def test_default_config():
    """
    Without settings the defaults are used and all sums are sequential.
    """
    config = get_config()
    assert config.n_cap == DEFAULT_N_CAP
    assert config.oracle_workers == 1
    assert config.grid_workers == 1
    assert config.n_values == DEFAULT_N_VALUES
    assert config.r_values == DEFAULT_R_VALUES


def test_environment_overrides(monkeypatch):
    """
    Environment variables are read on every call and accept exponent notation.
    """
    monkeypatch.setenv("RADICSUM_N_CAP", "1e6")
    monkeypatch.setenv("RADICSUM_GRID_WORKERS", "3")
    config = get_config()
    assert config.n_cap == 1_000_000
    assert config.grid_workers == 3

    monkeypatch.setenv("RADICSUM_N_CAP", "10")
    assert get_config().n_cap == 10


def test_config_file(config_file, monkeypatch):
    """
    Settings are read from the file and environment variables take
    precedence.
    """
    config = get_config()
    assert config.n_cap == 5000
    assert config.chunk_size == 128
    assert config.limit_tolerance == 0.01
    assert config.n_values == (2, 3)
    assert config.r_values == (1.5, 4.0)

    monkeypatch.setenv("RADICSUM_CHUNK_SIZE", "64")
    assert get_config().chunk_size == 64


def test_invalid_settings(monkeypatch, tmp_path):
    """
    Invalid values and missing files raise DomainErrors.
    """
    monkeypatch.setenv("RADICSUM_N_CAP", "many")
    with pytest.raises(DomainError):
        get_config()
    monkeypatch.setenv("RADICSUM_N_CAP", "0")
    with pytest.raises(DomainError):
        get_config()
    monkeypatch.delenv("RADICSUM_N_CAP")

    monkeypatch.setenv("RADICSUM_CONFIG", str(tmp_path / "missing.yml"))
    with pytest.raises(DomainError):
        get_config()

    with pytest.raises(DomainError):
        RadicsumConfig(oracle_workers=0)


def test_get_config_attr():
    """
    Test conversion, defaults and required attributes.
    """
    settings = {"n_cap": "2e3", "tolerance": "0.5"}
    assert get_config_attr("n_cap", int, settings, "test") == 2000
    assert get_config_attr("tolerance", float, settings, "test") == 0.5
    assert get_config_attr("missing", int, settings, "test", 7) == 7
    with pytest.raises(DomainError):
        get_config_attr("missing", int, settings, "test", required=True)


def test_to_integer():
    """
    Whole numbers are converted, fractional values are rejected.
    """
    assert to_integer(12) == 12
    assert to_integer("12") == 12
    assert to_integer("1e3") == 1000
    assert to_integer(4.0) == 4
    assert to_integer("123456789012345678901") == 123456789012345678901
    for value in ["1.9", 2.5, "nan", "inf", True, "ten"]:
        with pytest.raises(ValueError):
            to_integer(value)


def test_fractional_settings_rejected(monkeypatch, tmp_path):
    """
    Integer settings with a fractional part raise DomainErrors instead of
    being truncated.
    """
    for variable in [
            "RADICSUM_N_CAP",
            "RADICSUM_CHUNK_SIZE",
            "RADICSUM_ORACLE_WORKERS",
            "RADICSUM_GRID_WORKERS",
    ]:
        monkeypatch.setenv(variable, "1.9")
        with pytest.raises(DomainError):
            get_config()
        monkeypatch.delenv(variable)

    path = tmp_path / "radicsum.yml"
    path.write_text("grid:\n  n_values: [2, 3.5]\n  r_values: [1.0]\n")
    monkeypatch.setenv("RADICSUM_CONFIG", str(path))
    with pytest.raises(DomainError):
        get_config()


def test_config_file_read_once(config_file, monkeypatch):
    """
    The config file is parsed once and again only after it changed.
    """
    reads = []
    read_config_file = radicsum.config.read_config_file

    def counting_read(path):
        reads.append(path)
        return read_config_file(path)

    monkeypatch.setattr(radicsum.config, "read_config_file", counting_read)
    radicsum.config._load_config.cache_clear()

    for _ in range(10):
        assert get_config().n_cap == 5000
    assert len(reads) == 1

    config_file.write_text("n_cap: 20000\n")
    assert get_config().n_cap == 20000
    assert len(reads) == 2

    monkeypatch.setenv("RADICSUM_N_CAP", "100")
    assert get_config().n_cap == 100
