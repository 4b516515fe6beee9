import os

import pytest


RADICSUM_VARIABLES = [
    "RADICSUM_CONFIG",
    "RADICSUM_N_CAP",
    "RADICSUM_CHUNK_SIZE",
    "RADICSUM_ORACLE_WORKERS",
    "RADICSUM_GRID_WORKERS",
    "RADICSUM_LIMIT_TOLERANCE",
]


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """
    Remove radicsum settings inherited from the calling environment so that
    tests run with the default configuration.
    """
    for variable in RADICSUM_VARIABLES:
        monkeypatch.delenv(variable, raising=False)


@pytest.fixture
def small_chunks(monkeypatch):
    """
    Use tiny blocks so that sums over a few hundred terms span many blocks.
    """
    monkeypatch.setenv("RADICSUM_CHUNK_SIZE", "7")


@pytest.fixture
def small_cap(monkeypatch):
    """
    Limit the oracles to n <= 1000.
    """
    monkeypatch.setenv("RADICSUM_N_CAP", "1000")


@pytest.fixture
def grid_file(tmp_path):
    """
    A YAML file holding a small evaluation grid.
    """
    path = tmp_path / "grid.yml"
    path.write_text(
        "grid:\n"
        "  n_values: [1, 4, 10]\n"
        "  r_values: [1.0, 2.0, 5.0]\n"
    )
    return path


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    """
    A config file with custom settings registered via RADICSUM_CONFIG.
    """
    path = tmp_path / "radicsum.yml"
    path.write_text(
        "n_cap: 5000\n"
        "chunk_size: 128\n"
        "limit_tolerance: 0.01\n"
        "grid:\n"
        "  n_values: [2, 3]\n"
        "  r_values: [1.5, 4.0]\n"
    )
    monkeypatch.setenv("RADICSUM_CONFIG", str(path))
    return path
