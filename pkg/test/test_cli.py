"""
Tests for the radicsum command line interface.
"""
import io
import json
import math

from click.testing import CliRunner
import numpy as np
import pandas as pd
import pytest

from radicsum.cli import bench_n_values, radicsum
from radicsum.definitions import (
    BENCH_CSV_COLUMNS,
    FACTORIAL_CSV_COLUMNS,
    SCHEMA_VERSION,
    SUM_CSV_COLUMNS,
    VERIFY_CSV_COLUMNS,
)


def run(*args):
    runner = CliRunner()
    return runner.invoke(radicsum, [str(arg) for arg in args])


def read_csv(output):
    return pd.read_csv(io.StringIO(output))


def test_sum_both():
    """
    The sum command reports exact value, closed form and phi.
    """
    result = run("sum", 4, 2, "--both", "--format", "csv")
    assert result.exit_code == 0
    header = result.stdout.splitlines()[0]
    assert header == ",".join(SUM_CSV_COLUMNS)
    frame = read_csv(result.stdout)
    assert np.isclose(frame["exact"][0], 6.14626437, atol=1e-8)
    assert np.isclose(frame["approx"][0], 6.33552593, atol=1e-8)
    assert np.isclose(frame["phi"][0], 0.18926156, atol=1e-8)

    result = run("sum", 4, 1, "--format", "csv")
    assert result.exit_code == 0
    frame = read_csv(result.stdout)
    assert frame["exact"][0] == 10.0
    assert frame["approx"][0] == 10.0
    assert abs(frame["phi"][0]) <= 1e-12


def test_sum_single_values():
    """
    With --exact or --approx only the requested value is computed.
    """
    result = run("sum", 4, 2, "--approx", "--format", "csv")
    assert result.exit_code == 0
    frame = read_csv(result.stdout)
    assert np.isnan(frame["exact"][0])
    assert np.isnan(frame["phi"][0])

    result = run("sum", 4, 2, "--exact", "--format", "csv")
    assert result.exit_code == 0
    frame = read_csv(result.stdout)
    assert np.isnan(frame["approx"][0])


def test_sum_seventeen_digits():
    """
    Numbers are written with 17 significant digits.
    """
    result = run("sum", 4, 2, "--approx", "--format", "csv")
    approx = result.stdout.splitlines()[1].split(",")[3]
    expected = 2.0 / 3.0 * math.pow(5.0, 1.5) - 0.5 * math.pow(5.0, 0.5)
    assert approx == "%.17g" % expected


def test_sum_errors(monkeypatch):
    """
    Validation errors exit with 2 and overflow with 3.
    """
    result = run("sum", 4, 0.5)
    assert result.exit_code == 2

    result = run("sum", 0, 2)
    assert result.exit_code == 2

    monkeypatch.setenv("RADICSUM_N_CAP", "100")
    result = run("sum", 101, 2, "--exact")
    assert result.exit_code == 2

    result = run("sum", 10 ** 200, 1, "--approx")
    assert result.exit_code == 3


def test_sum_table_and_json():
    """
    Human tables and versioned JSON documents are emitted.
    """
    result = run("sum", 4, 2)
    assert result.exit_code == 0
    assert "6.146264369" in result.stdout

    result = run("sum", 4, 2, "--format", "json")
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["schema_version"] == SCHEMA_VERSION
    record = document["records"][0]
    assert set(record) == set(SUM_CSV_COLUMNS)
    assert np.isclose(record["phi"], 0.18926156, atol=1e-8)


def test_factorial():
    """
    The factorial command compares the estimate with ln n!.
    """
    result = run("factorial", 10, "--xi", "sqrt2pi", "--format", "csv")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == ",".join(FACTORIAL_CSV_COLUMNS)
    frame = read_csv(result.stdout)
    assert np.isclose(frame["log_estimate"][0], 15.096840, atol=2e-6)
    assert np.isclose(frame["exact_log"][0], 15.104413, atol=2e-6)

    result = run("factorial", 1, "--xi", "identity", "--format", "csv")
    assert result.exit_code == 0
    frame = read_csv(result.stdout)
    assert abs(frame["log_estimate"][0]) <= 1e-15
    assert frame["exact_log"][0] == 0.0

    identity = read_csv(run("factorial", 10, "--xi", "identity", "--format", "csv").stdout)
    result = run("factorial", 10, "--xi", "limit", "--format", "csv")
    assert result.exit_code == 0
    limit = read_csv(result.stdout)
    assert abs(limit["log_estimate"][0] - identity["log_estimate"][0]) <= 1e-3


def test_factorial_errors(monkeypatch):
    """
    Validation errors exit with 2 and non-convergence with 4.
    """
    assert run("factorial", 0).exit_code == 2
    assert run("factorial", 10, "--xi", "unknown").exit_code == 2

    monkeypatch.setenv("RADICSUM_LIMIT_TOLERANCE", "1e-14")
    assert run("factorial", 10, "--xi", "limit").exit_code == 4


def test_verify_single_claims(tmp_path):
    """
    Passing and measured claims exit with 0 and reports are written.
    """
    result = run("verify", "--claim", "PHI_BOUNDS", "--format", "csv")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == ",".join(VERIFY_CSV_COLUMNS)
    frame = read_csv(result.stdout)
    assert set(frame["status"]) == {"pass"}

    out = tmp_path / "report.json"
    result = run(
        "verify", "--claim", "XI_SQRT_2PI", "--format", "csv", "--out", out
    )
    assert result.exit_code == 0
    document = json.loads(out.read_text())
    assert document["schema_version"] == SCHEMA_VERSION
    errors = [record["abs_error"] for record in document["records"]]
    assert all(lower > upper for lower, upper in zip(errors[:-1], errors[1:]))
    assert document["claims"][0]["status"] == "pass"
    assert document["claims"][0]["worst_case"]["n"] == 10
    assert "details" not in document["claims"][0]

    result = run("verify", "--claim", "HYPERFACT_RESIDUAL", "--format", "csv")
    assert result.exit_code == 0
    frame = read_csv(result.stdout)
    assert set(frame["status"]) == {"measured"}
    assert len(frame) == 4


def test_verify_grid(grid_file, tmp_path):
    """
    Grids are accepted as text and as YAML files.
    """
    result = run(
        "verify", "--claim", "PHI_BOUNDS", "--grid", "n=4;r=2", "--format", "csv"
    )
    assert result.exit_code == 0
    frame = read_csv(result.stdout)
    assert len(frame) == 1
    assert np.isclose(frame["value"][0], 0.18926156, atol=1e-8)

    out = tmp_path / "report.csv"
    result = run(
        "verify", "--claim", "PHI_MONOTONE", "--grid", grid_file, "--out", out
    )
    assert result.exit_code == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == list(VERIFY_CSV_COLUMNS)
    assert len(frame) == 3 * 2


def test_verify_failure(monkeypatch):
    """
    A failing claim exits with 1.
    """
    monkeypatch.setenv("RADICSUM_LIMIT_TOLERANCE", "1e-14")
    result = run("verify", "--claim", "XI_TWO_ROUTES", "--format", "json")
    assert result.exit_code == 1


def test_verify_errors():
    """
    Unknown claims, malformed grids and fractional n exit with 2.
    """
    assert run("verify", "--claim", "NOT_A_CLAIM").exit_code == 2
    assert run("verify", "--claim", "PHI_BOUNDS", "--grid", "n=1").exit_code == 2
    assert run("verify", "--claim", "PHI_BOUNDS", "--grid", "n=2.5;r=1").exit_code == 2


@pytest.mark.slow
def test_verify_all(monkeypatch):
    """
    All claims pass or are measured with the default settings.
    """
    monkeypatch.setenv("RADICSUM_N_CAP", "100000")
    result = run("verify", "--format", "json")
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert len(document["claims"]) == 8


def test_bench():
    """
    The bench command reports accuracy and timings.
    """
    result = run("bench", "--n-max", 10, "--r", 1, "--reps", 3, "--format", "csv")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == ",".join(BENCH_CSV_COLUMNS)
    frame = read_csv(result.stdout)
    assert list(frame["n"]) == [10]
    assert np.all(np.abs(frame["phi"]) <= 1e-12)

    result = run("bench", "--n-max", 2000, "--r", 2, "--reps", 3, "--format", "json")
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert [record["n"] for record in document["records"]] == [10, 100, 1000, 2000]


def test_bench_errors():
    """
    Too few repetitions and invalid arguments exit with 2.
    """
    assert run("bench", "--reps", 1).exit_code == 2
    assert run("bench", "--n-max", 10, "--r", 0.5).exit_code == 2
    assert run("bench", "--n-max", 0).exit_code == 2


def test_bench_n_values():
    assert bench_n_values(1) == [1]
    assert bench_n_values(10) == [10]
    assert bench_n_values(1000) == [10, 100, 1000]
    assert bench_n_values(2500) == [10, 100, 1000, 2500]


def test_verbose_flag():
    """
    The verbose flag is accepted ahead of any command.
    """
    result = CliRunner().invoke(radicsum, ["-v", "sum", "4", "2", "--format", "csv"])
    assert result.exit_code == 0
