"""
radicsum.cli
============

Implements the command line interface for radicsum.
"""
from functools import wraps
import logging
import math
from typing import Callable, List, Optional

import click
import numpy as np
import pandas as pd

from radicsum import logging as radicsum_logging
from radicsum.calculus import xi_via_identity, xi_via_limit
from radicsum.closed_form import approx_root_sum, factorial_log_estimate
from radicsum.config import get_config
from radicsum.definitions import (
    BENCH_CSV_COLUMNS,
    CLAIM_IDS,
    FACTORIAL_CSV_COLUMNS,
    LOG_SQRT_2PI,
    SUM_CSV_COLUMNS,
    VERIFY_CSV_COLUMNS,
)
from radicsum.errors import DomainError, RadicsumError
from radicsum.exact_oracle import RootIndex, exact_root_sum, validate_n
from radicsum.experiments import (
    ClaimStatus,
    GridSpec,
    benchmark_speed_accuracy,
    run_claim,
)
from radicsum.output import OutputFormat, concat_frames, emit, write_report


LOGGER = logging.getLogger(__name__)

FORMAT_OPTION = click.option(
    "--format",
    "output_format",
    type=click.Choice([fmt.value for fmt in OutputFormat]),
    default=OutputFormat.TABLE.value,
    help="Output format of the results.",
)


def report_errors(fun: Callable) -> Callable:
    """
    Log radicsum errors and exit with the exit code attached to them.
    """
    @wraps(fun)
    def wrapper(*args, **kwargs):
        try:
            return fun(*args, **kwargs)
        except RadicsumError as exc:
            LOGGER.error("%s", exc)
            click.get_current_context().exit(exc.exit_code)
    return wrapper


@click.group
@click.option("-v", "--verbose", count=True, help="Enable debug output.")
def radicsum(verbose):
    """
    radicsum: Closed-form sums of r'th roots and the factorial formulas
    derived from them.
    """
    radicsum_logging.set_verbosity(verbose)


@click.argument("n", type=int)
@click.argument("r", type=float)
@click.option("--exact", "mode", flag_value="exact", help="Only the brute-force sum.")
@click.option("--approx", "mode", flag_value="approx", help="Only the closed form.")
@click.option(
    "--both", "mode", flag_value="both", default=True,
    help="Both values and their difference phi."
)
@FORMAT_OPTION
@report_errors
def sum_cli(n: int, r: float, mode: str, output_format: str) -> None:
    """
    Sum of the R'th roots of the first N natural numbers.
    """
    r = RootIndex(r)
    exact = approx = phi = math.nan
    if mode in ("approx", "both"):
        approx = approx_root_sum(n, r).approx
    if mode in ("exact", "both"):
        exact = exact_root_sum(n, r)
    if mode == "both":
        phi = approx - exact
    frame = pd.DataFrame(
        [{"n": n, "r": float(r), "exact": exact, "approx": approx, "phi": phi}],
        columns=list(SUM_CSV_COLUMNS),
    )
    emit(frame, output_format, "sum", title=f"Sum of {float(r):g}'th roots")


XI_SOURCES = ("sqrt2pi", "identity", "limit")


@click.argument("n", type=int)
@click.option(
    "--xi", "xi_source",
    type=click.Choice(XI_SOURCES),
    default="sqrt2pi",
    help="Source of the constant term of the factorial estimate.",
)
@FORMAT_OPTION
@report_errors
def factorial_cli(n: int, xi_source: str, output_format: str) -> None:
    """
    Estimate ln N! from (N+1)^(N+1/2) e^(-N-1) e^xi and compare it with the
    exact value and Stirling's formula.
    """
    n = validate_n(n)
    if xi_source == "sqrt2pi":
        xi = LOG_SQRT_2PI
    elif xi_source == "identity":
        xi = xi_via_identity(n)
    else:
        estimate = xi_via_limit(n)
        LOGGER.info(
            "Limit of r^2 dphi/dr differs from the identity by %.3g.",
            estimate.discrepancy,
        )
        xi = estimate.xi_limit

    result = factorial_log_estimate(n, xi)
    frame = pd.DataFrame(
        [{
            "n": n,
            "xi_source": xi_source,
            "xi": xi,
            "log_estimate": result.log_estimate,
            "exact_log": result.exact_log,
            "stirling_log": result.stirling_log,
            "estimate_ratio": result.estimate_ratio,
            "stirling_ratio": result.stirling_ratio,
        }],
        columns=list(FACTORIAL_CSV_COLUMNS),
    )
    emit(frame, output_format, "factorial", title=f"ln {n}!")


@click.option(
    "--claim", "claims",
    multiple=True,
    default=("all",),
    help="Claim to check or 'all'. May be given multiple times.",
)
@click.option(
    "--grid", default=None,
    help=(
        "Grid 'n=1,10;r=1,2' or a YAML file used by PHI_BOUNDS, PHI_MONOTONE "
        "and EQ3_IDENTITY."
    ),
)
@FORMAT_OPTION
@click.option("--out", default=None, help="Also write the report to this file.")
@report_errors
def verify_cli(
        claims: List[str],
        grid: Optional[str],
        output_format: str,
        out: Optional[str]
) -> None:
    """
    Check the claims about the closed form and the factorial formulas.
    """
    claim_ids = []
    for claim in claims:
        if claim.lower() == "all":
            claim_ids += list(CLAIM_IDS)
        elif claim.upper() in CLAIM_IDS:
            claim_ids.append(claim.upper())
        else:
            raise DomainError(
                f"Unknown claim '{claim}'. Known claims are {list(CLAIM_IDS)} "
                "or 'all'."
            )
    # Preserve order, drop duplicates.
    claim_ids = list(dict.fromkeys(claim_ids))
    if grid is not None:
        grid = GridSpec.parse(grid)

    reports = [run_claim(claim_id, grid) for claim_id in claim_ids]
    frame = concat_frames(
        [report.to_dataframe() for report in reports], list(VERIFY_CSV_COLUMNS)
    )
    summary = {"claims": [report.to_dict(details=False) for report in reports]}
    caption = "\n".join(
        f"{report.claim_id.value}: {report.status.value}. {report.notes}"
        for report in reports
    )
    emit(
        frame, output_format, "verify",
        title="Claims", caption=caption, extra=summary,
    )
    if out is not None:
        path = write_report(out, frame, "verify", extra=summary)
        LOGGER.info("Wrote report to %s.", path)

    failed = [
        report.claim_id.value for report in reports
        if report.status == ClaimStatus.FAIL
    ]
    if failed:
        LOGGER.error("Failed claims: %s.", ", ".join(failed))
        click.get_current_context().exit(1)


def bench_n_values(n_max: int) -> List[int]:
    """
    The decades 10, 100, ... not exceeding n_max followed by n_max itself.
    """
    n_values = []
    decade = 10
    while decade < n_max:
        n_values.append(decade)
        decade *= 10
    n_values.append(n_max)
    return n_values


@click.option("--n-max", "n_max", type=int, default=1_000_000, help="Largest n.")
@click.option("--r", "r", type=float, default=2.0, help="The root index.")
@click.option("--reps", "reps", type=int, default=5, help="Timed repetitions per n.")
@FORMAT_OPTION
@report_errors
def bench_cli(n_max: int, r: float, reps: int, output_format: str) -> None:
    """
    Compare speed and accuracy of the closed form with the brute-force sum.
    """
    if reps < 3:
        raise DomainError(f"At least 3 repetitions are required, got {reps}.")
    n_max = validate_n(n_max, get_config().n_cap)
    report = benchmark_speed_accuracy(bench_n_values(n_max), r, reps)
    frame = pd.DataFrame(
        [
            {
                "n": record.n,
                "r": record.r,
                "exact": record.exact,
                "approx": record.approx,
                "phi": record.phi,
                "exact_ns": np.nan if record.exact_ns is None else record.exact_ns,
                "approx_ns": np.nan if record.approx_ns is None else record.approx_ns,
            }
            for record in report.metadata["benchmark"]
        ],
        columns=list(BENCH_CSV_COLUMNS),
    )
    emit(
        frame, output_format, "bench",
        title="Closed form versus brute force",
        caption=report.notes,
        extra={"status": report.status.value, "notes": report.notes},
    )


radicsum.command(name="sum")(sum_cli)
radicsum.command(name="factorial")(factorial_cli)
radicsum.command(name="verify")(verify_cli)
radicsum.command(name="bench")(bench_cli)
