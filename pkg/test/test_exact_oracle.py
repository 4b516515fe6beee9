"""
Tests for the radicsum.exact_oracle module.
"""
import math

import numpy as np
import pytest
from scipy.special import gammaln

from radicsum.errors import DomainError
from radicsum.exact_oracle import (
    CompensatedAccumulator,
    RootIndex,
    exact_hyperfactorial_log,
    exact_log_factorial,
    exact_root_sum,
    exact_weighted_log_sum,
    riemann_bounds,
    root_terms,
    validate_n,
)


def test_root_index():
    """
    Root indices must be finite reals >= 1.
    """
    assert RootIndex(1) == 1.0
    assert RootIndex(math.e) == math.e
    for value in [0.5, 0.0, -2.0, math.inf, math.nan, "abc", True]:
        with pytest.raises(DomainError):
            RootIndex(value)


def test_validate_n(small_cap):
    """
    n must be a positive integer within the oracle cap.
    """
    assert validate_n(1) == 1
    assert validate_n(np.int64(1000)) == 1000
    for value in [0, -3, 2.5, True, "10"]:
        with pytest.raises(DomainError):
            validate_n(value)
    with pytest.raises(DomainError, match="RADICSUM_N_CAP"):
        validate_n(1001)
    assert validate_n(1001, n_cap=math.inf) == 1001


def test_compensated_accumulator():
    """
    Cancellation that loses the small term in naive summation is recovered.
    """
    acc = CompensatedAccumulator()
    for value in [1e100, 1.0, -1e100]:
        acc.add(value)
    assert acc.total == 1.0

    acc = CompensatedAccumulator()
    acc.add_array(np.array([0.1] * 10))
    assert acc.total == 1.0

    acc_1 = CompensatedAccumulator()
    acc_1.add(1e16)
    acc_2 = CompensatedAccumulator()
    acc_2.add(1.0)
    acc_2.add(1.0)
    acc_1.merge(acc_2)
    assert acc_1.total == 1e16 + 2.0


def test_root_terms():
    """
    Roots of 1 are exactly 1 and r = 1 returns the integers themselves.
    """
    i = np.arange(1, 6, dtype=np.float64)
    assert np.all(root_terms(i, 1.0) == i)
    terms = root_terms(i, 7.3)
    assert terms[0] == 1.0
    assert np.allclose(terms, i ** (1.0 / 7.3), rtol=1e-15)


def test_exact_root_sum():
    """
    Test the root sum against hand-computed values.
    """
    assert exact_root_sum(4, 1) == 10.0
    assert np.isclose(exact_root_sum(4, 2), 6.14626437, atol=1e-8)
    assert np.isclose(
        exact_root_sum(4, 2), 1.0 + math.sqrt(2.0) + math.sqrt(3.0) + 2.0, rtol=1e-15
    )
    assert exact_root_sum(1, 7.3) == 1.0


def test_exact_root_sum_matches_fsum(small_chunks):
    """
    The blocked sum agrees with an exactly rounded sum of directly computed
    terms.
    """
    n = 1000
    r = 3.0
    expected = math.fsum(i ** (1.0 / r) for i in range(1, n + 1))
    assert np.isclose(exact_root_sum(n, r), expected, rtol=1e-14)
    assert exact_root_sum(n, 1.0) == n * (n + 1) / 2


def test_summation_order_independence(small_chunks):
    """
    Ascending and descending summation agree to rounding level.
    """
    for r in [1.5, 2.0, 10.0]:
        ascending = exact_root_sum(1000, r, ascending=True)
        descending = exact_root_sum(1000, r, ascending=False)
        assert np.isclose(ascending, descending, rtol=1e-15, atol=0.0)


def test_parallel_summation(monkeypatch):
    """
    Range-partitioned parallel sums agree with the sequential sum.
    """
    sequential = exact_root_sum(100_000, 2.5)
    monkeypatch.setenv("RADICSUM_ORACLE_WORKERS", "3")
    monkeypatch.setenv("RADICSUM_CHUNK_SIZE", "1000")
    parallel = exact_root_sum(100_000, 2.5)
    assert np.isclose(sequential, parallel, rtol=1e-15, atol=0.0)


@pytest.mark.slow
def test_summation_order_independence_large():
    """
    Order independence holds for ten million terms.
    """
    ascending = exact_root_sum(10_000_000, 2.0, ascending=True)
    descending = exact_root_sum(10_000_000, 2.0, ascending=False)
    assert np.isclose(ascending, descending, rtol=1e-15, atol=0.0)


def test_exact_log_factorial():
    """
    Test ln n! against known values and the log-gamma function.
    """
    assert exact_log_factorial(1) == 0.0
    assert np.isclose(exact_log_factorial(5), math.log(120.0), rtol=1e-15)
    assert np.isclose(exact_log_factorial(10), 15.104413, atol=1e-6)
    assert np.isclose(exact_log_factorial(10), math.log(3628800.0), rtol=1e-15)
    assert np.isclose(exact_log_factorial(100_000), gammaln(100_001), rtol=1e-13)


def test_exact_weighted_log_sum():
    """
    Test the weighted log sum against direct evaluation.
    """
    assert exact_weighted_log_sum(1, 3.7) == 0.0
    expected = math.sqrt(2.0) * math.log(2.0) + math.sqrt(3.0) * math.log(3.0)
    assert np.isclose(exact_weighted_log_sum(3, 2), expected, rtol=1e-14)
    assert np.isclose(
        exact_weighted_log_sum(10, 1), exact_hyperfactorial_log(10), rtol=1e-15
    )


def test_exact_hyperfactorial_log():
    """
    Test ln H(n) against direct evaluation.
    """
    assert exact_hyperfactorial_log(1) == 0.0
    assert np.isclose(exact_hyperfactorial_log(2), 2.0 * math.log(2.0), rtol=1e-15)
    expected = math.fsum(i * math.log(i) for i in range(1, 11))
    assert np.isclose(exact_hyperfactorial_log(10), expected, rtol=1e-14)
    assert np.isclose(exact_hyperfactorial_log(10), 102.082830, atol=1e-6)


def test_riemann_bounds():
    """
    The lower and upper sums enclose the integral and differ by n^(1/r).
    """
    bounds = riemann_bounds(1, 2)
    assert bounds.lower == 0.0
    assert bounds.upper == 1.0
    assert np.isclose(bounds.integral, 2.0 / 3.0)
    assert bounds.is_sandwiched()

    bounds = riemann_bounds(4, 2)
    assert np.isclose(bounds.lower, 4.14626437, atol=1e-8)
    assert np.isclose(bounds.upper, 6.14626437, atol=1e-8)
    assert np.isclose(bounds.integral, 16.0 / 3.0)
    assert bounds.is_sandwiched()
    assert np.isclose(bounds.width, 2.0, rtol=1e-15)
    assert bounds.trapezoid_defect >= 0.0

    for n in [10, 1000]:
        for r in [1.0, 1.5, 3.0, 64.0]:
            bounds = riemann_bounds(n, r)
            assert bounds.is_sandwiched()
            assert np.isclose(bounds.width, n ** (1.0 / r), rtol=1e-12)
