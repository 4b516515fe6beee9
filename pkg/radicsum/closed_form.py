"""
radicsum.closed_form
====================

Closed-form estimators:

 - the two-term approximation of the r'th root sum
   ``r/(r+1) (n+1)^((1+r)/r) - 1/2 (n+1)^(1/r)`` and its correction phi,
 - the factorial estimate ``n! = (n+1)^(n+1/2) e^(-n-1) e^xi``,
 - the main term of the log-hyperfactorial,
 - Stirling's formula as a baseline.

Factorial and hyperfactorial quantities are handled in log space throughout.
"""
from dataclasses import dataclass
import math

from radicsum.definitions import LOG_GLAISHER, PHI_RELATIVE_TOLERANCE
from radicsum.errors import DomainError, NumericOverflowError
from radicsum.exact_oracle import (
    RootIndex,
    exact_hyperfactorial_log,
    exact_log_factorial,
    exact_root_sum,
    validate_n,
)


@dataclass(frozen=True)
class ApproxBreakdown:
    """
    The two terms of the closed-form root sum.

    Attributes:
        leading: r / (r + 1) (n + 1)^((1 + r) / r)
        half_term: 1/2 (n + 1)^(1/r)
        approx: leading - half_term
    """
    leading: float
    half_term: float
    approx: float


@dataclass(frozen=True)
class PhiSample:
    """
    A single evaluation of the correction term phi_n(r) = approx - exact.
    """
    n: int
    r: RootIndex
    phi: float
    breakdown: ApproxBreakdown
    exact: float

    @property
    def tolerance(self) -> float:
        """
        Absolute tolerance for bound checks on this sample.
        """
        return phi_tolerance(self.breakdown)

    def within_bounds(self) -> bool:
        """
        Whether -tol <= phi <= 1/2 + tol.
        """
        tol = self.tolerance
        return -tol <= self.phi <= 0.5 + tol


@dataclass(frozen=True)
class FactorialEstimate:
    """
    Log-space estimate of n! from (n+1)^(n+1/2) e^(-n-1) e^xi together with
    Stirling's formula and the exact value.
    """
    n: int
    log_estimate: float
    xi_used: float
    stirling_log: float
    exact_log: float

    @property
    def estimate_ratio(self) -> float:
        """
        Ratio of the estimate to n!.
        """
        return math.exp(self.log_estimate - self.exact_log)

    @property
    def stirling_ratio(self) -> float:
        """
        Ratio of Stirling's formula to n!.
        """
        return math.exp(self.stirling_log - self.exact_log)


def _power(base: float, exponent: float) -> float:
    try:
        return math.pow(base, exponent)
    except OverflowError as exc:
        raise NumericOverflowError(
            f"{base}^{exponent} exceeds the floating-point range."
        ) from exc


def phi_tolerance(breakdown: ApproxBreakdown) -> float:
    """
    Absolute tolerance for phi, scaled by the magnitude of the approximation.
    """
    return PHI_RELATIVE_TOLERANCE * abs(breakdown.approx)


def approx_root_sum(n: int, r: float) -> ApproxBreakdown:
    """
    The two-term closed form of sum_{i=1}^{n} i^(1/r) without the correction
    phi.

    Args:
        n: The number of terms.
        r: The root index, r >= 1.

    Return:
        An ApproxBreakdown holding both terms and their difference.
    """
    # The closed form is O(1) and not bound by the oracle cap.
    n = validate_n(n, n_cap=math.inf)
    r = RootIndex(r)
    m = float(n) + 1.0
    leading = r / (r + 1.0) * _power(m, (1.0 + r) / r)
    half_term = 0.5 * _power(m, 1.0 / r)
    return ApproxBreakdown(
        leading=leading,
        half_term=half_term,
        approx=leading - half_term,
    )


def phi(n: int, r: float) -> PhiSample:
    """
    Evaluate the correction term phi_n(r) as the residual of the closed form
    with respect to the brute-force sum.
    """
    n = validate_n(n)
    r = RootIndex(r)
    breakdown = approx_root_sum(n, r)
    exact = exact_root_sum(n, r)
    return PhiSample(
        n=n,
        r=r,
        phi=breakdown.approx - exact,
        breakdown=breakdown,
        exact=exact,
    )


def stirling_log(n: int) -> float:
    """
    Logarithm of Stirling's formula sqrt(2 pi n) (n / e)^n.
    """
    n = validate_n(n)
    return 0.5 * math.log(2.0 * math.pi * n) + n * math.log(n) - n


def factorial_log_estimate(n: int, xi: float) -> FactorialEstimate:
    """
    Estimate ln n! as (n + 1/2) ln(n + 1) - (n + 1) + xi.

    Args:
        n: Positive integer.
        xi: The constant term, for example ln sqrt(2 pi) or xi_n computed by
            :mod:`radicsum.calculus`.

    Return:
        A FactorialEstimate also holding Stirling's formula and the exact
        value for comparison.
    """
    n = validate_n(n)
    xi = float(xi)
    if not math.isfinite(xi):
        raise DomainError(f"xi must be finite, got {xi}.")
    log_estimate = (n + 0.5) * math.log(n + 1.0) - (n + 1.0) + xi
    return FactorialEstimate(
        n=n,
        log_estimate=log_estimate,
        xi_used=xi,
        stirling_log=stirling_log(n),
        exact_log=exact_log_factorial(n),
    )


def hyperfactorial_main_term(n: int) -> float:
    """
    n (n + 1) / 2 ln(n + 1) - (n + 1)^2 / 4
    """
    n = validate_n(n)
    m = n + 1.0
    return 0.5 * n * m * math.log(m) - 0.25 * m * m


def hyperfactorial_residual(n: int) -> float:
    """
    Difference between ln H(n) and its main term. By the differentiated root
    sum identity at r = 1 this equals dphi_n/dr at r = 1.
    """
    n = validate_n(n)
    return exact_hyperfactorial_log(n) - hyperfactorial_main_term(n)


def hyperfactorial_asymptote(n: int) -> float:
    """
    Large-n behaviour of :func:`hyperfactorial_residual`, ln(n) / 12 + ln A
    with A the Glaisher-Kinkelin constant.
    """
    n = validate_n(n)
    return math.log(n) / 12.0 + LOG_GLAISHER
