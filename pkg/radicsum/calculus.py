"""
radicsum.calculus
=================

Numerical calculus on the correction term phi_n(r):

 - finite-difference derivatives dphi/dr with Richardson extrapolation,
 - the differentiated root-sum identity

       sum i^(1/r) ln i = [r/(r+1) (n+1) - 1/2] (n+1)^(1/r) ln(n+1)
                          - r^2/(r+1)^2 (n+1)^((1+r)/r) + r^2 dphi/dr,

 - two independent routes to the factorial constant xi_n: directly from
   ln n!, and as the limit of r^2 dphi/dr for r -> infinity.

Phi is only defined for r >= 1, so stencils at the domain boundary are
one-sided.
"""
from dataclasses import dataclass, field
import logging
import math
from typing import List, Optional, Sequence, Tuple

from radicsum.closed_form import hyperfactorial_residual, phi
from radicsum.config import get_config
from radicsum.definitions import DEFAULT_XI_LADDER, MACHINE_EPSILON
from radicsum.errors import (
    DomainBoundaryError,
    DomainError,
    LimitConvergenceError,
    StepUnderflowError,
)
from radicsum.exact_oracle import (
    RootIndex,
    exact_log_factorial,
    exact_weighted_log_sum,
    validate_n,
)
from radicsum.utils import is_strictly_ascending, map_ordered


LOGGER = logging.getLogger(__name__)

# Stencils as (offsets, weights) in units of the step h.
CENTRAL_STENCILS = {
    2: ((-1, 1), (-0.5, 0.5)),
    4: ((-2, -1, 1, 2), (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)),
}
FORWARD_STENCILS = {
    2: ((0, 1, 2), (-1.5, 2.0, -0.5)),
    4: ((0, 1, 2, 3, 4), (-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25)),
}


@dataclass(frozen=True)
class DifferenceScheme:
    """
    Settings of a finite-difference derivative.

    Attributes:
        order: Accuracy order of the stencil, 2 or 4.
        base_step: The largest step. If 'None', max(1e-4, 1e-6 r) is used.
        richardson_levels: Number of step halvings combined by Richardson
            extrapolation.
        one_sided_fallback: Whether to switch to a forward stencil instead of
            raising an error when a central stencil would cross r = 1.
    """
    order: int = 2
    base_step: Optional[float] = None
    richardson_levels: int = 2
    one_sided_fallback: bool = False

    def __post_init__(self):
        if self.order not in CENTRAL_STENCILS:
            raise DomainError(
                f"Difference order must be one of {list(CENTRAL_STENCILS)}, "
                f"got {self.order}."
            )
        if self.base_step is not None:
            if not (math.isfinite(self.base_step) and self.base_step > 0):
                raise DomainError(
                    f"'base_step' must be positive and finite, got {self.base_step}."
                )
        if int(self.richardson_levels) != self.richardson_levels or self.richardson_levels < 0:
            raise DomainError(
                "'richardson_levels' must be a non-negative integer, got "
                f"{self.richardson_levels}."
            )

    def step(self, r: float) -> float:
        """
        The base step used at a given r.
        """
        if self.base_step is not None:
            return self.base_step
        return max(1e-4, 1e-6 * r)


@dataclass(frozen=True)
class OneSidedDerivative:
    """
    dphi_n/dr at r = 1 together with the residual of the log-hyperfactorial
    main term, which it equals analytically.
    """
    n: int
    value: float
    hyperfactorial_residual: float

    @property
    def gap(self) -> float:
        return abs(self.value - self.hyperfactorial_residual)


@dataclass(frozen=True)
class Eq3Check:
    """
    Both sides of the differentiated root-sum identity at (n, r).
    """
    n: int
    r: float
    lhs: float
    rhs: float
    dphi_dr: float

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    @property
    def relative_residual(self) -> float:
        """
        |LHS - RHS| / max(1, |LHS|). The LHS vanishes for n = 1.
        """
        return abs(self.residual) / max(1.0, abs(self.lhs))


@dataclass(frozen=True)
class XiEstimate:
    """
    The factorial constant xi_n computed from ln n! and as the limit of
    r^2 dphi/dr.

    Attributes:
        n: Positive integer.
        xi_identity: ln n! - (n + 1/2) ln(n + 1) + (n + 1)
        xi_limit: Extrapolated limit of r^2 dphi/dr for r -> infinity.
        discrepancy: |xi_identity - xi_limit|
        limit_diagnostics: The (r, r^2 dphi/dr) pairs on the ladder.
        extrapolants: Successive extrapolated values using the first
            1, 2, ... ladder points.
    """
    n: int
    xi_identity: float
    xi_limit: float
    discrepancy: float
    limit_diagnostics: List[Tuple[float, float]] = field(default_factory=list)
    extrapolants: List[float] = field(default_factory=list)


def richardson_extrapolate(
        values: Sequence[float],
        exponents: Sequence[float],
        ratio: float = 2.0
) -> float:
    """
    Richardson extrapolation of approximations at geometrically decreasing
    steps.

    Args:
        values: Approximations ordered from the largest to the smallest step.
        exponents: Powers of the step in the error expansion, leading term
            first. At least ``len(values) - 1`` are required.
        ratio: Ratio between successive steps.

    Return:
        The extrapolated value.
    """
    vals = [float(value) for value in values]
    n_values = len(vals)
    if n_values == 0:
        raise ValueError("Richardson extrapolation requires at least one value.")
    if len(exponents) < n_values - 1:
        raise ValueError(
            f"{n_values} values require at least {n_values - 1} error exponents."
        )
    for level in range(1, n_values):
        factor = ratio ** exponents[level - 1]
        for ind in range(n_values - 1, level - 1, -1):
            vals[ind] = (factor * vals[ind] - vals[ind - 1]) / (factor - 1.0)
    return vals[-1]


def neville_extrapolate(
        xs: Sequence[float],
        ys: Sequence[float],
        x_0: float = 0.0
) -> List[float]:
    """
    Polynomial extrapolation with Neville's scheme.

    Args:
        xs: Abscissas.
        ys: Function values at 'xs'.
        x_0: The point to extrapolate to.

    Return:
        List whose k-th element is the value at 'x_0' of the polynomial
        through the first k + 1 points.
    """
    if len(xs) != len(ys) or len(xs) == 0:
        raise ValueError("'xs' and 'ys' must be non-empty and of equal length.")
    tableau = [float(y) for y in ys]
    n_points = len(tableau)
    extrapolants = [tableau[0]]
    for width in range(1, n_points):
        for ind in range(n_points - width):
            x_lo = xs[ind]
            x_hi = xs[ind + width]
            tableau[ind] = (
                (x_0 - x_hi) * tableau[ind] - (x_0 - x_lo) * tableau[ind + 1]
            ) / (x_lo - x_hi)
        extrapolants.append(tableau[0])
    return extrapolants


def _phi_value(n: int, r: float) -> float:
    return phi(n, r).phi


def _difference_derivative(
        n: int,
        r: float,
        step: float,
        stencil: Tuple[Tuple[int, ...], Tuple[float, ...]],
        levels: int,
        exponents: Sequence[int]
) -> float:
    """
    Richardson-extrapolated stencil derivative of phi_n at r.
    """
    offsets, weights = stencil
    estimates = []
    for level in range(levels + 1):
        h = step / 2 ** level
        value = sum(
            weight * _phi_value(n, r + offset * h)
            for offset, weight in zip(offsets, weights)
        )
        estimates.append(value / h)
    LOGGER.debug("Stencil estimates of dphi/dr at n=%s, r=%s: %s", n, r, estimates)
    return richardson_extrapolate(estimates, exponents)


def _check_step(r: float, step: float, levels: int) -> None:
    smallest = step / 2 ** levels
    if smallest < 64.0 * MACHINE_EPSILON * r:
        raise StepUnderflowError(
            f"The smallest difference step {smallest:.3g} at r = {r} is below "
            f"64 machine epsilons relative to r."
        )


def dphi_dr(n: int, r: float, scheme: Optional[DifferenceScheme] = None) -> float:
    """
    Central-difference estimate of dphi_n/dr at r.

    Args:
        n: Positive integer within the oracle cap.
        r: The root index.
        scheme: The difference scheme. Defaults to ``DifferenceScheme()``.

    Return:
        The Richardson-extrapolated derivative.

    Raises:
        DomainBoundaryError: If the stencil would reach below r = 1 and the
            scheme does not allow the one-sided fallback.
        StepUnderflowError: If the smallest step cannot be resolved.
    """
    n = validate_n(n)
    r = RootIndex(r)
    if scheme is None:
        scheme = DifferenceScheme()
    step = scheme.step(r)
    levels = int(scheme.richardson_levels)
    _check_step(r, step, levels)

    reach = scheme.order // 2
    if r - reach * step < 1.0:
        if not scheme.one_sided_fallback:
            raise DomainBoundaryError(
                f"The order-{scheme.order} central stencil with step {step} "
                f"crosses r = 1 at r = {float(r)}."
            )
        LOGGER.debug("Using forward stencil at r = %s.", float(r))
        exponents = [scheme.order + ind for ind in range(levels)]
        return _difference_derivative(
            n, r, step, FORWARD_STENCILS[scheme.order], levels, exponents
        )

    exponents = [scheme.order + 2 * ind for ind in range(levels)]
    return _difference_derivative(
        n, r, step, CENTRAL_STENCILS[scheme.order], levels, exponents
    )


def dphi_dr_at_one(
        n: int,
        scheme: Optional[DifferenceScheme] = None
) -> OneSidedDerivative:
    """
    Forward-difference estimate of dphi_n/dr at r = 1 reported together with
    the log-hyperfactorial residual.
    """
    n = validate_n(n)
    if scheme is None:
        scheme = DifferenceScheme()
    step = scheme.step(1.0)
    levels = int(scheme.richardson_levels)
    _check_step(1.0, step, levels)
    exponents = [scheme.order + ind for ind in range(levels)]
    value = _difference_derivative(
        n, 1.0, step, FORWARD_STENCILS[scheme.order], levels, exponents
    )
    return OneSidedDerivative(
        n=n,
        value=value,
        hyperfactorial_residual=hyperfactorial_residual(n),
    )


def eq3_rhs(n: int, r: float, derivative: float) -> float:
    """
    Right-hand side of the differentiated root-sum identity given dphi/dr.
    """
    m = n + 1.0
    log_m = math.log(m)
    first = (r / (r + 1.0) * m - 0.5) * math.pow(m, 1.0 / r) * log_m
    second = r * r / (r + 1.0) ** 2 * math.pow(m, (1.0 + r) / r)
    return first - second + r * r * derivative


def check_eq3(
        n: int,
        r: float,
        scheme: Optional[DifferenceScheme] = None
) -> Eq3Check:
    """
    Evaluate both sides of the differentiated root-sum identity.
    """
    n = validate_n(n)
    r = RootIndex(r)
    derivative = dphi_dr(n, r, scheme)
    return Eq3Check(
        n=n,
        r=float(r),
        lhs=exact_weighted_log_sum(n, r),
        rhs=eq3_rhs(n, r, derivative),
        dphi_dr=derivative,
    )


def verify_eq3(n: int, r: float, scheme: Optional[DifferenceScheme] = None) -> float:
    """
    Signed residual LHS - RHS of the differentiated root-sum identity. The
    identity is exact, so the residual measures the differentiation error.
    """
    return check_eq3(n, r, scheme).residual


def xi_via_identity(n: int) -> float:
    """
    xi_n = ln n! - (n + 1/2) ln(n + 1) + (n + 1)
    """
    n = validate_n(n)
    return exact_log_factorial(n) - (n + 0.5) * math.log(n + 1.0) + (n + 1.0)


def _scaled_derivative(task: Tuple[int, float, DifferenceScheme]) -> float:
    n, r, scheme = task
    return r * r * dphi_dr(n, r, scheme)


def xi_via_limit(
        n: int,
        r_ladder: Sequence[float] = DEFAULT_XI_LADDER,
        scheme: Optional[DifferenceScheme] = None,
        tolerance: Optional[float] = None
) -> XiEstimate:
    """
    Estimate xi_n as the limit of g(r) = r^2 dphi_n/dr for r -> infinity.

    g is evaluated on the ladder and extrapolated to 1/r = 0 by polynomial
    extrapolation in 1/r.

    Args:
        n: Positive integer within the oracle cap.
        r_ladder: Strictly ascending root indices, all >= 2.
        scheme: The difference scheme used for dphi/dr.
        tolerance: Largest accepted difference between the last two
            extrapolants. Defaults to the configured limit tolerance.

    Return:
        An XiEstimate comparing the limit with xi_via_identity.

    Raises:
        LimitConvergenceError: If the extrapolants have not settled.
    """
    n = validate_n(n)
    ladder = [float(RootIndex(r)) for r in r_ladder]
    if len(ladder) < 2:
        raise DomainError("The r ladder requires at least two points.")
    if ladder[0] < 2.0 or not is_strictly_ascending(ladder):
        raise DomainError(
            f"The r ladder must be strictly ascending with values >= 2, got {ladder}."
        )
    if scheme is None:
        scheme = DifferenceScheme()
    config = get_config()
    if tolerance is None:
        tolerance = config.limit_tolerance

    g_values = map_ordered(
        _scaled_derivative,
        [(n, r, scheme) for r in ladder],
        config.grid_workers,
    )
    extrapolants = neville_extrapolate([1.0 / r for r in ladder], g_values)
    change = abs(extrapolants[-1] - extrapolants[-2])
    LOGGER.debug("Extrapolants of xi_%s: %s", n, extrapolants)
    if not math.isfinite(change) or change > tolerance:
        raise LimitConvergenceError(
            f"The limit of r^2 dphi/dr for n = {n} did not converge: the last "
            f"two extrapolants differ by {change:.3g} > {tolerance:.3g}.",
            extrapolants,
        )

    xi_limit = extrapolants[-1]
    xi_identity = xi_via_identity(n)
    return XiEstimate(
        n=n,
        xi_identity=xi_identity,
        xi_limit=xi_limit,
        discrepancy=abs(xi_identity - xi_limit),
        limit_diagnostics=list(zip(ladder, g_values)),
        extrapolants=extrapolants,
    )
