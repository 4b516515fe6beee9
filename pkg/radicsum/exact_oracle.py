"""
radicsum.exact_oracle
=====================

Brute-force evaluation of the sums

    S_n(r) = sum_{i=1}^{n} i^(1/r),        ln n! = sum_{i=1}^{n} ln i,
    sum_{i=1}^{n} i^(1/r) ln i,            ln H(n) = sum_{i=1}^{n} i ln i,

which serve as ground truth for all closed-form approximations.

Terms are evaluated in vectorized blocks. Each block is reduced with an exactly
rounded sum and the block sums are combined in a compensated accumulator, so
the relative error of a sum does not grow with n.
"""
from dataclasses import dataclass
import logging
import math
from numbers import Integral, Real
from typing import Iterable, Optional, Tuple

import numpy as np

from radicsum.config import get_config
from radicsum.errors import DomainError, NumericOverflowError
from radicsum.utils import get_block_ranges, map_ordered, split_range


LOGGER = logging.getLogger(__name__)

TERM_KINDS = ("root", "log", "weighted_log", "hyper")


class RootIndex(float):
    """
    The exponent parameter r of the r'th root sum.

    A RootIndex is a float that is guaranteed to be finite and at least 1.
    """
    def __new__(cls, value: Real) -> "RootIndex":
        if isinstance(value, bool):
            raise DomainError("The root index r must be a real number.")
        try:
            value = float(value)
        except (TypeError, ValueError) as exc:
            raise DomainError(
                f"The root index r must be a real number, got '{value}'."
            ) from exc
        if not math.isfinite(value) or value < 1.0:
            raise DomainError(
                f"The root index r must satisfy r >= 1 and be finite, got {value}."
            )
        return super().__new__(cls, value)

    def __repr__(self) -> str:
        return f"RootIndex({float(self)!r})"


def validate_n(n: Integral, n_cap: Optional[int] = None) -> int:
    """
    Check that n is a positive integer within the oracle cap.

    Args:
        n: The number of terms.
        n_cap: The largest admissible n. Defaults to the configured cap.

    Return:
        n as a Python integer.
    """
    if isinstance(n, bool) or not isinstance(n, (Integral, np.integer)):
        raise DomainError(f"n must be a positive integer, got '{n}'.")
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}.")
    if n_cap is None:
        n_cap = get_config().n_cap
    if n > n_cap:
        raise DomainError(
            f"n = {n} exceeds the oracle cap of {n_cap}. Increase the cap by "
            "setting RADICSUM_N_CAP."
        )
    return n


class CompensatedAccumulator:
    """
    Running sum that tracks the rounding error of every addition
    (Neumaier's variant of Kahan summation).

    Attributes:
        primary: The running floating-point sum.
        compensation: The accumulated rounding error of 'primary'.
    """
    def __init__(self, value: float = 0.0):
        self.primary = float(value)
        self.compensation = 0.0

    def add(self, value: float) -> None:
        """
        Add a single value to the sum.
        """
        value = float(value)
        total = self.primary + value
        if abs(self.primary) >= abs(value):
            self.compensation += (self.primary - total) + value
        else:
            self.compensation += (value - total) + self.primary
        self.primary = total

    def add_array(self, values: Iterable[float]) -> None:
        """
        Add a block of values.

        The block is reduced with an exactly rounded sum before it enters
        the running sum.
        """
        values = np.asarray(values, dtype=np.float64)
        if values.size == 0:
            return None
        try:
            block_sum = math.fsum(values.tolist())
        except OverflowError as exc:
            raise NumericOverflowError(
                "Intermediate overflow while summing a block of terms."
            ) from exc
        self.add(block_sum)

    def merge(self, other: "CompensatedAccumulator") -> None:
        """
        Integrate the running sum of another accumulator.

        Args:
            other: Accumulator holding the sum over a disjoint set of terms.
        """
        self.add(other.primary)
        self.compensation += other.compensation

    @property
    def total(self) -> float:
        """
        The compensated value of the sum.
        """
        return self.primary + self.compensation


@dataclass(frozen=True)
class RiemannPartitionSums:
    """
    Lower sum, upper sum and integral of f(x) = x^(1/r) for the unit-width
    partition {0, 1, ..., n} of [0, n].

    Attributes:
        lower: L = sum_{i=0}^{n-1} i^(1/r)
        upper: U = sum_{i=1}^{n} i^(1/r)
        integral: I = r / (r + 1) n^((1 + r) / r)
    """
    lower: float
    upper: float
    integral: float

    @property
    def width(self) -> float:
        """
        U - L, which telescopes to n^(1/r).
        """
        return self.upper - self.lower

    @property
    def trapezoid_defect(self) -> float:
        """
        I - (L + U) / 2. Non-negative because x^(1/r) is concave.
        """
        return self.integral - 0.5 * (self.lower + self.upper)

    def is_sandwiched(self) -> bool:
        """
        Whether L <= I <= U holds.
        """
        return self.lower <= self.integral <= self.upper


def root_terms(i: np.ndarray, r: float) -> np.ndarray:
    """
    Evaluate i^(1/r) for an array of positive integers stored as floats.

    The power is computed as exp(ln(i) / r). For r = 1 the integers are their
    own roots and are returned unchanged.

    Args:
        i: Array of positive integers.
        r: The root index.

    Return:
        Array of the same shape containing the r'th roots.
    """
    if r == 1.0:
        return np.array(i, dtype=np.float64)
    terms = np.exp(np.log(i) / r)
    terms[i == 1.0] = 1.0
    return terms


def root_term(i: int, r: float) -> float:
    """
    Scalar version of :func:`root_terms`.
    """
    return float(root_terms(np.array([float(i)]), r)[0])


def _block_terms(
        kind: str,
        r: Optional[float],
        lower: int,
        upper: int,
        ascending: bool
) -> np.ndarray:
    """
    Terms of the sum 'kind' for i in [lower, upper).
    """
    i = np.arange(lower, upper, dtype=np.float64)
    if not ascending:
        i = i[::-1]
    if kind == "root":
        return root_terms(i, r)
    log_i = np.log(i)
    if kind == "log":
        return log_i
    if kind == "weighted_log":
        return root_terms(i, r) * log_i
    if kind == "hyper":
        return i * log_i
    raise ValueError(f"Unknown term kind '{kind}'. Expected one of {TERM_KINDS}.")


def _partial_sum(
        task: Tuple[str, Optional[float], int, int, int, bool]
) -> CompensatedAccumulator:
    """
    Accumulate the terms of a sum over a range of indices.

    Args:
        task: Tuple ``(kind, r, lower, upper, chunk_size, ascending)``.

    Return:
        A CompensatedAccumulator holding the partial sum.
    """
    kind, r, lower, upper, chunk_size, ascending = task
    acc = CompensatedAccumulator()
    for block_lower, block_upper in get_block_ranges(
            lower, upper, chunk_size, ascending=ascending
    ):
        acc.add_array(_block_terms(kind, r, block_lower, block_upper, ascending))
    return acc


def accumulate_terms(
        kind: str,
        lower: int,
        upper: int,
        r: Optional[float] = None,
        ascending: bool = True
) -> CompensatedAccumulator:
    """
    Sum the terms of kind 'kind' for i in [lower, upper).

    The range is split into 'oracle_workers' parts which are summed
    independently and merged in range order. The partitioning only depends on
    the configuration, so results are reproducible for a fixed configuration.

    Args:
        kind: One of 'root', 'log', 'weighted_log' or 'hyper'.
        lower: First index of the sum.
        upper: End of the index range (exclusive).
        r: The root index for the 'root' and 'weighted_log' sums.
        ascending: Whether to add the terms in ascending order of i.

    Return:
        A CompensatedAccumulator holding the sum.
    """
    if kind not in TERM_KINDS:
        raise ValueError(f"Unknown term kind '{kind}'. Expected one of {TERM_KINDS}.")
    config = get_config()
    parts = split_range(lower, upper, config.oracle_workers)
    if not ascending:
        parts.reverse()
    tasks = [
        (kind, None if r is None else float(r), part_lower, part_upper,
         config.chunk_size, ascending)
        for part_lower, part_upper in parts
    ]
    result = CompensatedAccumulator()
    for acc in map_ordered(_partial_sum, tasks, config.oracle_workers):
        result.merge(acc)
    if not math.isfinite(result.total):
        raise NumericOverflowError(
            f"The '{kind}' sum over [{lower}, {upper}) exceeds the floating-point "
            "range."
        )
    return result


def exact_root_sum(n: int, r: float, ascending: bool = True) -> float:
    """
    Brute-force evaluation of sum_{i=1}^{n} i^(1/r).

    Args:
        n: The number of terms.
        r: The root index, r >= 1.
        ascending: Whether to add the terms in ascending order of i.

    Return:
        The sum as a float.
    """
    n = validate_n(n)
    r = RootIndex(r)
    return accumulate_terms("root", 1, n + 1, r=r, ascending=ascending).total


def exact_log_factorial(n: int, ascending: bool = True) -> float:
    """
    Brute-force evaluation of ln n! = sum_{i=1}^{n} ln i.
    """
    n = validate_n(n)
    return accumulate_terms("log", 1, n + 1, ascending=ascending).total


def exact_weighted_log_sum(n: int, r: float, ascending: bool = True) -> float:
    """
    Brute-force evaluation of sum_{i=1}^{n} i^(1/r) ln i, the derivative
    of the root sum with respect to 1/r.
    """
    n = validate_n(n)
    r = RootIndex(r)
    return accumulate_terms("weighted_log", 1, n + 1, r=r, ascending=ascending).total


def exact_hyperfactorial_log(n: int, ascending: bool = True) -> float:
    """
    Brute-force evaluation of ln H(n) = sum_{i=1}^{n} i ln i.
    """
    n = validate_n(n)
    return accumulate_terms("hyper", 1, n + 1, ascending=ascending).total


def riemann_bounds(n: int, r: float) -> RiemannPartitionSums:
    """
    Lower sum, upper sum and integral of x^(1/r) on the unit-width partition
    of [0, n].

    The lower sum is accumulated first and the upper sum is obtained by adding
    the last term n^(1/r) to the same accumulator, so U - L reproduces that
    term up to the final rounding.

    Args:
        n: The number of subintervals.
        r: The root index, r >= 1.

    Return:
        A RiemannPartitionSums object.
    """
    n = validate_n(n)
    r = RootIndex(r)
    acc = accumulate_terms("root", 1, n, r=r)
    lower = acc.total
    acc.add(root_term(n, r))
    upper = acc.total
    try:
        integral = r / (r + 1.0) * math.pow(n, (1.0 + r) / r)
    except OverflowError as exc:
        raise NumericOverflowError(
            f"The integral of x^(1/r) over [0, {n}] overflows for r = {r}."
        ) from exc
    return RiemannPartitionSums(lower=lower, upper=upper, integral=integral)
