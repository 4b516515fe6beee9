"""
radicsum.definitions
====================

Constants used throughout the package.
"""
import math

import numpy as np


MACHINE_EPSILON = float(np.finfo(np.float64).eps)

SQRT_2PI = 2.5066282746310002
LOG_SQRT_2PI = 0.91893853320467274
# Natural logarithm of the Glaisher-Kinkelin constant A = 1.2824271291006226...
LOG_GLAISHER = 0.24875447703378426

DEFAULT_N_CAP = 1_000_000_000
DEFAULT_CHUNK_SIZE = 2 ** 18
DEFAULT_LIMIT_TOLERANCE = 1e-3

DEFAULT_N_VALUES = (1, 2, 3, 5, 10, 25, 100, 1_000, 10_000)
DEFAULT_R_VALUES = (1.0, 1.1, 1.5, 2.0, math.e, 3.0, 5.0, 10.0, 32.0, 64.0)

DEFAULT_XI_LADDER = (8.0, 16.0, 32.0, 64.0, 128.0)
DEFAULT_PHI_LADDER = (8.0, 16.0, 32.0, 64.0, 128.0, 1024.0)
MAX_PHI_LADDER = 1e6

EQ3_N_VALUES = (1, 10, 100)
EQ3_R_VALUES = (1.5, 2.0, 3.0, 5.0, 8.0)
XI_N_VALUES = (10, 100, 1_000, 10_000)
XI_TWO_ROUTES_N_VALUES = (1, 10, 100)
PHI_LIMIT_N_VALUES = (1, 10, 100)
HYPERFACT_N_VALUES = (10, 100, 1_000, 10_000)
SPEEDUP_N_VALUES = (1_000, 1_000_000, 100_000_000)

# Relative scale of the tolerance applied to phi bound checks.
PHI_RELATIVE_TOLERANCE = 1e-9
EQ3_RELATIVE_TOLERANCE = 1e-6
DPHI_POSITIVITY_TOLERANCE = 1e-8
SPEEDUP_SPREAD_LIMIT = 10.0

SCHEMA_VERSION = "1.0"
SIGNIFICANT_DIGITS = 17

CLAIM_IDS = (
    "PHI_BOUNDS",
    "PHI_MONOTONE",
    "PHI_LIMIT_HALF",
    "EQ3_IDENTITY",
    "XI_SQRT_2PI",
    "XI_TWO_ROUTES",
    "HYPERFACT_RESIDUAL",
    "SPEEDUP",
)

VERIFY_CSV_COLUMNS = ("claim", "n", "r", "value", "target", "abs_error", "status")
BENCH_CSV_COLUMNS = ("n", "r", "exact", "approx", "phi", "exact_ns", "approx_ns")
SUM_CSV_COLUMNS = ("n", "r", "exact", "approx", "phi")
FACTORIAL_CSV_COLUMNS = (
    "n",
    "xi_source",
    "xi",
    "log_estimate",
    "exact_log",
    "stirling_log",
    "estimate_ratio",
    "stirling_ratio",
)

XI_ROUTES_TOLERANCE = 1e-3
# Envelope factor applied to sqrt(2 pi) / (12 n) in the xi convergence claim.
XI_ENVELOPE_FACTOR = 1.1
# Largest accepted |e^xi_n - sqrt(2 pi)| at the checked decades.
XI_ERROR_LIMITS = {10: 0.021, 100: 2.2e-3, 10_000: 5e-5}
# Closed-form calls per timed repetition in the benchmark.
APPROX_INNER_CALLS = 1000
