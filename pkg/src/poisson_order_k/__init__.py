"""Poisson distribution of order k: pmf engines, median/mode, boundary solvers."""

__version__ = "0.1.0"

from .boundaries import (
    BoundaryKind,
    BoundaryPoint,
    ConvergenceError,
    alpha,
    beta,
    first_double_mode,
    zero_median_threshold,
    zero_mode_sup,
)
from .errors import (
    AmbiguousModeError,
    BracketError,
    InvalidParameterError,
    NotFoundError,
    OracleBudgetError,
    PoissonOrderKError,
    ScanLimitError,
)
from .params import OrderKParams
from .pmf import Engine, PmfTable, compute_pmf, h_polynomial
from .scaled import ScaledReal
from .stats import SummaryStats, cdf, median, mode, summarize

__all__ = [
    "AmbiguousModeError",
    "BoundaryKind",
    "BoundaryPoint",
    "BracketError",
    "ConvergenceError",
    "Engine",
    "InvalidParameterError",
    "NotFoundError",
    "OracleBudgetError",
    "OrderKParams",
    "PmfTable",
    "PoissonOrderKError",
    "ScaledReal",
    "ScanLimitError",
    "SummaryStats",
    "alpha",
    "beta",
    "cdf",
    "compute_pmf",
    "first_double_mode",
    "h_polynomial",
    "median",
    "mode",
    "summarize",
    "zero_median_threshold",
    "zero_mode_sup",
]
