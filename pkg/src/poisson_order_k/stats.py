"""Mean, variance, CDF, median and mode for fixed (k, lambda)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, ScanLimitError
from .params import OrderKParams
from .pmf import PmfTable, pmf_adelson
from .scaled import ScaledReal, scaled_sum

TIE_RTOL = 1e-9


@dataclass(frozen=True)
class SummaryStats:
    params: OrderKParams
    mean: float
    variance: float
    median: int
    modes: list[int] = field(default_factory=list)
    cdf_at_median: float = 0.0

    @property
    def multimodal(self) -> bool:
        return len(self.modes) > 1


def mean_variance(params: OrderKParams) -> tuple[float, float]:
    return params.mean, params.variance


def median_scan_cap(params: OrderKParams) -> int:
    return math.ceil(params.mean + 12 * params.sigma + 10)


def mode_scan_end(params: OrderKParams, guard: int | None = None) -> int:
    if guard is None:
        guard = 2 * params.k
    return math.floor(params.mean) + guard


def cdf_scaled(params: OrderKParams, n: int, table: PmfTable | None = None) -> ScaledReal:
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    if table is None or table.n_max < n:
        table = pmf_adelson(params, n)
    return scaled_sum(table.mantissa[: n + 1], table.exponent[: n + 1])


def cdf(params: OrderKParams, n: int, table: PmfTable | None = None) -> float:
    """P(X <= n), summed in scaled form and clamped to [0, 1]."""
    return min(1.0, max(0.0, cdf_scaled(params, n, table).to_float()))


def _median_from_table(table: PmfTable) -> tuple[int, float]:
    running = table.cdf_float()
    hits = np.nonzero(running >= 0.5)[0]
    if len(hits) == 0:
        raise ScanLimitError(
            f"CDF did not reach 1/2 within n <= {table.n_max} for {table.params}"
        )
    n = int(hits[0])
    # settle the crossing with compensated sums, not the running cumsum
    while n > 0 and cdf(table.params, n - 1, table) >= 0.5:
        n -= 1
    while cdf(table.params, n, table) < 0.5:
        n += 1
        if n > table.n_max:
            raise ScanLimitError(f"CDF did not reach 1/2 for {table.params}")
    return n, cdf(table.params, n, table)


def median(params: OrderKParams) -> int:
    """Smallest integer n with P(X <= n) >= 1/2."""
    return _median_from_table(pmf_adelson(params, median_scan_cap(params)))[0]


def _modes_from_table(table: PmfTable, end: int, tie_rtol: float) -> list[int]:
    mant = table.mantissa[: end + 1]
    expo = table.exponent[: end + 1]
    nz = mant != 0
    top = int(expo[nz].max())
    rel = np.ldexp(mant, np.clip(expo - top, -2000, 0))
    best = rel.max()
    return [int(i) for i in np.nonzero(rel >= best * (1.0 - tie_rtol))[0]]


def mode(params: OrderKParams, guard: int | None = None, tie_rtol: float = TIE_RTOL) -> list[int]:
    """All n in [0, floor(kappa lam) + guard] whose mass ties the global maximum."""
    end = mode_scan_end(params, guard)
    return _modes_from_table(pmf_adelson(params, end), end, tie_rtol)


def summarize(params: OrderKParams, tie_rtol: float = TIE_RTOL) -> SummaryStats:
    end = mode_scan_end(params)
    table = pmf_adelson(params, max(end, median_scan_cap(params)))
    med, f_med = _median_from_table(table)
    return SummaryStats(
        params=params,
        mean=params.mean,
        variance=params.variance,
        median=med,
        modes=_modes_from_table(table, end, tie_rtol),
        cdf_at_median=f_med,
    )
