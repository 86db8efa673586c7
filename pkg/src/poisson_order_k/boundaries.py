"""Mean-scale thresholds where the median or the mode steps.

All solves are carried out in the mean ``mu = kappa * lam``; the returned
:class:`BoundaryPoint` holds both ``mu`` (``value``) and ``lam``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import formulas
from .errors import AmbiguousModeError, InvalidParameterError, NotFoundError, PoissonOrderKError
from .params import OrderKParams
from .pmf import pmf_adelson
from .roots import expand_bracket, find_root
from .scaled import rel_diff, scaled_sum
from .stats import TIE_RTOL, mode, mode_scan_end

ALPHA_TOL = 1e-13
BETA_TOL = 1e-12


class ConvergenceError(PoissonOrderKError):
    """The root finder stopped with a residual above tolerance."""


class BoundaryKind(str, enum.Enum):
    MEDIAN_ALPHA = "median"
    MODE_BETA = "mode"


@dataclass(frozen=True)
class BoundaryPoint:
    k: int
    n: int
    kind: BoundaryKind
    value: float
    lam: float
    residual: float
    modes_at_boundary: list[int] | None = None

    @property
    def offset(self) -> float:
        """value - n."""
        return self.value - self.n


def zero_median_threshold(k: int) -> tuple[float, int]:
    """``(ln2 / k, floor((k+1) ln2 / 2))``: last lambda and last integer mean with median 0."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidParameterError(f"k must be a positive integer, got {k!r}")
    return formulas.zero_median_lambda(k), formulas.zero_median_last_n(k)


def _cdf_at(k: int, mu: float, n: int) -> float:
    table = pmf_adelson(OrderKParams.from_mean(k, mu), n, compensated=True)
    return scaled_sum(table.mantissa, table.exponent).to_float()


def alpha(k: int, n: int, tol: float = ALPHA_TOL) -> BoundaryPoint:
    """Mean at which the median steps from ``n - floor((k+4)/8)`` upward.

    At the returned mean, ``P(X <= n - floor((k+4)/8)) = 1/2``.  For
    ``k = 1`` any ``n >= 0`` is allowed; otherwise ``n >= kappa``.
    """
    kap = formulas.kappa(k)
    OrderKParams(k, 1.0)  # validates k
    if n < 0 or (k > 1 and n < kap):
        raise InvalidParameterError(f"alpha needs n >= kappa = {kap} for k = {k}, got n = {n}")
    nu = formulas.median_formula(k, n)

    def excess(mu: float) -> float:
        # increasing in mu because the CDF decreases in lambda
        return 0.5 - _cdf_at(k, mu, nu)

    guess = formulas.alpha_asymptotic(k, n)
    lo, hi, flo, fhi = expand_bracket(excess, guess - 1.0, guess + 1.0, floor=0.0)
    mu, res = find_root(excess, lo, hi, flo, fhi, ftol=tol)
    if abs(res) > tol:
        raise ConvergenceError(f"alpha(k={k}, n={n}): residual {abs(res):.3e} > {tol:.1e}")
    return BoundaryPoint(k, n, BoundaryKind.MEDIAN_ALPHA, mu, mu / kap, abs(res))


def _adjacent_gap(k: int, mu: float, m: int) -> float:
    """(p_{m+1} - p_m) / max(p_m, p_{m+1}) at mean ``mu``."""
    table = pmf_adelson(OrderKParams.from_mean(k, mu), m + 1, compensated=True)
    a, b = table[m], table[m + 1]
    d = rel_diff(a, b)
    return d if b > a else -d


def beta(k: int, n: int, tol: float = BETA_TOL) -> BoundaryPoint:
    """Mean at which the mode steps from ``m = n - floor((3k+5)/8)`` to ``m + 1``.

    For ``k = 1`` the answer is exactly ``n``.  Otherwise ``n >= 2 kappa``.
    """
    kap = formulas.kappa(k)
    OrderKParams(k, 1.0)
    m = formulas.mode_formula(k, n)
    if k == 1:
        if n < 1:
            raise InvalidParameterError(f"beta(k=1) needs n >= 1, got {n}")
        return BoundaryPoint(1, n, BoundaryKind.MODE_BETA, float(n), float(n), 0.0, [n - 1, n])
    if n < 2 * kap:
        raise InvalidParameterError(f"beta needs n >= 2 kappa = {2 * kap} for k = {k}, got n = {n}")

    def gap(mu: float) -> float:
        return _adjacent_gap(k, mu, m)

    guess = formulas.beta_asymptotic(k, n)
    lo, hi, flo, fhi = expand_bracket(gap, guess - 1.0, guess + 1.0, floor=0.0)
    mu, res = find_root(gap, lo, hi, flo, fhi, ftol=tol)
    if abs(res) > tol:
        raise ConvergenceError(f"beta(k={k}, n={n}): residual {abs(res):.3e} > {tol:.1e}")
    modes = mode(OrderKParams.from_mean(k, mu))
    if not set(modes) <= {m, m + 1}:
        raise AmbiguousModeError(
            f"beta(k={k}, n={n}): global maximum at {modes}, expected within {[m, m + 1]}"
        )
    return BoundaryPoint(k, n, BoundaryKind.MODE_BETA, mu, mu / kap, abs(res), modes)


def default_scan_step(k: int) -> float:
    return min(1e-3, k ** -0.875 / 100)


def _log_h_max(k: int, lam: float, end: int) -> tuple[float, int]:
    """max over 1 <= n <= end of log h_k(n; lam), and its argmax."""
    table = pmf_adelson(OrderKParams(k, lam), end)
    logp = table.log_values()[1:]
    i = int(np.argmax(logp))
    return float(logp[i] - table.log_values()[0]), i + 1


def first_double_mode(
    k: int,
    lambda_max: float = 2.0,
    step: float | None = None,
    tie_rtol: float = TIE_RTOL,
) -> tuple[float, list[int]]:
    """Smallest lambda at which the mode is no longer uniquely zero.

    Scans lambda upward on a grid until the mode set changes, then
    root-finds the tie between 0 and the competing maximum.  Each
    ``h_k(n; lam)`` is increasing in lambda, so the first change is always
    a tie with zero.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise InvalidParameterError(f"first_double_mode needs k >= 2, got {k!r}")
    if step is None:
        step = default_scan_step(k)
    prev = 0.0
    i = 1
    while True:
        lam = i * step
        if lam > lambda_max:
            raise NotFoundError(f"mode stays [0] for k = {k} up to lambda = {lambda_max}")
        if mode(OrderKParams(k, lam), tie_rtol=tie_rtol) != [0]:
            break
        prev = lam
        i += 1

    end = mode_scan_end(OrderKParams(k, lam))

    def top(x: float) -> float:
        return _log_h_max(k, x, end)[0]

    lo = prev if prev > 0 else lam * 1e-6
    x, _ = find_root(top, lo, lam, xtol_rel=1e-12)
    n_star = _log_h_max(k, x, end)[1]

    def log_h(x: float) -> float:
        t = pmf_adelson(OrderKParams(k, x), n_star).log_values()
        return float(t[n_star] - t[0])

    lo, hi, flo, fhi = expand_bracket(log_h, x * (1 - 1e-9), x * (1 + 1e-9), floor=0.0)
    x, _ = find_root(log_h, lo, hi, flo, fhi, ftol=1e-15, xtol_rel=1e-15)
    modes = mode(OrderKParams(k, x), tie_rtol=tie_rtol)
    if 0 not in modes or n_star not in modes:
        raise AmbiguousModeError(f"k = {k}: tie at lambda = {x!r} gives modes {modes}, expected 0 and {n_star}")
    return x, modes


def zero_mode_sup(k: int, lambda_max: float = 2.0, step: float | None = None) -> float:
    """Supremum of the mean for which the mode is uniquely zero."""
    lam, modes = first_double_mode(k, lambda_max, step)
    if 0 in modes:
        return formulas.kappa(k) * lam
    # not reachable while each h_k(n; .) is increasing; kept as a fallback
    lo, hi = 0.0, lam
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mode(OrderKParams(k, mid)) == [0]:
            lo = mid
        else:
            hi = mid
    return formulas.kappa(k) * lo
