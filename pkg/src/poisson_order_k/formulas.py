"""Closed-form and asymptotic expressions for the median and mode.

Everything here is a direct evaluation; nothing searches or iterates.
The k-only terms are returned as exact ``Fraction`` where they are
rational, so identities such as ``5/8 + 1/24 == 2/3`` can be asserted
exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction


def kappa(k: int) -> int:
    return k * (k + 1) // 2


def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


# -- median ------------------------------------------------------------------

def median_offset(k: int) -> int:
    """floor((k+4)/8): how far the median sits below an integer mean."""
    return (k + 4) // 8


def median_formula(k: int, n: int) -> int:
    """Median at mean ``n`` (conjectured for ``n >= kappa``)."""
    return n - median_offset(k)


def alpha_limit(k: int) -> Fraction:
    """k-only part of alpha_{k,n} - n: frac((k+4)/8) + k/(8(2k+1))."""
    return _frac(Fraction(k + 4, 8)) + Fraction(k, 8 * (2 * k + 1))


def mean_minus_median_limit(k: int) -> Fraction:
    return Fraction(2 * k + 9, 16) - Fraction(1, 16 * (2 * k + 1))


def alpha_correction(k: int, n: float) -> float:
    """The fitted 1/n and kappa/n^2 correction A_{k,n}."""
    kap = kappa(k)
    return (3 * kap / 349 + 13 / 1000) / n + 13 / 1500 * (median_offset(k) - 3) * kap / n**2


def alpha_k1_expansion(n: float, terms: int = 4) -> float:
    """Large-n expansion of the standard Poisson median boundary."""
    coeffs = [
        lambda n: n,
        lambda n: 2 / 3,
        lambda n: 8 / (405 * n),
        lambda n: -64 / (5103 * n**2),
        lambda n: 2**7 * 23 / (3**9 * 5**2 * n**3),
    ]
    if not 1 <= terms <= len(coeffs):
        raise ValueError(f"terms must be in [1, {len(coeffs)}]")
    return math.fsum(c(n) for c in coeffs[:terms])


def alpha_asymptotic(k: int, n: float) -> float:
    if k == 1:
        return alpha_k1_expansion(n, 4) if n > 0 else math.log(2.0)
    if n <= 0:
        return n + float(alpha_limit(k))
    return n + float(alpha_limit(k)) + alpha_correction(k, n)


# -- mode --------------------------------------------------------------------

def mode_offset(k: int) -> int:
    """floor((3k+5)/8): how far the mode sits below an integer mean."""
    return (3 * k + 5) // 8


def mode_formula(k: int, n: int) -> int:
    """Mode at mean ``n`` (conjectured for ``n >= 2 kappa``)."""
    return n - mode_offset(k)


def beta_limit(k: int) -> Fraction:
    """k-only part of beta_{k,n} - n: frac((3k+5)/8) + (k-1)/(8(2k+1))."""
    return _frac(Fraction(3 * k + 5, 8)) + Fraction(k - 1, 8 * (2 * k + 1))


def mean_minus_mode_limit(k: int) -> Fraction:
    return Fraction(6 * k + 11, 16) - Fraction(3, 16 * (2 * k + 1))


def beta_correction(k: int, n: float) -> float:
    """The fitted correction B_{k,n}; meaningless for k = 1."""
    kap = kappa(k)
    return (kap / (16 + 8 / 9) - 1 / (13 + 2 / 3)) / n + mode_offset(k) * 3 * kap / (50 * n**2)


def beta_asymptotic(k: int, n: float) -> float:
    if k == 1:
        return float(n)
    if n <= 0:
        return n + float(beta_limit(k))
    return n + float(beta_limit(k)) + beta_correction(k, n)


def gps_integer_lambda_mode(k: int, lam: int) -> int:
    """Unique mode for integer lambda and 2 <= k <= 5: kappa*lam - floor(k/2)."""
    return kappa(k) * lam - k // 2


def mode_bounds(k: int, lam: float) -> tuple[int, int]:
    """Sharp bounds on every mode: max{0, floor(kappa lam) - kappa + 1 - [k=1]} .. floor(kappa lam)."""
    top = math.floor(kappa(k) * lam)
    low = max(0, top - kappa(k) + 1 - (1 if k == 1 else 0))
    return low, top


# -- zero median / zero mode ---------------------------------------------------

def zero_median_lambda(k: int) -> float:
    return math.log(2.0) / k


def zero_median_last_n(k: int) -> int:
    """Largest integer mean with median zero: floor((k+1) ln2 / 2)."""
    return math.floor((k + 1) * math.log(2.0) / 2)


def philippou_zero_mode_lambda(k: int) -> float:
    """Below 2/(k(k+1)) the mode is uniquely zero (kappa*lam < 1)."""
    return 2.0 / (k * (k + 1))
