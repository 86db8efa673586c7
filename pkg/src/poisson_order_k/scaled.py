"""Nonnegative reals with an explicit base-2 exponent.

A :class:`ScaledReal` is ``mantissa * 2**exponent`` with the mantissa in
``[0.5, 1)`` (or the canonical zero ``(0.0, 0)``).  The exponent is an
unbounded Python int, so values such as ``exp(-1e5)`` survive intact.
Tables of such values are held as a pair of numpy arrays; the helpers at
the bottom of this module operate on that array form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

import mpmath
import numpy as np

LN2 = math.log(2.0)


@total_ordering
@dataclass(frozen=True)
class ScaledReal:
    mantissa: float
    exponent: int

    def __post_init__(self) -> None:
        m = float(self.mantissa)
        if m == 0.0:
            object.__setattr__(self, "mantissa", 0.0)
            object.__setattr__(self, "exponent", 0)
            return
        if not (0.5 <= m < 1.0):
            raise ValueError(f"mantissa {m!r} outside [0.5, 1); use ScaledReal.normalized")
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", int(self.exponent))

    @classmethod
    def normalized(cls, value: float, exponent: int = 0) -> "ScaledReal":
        """Build ``value * 2**exponent`` for any finite ``value >= 0``."""
        if value < 0 or not math.isfinite(value):
            raise ValueError(f"ScaledReal needs a finite nonnegative value, got {value!r}")
        if value == 0.0:
            return ZERO
        m, e = math.frexp(value)
        return cls(m, e + int(exponent))

    @classmethod
    def from_float(cls, value: float) -> "ScaledReal":
        return cls.normalized(float(value))

    @classmethod
    def from_mpf(cls, value) -> "ScaledReal":
        if value < 0:
            raise ValueError("ScaledReal needs a nonnegative value")
        if value == 0:
            return ZERO
        m, e = mpmath.frexp(value)
        # rounding the mpf mantissa to double can land exactly on 1.0
        return cls.normalized(float(m), int(e))

    @classmethod
    def exp_neg(cls, x: float, factor: int = 1) -> "ScaledReal":
        """``exp(-factor * x)``, correctly rounded for any size of the product.

        The product is formed in extended precision; rounding ``k * lam``
        to double first would cost ~1e-13 relative at ``k lam ~ 1e4``.
        """
        with mpmath.workdps(40):
            return cls.from_mpf(mpmath.exp(-mpmath.mpf(x) * factor))

    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    def to_float(self) -> float:
        """Native float value; underflows to 0.0, overflows to inf."""
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.inf

    def log(self) -> float:
        if self.is_zero():
            return -math.inf
        return math.log(self.mantissa) + self.exponent * LN2

    def __add__(self, other: "ScaledReal") -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        top = max(self.exponent, other.exponent)
        s = math.ldexp(self.mantissa, self.exponent - top) + math.ldexp(
            other.mantissa, other.exponent - top
        )
        return ScaledReal.normalized(s, top)

    def __mul__(self, other) -> "ScaledReal":
        if isinstance(other, ScaledReal):
            if self.is_zero() or other.is_zero():
                return ZERO
            return ScaledReal.normalized(
                self.mantissa * other.mantissa, self.exponent + other.exponent
            )
        other = float(other)
        if other < 0 or not math.isfinite(other):
            raise ValueError("ScaledReal can only be scaled by a finite nonnegative factor")
        if self.is_zero() or other == 0.0:
            return ZERO
        m, e = math.frexp(other)
        return ScaledReal.normalized(self.mantissa * m, self.exponent + e)

    __rmul__ = __mul__

    def __truediv__(self, other: "ScaledReal") -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.from_float(other)
        if other.is_zero():
            raise ZeroDivisionError("division by a zero ScaledReal")
        if self.is_zero():
            return ZERO
        return ScaledReal.normalized(
            self.mantissa / other.mantissa, self.exponent - other.exponent
        )

    def __lt__(self, other: "ScaledReal") -> bool:
        if not isinstance(other, ScaledReal):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.mantissa < other.mantissa
        if self.exponent != other.exponent:
            return self.exponent < other.exponent
        return self.mantissa < other.mantissa

    def to_decimal(self, digits: int = 17) -> str:
        return decimal_string(self.mantissa, self.exponent, digits)

    def __str__(self) -> str:
        return self.to_decimal()


ZERO = ScaledReal(0.0, 0)


def rel_diff(a: ScaledReal, b: ScaledReal) -> float:
    """``|a - b| / max(a, b)``, computed without leaving scaled form."""
    if a.is_zero() and b.is_zero():
        return 0.0
    if a.is_zero() or b.is_zero():
        return 1.0
    top = max(a.exponent, b.exponent)
    x = math.ldexp(a.mantissa, a.exponent - top)
    y = math.ldexp(b.mantissa, b.exponent - top)
    return abs(x - y) / max(x, y)


def decimal_string(mantissa: float, exponent: int, digits: int = 17) -> str:
    """Decimal rendering with ``digits`` significant digits, any exponent."""
    if mantissa == 0.0:
        return "0.0"
    with mpmath.workdps(digits + 10):
        value = mpmath.ldexp(mpmath.mpf(mantissa), int(exponent))
        return mpmath.nstr(value, digits, min_fixed=-5, max_fixed=6, strip_zeros=False)


# -- array form ---------------------------------------------------------------

def rel_diff_arrays(m1, e1, m2, e2) -> np.ndarray:
    """Elementwise ``|a - b| / max(a, b)`` for two scaled arrays (0 where both vanish)."""
    m1 = np.asarray(m1, dtype=float)
    m2 = np.asarray(m2, dtype=float)
    e1 = np.asarray(e1, dtype=np.int64)
    e2 = np.asarray(e2, dtype=np.int64)
    top = np.maximum(np.where(m1 == 0, e2, e1), np.where(m2 == 0, e1, e2))
    x = np.ldexp(m1, np.clip(e1 - top, -2000, 0))
    y = np.ldexp(m2, np.clip(e2 - top, -2000, 0))
    big = np.maximum(x, y)
    out = np.zeros_like(big)
    nz = big > 0
    out[nz] = np.abs(x[nz] - y[nz]) / big[nz]
    return out


def scaled_sum(mant, expo) -> ScaledReal:
    """Compensated sum of a scaled array, returned in scaled form."""
    mant = np.asarray(mant, dtype=float)
    expo = np.asarray(expo, dtype=np.int64)
    nz = mant != 0
    if not nz.any():
        return ZERO
    top = int(expo[nz].max())
    shift = np.clip(expo[nz] - top, -2000, 0)
    return ScaledReal.normalized(math.fsum(np.ldexp(mant[nz], shift)), top)
