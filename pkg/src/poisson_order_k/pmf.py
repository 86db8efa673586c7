"""Probability mass function of the Poisson distribution of order k.

Four recurrences compute the same table ``p_0 .. p_N``:

* ``adelson``  -- ``R_n = (lam/n) * sum_j j R_{n-j}``
* ``gps``      -- ``n P_n = sum_j (j lam) P_{n-j}``
* ``kp``       -- ``n h(n) = sum_j j lam h(n-j)`` with the ``n <= k`` split
* ``km``       -- the four-term recurrence, evaluated in multiprecision

plus ``oracle``, a brute-force sum over all tuples
``(n_1, ..., n_k)`` with ``n_1 + 2 n_2 + ... + k n_k = n``.

All values are held in scaled (mantissa, exponent) form, so
``p_0 = exp(-k lam)`` never underflows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import mpmath
import numpy as np
from scipy.special import gammaln

from . import _kernels
from .errors import InvalidParameterError, OracleBudgetError
from .params import OrderKParams
from .scaled import ScaledReal, scaled_sum

ORACLE_MAX_N = 60
ORACLE_MAX_K = 6


class Engine(str, enum.Enum):
    ADELSON = "adelson"
    GPS = "gps"
    KWON_PHILIPPOU = "kp"
    KOSTADINOVA_MINKOVA = "km"
    ORACLE = "oracle"


RECURRENCE_ENGINES = (
    Engine.ADELSON,
    Engine.GPS,
    Engine.KWON_PHILIPPOU,
    Engine.KOSTADINOVA_MINKOVA,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PmfTable:
    """Values ``p_0 .. p_{n_max}`` for one parameter pair.

    ``mantissa[n] * 2**exponent[n]`` is ``p_n``.  Indexing returns a
    :class:`ScaledReal`.
    """

    params: OrderKParams
    mantissa: np.ndarray
    exponent: np.ndarray
    engine: Engine
    n_max: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mantissa", _frozen(np.asarray(self.mantissa, dtype=float)))
        object.__setattr__(self, "exponent", _frozen(np.asarray(self.exponent, dtype=np.int64)))
        object.__setattr__(self, "n_max", len(self.mantissa) - 1)

    @classmethod
    def from_h(cls, params: OrderKParams, h_val, h_scale, engine: Engine) -> "PmfTable":
        """Attach ``exp(-k lam)`` to h-space kernel output in one step."""
        p0 = ScaledReal.exp_neg(params.lam, params.k)
        m, e = np.frexp(np.asarray(h_val, dtype=float) * p0.mantissa)
        e = e.astype(np.int64) + np.asarray(h_scale, dtype=np.int64) + p0.exponent
        e[m == 0] = 0
        return cls(params, m, e, engine)

    def __len__(self) -> int:
        return len(self.mantissa)

    def __getitem__(self, n: int) -> ScaledReal:
        return ScaledReal(float(self.mantissa[n]), int(self.exponent[n]))

    @property
    def values(self) -> tuple[ScaledReal, ...]:
        return tuple(self[n] for n in range(len(self)))

    def to_float(self) -> np.ndarray:
        """Native floats (entries below the double range become 0)."""
        return np.ldexp(self.mantissa, np.clip(self.exponent, -1100, 1100))

    def log_values(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.mantissa) + self.exponent * math.log(2.0)

    def h_values(self) -> tuple[np.ndarray, np.ndarray]:
        """``h_k(n; lam) = exp(k lam) p_n`` as (mantissa, exponent) arrays."""
        p0 = ScaledReal.exp_neg(self.params.lam, self.params.k)
        m, e = np.frexp(self.mantissa / p0.mantissa)
        e = e.astype(np.int64) + self.exponent - p0.exponent
        e[m == 0] = 0
        return m, e

    def h_float(self) -> np.ndarray:
        m, e = self.h_values()
        return np.ldexp(m, np.clip(e, -1100, 1100))

    def total(self) -> ScaledReal:
        return scaled_sum(self.mantissa, self.exponent)

    def cdf_float(self) -> np.ndarray:
        """Running sums ``F(0) .. F(n_max)`` as floats."""
        return np.cumsum(self.to_float())


def _check(params: OrderKParams, n_max: int) -> None:
    if not isinstance(params, OrderKParams):
        raise InvalidParameterError("params must be an OrderKParams")
    if isinstance(n_max, bool) or not isinstance(n_max, (int, np.integer)) or n_max < 0:
        raise InvalidParameterError(f"n_max must be a nonnegative integer, got {n_max!r}")


def pmf_adelson(params: OrderKParams, n_max: int, compensated: bool = False) -> PmfTable:
    """Adelson recurrence.

    ``compensated=True`` runs it in double-double arithmetic, which keeps
    partial sums near 1/2 accurate to ~1e-16 even for n in the 1e5 range.
    """
    _check(params, n_max)
    if compensated:
        hi, lo, sc = _kernels.adelson_dd_kernel(params.k, params.lam, int(n_max))
        return PmfTable.from_h(params, hi + lo, sc, Engine.ADELSON)
    val, sc = _kernels.adelson_kernel(params.k, params.lam, int(n_max))
    return PmfTable.from_h(params, val, sc, Engine.ADELSON)


def pmf_gps(params: OrderKParams, n_max: int) -> PmfTable:
    _check(params, n_max)
    val, sc = _kernels.gps_kernel(params.k, params.lam, int(n_max))
    return PmfTable.from_h(params, val, sc, Engine.GPS)


def pmf_kwon_philippou(params: OrderKParams, n_max: int) -> PmfTable:
    _check(params, n_max)
    val, sc = _kernels.kwon_philippou_kernel(params.k, params.lam, int(n_max))
    return PmfTable.from_h(params, val, sc, Engine.KWON_PHILIPPOU)


def km_working_bits(params: OrderKParams, n_max: int) -> int:
    """Precision that keeps the four-term recurrence relatively accurate.

    Rounding leaves an error floor proportional to the largest mass
    (at most 1), so the working precision must cover the whole dynamic
    range of the table.  The smallest entry is bounded below by its largest
    single-tuple term, here taken over tuples built from one part size
    ``j`` plus ones.
    """
    k, lam = params.k, params.lam
    n = np.arange(n_max + 1, dtype=float)
    parts = sorted({1, k} | set(range(1, min(k, 16) + 1)))
    best = np.full(n_max + 1, -np.inf)
    for j in parts:
        q = np.floor(n / j)
        r = n - j * q
        best = np.maximum(best, (q + r) * math.log(lam) - gammaln(q + 1) - gammaln(r + 1))
    lowest = -k * lam + float(best.min())
    span_bits = max(0.0, -lowest) / math.log(2.0)
    return int(math.ceil(span_bits)) + 2 * int(math.log2(n_max + 2)) + 80


def pmf_km(params: OrderKParams, n_max: int, bits: int | None = None) -> PmfTable:
    """Kostadinova-Minkova four-term recurrence.

    Cost per step does not depend on k.  The recurrence subtracts, so in
    double precision its far tail is swamped by rounding; it is evaluated
    here with ``bits`` of working precision (default: :func:`km_working_bits`).
    """
    _check(params, n_max)
    k = params.k
    if bits is None:
        bits = km_working_bits(params, n_max)
    mant = np.zeros(n_max + 1)
    expo = np.zeros(n_max + 1, dtype=np.int64)
    with mpmath.workprec(int(bits)):
        lam = mpmath.mpf(params.lam)
        zero = mpmath.mpf(0)
        p = [mpmath.exp(-k * lam)]
        for n in range(1, n_max + 1):
            a = p[n - 1]
            b = p[n - 2] if n >= 2 else zero
            c = p[n - k - 1] if n >= k + 1 else zero
            d = p[n - k - 2] if n >= k + 2 else zero
            p.append(
                (2 + (lam - 2) / n) * a
                - (1 - mpmath.mpf(2) / n) * b
                - (k + 1) * lam / n * c
                + k * lam / n * d
            )
        for n, v in enumerate(p):
            s = ScaledReal.from_mpf(v) if v > 0 else ScaledReal(0.0, 0)
            mant[n] = s.mantissa
            expo[n] = s.exponent
    return PmfTable(params, mant, expo, Engine.KOSTADINOVA_MINKOVA)


def enumerate_tuples(k: int, n: int) -> Iterator[tuple[int, ...]]:
    """All ``(n_1, ..., n_k)`` with ``n_1 + 2 n_2 + ... + k n_k = n``.

    ``n_k`` varies slowest (largest first), ``n_1`` is implied.
    """

    def rec(j: int, rest: int):
        if j == 1:
            yield (rest,)
            return
        for c in range(rest // j, -1, -1):
            for tail in rec(j - 1, rest - j * c):
                yield tail + (c,)

    yield from rec(k, n)


def pmf_oracle(
    params: OrderKParams,
    n_max: int,
    max_n: int = ORACLE_MAX_N,
    max_k: int = ORACLE_MAX_K,
) -> PmfTable:
    """Brute-force sum over tuples; exact up to rounding of the summands."""
    _check(params, n_max)
    if params.k > max_k:
        raise OracleBudgetError("k", params.k, max_k)
    if n_max > max_n:
        raise OracleBudgetError("n_max", n_max, max_n)
    lam_m, lam_e = math.frexp(params.lam)
    p0 = ScaledReal.exp_neg(params.lam, params.k)
    mant = np.zeros(n_max + 1)
    expo = np.zeros(n_max + 1, dtype=np.int64)
    for n in range(n_max + 1):
        # group summands by total count s so lam**s can be split off exactly
        by_power: dict[int, list[float]] = {}
        for tup in enumerate_tuples(params.k, n):
            s = sum(tup)
            denom = math.prod(math.factorial(c) for c in tup)
            by_power.setdefault(s, []).append(lam_m ** s / denom)
        h = ScaledReal(0.0, 0)
        for s in sorted(by_power):
            h = h + ScaledReal.normalized(math.fsum(by_power[s]), lam_e * s)
        v = h * p0
        mant[n] = v.mantissa
        expo[n] = v.exponent
    return PmfTable(params, mant, expo, Engine.ORACLE)


_DISPATCH = {
    Engine.ADELSON: pmf_adelson,
    Engine.GPS: pmf_gps,
    Engine.KWON_PHILIPPOU: pmf_kwon_philippou,
    Engine.KOSTADINOVA_MINKOVA: pmf_km,
    Engine.ORACLE: pmf_oracle,
}


def compute_pmf(params: OrderKParams, n_max: int, engine: Engine | str = Engine.ADELSON) -> PmfTable:
    try:
        engine = Engine(engine)
    except ValueError:
        raise InvalidParameterError(f"unknown engine {engine!r}") from None
    return _DISPATCH[engine](params, n_max)


def h_polynomial(k: int, n: int) -> list[Fraction]:
    """Exact coefficients ``c_0 .. c_n`` of ``h_k(n; lam) = sum_i c_i lam**i``."""
    if k < 1 or n < 0:
        raise InvalidParameterError("need k >= 1 and n >= 0")
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for m in range(1, n + 1):
        out = [Fraction(0)] * (m + 1)
        for j in range(1, min(k, m) + 1):
            for i, c in enumerate(polys[m - j]):
                out[i + 1] += Fraction(j, m) * c
        polys.append(out)
    return polys[n]
