"""The (k, lambda) parameter pair and its derived quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError


@dataclass(frozen=True)
class OrderKParams:
    """Order ``k`` and rate ``lam`` of a Poisson distribution of order k.

    ``kappa = k(k+1)/2`` is kept as an exact integer; the mean is
    ``kappa * lam``.
    """

    k: int
    lam: float

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise InvalidParameterError(f"k must be an integer, got {self.k!r}")
        if self.k < 1:
            raise InvalidParameterError(f"k must be >= 1, got {self.k}")
        lam = float(self.lam)
        if not math.isfinite(lam) or lam <= 0.0:
            raise InvalidParameterError(f"lambda must be finite and > 0, got {self.lam!r}")
        object.__setattr__(self, "lam", lam)

    @classmethod
    def from_mean(cls, k: int, mean: float) -> "OrderKParams":
        if isinstance(k, int) and not isinstance(k, bool) and k >= 1:
            return cls(k, mean / (k * (k + 1) // 2))
        return cls(k, mean)  # let __post_init__ produce the error

    @property
    def kappa(self) -> int:
        return self.k * (self.k + 1) // 2

    @property
    def mean(self) -> float:
        return self.kappa * self.lam

    @property
    def variance(self) -> float:
        return self.k * (self.k + 1) * (2 * self.k + 1) // 6 * self.lam

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)
