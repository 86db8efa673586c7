"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class PoissonOrderKError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(PoissonOrderKError, ValueError):
    """Raised for k < 1, lambda <= 0, or a malformed index."""


class OracleBudgetError(PoissonOrderKError):
    """Raised when brute-force enumeration would exceed its budget.

    ``parameter`` names the limiting input (``"n_max"`` or ``"k"``).
    """

    def __init__(self, parameter: str, value: int, limit: int):
        self.parameter = parameter
        self.value = value
        self.limit = limit
        super().__init__(
            f"oracle budget exceeded: {parameter}={value} > {limit}"
        )


class BracketError(PoissonOrderKError):
    """No sign change found in the (expanded) initial bracket."""


class AmbiguousModeError(PoissonOrderKError):
    """The global maximum at a solved mode boundary is not where expected."""


class NotFoundError(PoissonOrderKError):
    """A scan finished without finding the requested event."""


class ScanLimitError(PoissonOrderKError):
    """An internal scan exceeded its iteration cap (indicates a bug)."""
