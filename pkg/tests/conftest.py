import math
from fractions import Fraction
from itertools import product

import mpmath
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


def exact_h(k: int, n: int, lam: Fraction) -> Fraction:
    """h_k(n; lam) straight from the tuple-sum definition, in rationals."""
    total = Fraction(0)
    ranges = [range(n // j + 1) for j in range(1, k + 1)]
    for tup in product(*ranges):
        if sum((j + 1) * c for j, c in enumerate(tup)) != n:
            continue
        term = lam ** sum(tup)
        for c in tup:
            term /= math.factorial(c)
        total += term
    return total


def exact_pmf(k: int, n: int, lam: float, dps: int = 40) -> mpmath.mpf:
    """Reference p_n at ``dps`` digits, lam taken as the exact binary float."""
    with mpmath.workdps(dps):
        h = exact_h(k, n, Fraction(lam))
        return mpmath.exp(-k * mpmath.mpf(lam)) * mpmath.mpf(h.numerator) / h.denominator


@pytest.fixture
def exact_pmf_fn():
    return exact_pmf


@pytest.fixture
def exact_h_fn():
    return exact_h


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
