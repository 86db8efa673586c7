import math

import pytest
from hypothesis import given, strategies as st

from poisson_order_k import InvalidParameterError, OrderKParams


def test_derived_quantities():
    p = OrderKParams(3, 2.0)
    assert p.kappa == 6
    assert p.mean == 12.0
    assert p.variance == 28.0  # (1 + 4 + 9) * 2
    assert p.sigma == pytest.approx(math.sqrt(28.0))


def test_from_mean_round_trips_integer_mean():
    p = OrderKParams.from_mean(2, 3)
    assert p.lam == 1.0 and p.mean == 3.0


@pytest.mark.parametrize("k", [0, -1, 2.0, True, "3", None])
def test_rejects_bad_k(k):
    with pytest.raises(InvalidParameterError):
        OrderKParams(k, 1.0)


@pytest.mark.parametrize("lam", [0.0, -1.0, math.inf, math.nan])
def test_rejects_bad_lambda(lam):
    with pytest.raises(InvalidParameterError):
        OrderKParams(2, lam)


def test_invalid_parameter_is_value_error():
    with pytest.raises(ValueError):
        OrderKParams(1, -2.0)


def test_frozen():
    p = OrderKParams(2, 1.0)
    with pytest.raises(Exception):
        p.k = 3


@given(st.integers(1, 500), st.floats(1e-6, 1e4))
def test_moment_closed_forms(k, lam):
    p = OrderKParams(k, lam)
    assert p.mean == pytest.approx(sum(range(1, k + 1)) * lam, rel=1e-14)
    assert p.variance == pytest.approx(sum(j * j for j in range(1, k + 1)) * lam, rel=1e-14)
    assert p.variance >= p.mean
