import math

import mpmath
import pytest
from hypothesis import assume, given, strategies as st
from scipy.stats import poisson

from poisson_order_k import InvalidParameterError, OrderKParams, cdf, median, mode, summarize
from poisson_order_k.formulas import mode_bounds, zero_median_lambda, zero_median_last_n
from poisson_order_k.stats import mode_scan_end


def _reference(k, lam, n_max, exact_pmf_fn):
    with mpmath.workdps(40):
        p = [exact_pmf_fn(k, n, lam) for n in range(n_max + 1)]
        running, med = mpmath.mpf(0), None
        for n, v in enumerate(p):
            running += v
            if med is None and running >= 0.5:
                med = n
        top = max(p)
        modes = [n for n, v in enumerate(p) if v >= top * (1 - mpmath.mpf(10) ** -9)]
    return med, modes


@pytest.mark.parametrize(
    "k,lam", [(1, 0.3), (2, 0.5), (2, 1.0), (3, 0.4), (3, 1.3), (4, 0.2), (4, 0.9), (5, 0.55)]
)
def test_median_and_mode_against_exact_sum(k, lam, exact_pmf_fn):
    n_max = 30
    med, modes = _reference(k, lam, n_max, exact_pmf_fn)
    assert median(OrderKParams(k, lam)) == med
    assert mode(OrderKParams(k, lam)) == modes


@given(st.floats(0.05, 400.0))
def test_k1_median_matches_scipy(lam):
    # skip means within rounding distance of a CDF crossing
    n = int(poisson.median(lam))
    assume(abs(poisson.cdf(n, lam) - 0.5) > 1e-9 and abs(poisson.cdf(n - 1, lam) - 0.5) > 1e-9)
    assert median(OrderKParams(1, lam)) == n


@given(st.floats(0.05, 400.0))
def test_k1_mode_is_floor(lam):
    assume(abs(lam - round(lam)) > 1e-6)
    assert mode(OrderKParams(1, lam)) == [math.floor(lam)]


def test_k1_integer_lambda_double_mode():
    assert mode(OrderKParams(1, 5.0)) == [4, 5]


def test_documented_examples():
    s = summarize(OrderKParams.from_mean(2, 3))
    assert (s.mean, s.variance) == (3.0, 5.0)
    s = summarize(OrderKParams(4, 0.05))
    assert (s.median, s.modes) == (0, [0])
    s = summarize(OrderKParams.from_mean(3, 12))
    assert (s.median, s.modes) == (12, [11])
    assert not s.multimodal


def test_k15_lambda2_mode():
    assert mode(OrderKParams(15, 2.0)) == [234]


@given(st.integers(1, 40), st.floats(0.01, 40.0))
def test_median_definition(k, lam):
    params = OrderKParams(k, lam)
    m = median(params)
    assert cdf(params, m) >= 0.5
    if m > 0:
        assert cdf(params, m - 1) < 0.5


@given(st.integers(1, 25), st.floats(0.01, 20.0))
def test_modes_within_sharp_bounds(k, lam):
    lo, hi = mode_bounds(k, lam)
    for m in mode(OrderKParams(k, lam)):
        assert lo <= m <= hi


@given(st.integers(1, 25), st.floats(0.01, 20.0))
def test_mode_is_global_max(k, lam):
    params = OrderKParams(k, lam)
    modes = mode(params)
    t = summarize(params)
    from poisson_order_k.pmf import pmf_adelson

    logs = pmf_adelson(params, mode_scan_end(params) + 50).log_values()
    assert logs[modes[0]] >= logs.max() - 1e-9
    assert t.modes == modes


@given(st.integers(1, 20), st.floats(0.01, 10.0))
def test_cdf_monotone(k, lam):
    params = OrderKParams(k, lam)
    values = [cdf(params, n) for n in range(0, 40)]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert 0.0 <= values[0] <= values[-1] <= 1.0


@pytest.mark.parametrize("k", [1, 2, 5, 17, 50])
def test_zero_median_threshold(k):
    lam = zero_median_lambda(k)
    assert cdf(OrderKParams(k, lam), 0) == pytest.approx(0.5, abs=1e-15)
    assert median(OrderKParams(k, lam * (1 - 1e-9))) == 0
    assert median(OrderKParams(k, lam * (1 + 1e-9))) == 1
    n_star = zero_median_last_n(k)
    if n_star >= 1:
        assert median(OrderKParams.from_mean(k, n_star)) == 0
    assert median(OrderKParams.from_mean(k, n_star + 1)) > 0


def test_k2_corollary_value():
    assert OrderKParams(2, zero_median_lambda(2)).mean == pytest.approx(1.5 * math.log(2))
    assert zero_median_last_n(2) == 1


def test_cdf_rejects_negative_n():
    with pytest.raises(InvalidParameterError):
        cdf(OrderKParams(2, 1.0), -1)


def test_summary_for_deep_underflow():
    s = summarize(OrderKParams(10, 100.0))
    assert s.median == 5500 - 1  # n - floor((k+4)/8) at n = kappa * lambda
    assert s.modes == [5500 - 4]
