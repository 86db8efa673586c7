import math

import pytest
from hypothesis import given, strategies as st

from poisson_order_k.errors import BracketError
from poisson_order_k.roots import expand_bracket, find_root


def test_simple_root():
    x, fx = find_root(lambda x: x * x - 2.0, 0.0, 2.0)
    assert x == pytest.approx(math.sqrt(2.0), rel=1e-14)


def test_steep_and_flat():
    # Illinois damping must not stall on a function that is flat on one side
    x, _ = find_root(lambda x: math.expm1(40 * (x - 0.3)), 0.0, 1.0)
    assert x == pytest.approx(0.3, rel=1e-13)


@given(st.floats(-1e3, 1e3), st.floats(0.1, 50.0))
def test_cubic_roots(r, s):
    g = lambda x: s * (x - r) ** 3 + (x - r)
    x, _ = find_root(g, r - 7.0, r + 11.0)
    assert abs(x - r) <= 1e-12 * max(1.0, abs(r)) + 1e-12


def test_exact_endpoint():
    assert find_root(lambda x: x, 0.0, 1.0) == (0.0, 0.0)


def test_no_bracket():
    with pytest.raises(BracketError):
        find_root(lambda x: x + 5, 0.0, 1.0)


def test_expand_bracket_grows_both_ways():
    lo, hi, flo, fhi = expand_bracket(lambda x: x - 10.0, 1.0, 2.0)
    assert flo <= 0 <= fhi and lo < 10 <= hi
    lo, hi, flo, fhi = expand_bracket(lambda x: x - 0.01, 1.0, 2.0)
    assert 0.0 < lo <= 0.01 and flo <= 0


def test_expand_bracket_gives_up():
    with pytest.raises(BracketError):
        expand_bracket(lambda x: 1.0, 1.0, 2.0, max_expand=3)
