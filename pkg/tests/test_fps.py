from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univir.exactalg import Poly
from univir.fps import (
    BiSeries,
    Series,
    SeriesError,
    TruncationError,
    compose,
    derivative,
    divide_by_difference,
    reciprocal,
    reverse,
    series_exp,
    series_log,
    series_pow,
)

from conftest import small_rationals

c1, c2 = Poly.c(1), Poly.c(2)


def S(coeffs, low=0, trunc=None):
    return Series(coeffs, low, trunc)


def test_products():
    assert S([1, 1], 0, 5) * S([1, -1], 0, 5) == S([1, 0, -1], 0, 5)
    assert (S([1, 1], -1, 3) * S([0, 1], 0, 4)).agrees(S([1, 1], 0, 3))
    assert S([1, c1], 0, 2) * S([1, c2], 0, 2) == S([1, c1 + c2, c1 * c2], 0, 2)


def test_reciprocal():
    assert reciprocal(S([1, -1], 0, 3)) == S([1, 1, 1, 1], 0, 3)
    assert reciprocal(S([1, c1], 0, 2)) == S([1, -c1, c1 ** 2], 0, 2)
    inv = reciprocal(S([0, 1], 0, 1))
    assert inv.coeff(-1) == 1 and inv.low == -1
    with pytest.raises(SeriesError, match="leading coefficient not a unit"):
        reciprocal(S([c1, 1], 0, 3))


def test_exp_log():
    assert series_log(S([1, 1], 0, 3)) == S([0, 1, Fraction(-1, 2), Fraction(1, 3)], 0, 3)
    assert series_exp(S([0, -c1], 0, 2)) == S([1, -c1, c1 ** 2 * Fraction(1, 2)], 0, 2)
    base = S([1, c1, c2], 0, 4)
    assert series_exp(series_log(base)) == base
    with pytest.raises(SeriesError, match="constant term"):
        series_log(S([2, 1], 0, 3))
    with pytest.raises(SeriesError, match="constant term"):
        series_exp(S([1, 1], 0, 3))


def test_pow():
    assert series_pow(S([1, 1], 0, 2), -2) == S([1, -2, 3], 0, 2)
    assert series_pow(S([1, c1], 0, 2), Fraction(1, 2)) == S([1, c1 * Fraction(1, 2), c1 ** 2 * Fraction(-1, 8)], 0, 2)
    cube = series_pow(S([0, 1, c1], 0, 4), 3)
    assert cube.valuation() == 3 and cube.coeff(3) == 1
    with pytest.raises(SeriesError, match="non-integral leading exponent"):
        series_pow(S([0, 1, 1], 0, 4), Fraction(1, 2))


def test_compose():
    geo = S([1, 1, 1], 0, 2)
    assert compose(geo, S([0, c1], 0, 2)) == S([1, c1, c1 ** 2], 0, 2)
    assert compose(S([0, 0, 1], 0, 3), S([0, 1, c1], 0, 3)) == S([0, 0, 1, 2 * c1], 0, 3)
    inner = S([0, c1, c2, 5], 0, 3)
    assert compose(S([0, 1], 0, 3), inner) == inner
    with pytest.raises(SeriesError, match="composition requires order >= 1"):
        compose(geo, S([1, 1], 0, 2))


def test_reverse():
    z = S([0, 1], 0, 4)
    assert reverse(z) == z
    r = reverse(S([0, 1, 1], 0, 4))
    assert r == S([0, 1, -1, 2, -5], 0, 4)
    assert compose(S([0, 1, 1], 0, 4), r) == z
    assert reverse(S([0, 1, c1], 0, 3)) == S([0, 1, -c1, 2 * c1 ** 2], 0, 3)
    with pytest.raises(SeriesError):
        reverse(S([0, 2, 1], 0, 3))


def test_coeff_and_derivative():
    assert S([1, 0, 3 * c2], 0, 2).coeff(2) == 3 * c2
    assert S([1], -1, 2).coeff(-1) == 1
    with pytest.raises(TruncationError, match="coefficient beyond truncation"):
        S([1, 1], 0, 3).coeff(5)
    assert derivative(S([0, 1, c1], 0, 3)).agrees(S([1, 2 * c1], 0, 2))
    d = derivative(S([1], -1, 2))
    assert d.coeff(-2) == -1 and d.coeff(-1) == 0
    assert derivative(S([7], 0, 3)).is_zero()


def test_json_roundtrip():
    s = S([Fraction(1, 3), c1, 0, c2 * c1], -1, 4)
    assert Series.from_json(s.to_json()) == s
    assert s.to_text().endswith("O(z^5)")


def test_divide_by_difference():
    # (x^3 - y^3)/(x - y) = x^2 + x y + y^2
    num = BiSeries({(3, 0): 1, (0, 3): -1}, 4, ("x", "y"))
    q = divide_by_difference(num)
    assert q.coeff(2, 0) == 1 and q.coeff(1, 1) == 1 and q.coeff(0, 2) == 1
    with pytest.raises(SeriesError):
        divide_by_difference(BiSeries({(1, 0): 1}, 3, ("x", "y")))


series_st = st.lists(small_rationals, min_size=6, max_size=6)


@settings(max_examples=40, deadline=None)
@given(series_st, series_st)
def test_reciprocal_is_inverse(a, b):
    a = [Fraction(1)] + a[1:]
    s = S(a, 0, 5)
    assert s * reciprocal(s) == S([1], 0, 5)


@settings(max_examples=40, deadline=None)
@given(series_st, small_rationals, small_rationals)
def test_pow_exponent_law(a, p, q):
    s = S([Fraction(1)] + a[1:], 0, 5)
    assert series_pow(s, p) * series_pow(s, q) == series_pow(s, p + q)


@settings(max_examples=30, deadline=None)
@given(series_st)
def test_reverse_roundtrip(a):
    s = S([0, 1] + a[:4], 0, 5)
    r = reverse(s)
    assert compose(s, r) == S([0, 1], 0, 5)
    assert compose(r, s) == S([0, 1], 0, 5)
