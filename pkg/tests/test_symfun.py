from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univir.exactalg import Poly
from univir.symfun import (
    MonomialSymmetric,
    elementary_symmetric,
    faber_Phi,
    faber_Q,
    faber_Q_series,
    newton_sum,
    phi_condition_series,
    waring_P,
    waring_P_series,
)

from conftest import small_rationals

a = [Poly.var(f"a{j}") for j in range(1, 16)]
b = [Poly.var(f"b{j}") for j in range(1, 16)]
x = [Poly.var(f"x{j}") for j in range(1, 7)]
z = Poly.var("z")


def test_waring_small():
    assert waring_P(0, []) == 1
    assert waring_P(1, a) == -a[0]
    assert waring_P(2, a) == a[0] ** 2 * Fraction(1, 2) - a[1] * Fraction(1, 2)
    with pytest.raises(ValueError):
        waring_P(3, a[:2])


def test_faber_small():
    assert faber_Q(1, b) == -b[0]
    assert faber_Q(2, b) == b[0] ** 2 - 2 * b[1]
    assert faber_Q(3, b) == -b[0] ** 3 + 3 * b[0] * b[1] - 3 * b[2]
    with pytest.raises(ValueError):
        faber_Q(0, b)


def test_newton_elementary():
    assert newton_sum(2, x[:2]) == x[0] ** 2 + x[1] ** 2
    assert elementary_symmetric(2, x[:3]) == x[0] * x[1] + x[0] * x[2] + x[1] * x[2]
    assert elementary_symmetric(4, x[:2]) == 0


def test_phi_small():
    assert faber_Phi(1, b) == z - b[0]
    assert faber_Phi(2, b) == z ** 2 - 2 * b[0] * z + b[0] ** 2 - 2 * b[1]
    ser = phi_condition_series(2, b[:2], 3)
    assert ser.coeff(-2) == 1
    assert ser.coeff(-1) == 0 and ser.coeff(0) == 0


@pytest.mark.parametrize("n", range(1, 16))
def test_generating_functions(n):
    assert waring_P(n, a) == waring_P_series(a, n).coeff(n)
    assert faber_Q(n, b) == faber_Q_series(b, n).coeff(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_waring_theorem_expanded(n):
    # direct check in n honest variables, independent of the monomial-basis product
    xs = x[:n]
    p = [newton_sum(k, xs) for k in range(1, n + 1)]
    e = [elementary_symmetric(k, xs) for k in range(1, n + 1)]
    assert waring_P(n, [p[j] * (-1) ** (j + 1) for j in range(n)]) == e[n - 1]
    assert faber_Q(n, e) == p[n - 1] * (-1) ** n


def test_monomial_symmetric_matches_expansion():
    n = 3
    p1, p2 = MonomialSymmetric.power_sum(1, n), MonomialSymmetric.power_sum(2, n)
    xs = x[:n]
    assert (p1 * p2 * p1).expand() == newton_sum(1, xs) ** 2 * newton_sum(2, xs)
    assert MonomialSymmetric.elementary(2, n).expand() == elementary_symmetric(2, xs)


@settings(max_examples=40, deadline=None)
@given(st.lists(small_rationals, min_size=8, max_size=8))
def test_inverse_numeric(vals):
    P = [waring_P(j, vals) for j in range(1, 9)]
    assert [faber_Q(k, P) for k in range(1, 9)] == [Poly.const(v) for v in vals]
