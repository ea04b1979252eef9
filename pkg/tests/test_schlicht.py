from fractions import Fraction

import pytest
from hypothesis import given, settings

from univir.exactalg import MultiIndex, Poly
from univir.fps import series_pow
from univir.schlicht import (
    GrunskyTable,
    coeff_a,
    coeff_b,
    coeff_d,
    expand_a,
    expand_a_oracle,
    expand_b,
    expand_b_oracle,
    grunsky,
    grunsky_oracle,
    grunsky_table,
    q_series,
    schwarzian,
    schwarzian_oracle,
)

from conftest import rationals

p = Poly.var("p")
h, cc = Poly.var("h"), Poly.var("cc")
c1, c2 = Poly.c(1), Poly.c(2)
b = {j: Poly.var(f"b{j}") for j in range(1, 12)}
M = MultiIndex.of


def test_coeff_a_values():
    assert coeff_a(M({}), p) == 1
    assert coeff_a(M({1: 1}), p) == 2 - p
    # z^2 coefficient of z^2 f'^2/f^2 from the series oracle: 4*c2 - c1^2
    assert Fraction(coeff_a(M({1: 2}), 0), 2) == -1
    assert coeff_a(M({2: 1}), 0) == 4


def test_coeff_b_values():
    assert coeff_b(M({1: 1}), p) == 2
    assert coeff_b(M({2: 1}), 0) == 6
    # oracle gives -2*p*c1^2 at z^2, so b = 2! * (-2p)
    assert coeff_b(M({1: 2}), p) == -4 * p
    assert coeff_b(M({}), p) == 0


def test_coeff_d_values():
    assert coeff_d(M({1: 1})) == 0
    assert coeff_d(M({1: 2})) == -6
    assert coeff_d(M({2: 1})) == 4
    assert coeff_d(M({})) == 0


def test_expansion_spot_values():
    assert expand_a(0, 1) == Series1(1, 2 * c1)
    assert expand_a(p, 0) == Series1(1)
    s = schwarzian(2)
    assert s.coeff(0) == 0 and s.coeff(1) == 0
    assert s.coeff(2) == 12 * c2 - 12 * c1 ** 2


def Series1(*coeffs):
    from univir.fps import Series
    return Series(list(coeffs), 0, len(coeffs) - 1)


def test_q_series():
    q = q_series(2)
    assert q.coeff(0) == h
    assert q.coeff(1) == 2 * h * c1
    assert q.coeff(2) == h * (4 * c2 - c1 ** 2) + cc * (c2 - c1 ** 2) * Fraction(1, 2)


@pytest.mark.parametrize("pv", [0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-3, 2), Fraction(7, 5), 5, -3])
def test_closed_forms_match_oracles(pv):
    assert expand_a(pv, 8) == expand_a_oracle(pv, 8)
    assert expand_b(pv, 8) == expand_b_oracle(pv, 8)


def test_symbolic_p():
    assert expand_a(p, 7) == expand_a_oracle(p, 7)
    assert expand_b(p, 7) == expand_b_oracle(p, 7)


@settings(max_examples=10, deadline=None)
@given(rationals)
def test_random_p(pv):
    assert expand_a(pv, 6) == expand_a_oracle(pv, 6)
    assert expand_b(pv, 6) == expand_b_oracle(pv, 6)


def test_schwarzian_oracle_and_koebe():
    assert schwarzian(8) == schwarzian_oracle(8)
    koebe = {f"c{j}": j + 1 for j in range(1, 10)}
    assert schwarzian(8).subs(koebe) == schwarzian_oracle(8, koebe)
    # closed form for the Koebe function under S_f = 2f'''/f' - 3(f''/f')^2
    expected = series_pow(Series1(1, 0, -1, 0, 0, 0, 0), -2).shift(2).truncate(6) * -12
    assert schwarzian(6).subs(koebe) == expected


def test_schwarzian_mobius_kernel():
    a = Poly.var("a")
    assert schwarzian(9).subs({f"c{j}": a ** j for j in range(1, 10)}).is_zero()


@pytest.mark.parametrize("N", range(0, 9))
def test_weight_homogeneity(N):
    for ser in (expand_a(p, N), expand_b(p, N), schwarzian(N)):
        assert ser.coeff(N).is_homogeneous(N)


def test_grunsky_values():
    assert grunsky(1, 1) == b[2]
    assert grunsky(1, 2) == b[3]
    assert grunsky(2, 1) == 2 * b[3]
    # frozen from the log-expansion oracle
    assert grunsky(2, 2) == 2 * b[4] + b[2] ** 2
    assert grunsky(2, 3) == 2 * b[5] + 2 * b[2] * b[3]
    with pytest.raises(ValueError):
        grunsky(0, 1)


def test_grunsky_table():
    closed, oracle = grunsky_table(9), grunsky_oracle(9)
    assert closed == oracle
    for (n, k), v in closed.entries.items():
        assert v * Fraction(1, n) == closed[(k, n)] * Fraction(1, k)
        assert v.is_homogeneous(n + k, "b")
        assert "b1" not in v.variables()
    assert grunsky_oracle(7, b[1] + 1) == grunsky_oracle(7)
    assert GrunskyTable.from_json(closed.to_json()) == closed
    with pytest.raises(ValueError):
        grunsky_oracle(1)
