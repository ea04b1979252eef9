"""Closed-form expansions of products of powers, each with a series oracle.

Closed forms enumerate multi-indices and call ``waring_P``; the ``*_oracle``
functions build the same object from ``fps`` primitives only.  Parameters
``p`` and ``mu`` may be rationals or symbolic ``Poly`` values.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .exactalg import MultiIndex, Poly, multi_indices
from .fps import BiSeries, Series, compose, divide_by_difference, series_exp, series_log, series_pow
from .symfun import waring_P

__all__ = [
    "falling",
    "binomial_coeffs",
    "weighted_newton",
    "product_powers_expand",
    "product_powers_oracle",
    "cyclotomic_N",
    "cyclotomic_ratio_expand",
    "cyclotomic_ratio_oracle",
    "theta_series",
    "compose_expand",
    "compose_oracle",
    "power_expand",
    "psi_phi_expand",
    "psi_phi_oracle",
    "divided_difference_expand",
    "divided_difference_oracle",
]


def _poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def falling(p, n: int):
    """``p (p-1) ... (p-n+1)``; the empty product is 1."""
    out = Poly.one()
    for i in range(n):
        out = out * (_poly(p) - i)
    return out


def binomial_coeffs(p, n: int) -> list[Poly]:
    """``[binom(p, 0), ..., binom(p, n)]`` for rational or symbolic ``p``."""
    return [falling(p, j) * Fraction(1, factorial(j)) for j in range(n + 1)]


def weighted_newton(alpha: Sequence, mu: Sequence, k: int) -> Poly:
    if len(alpha) != len(mu):
        raise ValueError("alpha and mu must have the same length")
    total = Poly.zero()
    for a, m in zip(alpha, mu):
        total = total + _poly(m) * (Fraction(a) ** k)
    return total * (-1) ** k


def _pow_factor(base: Series, e) -> Series:
    e = _poly(e)
    if e.is_constant():
        return series_pow(base, e.constant_term())
    return series_exp(series_log(base) * e)


def product_powers_expand(alpha: Sequence, mu: Sequence, order: int, var: str = "s") -> Series:
    """``prod_j (1 + alpha_j s)**mu_j`` via Waring polynomials of the weighted Newton sums."""
    T = [weighted_newton(alpha, mu, k) for k in range(1, order + 1)]
    return Series([waring_P(l, T) for l in range(order + 1)], 0, order, var)


def product_powers_oracle(alpha: Sequence, mu: Sequence, order: int, var: str = "s") -> Series:
    out = Series([1], 0, order, var)
    for a, m in zip(alpha, mu):
        out = out * _pow_factor(Series([1, a], 0, order, var), m)
    return out


def cyclotomic_N(p: int, mu: Mapping[int, object]) -> Poly:
    """``-sum_{j>=2} mu_j + sum_{j>=2, j | p} j mu_j``."""
    total = Poly.zero()
    for j, m in mu.items():
        if j < 2:
            raise ValueError("cyclotomic exponents are indexed by j >= 2")
        total = total - _poly(m)
        if p % j == 0:
            total = total + _poly(m) * j
    return total


def cyclotomic_ratio_expand(mu: Mapping[int, object], order: int, var: str = "t") -> Series:
    """``prod_{j>=2} ((1 - t^j)/(1 - t))**mu_j`` through ``t^order``."""
    N = [cyclotomic_N(p, mu) for p in range(1, order + 1)]
    return Series([waring_P(l, N) for l in range(order + 1)], 0, order, var)


def cyclotomic_ratio_oracle(mu: Mapping[int, object], order: int, var: str = "t") -> Series:
    out = Series([1], 0, order, var)
    for j, m in mu.items():
        num = Series([1] + [0] * (j - 1) + [-1], 0, order, var)
        den = Series([1, -1], 0, order, var)
        quotient = num * series_pow(den, -1)
        out = out * _pow_factor(quotient, m)
    return out


def theta_series(order: int, family: str = "c", lead: bool = False) -> Series:
    """``sum_{j>=1} c_j z^j`` (or ``z + sum c_j z^(j+1)`` when ``lead``)."""
    if lead:
        return Series([0, 1] + [Poly.var(f"{family}{j}") for j in range(1, order)], 0, order)
    return Series([0] + [Poly.var(f"{family}{j}") for j in range(1, order + 1)], 0, order)


def compose_expand(A: Sequence, order: int, family: str = "c") -> Series:
    """``f(theta(z))`` with ``f = sum A_j xi^j`` and ``theta = sum c_j z^j``, by the multinomial sum."""
    coeffs = []
    for w in range(order + 1):
        total = Poly.zero()
        for m in multi_indices(w):
            k = m.M0
            if k >= len(A) or not _poly(A[k]):
                continue
            total = total + m.monomial(family) * _poly(A[k]) * Fraction(factorial(k), m.factorial_product())
        coeffs.append(total)
    return Series(coeffs, 0, order)


def compose_oracle(A: Sequence, order: int, family: str = "c") -> Series:
    outer = Series([_poly(a) for a in A[: order + 1]], 0, order)
    return compose(outer, theta_series(order, family))


def power_expand(p, order: int, family: str = "c") -> Series:
    """``(1 + theta(z))**p`` with the falling-factorial coefficient written out directly."""
    coeffs = []
    for w in range(order + 1):
        total = Poly.zero()
        for m in multi_indices(w):
            total = total + m.monomial(family) * falling(p, m.M0) * Fraction(1, m.factorial_product())
        coeffs.append(total)
    return Series(coeffs, 0, order)


def _T(alpha: Sequence, m: MultiIndex, i: int) -> Poly:
    return Poly.const(sum(Fraction(e) * Fraction(alpha[j - 1]) ** i for j, e in m) * (-1) ** i)


def psi_phi_expand(alpha: Sequence, k: int, p, order: int, family: str = "c") -> Series:
    """``psi(z)**k * phi(z)**p`` with ``phi = 1 + sum c_j z^j`` and ``psi = sum alpha_j c_j z^j``.

    The falling product has ``|m| - k`` factors starting at ``p``; indices
    with ``|m| < k`` contribute nothing because the Waring factor vanishes.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if len(alpha) < order:
        raise ValueError(f"need {order} alpha values, got {len(alpha)}")
    kf = factorial(k)
    coeffs = []
    for w in range(order + 1):
        total = Poly.zero()
        for m in multi_indices(w):
            if m.M0 < k:
                continue
            wk = waring_P(k, [_T(alpha, m, i) for i in range(1, k + 1)])
            if not wk:
                continue
            total = total + m.monomial(family) * wk * falling(p, m.M0 - k) * Fraction(kf, m.factorial_product())
        coeffs.append(total)
    return Series(coeffs, 0, order)


def psi_phi_oracle(alpha: Sequence, k: int, p, order: int, family: str = "c") -> Series:
    phi = Series([1] + [Poly.var(f"{family}{j}") for j in range(1, order + 1)], 0, order)
    psi = Series([0] + [Poly.var(f"{family}{j}") * Fraction(alpha[j - 1]) for j in range(1, order + 1)], 0, order)
    out = _pow_factor(phi, p)
    for _ in range(k):
        out = out * psi
    return out.truncate(order)


def divided_difference_expand(A: Sequence, order: int, family: str = "c") -> BiSeries:
    """``H((theta(z) - theta(u))/(z - u))`` for ``theta = z + c_1 z^2 + ...`` and ``H(1 + xi) = sum A_j xi^j``."""
    terms: dict = {}
    for w in range(order + 1):
        for m in multi_indices(w):
            k = m.M0
            if k >= len(A) or not _poly(A[k]):
                continue
            base = m.monomial(family) * _poly(A[k]) * Fraction(factorial(k), m.factorial_product())
            mu = {j + 1: e for j, e in m}
            N = [cyclotomic_N(i, mu) for i in range(1, w + 1)]
            for l in range(w + 1):
                pl = waring_P(l, N)
                if pl:
                    key = (l, w - l)
                    terms[key] = terms.get(key, Poly.zero()) + base * pl
    return BiSeries(terms, order, ("z", "u"))


def divided_difference_oracle(A: Sequence, order: int, family: str = "c") -> BiSeries:
    num = {(1, 0): Poly.one(), (0, 1): -Poly.one()}
    for j in range(1, order + 1):
        c = Poly.var(f"{family}{j}")
        num[(j + 1, 0)] = c
        num[(0, j + 1)] = -c
    quotient = divide_by_difference(BiSeries(num, order + 1, ("z", "u")))
    return quotient.apply_outer([_poly(a) for a in A])
