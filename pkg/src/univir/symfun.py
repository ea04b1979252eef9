"""Waring and Faber polynomials, Newton sums, elementary symmetric functions.

``waring_P`` and ``faber_Q`` work over any commutative ring whose elements
support ``+``, ``*`` and scaling by ``Fraction``: ``Poly`` for ordinary use,
``MonomialSymmetric`` when the inputs are symmetric functions in many
variables and a fully expanded ``Poly`` would be too large.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from .exactalg import Poly, as_rational
from .fps import Series, compose, series_exp, series_log

__all__ = [
    "waring_P",
    "faber_Q",
    "faber_Phi",
    "newton_sum",
    "elementary_symmetric",
    "MonomialSymmetric",
    "waring_P_series",
    "faber_Q_series",
    "phi_condition_series",
]


def _partition_sum(n: int, a: Sequence, weight: Callable[[list[tuple[int, int]]], Fraction]):
    """Sum over ``mu`` with ``sum j*mu_j == n`` of ``weight(mu) * prod a_j**mu_j``.

    Recursive descent over ``j``; products are shared along common prefixes.
    """
    total = None
    mu: list[tuple[int, int]] = []

    def emit(prod):
        nonlocal total
        w = weight(mu)
        if not w:
            return
        term = prod * w if prod is not None else Poly.const(w)
        total = term if total is None else total + term

    def rec(j: int, remaining: int, prod):
        if remaining == 0:
            emit(prod)
            return
        if j > remaining:
            return
        rec(j + 1, remaining, prod)
        p = prod
        for e in range(1, remaining // j + 1):
            p = a[j - 1] if p is None else p * a[j - 1]
            mu.append((j, e))
            rec(j + 1, remaining - j * e, p)
            mu.pop()

    rec(1, n, None)
    return total if total is not None else Poly.zero()


def waring_P(n: int, a: Sequence) -> Poly:
    """Coefficient of ``z^n`` in ``exp(-sum_j a_j z^j / j)``, by the explicit multi-index sum."""
    if n < 0:
        raise ValueError("waring_P needs n >= 0")
    if len(a) < n:
        raise ValueError(f"waring_P({n}) needs {n} inputs, got {len(a)}")
    if n == 0:
        return Poly.one()

    def weight(mu):
        w = Fraction(1)
        for j, e in mu:
            w *= Fraction((-1) ** e, j ** e * factorial(e))
        return w

    return _partition_sum(n, a, weight)


def faber_Q(n: int, b: Sequence) -> Poly:
    """Coefficient of ``z^n`` in ``-z h'(z)/h(z)`` for ``h = 1 + sum b_j z^j``."""
    if n < 1:
        raise ValueError("faber_Q is defined for n >= 1")
    if len(b) < n:
        raise ValueError(f"faber_Q({n}) needs {n} inputs, got {len(b)}")

    def weight(mu):
        k = sum(e for _, e in mu)
        w = Fraction((-1) ** k * factorial(k - 1) * n)
        for _, e in mu:
            w /= factorial(e)
        return w

    return _partition_sum(n, b, weight)


def faber_Phi(n: int, b: Sequence, var: str = "z") -> Poly:
    """The one-variable Faber polynomial ``Q_n(b_1 - z, b_2, ..., b_n)`` as a Poly in ``var``."""
    if n < 1:
        raise ValueError("faber_Phi is defined for n >= 1")
    if len(b) < n:
        raise ValueError(f"faber_Phi({n}) needs {n} inputs, got {len(b)}")
    shifted = [b[0] - Poly.var(var)] + list(b[1:n])
    return faber_Q(n, shifted)


def newton_sum(k: int, x: Sequence[Poly]) -> Poly:
    if k < 0:
        raise ValueError("newton_sum needs k >= 0")
    total = Poly.zero()
    for xi in x:
        total = total + xi ** k
    return total


def elementary_symmetric(k: int, x: Sequence[Poly]) -> Poly:
    if k < 0:
        raise ValueError("elementary_symmetric needs k >= 0")
    if k > len(x):
        return Poly.zero()
    e = [Poly.one()] + [Poly.zero()] * k
    for xi in x:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * xi
    return e[k]


# -- generating-function oracles ---------------------------------------------

def waring_P_series(a: Sequence, order: int) -> Series:
    """``exp(-sum a_j z^j / j)`` through ``z^order``."""
    inner = Series([0] + [Poly.const(0) + a[j - 1] * Fraction(-1, j) for j in range(1, order + 1)], 0, order)
    return series_exp(inner)


def faber_Q_series(b: Sequence, order: int) -> Series:
    """``-z d/dz log h(z)`` for ``h = 1 + sum b_j z^j``, through ``z^order``."""
    h = Series([1] + list(b[:order]), 0, order)
    lg = series_log(h)
    return Series([lg.coeff(n) * (-n) for n in range(0, order + 1)], 0, order)


def phi_condition_series(n: int, b: Sequence, trunc: int, var: str = "z") -> Series:
    """``Phi_n(w^-1 h(w))`` as a Laurent series in ``w = 1/z`` through ``w^trunc``.

    The defining condition says this equals ``w^-n + sum_{k>0} beta_nk w^k``.
    """
    phi = faber_Phi(n, b, var)
    hb = [b[j] if j < len(b) else Poly.zero() for j in range(trunc + n)]
    g = Series([1] + hb, -1, trunc + n - 1, "w")
    result = None
    for k, ck in phi.collect(var).items():
        term = (g ** k) * ck if k else Series([ck], 0, trunc + n, "w")
        result = term if result is None else result + term
    return result.truncate(trunc)


# -- symmetric functions in the monomial basis --------------------------------

def _distinct_perms(values: tuple) -> list[tuple]:
    counts = Counter(values)
    keys = sorted(counts)
    n = len(values)
    out: list[tuple] = []
    cur: list = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                cur.append(k)
                rec()
                cur.pop()
                counts[k] += 1

    rec()
    return out


def _orbit_size(padded: tuple) -> int:
    out = factorial(len(padded))
    for c in Counter(padded).values():
        out //= factorial(c)
    return out


@lru_cache(maxsize=None)
def _mono_product(lam: tuple, nu: tuple, nvars: int) -> tuple:
    """Structure constants of ``m_lam * m_nu`` in ``nvars`` variables."""
    lp = lam + (0,) * (nvars - len(lam))
    np_ = nu + (0,) * (nvars - len(nu))
    hits: Counter = Counter()
    for beta in _distinct_perms(np_):
        s = tuple(sorted((x + y for x, y in zip(lp, beta)), reverse=True))
        hits[s] += 1
    olam = _orbit_size(lp)
    out = []
    for mu, cnt in hits.items():
        coef = Fraction(olam * cnt, _orbit_size(mu))
        out.append((tuple(x for x in mu if x), as_rational(coef)))
    return tuple(sorted(out))


class MonomialSymmetric:
    """Symmetric polynomial in ``nvars`` variables, in the basis ``m_lambda``.

    Keys are partitions (weakly decreasing tuples of positive parts) of
    length at most ``nvars``.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict, nvars: int):
        self.nvars = nvars
        self.terms = {lam: as_rational(c) for lam, c in terms.items() if c and len(lam) <= nvars}

    @classmethod
    def power_sum(cls, k: int, nvars: int) -> "MonomialSymmetric":
        return cls({(k,): 1} if k else {(): nvars}, nvars)

    @classmethod
    def elementary(cls, k: int, nvars: int) -> "MonomialSymmetric":
        return cls({(1,) * k: 1}, nvars)

    def _lift(self, other):
        if isinstance(other, MonomialSymmetric):
            if other.nvars != self.nvars:
                raise ValueError("mismatched number of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return MonomialSymmetric({(): other}, self.nvars)
        if isinstance(other, Poly) and other.is_constant():
            return MonomialSymmetric({(): other.constant_term()}, self.nvars)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return MonomialSymmetric(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MonomialSymmetric({k: -v for k, v in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MonomialSymmetric({k: v * other for k, v in self.terms.items()}, self.nvars)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for lam, a in self.terms.items():
            for nu, b in o.terms.items():
                for mu, c in _mono_product(lam, nu, self.nvars):
                    out[mu] = out.get(mu, 0) + a * b * c
        return MonomialSymmetric(out, self.nvars)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def expand(self, family: str = "x") -> Poly:
        """Write out as an ordinary polynomial in ``x1 .. x_nvars``."""
        total = Poly.zero()
        for lam, c in self.terms.items():
            padded = lam + (0,) * (self.nvars - len(lam))
            for alpha in _distinct_perms(padded):
                total = total + Poly.monomial({f"{family}{i + 1}": e for i, e in enumerate(alpha)}, c)
        return total

    def __repr__(self):
        body = " + ".join(f"{c}*m{list(lam)}" for lam, c in sorted(self.terms.items()))
        return f"MonomialSymmetric({body or '0'}, nvars={self.nvars})"
