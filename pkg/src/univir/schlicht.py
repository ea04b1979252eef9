"""Coefficient formulas for a symbolic univalent function ``f = z + c1 z^2 + c2 z^3 + ...``.

Three closed forms over multi-indices ``m``:

* ``coeff_a``: ``z^(p+2) f'(z)^2 / f(z)^(p+2) = sum a_m(p) c^m / m! z^|m|``
* ``coeff_b``: ``z^(p+1) f''(z) / f(z)^p    = sum b_m(p) c^m / m! z^|m|``
* ``coeff_d``: ``z^2 S_f(z)                 = sum d_m prod (j+1)^m_j c^m / m! z^|m|``

with ``S_f = 2 f'''/f' - 3 (f''/f')^2``.  Every expansion has a twin
``*_oracle`` computed from ``fps`` primitives on ``f`` alone.

Grunsky coefficients of ``g(z) = z + b1 + b2/z + b3/z^2 + ...`` are given by
``grunsky`` (closed form) and ``grunsky_oracle`` (log of the divided
difference).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from .exactalg import MultiIndex, Poly, multi_indices
from .expand import cyclotomic_N
from .fps import BiSeries, Series, derivative, divide_by_difference, reciprocal, series_pow
from .symfun import waring_P

__all__ = [
    "coeff_a",
    "coeff_b",
    "coeff_d",
    "f_series",
    "expand_a",
    "expand_b",
    "schwarzian",
    "expand_a_oracle",
    "expand_b_oracle",
    "schwarzian_oracle",
    "q_series",
    "GrunskyTable",
    "grunsky",
    "grunsky_table",
    "grunsky_oracle",
]


def _poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def coeff_a(m: MultiIndex, p):
    M0, M1, M2 = m.stats()
    if M0 == 0:
        return Poly.one() if isinstance(p, Poly) else 1
    if M0 == 1:
        # brace = (p+1)(p-2j) cancels the 1/(p+1)
        return 2 * M1 - p
    rising = 1
    for i in range(2, M0):
        rising = rising * (p + i)
    brace = p * (p + 1) + M1 * M1 - 2 * (p + 1) * M1 - M2
    return (-1) ** M0 * rising * brace


def coeff_b(m: MultiIndex, p):
    M0, M1, M2 = m.stats()
    if M0 == 0:
        return Poly.zero() if isinstance(p, Poly) else 0
    rising = 1
    for i in range(0, M0 - 1):
        rising = rising * (p + i)
    return (-1) ** (M0 + 1) * rising * (M1 + M2)


def coeff_d(m: MultiIndex) -> int:
    M0, M1, M2 = m.stats()
    if M0 == 0:
        return 0
    return (-1) ** M0 * factorial(M0 - 1) * (M2 - 3 * M1 * M1 + 2 * M1)


def _assemble(order: int, term) -> Series:
    coeffs = []
    for w in range(order + 1):
        total = Poly.zero()
        for m in multi_indices(w):
            total = total + term(m)
        coeffs.append(total)
    return Series(coeffs, 0, order)


def expand_a(p, order: int) -> Series:
    return _assemble(order, lambda m: m.monomial() * _poly(coeff_a(m, p)) * Fraction(1, m.factorial_product()))


def expand_b(p, order: int) -> Series:
    return _assemble(order, lambda m: m.monomial() * _poly(coeff_b(m, p)) * Fraction(1, m.factorial_product()))


def schwarzian(order: int) -> Series:
    def term(m: MultiIndex) -> Poly:
        lift = 1
        for j, e in m:
            lift *= (j + 1) ** e
        return m.monomial() * Fraction(coeff_d(m) * lift, m.factorial_product())

    return _assemble(order, term)


def q_series(order: int) -> Series:
    """``z^2 [h f'^2/f^2 + (cc/24) S_f]``; the coefficient of ``z^n`` is ``Q_n``."""
    h, cc = Poly.var("h"), Poly.var("cc")
    return expand_a(0, order) * h + schwarzian(order) * (cc * Fraction(1, 24))


# -- oracles ------------------------------------------------------------------

def f_series(order: int, subs: Mapping | None = None) -> Series:
    """``f(z) = z + sum_j c_j z^(j+1)`` through ``z^(order+1)``."""
    cs = [Poly.c(j) for j in range(1, order + 1)]
    if subs:
        cs = [c.subs(subs) for c in cs]
    return Series([0, 1] + cs, 0, order + 1)


def _f_over_z(order: int, subs=None) -> Series:
    return f_series(order, subs).strip().shift(-1)


def expand_a_oracle(p, order: int, subs=None) -> Series:
    f = f_series(order, subs)
    fp = derivative(f)
    return (fp * fp * series_pow(_f_over_z(order, subs), -(_poly(p) + 2) if isinstance(p, Poly) else -(p + 2))).truncate(order)


def expand_b_oracle(p, order: int, subs=None) -> Series:
    f = f_series(order + 1, subs)
    zf2 = derivative(derivative(f)).shift(1)
    e = -_poly(p) if isinstance(p, Poly) else -p
    return (zf2 * series_pow(_f_over_z(order, subs), e)).truncate(order)


def schwarzian_oracle(order: int, subs=None) -> Series:
    f = f_series(order + 2, subs)
    d1 = derivative(f)
    d2 = derivative(d1)
    d3 = derivative(d2)
    inv = reciprocal(d1)
    r2 = d2 * inv
    s = d3 * inv * 2 - r2 * r2 * 3
    return s.shift(2).truncate(order)


# -- Grunsky coefficients -------------------------------------------------------

def grunsky(n: int, k: int) -> Poly:
    """Closed-form ``beta_nk`` as a polynomial in ``b2, b3, ...``."""
    if n < 1 or k < 1:
        raise ValueError("Grunsky coefficients need n, k >= 1")
    total = Poly.zero()
    for m in multi_indices(n + k, min_part=2):
        M0 = m.M0
        if M0 > k:
            continue
        mu = {j - 1: e for j, e in m if j >= 3}
        L = [cyclotomic_N(i, mu) for i in range(1, k - M0 + 1)]
        pl = waring_P(k - M0, L)
        if not pl:
            continue
        total = total + m.monomial("b") * pl * Fraction(n * factorial(M0 - 1), m.factorial_product())
    return total


@dataclass
class GrunskyTable:
    max_weight: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, nk: tuple[int, int]) -> Poly:
        return self.entries[nk]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrunskyTable):
            return NotImplemented
        return self.max_weight == other.max_weight and self.entries == other.entries

    def pairs(self):
        return sorted(self.entries, key=lambda nk: (nk[0] + nk[1], nk[0]))

    def to_json(self) -> dict:
        return {
            "maxWeight": self.max_weight,
            "entries": [{"n": n, "k": k, "poly": self.entries[(n, k)].to_json()} for n, k in self.pairs()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GrunskyTable":
        entries = {(int(e["n"]), int(e["k"])): Poly.from_json(e["poly"]) for e in data["entries"]}
        return cls(int(data["maxWeight"]), entries)

    def to_text(self) -> str:
        return "\n".join(f"beta[{n},{k}] = {self.entries[(n, k)].to_text()}" for n, k in self.pairs())


def grunsky_table(max_weight: int) -> GrunskyTable:
    entries = {}
    for w in range(2, max_weight + 1):
        for n in range(1, w):
            entries[(n, w - n)] = grunsky(n, w - n)
    return GrunskyTable(max_weight, entries)


def grunsky_oracle(max_weight: int, b1=None) -> GrunskyTable:
    """Grunsky coefficients read off ``zeta d/dzeta log((g(zeta) - g(z))/(zeta - z))``.

    With ``x = 1/z`` and ``y = 1/zeta`` everything is a power series;
    ``zeta d/dzeta = -y d/dy`` and ``beta_nk`` sits at ``x^k y^n``.
    ``b1`` defaults to the symbol ``b1``; it cancels in the difference.
    """
    if max_weight < 2:
        raise ValueError("grunsky_oracle needs max_weight >= 2")
    N = max_weight
    b1 = Poly.var("b1") if b1 is None else _poly(b1)
    bs = {j: Poly.var(f"b{j}") for j in range(2, N + 1)}
    # x y g(1/x) = y + b1 x y + sum_j b_j x^j y
    gx = {(0, 1): Poly.one(), (1, 1): b1}
    gy = {(1, 0): Poly.one(), (1, 1): b1}
    for j, b in bs.items():
        gx[(j, 1)] = b
        gy[(1, j)] = b
    num = BiSeries(gx, N + 1, ("x", "y")) - BiSeries(gy, N + 1, ("x", "y"))
    # z - zeta = (y - x)/(x y)
    quotient = -divide_by_difference(num)
    logq = quotient.log()
    table = {}
    for w in range(2, N + 1):
        for n in range(1, w):
            k = w - n
            table[(n, k)] = logq.coeff(k, n) * (-n)
    return GrunskyTable(N, table)
