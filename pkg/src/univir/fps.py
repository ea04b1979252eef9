"""Truncated Laurent series in one variable, and sparse bivariate series.

A ``Series`` stores the coefficients of ``z^low .. z^trunc``; everything above
``trunc`` is unknown.  Binary operations keep the tightest bound that is
still valid, so recomputing a pipeline at higher precision and truncating
back always reproduces the lower-precision answer.

Coefficients below ``low`` are known to be zero; asking for one beyond
``trunc`` raises ``TruncationError``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Callable, Iterable, Mapping, Sequence

from .exactalg import Poly, Rational, as_rational, format_rational

__all__ = [
    "SeriesError",
    "TruncationError",
    "Series",
    "BiSeries",
    "series_arith",
    "reciprocal",
    "series_exp",
    "series_log",
    "series_pow",
    "compose",
    "reverse",
    "coeff",
    "bicoeff",
    "derivative",
    "divide_by_difference",
]


class SeriesError(ValueError):
    pass


class TruncationError(SeriesError, IndexError):
    pass


def _poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(x)


_ZERO = Poly.zero()
_ONE = Poly.one()


class Series:
    """Truncated Laurent series ``sum_{n=low}^{trunc} a_n z^n + O(z^(trunc+1))``."""

    __slots__ = ("low", "coeffs", "var")

    def __init__(self, coeffs: Sequence = (), low: int = 0, trunc: int | None = None, var: str = "z"):
        cs = [_poly(c) for c in coeffs]
        if trunc is None:
            trunc = low + len(cs) - 1
        if trunc < low - 1:
            raise SeriesError(f"truncation order {trunc} below lowest order {low}")
        n = trunc - low + 1
        if len(cs) < n:
            cs.extend([_ZERO] * (n - len(cs)))
        else:
            del cs[n:]
        self.low = low
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_dict(cls, terms: Mapping[int, object], trunc: int, var: str = "z") -> "Series":
        low = min([n for n in terms if n <= trunc], default=min(0, trunc + 1))
        cs = [_ZERO] * (trunc - low + 1)
        for n, c in terms.items():
            if n > trunc:
                continue
            cs[n - low] = _poly(c)
        return cls(cs, low, trunc, var)

    @classmethod
    def monomial(cls, n: int, trunc: int, coeff=1, var: str = "z") -> "Series":
        if n > trunc:
            return cls((), n, n - 1, var)
        return cls([coeff], n, trunc, var)

    @classmethod
    def zero(cls, trunc: int, low: int = 0, var: str = "z") -> "Series":
        return cls((), low, trunc, var)

    @property
    def trunc(self) -> int:
        return self.low + len(self.coeffs) - 1

    def _c(self, n: int) -> Poly:
        if n < self.low:
            return _ZERO
        if n > self.trunc:
            raise TruncationError(f"coefficient beyond truncation: z^{n} with truncOrder {self.trunc}")
        return self.coeffs[n - self.low]

    def coeff(self, n: int) -> Poly:
        return self._c(n)

    __getitem__ = coeff

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.low + i, c

    def valuation(self) -> int | None:
        for n, _ in self.items():
            return n
        return None

    def strip(self) -> "Series":
        """Drop known-zero leading coefficients."""
        v = self.valuation()
        if v is None:
            return Series((), self.trunc + 1, self.trunc, self.var)
        return Series(self.coeffs[v - self.low:], v, self.trunc, self.var)

    def truncate(self, trunc: int) -> "Series":
        trunc = min(trunc, self.trunc)
        low = min(self.low, trunc + 1)
        return Series(self.coeffs[: max(trunc - self.low + 1, 0)], low, trunc, self.var)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def map(self, fn: Callable[[Poly], Poly]) -> "Series":
        return Series([fn(c) for c in self.coeffs], self.low, self.trunc, self.var)

    def subs(self, mapping) -> "Series":
        return self.map(lambda c: c.subs(mapping))

    def shift(self, k: int) -> "Series":
        """Multiply by ``z^k``."""
        return Series(self.coeffs, self.low + k, self.trunc + k, self.var)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        if self.var != other.var or self.trunc != other.trunc:
            return False
        lo = min(self.low, other.low)
        return all(self._c(n) == other._c(n) for n in range(lo, self.trunc + 1))

    def agrees(self, other: "Series", upto: int | None = None) -> bool:
        """Equal on every exponent both sides know (optionally capped at ``upto``)."""
        top = min(self.trunc, other.trunc)
        if upto is not None:
            top = min(top, upto)
        lo = min(self.low, other.low)
        return all(self._c(n) == other._c(n) for n in range(lo, top + 1))

    __hash__ = None

    # arithmetic
    def _check(self, other: "Series"):
        if self.var != other.var:
            raise SeriesError(f"incompatible variables {self.var!r} and {other.var!r}")

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series([_poly(other)], 0, self.trunc, self.var) if self.trunc >= 0 else Series((), 0, self.trunc, self.var)
        self._check(other)
        trunc = min(self.trunc, other.trunc)
        low = min(self.low, other.low, trunc + 1)
        return Series([self._c(n) + other._c(n) for n in range(low, trunc + 1)], low, trunc, self.var)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return self.map(lambda c: -c)

    def __sub__(self, other):
        if not isinstance(other, Series):
            return self + (-_poly(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            if isinstance(other, (Poly, int, Fraction)):
                o = _poly(other)
                return self.map(lambda c: c * o)
            return NotImplemented
        self._check(other)
        a, b = self.strip(), other.strip()
        low = a.low + b.low
        trunc = min(a.trunc + b.low, b.trunc + a.low)
        if trunc < low:
            return Series((), min(low, trunc + 1), trunc, self.var)
        out = [_ZERO] * (trunc - low + 1)
        bn = [(j, c) for j, c in enumerate(b.coeffs) if c]
        for i, ca in enumerate(a.coeffs):
            if not ca or i > trunc - low:
                continue
            for j, cb in bn:
                k = i + j
                if k > trunc - low:
                    break
                out[k] = out[k] + ca * cb
        return Series(out, low, trunc, self.var)

    __rmul__ = __mul__

    def __pow__(self, e) -> "Series":
        return series_pow(self, e)

    def derivative(self) -> "Series":
        return derivative(self)

    # rendering
    def to_text(self) -> str:
        parts = []
        for n, c in self.items():
            body = c.to_text()
            if n == 0:
                parts.append(body)
                continue
            zpow = self.var if n == 1 else f"{self.var}^{n}"
            if len(c) == 1 and not c.is_constant():
                parts.append(f"{body}*{zpow}")
            elif c == 1:
                parts.append(zpow)
            elif c == -1:
                parts.append(f"-{zpow}")
            elif c.is_constant():
                parts.append(f"{body}*{zpow}")
            else:
                parts.append(f"({body})*{zpow}")
        tail = f"O({self.var}^{self.trunc + 1})"
        if not parts:
            return tail
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return f"{text} + {tail}"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Series({self.to_text()!r})"

    def to_json(self) -> dict:
        return {"var": self.var, "low": self.low, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Series":
        cs = [Poly.from_json(c) for c in data["coeffs"]]
        low = int(data["low"])
        return cls(cs, low, low + len(cs) - 1, data.get("var", "z"))


def series_arith(a: Series, b: Series, op: str) -> Series:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def coeff(a: Series, n: int) -> Poly:
    return a.coeff(n)


def derivative(a: Series) -> Series:
    out = []
    for n in range(a.low, a.trunc + 1):
        if n == 0 and a.low == 0:
            continue
        out.append(a.coeffs[n - a.low] * n)
    low = a.low - 1 if a.low != 0 else 0
    return Series(out, low, a.trunc - 1, a.var)


def _unit_split(a: Series, what: str) -> tuple[Rational, int, Series]:
    """Write ``a = lead * z^s * u`` with ``u = 1 + O(z)``; ``lead`` a nonzero rational."""
    s = a.valuation()
    if s is None:
        raise SeriesError(f"{what}: leading coefficient not a unit (series is O({a.var}^{a.trunc + 1}))")
    lead = a._c(s)
    if not lead.is_constant():
        raise SeriesError(f"{what}: leading coefficient not a unit ({lead.to_text()})")
    q = lead.constant_term()
    inv = Fraction(1) / q
    u = Series([c * inv for c in a.coeffs[s - a.low:]], 0, a.trunc - s, a.var)
    return q, s, u


def reciprocal(a: Series) -> Series:
    q, s, u = _unit_split(a, "reciprocal")
    n = u.trunc
    us = [(k, u.coeffs[k]) for k in range(1, n + 1) if u.coeffs[k]]
    b = [_ONE]
    for m in range(1, n + 1):
        acc = _ZERO
        for k, uk in us:
            if k > m:
                break
            acc = acc + uk * b[m - k]
        b.append(-acc)
    inv = as_rational(Fraction(1) / q)
    return Series([c * inv for c in b], -s, n - s, a.var)


def series_exp(a: Series) -> Series:
    c0 = a._c(0) if a.low <= 0 <= a.trunc else _ZERO
    if a.low < 0 and any(a._c(n) for n in range(a.low, min(0, a.trunc + 1))):
        raise SeriesError("exp needs a series without negative powers")
    if c0:
        raise SeriesError(f"exp needs zero constant term, got {c0.to_text()}")
    n = a.trunc
    ks = [(k, a._c(k) * k) for k in range(1, n + 1) if a._c(k)]
    e = [_ONE]
    for m in range(1, n + 1):
        acc = _ZERO
        for k, kak in ks:
            if k > m:
                break
            acc = acc + kak * e[m - k]
        e.append(acc * Fraction(1, m))
    return Series(e[: n + 1], 0, n, a.var)


def series_log(a: Series) -> Series:
    if a.low < 0 and any(a._c(n) for n in range(a.low, 0)):
        raise SeriesError("log needs a series without negative powers")
    c0 = a._c(0) if a.trunc >= 0 else _ZERO
    if c0 != 1:
        raise SeriesError(f"log needs constant term 1, got {c0.to_text()}")
    n = a.trunc
    u = [a._c(k) for k in range(0, n + 1)]
    lg = [_ZERO]
    for m in range(1, n + 1):
        acc = u[m] * m
        for k in range(1, m):
            if lg[k] and u[m - k]:
                acc = acc - lg[k] * u[m - k] * k
        lg.append(acc * Fraction(1, m))
    return Series(lg, 0, n, a.var)


def _exact_root(q: Rational, k: int) -> Rational | None:
    q = Fraction(q)
    if q < 0 and k % 2 == 0:
        return None
    sign = -1 if q < 0 else 1
    out = []
    for v in (abs(q.numerator), q.denominator):
        r = round(v ** (1.0 / k)) if v > 0 else 0
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** k == v:
                out.append(cand)
                break
        else:
            if k == 2:
                r = isqrt(v)
                if r * r == v:
                    out.append(r)
                    continue
            return None
    return as_rational(sign * Fraction(out[0], out[1]))


def series_pow(a: Series, e) -> Series:
    """``a**e`` for rational ``e``, or a ``Poly`` exponent when ``a = 1 + O(z)``."""
    q, s, u = _unit_split(a, "pow")
    symbolic = isinstance(e, Poly)
    if symbolic:
        if e.is_constant():
            e = e.constant_term()
            symbolic = False
        elif s != 0 or q != 1:
            raise SeriesError("symbolic exponent needs a series of the form 1 + O(z)")
    if not symbolic:
        e = as_rational(e)
        se = Fraction(s) * e
        if se.denominator != 1:
            raise SeriesError(f"non-integral leading exponent {format_rational(as_rational(se))}")
        shift = int(se)
        if q == 1:
            lead = 1
        elif isinstance(e, int):
            lead = as_rational(Fraction(q) ** e)
        else:
            r = _exact_root(q, e.denominator)
            if r is None:
                raise SeriesError(f"leading coefficient {format_rational(q)} has no rational power {format_rational(e)}")
            lead = as_rational(Fraction(r) ** e.numerator)
        ep1 = e + 1
    else:
        shift = 0
        lead = 1
        ep1 = e + 1
    n = u.trunc
    us = [(k, u.coeffs[k]) for k in range(1, n + 1) if u.coeffs[k]]
    p = [_ONE]
    # J.C.P. Miller: m P_m = sum_k ((e+1) k - m) u_k P_{m-k}
    for m in range(1, n + 1):
        acc = _ZERO
        for k, uk in us:
            if k > m:
                break
            if not p[m - k]:
                continue
            w = ep1 * k - m
            acc = acc + uk * p[m - k] * w
        p.append(acc * Fraction(1, m))
    return Series([c * lead for c in p], shift, shift + n, a.var)


def compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(z))``; ``inner`` must vanish at 0."""
    if outer.low < 0 and any(outer._c(n) for n in range(outer.low, 0)):
        raise SeriesError("outer series must not have negative powers")
    v = inner.valuation()
    if inner.low < 1 and any(inner._c(n) for n in range(inner.low, min(1, inner.trunc + 1))):
        raise SeriesError("composition requires order >= 1")
    if v is None:
        v = inner.trunc + 1
    To = outer.trunc
    trunc = (To + 1) * v - 1
    nonzero = [(n, c) for n, c in outer.items() if n >= 0]
    for n, c in nonzero:
        if n >= 1:
            trunc = min(trunc, inner.trunc + (n - 1) * v)
    var = inner.var
    result = Series([outer._c(0)] if To >= 0 else [], 0, trunc, var)
    inner_t = inner.truncate(trunc)
    power = None
    for n in range(1, To + 1):
        if n * v > trunc:
            break
        power = inner_t if power is None else (power * inner_t).truncate(trunc)
        c = outer._c(n)
        if c:
            result = result + power * c
    return result.truncate(trunc)


def reverse(a: Series) -> Series:
    """Compositional inverse of ``a = z + O(z^2)`` by Newton iteration."""
    if a.valuation() != 1 or a._c(1) != 1 or (a.low < 1 and any(a._c(n) for n in range(a.low, 1))):
        raise SeriesError("reverse needs a series of the form z + O(z^2)")
    T = a.trunc
    da = derivative(a)
    z = Series.monomial(1, T, var=a.var)
    r = z
    prec = 1  # r is exact through z^prec
    while prec < T:
        # one Newton step r -> r - (a(r) - z) / a'(r) doubles the exact range
        prec = min(2 * prec + 1, T)
        # pad, not truncate: r may carry a shorter horizon after an exact step
        r = Series(r.coeffs, r.low, prec, a.var)
        ar = compose(a.truncate(prec), r)
        dar = compose(da.truncate(prec), r)
        r = (r - (ar - z.truncate(prec)) * reciprocal(dar)).truncate(prec)
    return r


# -- bivariate ---------------------------------------------------------------

class BiSeries:
    """Sparse series in two variables, exact up to total degree ``trunc``.

    Exponents are nonnegative; Laurent uses substitute ``x = 1/z`` first.
    """

    __slots__ = ("terms", "trunc", "vars")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None, trunc: int = 0,
                 vars: tuple[str, str] = ("z", "u")):
        clean = {}
        for (p, q), c in (terms or {}).items():
            if p < 0 or q < 0:
                raise SeriesError("BiSeries exponents must be nonnegative")
            if p + q > trunc:
                continue
            c = _poly(c)
            if c:
                clean[(p, q)] = clean.get((p, q), _ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v}
        self.trunc = trunc
        self.vars = tuple(vars)

    @classmethod
    def one(cls, trunc: int, vars=("z", "u")) -> "BiSeries":
        return cls({(0, 0): _ONE}, trunc, vars)

    def coeff(self, p: int, q: int) -> Poly:
        if p + q > self.trunc:
            raise TruncationError(f"coefficient beyond truncation: total degree {p + q} > {self.trunc}")
        if p < 0 or q < 0:
            return _ZERO
        return self.terms.get((p, q), _ZERO)

    def truncate(self, trunc: int) -> "BiSeries":
        return BiSeries(self.terms, min(trunc, self.trunc), self.vars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.terms == other.terms

    __hash__ = None

    def agrees(self, other: "BiSeries") -> bool:
        t = min(self.trunc, other.trunc)
        return self.truncate(t).terms == other.truncate(t).terms

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries({(0, 0): _poly(other)}, self.trunc, self.vars)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _ZERO) + v
        return BiSeries(out, min(self.trunc, other.trunc), self.vars)

    __radd__ = __add__

    def __neg__(self) -> "BiSeries":
        return BiSeries({k: -v for k, v in self.terms.items()}, self.trunc, self.vars)

    def __sub__(self, other):
        return self + (-other if isinstance(other, BiSeries) else -_poly(other))

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            o = _poly(other)
            return BiSeries({k: v * o for k, v in self.terms.items()}, self.trunc, self.vars)
        va = min((p + q for p, q in self.terms), default=self.trunc + 1)
        vb = min((p + q for p, q in other.terms), default=other.trunc + 1)
        trunc = min(self.trunc + vb, other.trunc + va)
        out: dict = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                if p1 + p2 + q1 + q2 > trunc:
                    continue
                k = (p1 + p2, q1 + q2)
                out[k] = out.get(k, _ZERO) + c1 * c2
        return BiSeries(out, trunc, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiSeries":
        if n < 0:
            raise SeriesError("negative power of a BiSeries")
        result = BiSeries.one(self.trunc, self.vars)
        for _ in range(n):
            result = result * self
        return result

    def swap(self) -> "BiSeries":
        return BiSeries({(q, p): v for (p, q), v in self.terms.items()}, self.trunc, self.vars[::-1])

    def euler(self, which: int) -> "BiSeries":
        """Apply ``x d/dx`` (which=0) or ``y d/dy`` (which=1)."""
        return BiSeries({k: v * k[which] for k, v in self.terms.items()}, self.trunc, self.vars)

    def map(self, fn: Callable[[Poly], Poly]) -> "BiSeries":
        return BiSeries({k: fn(v) for k, v in self.terms.items()}, self.trunc, self.vars)

    def apply_outer(self, A: Sequence) -> "BiSeries":
        """``H(self)`` where ``H(1 + xi) = sum_j A_j xi^j``; needs constant term 1."""
        if self.coeff(0, 0) != 1:
            raise SeriesError("outer function needs argument with constant term 1")
        xi = self - 1
        result = BiSeries({(0, 0): _poly(A[0]) if A else _ZERO}, self.trunc, self.vars)
        power = BiSeries.one(self.trunc, self.vars)
        for j in range(1, min(len(A), self.trunc + 1)):
            power = power * xi
            if A[j]:
                result = result + power * _poly(A[j])
        return result

    def log(self) -> "BiSeries":
        if self.coeff(0, 0) != 1:
            raise SeriesError("log needs constant term 1")
        xi = self - 1
        result = BiSeries({}, self.trunc, self.vars)
        power = BiSeries.one(self.trunc, self.vars)
        for r in range(1, self.trunc + 1):
            power = power * xi
            if not power.terms:
                break
            result = result + power * Fraction((-1) ** (r + 1), r)
        return result

    def to_text(self) -> str:
        x, y = self.vars
        parts = []
        for (p, q) in sorted(self.terms, key=lambda k: (k[0] + k[1], -k[0])):
            c = self.terms[(p, q)]
            mono = "*".join(s for s in (
                "" if p == 0 else (x if p == 1 else f"{x}^{p}"),
                "" if q == 0 else (y if q == 1 else f"{y}^{q}")) if s)
            body = c.to_text()
            if not mono:
                parts.append(body)
            else:
                parts.append(f"({body})*{mono}")
        return " + ".join(parts + [f"O(deg {self.trunc + 1})"])

    __str__ = to_text


def bicoeff(a: BiSeries, p: int, q: int) -> Poly:
    return a.coeff(p, q)


def divide_by_difference(num: BiSeries) -> BiSeries:
    """Exact quotient ``num / (x - y)``; raises if the division is not exact."""
    quot: dict = {}
    top = num.trunc
    for a in range(0, top):
        for b in range(0, top - a):
            acc = _ZERO
            for i in range(0, b + 1):
                acc = acc + num.terms.get((a + 1 + i, b - i), _ZERO)
            if acc:
                quot[(a, b)] = acc
    q = BiSeries(quot, top - 1, num.vars)
    back = BiSeries({(p + 1, r): c for (p, r), c in quot.items()}, top, num.vars) - \
        BiSeries({(p, r + 1): c for (p, r), c in quot.items()}, top, num.vars)
    if back.terms != num.truncate(top).terms:
        raise SeriesError("numerator is not divisible by x - y")
    return q
