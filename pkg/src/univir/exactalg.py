"""Exact rationals and sparse graded polynomials.

Every coefficient in the package lives in ``Poly``: a sparse polynomial with
rational coefficients over indexed variable families.  The Taylor
coefficients ``c1, c2, ...`` carry weight ``j``; everything else (``h``,
``cc``, ``b2``, ``x3``, ``p`` ...) has weight 0 unless a family is named
explicitly (see ``Poly.is_homogeneous``).

Rationals are plain ``int`` when integral and ``fractions.Fraction``
otherwise; both compare equal across types, and the split keeps the hot
loops on machine-speed integer arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Union

Rational = Union[int, Fraction]

__all__ = [
    "Rational",
    "Poly",
    "MultiIndex",
    "as_rational",
    "parse_rational",
    "format_rational",
    "index_stats",
    "multi_indices",
    "poly_arith",
    "weight_truncate",
    "partial",
]

# variable code = family_id * _STRIDE + index; family "c" has id 0 so that
# c_j is encoded by the integer j itself.
_STRIDE = 1 << 32
_FAMILIES: dict[str, int] = {}
_FAMILY_NAMES: list[str] = []
_VAR_RE = re.compile(r"^([A-Za-z_]+?)(\d*)$")
_MAX_EXPONENT = (1 << 62)


def _family_id(name: str) -> int:
    fid = _FAMILIES.get(name)
    if fid is None:
        fid = len(_FAMILY_NAMES)
        _FAMILIES[name] = fid
        _FAMILY_NAMES.append(name)
    return fid


for _name in ("c", "b", "h", "cc", "a", "x", "p", "z"):
    _family_id(_name)


def var_code(name: str | int) -> int:
    """Encode a variable name such as ``"c3"``, ``"h"`` or ``"cc"``.

    A bare integer ``j`` means ``c_j``.
    """
    if isinstance(name, int):
        if name < 1:
            raise ValueError(f"variable index must be >= 1, got {name}")
        return name
    if name in ("h", "cc"):
        return _family_id(name) * _STRIDE
    m = _VAR_RE.match(name)
    if not m:
        raise ValueError(f"malformed variable name {name!r}")
    fam, idx = m.group(1), m.group(2)
    index = int(idx) if idx else 0
    if idx and index == 0:
        raise ValueError(f"variable index must be >= 1 in {name!r}")
    if fam == "c" and index == 0:
        raise ValueError("the c family needs an index")
    if index >= _STRIDE:
        raise OverflowError(f"variable index too large in {name!r}")
    return _family_id(fam) * _STRIDE + index


def var_family(code: int) -> str:
    return _FAMILY_NAMES[code // _STRIDE]


def var_index(code: int) -> int:
    return code % _STRIDE


def var_name(code: int) -> str:
    fam, idx = var_family(code), var_index(code)
    return f"{fam}{idx}" if idx else fam


# -- rationals ---------------------------------------------------------------

def as_rational(q) -> Rational:
    """Normalize to ``int`` when integral, else a reduced ``Fraction``."""
    if isinstance(q, bool):
        return int(q)
    if isinstance(q, int):
        return q
    if isinstance(q, Fraction):
        return q.numerator if q.denominator == 1 else q
    if isinstance(q, str):
        return parse_rational(q)
    raise TypeError(f"not an exact rational: {q!r}")


def parse_rational(text: str) -> Rational:
    """Parse ``"num/den"`` or an integer literal."""
    s = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", s):
        raise ValueError(f"malformed rational {text!r}")
    q = Fraction(s)
    return as_rational(q)


def format_rational(q: Rational) -> str:
    q = as_rational(q)
    if isinstance(q, int):
        return str(q)
    return f"{q.numerator}/{q.denominator}"


# -- monomials ---------------------------------------------------------------

Monomial = tuple  # tuple[tuple[int, int], ...], sorted by variable code


@lru_cache(maxsize=1 << 18)
def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    for e in d.values():
        if e >= _MAX_EXPONENT:
            raise OverflowError("monomial exponent overflow")
    return tuple(sorted(d.items()))


def _mono_weight(m: Monomial, family_id: int = 0) -> int:
    return sum((v % _STRIDE) * e for v, e in m if v // _STRIDE == family_id)


def _sort_key(m: Monomial):
    # graded by weight (c and b families), then higher variables first
    return (_mono_weight(m) + _mono_weight(m, 1), tuple((-v, -e) for v, e in reversed(m)))


def _factor_order(v: int):
    # named families before the c's when printing a monomial
    fid = v // _STRIDE
    return (fid == 0, fid, v % _STRIDE)


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean = {}
        if terms:
            for mono, coef in terms.items():
                coef = as_rational(coef)
                if coef:
                    clean[tuple(mono)] = coef
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def const(cls, q) -> "Poly":
        q = as_rational(q)
        return cls._wrap({(): q} if q else {})

    @classmethod
    def zero(cls) -> "Poly":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "Poly":
        return cls._wrap({(): 1})

    @classmethod
    def var(cls, name: str | int, power: int = 1) -> "Poly":
        if power < 0:
            raise ValueError("negative exponent")
        if power == 0:
            return cls.one()
        return cls._wrap({((var_code(name), power),): 1})

    @classmethod
    def c(cls, j: int, power: int = 1) -> "Poly":
        return cls.var(j, power)

    @classmethod
    def monomial(cls, exps: Mapping[str | int, int], coeff=1) -> "Poly":
        d: dict[int, int] = {}
        for name, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                code = var_code(name)
                d[code] = d.get(code, 0) + e
        return cls({tuple(sorted(d.items())): coeff})

    # basic protocol
    def terms(self) -> Iterator[tuple[Monomial, Rational]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Rational:
        return self._terms.get((), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        out = dict(self._terms)
        for m, c in o._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = as_rational(s)
            else:
                out.pop(m, None)
        return Poly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, q) -> "Poly":
        q = as_rational(q)
        if not q:
            return Poly.zero()
        if q == 1:
            return self
        return Poly._wrap({m: as_rational(c * q) for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly.zero()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((mb, cb),) = b.items()
            if mb == ():
                return Poly._wrap(a).scale(cb)
            return Poly._wrap({_mono_mul(ma, mb): as_rational(ca * cb) for ma, ca in a.items()})
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return Poly._wrap({m: as_rational(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of Poly by zero")
            return self.scale(Fraction(1) / other)
        if isinstance(other, Poly) and other.is_constant() and other.constant_term():
            return self.scale(Fraction(1) / other.constant_term())
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("Poly powers need a nonnegative integer exponent")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # structure
    def variables(self) -> list[str]:
        codes = {v for m in self._terms for v, _ in m}
        return [var_name(v) for v in sorted(codes, key=_factor_order)]

    def c_indices(self) -> set[int]:
        return {v for m in self._terms for v, _ in m if v < _STRIDE}

    def weighted_degree_set(self, family: str = "c") -> set[int]:
        fid = _family_id(family)
        return {_mono_weight(m, fid) for m in self._terms}

    def is_homogeneous(self, weight: int, family: str = "c") -> bool:
        return self.weighted_degree_set(family) <= {weight}

    def weight_truncate(self, n: int, family: str = "c") -> "Poly":
        fid = _family_id(family)
        return Poly._wrap({m: c for m, c in self._terms.items() if _mono_weight(m, fid) <= n})

    def partial(self, name: str | int) -> "Poly":
        code = var_code(name)
        out = {}
        for m, c in self._terms.items():
            for i, (v, e) in enumerate(m):
                if v == code:
                    nm = m[:i] + (((v, e - 1),) if e > 1 else ()) + m[i + 1:]
                    out[nm] = as_rational(out.get(nm, 0) + c * e)
                    break
        return Poly._wrap({m: c for m, c in out.items() if c})

    def collect(self, name: str | int) -> dict[int, "Poly"]:
        """Split into ``{k: coefficient of name**k}``."""
        code = var_code(name)
        parts: dict[int, dict] = {}
        for m, c in self._terms.items():
            k = 0
            rest = m
            for i, (v, e) in enumerate(m):
                if v == code:
                    k = e
                    rest = m[:i] + m[i + 1:]
                    break
            parts.setdefault(k, {})[rest] = c
        return {k: Poly._wrap(t) for k, t in sorted(parts.items())}

    def subs(self, mapping: Mapping[str | int, "Poly | Rational"]) -> "Poly":
        """Substitute variables simultaneously."""
        table = {var_code(k): (v if isinstance(v, Poly) else Poly.const(v)) for k, v in mapping.items()}
        if not table:
            return self
        powers: dict[tuple[int, int], Poly] = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = table[v] ** e
            return powers[key]

        result = Poly.zero()
        for m, c in self._terms.items():
            keep = tuple((v, e) for v, e in m if v not in table)
            term = Poly._wrap({keep: c})
            for v, e in m:
                if v in table:
                    term = term * power(v, e)
            result = result + term
        return result

    # rendering
    def sorted_terms(self) -> list[tuple[Monomial, Rational]]:
        return sorted(self._terms.items(), key=lambda mc: _sort_key(mc[0]))

    @staticmethod
    def _mono_text(m: Monomial) -> str:
        parts = []
        for v, e in sorted(m, key=lambda ve: _factor_order(ve[0])):
            parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
        return "*".join(parts)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            mag = -c if neg else c
            if m == ():
                body = format_rational(mag)
            elif mag == 1:
                body = self._mono_text(m)
            else:
                body = f"{format_rational(mag)}*{self._mono_text(m)}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Poly({self.to_text()!r})"

    def to_json(self) -> list:
        rows = []
        for m, c in self.sorted_terms():
            exps = [[v if v < _STRIDE else var_name(v), e] for v, e in m]
            rows.append({"exps": exps, "coeff": format_rational(c)})
        return rows

    @classmethod
    def from_json(cls, rows: Iterable[Mapping]) -> "Poly":
        total = cls.zero()
        for row in rows:
            exps = {}
            for name, e in row["exps"]:
                exps[name] = exps.get(name, 0) + int(e)
            total = total + cls.monomial(exps, parse_rational(str(row["coeff"])))
        return total


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def weight_truncate(a: Poly, n: int) -> Poly:
    return a.weight_truncate(n)


def partial(a: Poly, k: str | int) -> Poly:
    return a.partial(k)


# -- multi-indices -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class MultiIndex:
    """Exponent vector ``m = (m_1, m_2, ...)`` stored sparsely as ``((j, m_j), ...)``."""

    exps: tuple = ()

    def __post_init__(self):
        cleaned = tuple(sorted((int(j), int(e)) for j, e in self.exps if e))
        for j, e in cleaned:
            if j < 1 or e < 0:
                raise ValueError(f"bad multi-index entry ({j}, {e})")
        object.__setattr__(self, "exps", cleaned)

    @classmethod
    def of(cls, counts: Mapping[int, int] | None = None, **kw) -> "MultiIndex":
        d = dict(counts or {})
        for k, v in kw.items():
            d[int(k.lstrip("m"))] = v
        return cls(tuple(d.items()))

    def __getitem__(self, j: int) -> int:
        for i, e in self.exps:
            if i == j:
                return e
        return 0

    def __iter__(self):
        return iter(self.exps)

    @property
    def M0(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def M1(self) -> int:
        return sum(j * e for j, e in self.exps)

    @property
    def M2(self) -> int:
        return sum(j * j * e for j, e in self.exps)

    def stats(self) -> tuple[int, int, int]:
        return self.M0, self.M1, self.M2

    def factorial_product(self) -> int:
        out = 1
        for _, e in self.exps:
            out *= factorial(e)
        return out

    def monomial(self, family: str = "c", shift: int = 0) -> Poly:
        """The monomial ``prod family_{j+shift}^{m_j}`` with coefficient 1."""
        if family == "c" and shift == 0:
            return Poly._wrap({self.exps: 1})
        return Poly.monomial({f"{family}{j + shift}": e for j, e in self.exps})


def index_stats(m: MultiIndex) -> tuple[int, int, int]:
    return m.stats()


def multi_indices(weight: int, min_part: int = 1, max_part: int | None = None) -> Iterator[MultiIndex]:
    """All multi-indices with ``sum j*m_j == weight`` and parts in range."""
    if weight < 0:
        return
    top = weight if max_part is None else min(weight, max_part)

    def rec(j: int, remaining: int, acc: list):
        if remaining == 0:
            yield MultiIndex(tuple(acc))
            return
        if j < min_part:
            return
        for e in range(remaining // j, -1, -1):
            if e:
                acc.append((j, e))
            yield from rec(j - 1, remaining - j * e, acc)
            if e:
                acc.pop()

    yield from rec(top, weight, [])
