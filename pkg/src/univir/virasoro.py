"""Virasoro generators as first-order differential operators in ``c1, c2, ...``.

A ``DiffOp`` is ``sum_p a_p d/dc_p + a_0`` with the derivation part known
for ``p <= pmax``.  Lowering operators ``L_k`` come from the tangent vector
``z^(k+1) f'``; raising operators ``L_-k`` come from the closed forms built on
``coeff_a`` (two forms) or from residue extraction (oracle).  A tangent
vector ``sum_p v_p z^(p+1)`` is read as the derivation ``sum_p v_p d/dc_p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .exactalg import Poly, multi_indices
from .fps import Series, derivative, series_pow
from .schlicht import coeff_a, f_series, q_series

__all__ = [
    "HorizonError",
    "DiffOp",
    "build_L_plus",
    "build_L_zero",
    "build_L_minus",
    "build_L_minus_oracle",
    "build_hat",
    "commutator",
    "VirasoroReport",
    "CONVENTIONS",
    "verify_virasoro",
]


class HorizonError(ValueError):
    pass


_ZERO = Poly.zero()


def _poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


@dataclass(frozen=True)
class DiffOp:
    deriv: Mapping[int, Poly]
    mult: Poly
    shift: int
    pmax: int

    def __post_init__(self):
        clean = {p: _poly(a) for p, a in self.deriv.items() if 1 <= p <= self.pmax and a}
        object.__setattr__(self, "deriv", dict(sorted(clean.items())))
        object.__setattr__(self, "mult", _poly(self.mult))

    @classmethod
    def identity(cls, pmax: int, scale=1) -> "DiffOp":
        return cls({}, _poly(scale), 0, pmax)

    def component(self, p: int) -> Poly:
        if p < 1:
            raise ValueError("derivation components are indexed by p >= 1")
        if p > self.pmax:
            raise HorizonError(f"component horizon exceeded: d/dc{p} with pMax {self.pmax}")
        return self.deriv.get(p, _ZERO)

    def derive(self, poly: Poly) -> Poly:
        """Apply the derivation part only."""
        idx = poly.c_indices()
        if idx and max(idx) > self.pmax:
            raise HorizonError(f"component horizon exceeded: c{max(idx)} with pMax {self.pmax}")
        out = _ZERO
        for p in sorted(idx):
            a = self.deriv.get(p)
            if a:
                out = out + a * poly.partial(p)
        return out

    def apply(self, poly) -> Poly:
        poly = _poly(poly)
        return self.derive(poly) + self.mult * poly

    __call__ = apply

    def restrict(self, pmax: int) -> "DiffOp":
        if pmax > self.pmax:
            raise HorizonError(f"component horizon exceeded: {pmax} > pMax {self.pmax}")
        return DiffOp(self.deriv, self.mult, self.shift, pmax)

    def _combine(self, other: "DiffOp", sign: int) -> "DiffOp":
        if self.shift != other.shift and self and other:
            raise ValueError(f"cannot add operators of weight shifts {self.shift} and {other.shift}")
        shift = self.shift if self else other.shift
        pmax = min(self.pmax, other.pmax)
        keys = set(self.deriv) | set(other.deriv)
        deriv = {p: self.deriv.get(p, _ZERO) + other.deriv.get(p, _ZERO) * sign for p in keys if p <= pmax}
        return DiffOp(deriv, self.mult + other.mult * sign, shift, pmax)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        return self._combine(other, 1)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self._combine(other, -1)

    def scale(self, q) -> "DiffOp":
        return DiffOp({p: a * q for p, a in self.deriv.items()}, self.mult * q, self.shift, self.pmax)

    __mul__ = scale
    __rmul__ = scale

    def __neg__(self) -> "DiffOp":
        return self.scale(-1)

    def __bool__(self) -> bool:
        return bool(self.deriv) or bool(self.mult)

    def mismatches(self, other: "DiffOp", upto: int | None = None) -> list:
        """Components on the common horizon where the two differ; 0 stands for the multiplication part."""
        top = min(self.pmax, other.pmax)
        if upto is not None:
            if upto > top:
                raise HorizonError(f"component horizon exceeded: {upto} > pMax {top}")
            top = upto
        out = []
        if self.mult != other.mult:
            out.append((0, self.mult, other.mult))
        for p in range(1, top + 1):
            a, b = self.deriv.get(p, _ZERO), other.deriv.get(p, _ZERO)
            if a != b:
                out.append((p, a, b))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return not self.mismatches(other)

    __hash__ = None

    def is_homogeneous(self) -> bool:
        if not self.mult.is_homogeneous(self.shift):
            return False
        return all(a.is_homogeneous(p + self.shift) for p, a in self.deriv.items())

    def to_text(self) -> str:
        parts = []
        if self.mult:
            parts.append(f"({self.mult.to_text()})")
        for p, a in self.deriv.items():
            parts.append(f"({a.to_text()})*d/dc{p}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"DiffOp(shift={self.shift}, pmax={self.pmax}: {self.to_text()})"

    def to_json(self) -> dict:
        return {
            "shift": self.shift,
            "mult": self.mult.to_json(),
            "deriv": [{"p": p, "coeff": a.to_json()} for p, a in self.deriv.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping, pmax: int | None = None) -> "DiffOp":
        deriv = {int(r["p"]): Poly.from_json(r["coeff"]) for r in data["deriv"]}
        if pmax is None:
            pmax = max(deriv, default=0)
        return cls(deriv, Poly.from_json(data["mult"]), int(data["shift"]), pmax)


def _from_tangent(series: Series, shift: int, pmax: int) -> DiffOp:
    """Read ``sum_p v_p z^(p+1)`` as ``sum_p v_p d/dc_p``; lower powers must vanish."""
    for n in range(series.low, 2):
        if series.coeff(n):
            raise ValueError(f"tangent series has a nonzero z^{n} term: {series.coeff(n).to_text()}")
    return DiffOp({p: series.coeff(p + 1) for p in range(1, pmax + 1)}, _ZERO, shift, pmax)


@lru_cache(maxsize=None)
def build_L_plus(k: int, pmax: int) -> DiffOp:
    if k < 1:
        raise ValueError("build_L_plus needs k >= 1")
    deriv = {}
    if k <= pmax:
        deriv[k] = Poly.one()
    for p in range(1, pmax - k + 1):
        deriv[k + p] = Poly.c(p) * (1 + p)
    return DiffOp(deriv, _ZERO, -k, pmax)


@lru_cache(maxsize=None)
def build_L_zero(pmax: int) -> DiffOp:
    return DiffOp({p: Poly.c(p) * p for p in range(1, pmax + 1)}, _ZERO, 0, pmax)


def _c_monomial_sum(weight: int, p) -> Poly:
    total = _ZERO
    for m in multi_indices(weight):
        total = total + m.monomial() * _poly(coeff_a(m, p)) * Fraction(1, m.factorial_product())
    return total


@lru_cache(maxsize=None)
def build_L_minus(k: int, pmax: int, form: str = "series") -> DiffOp:
    """``L_-k`` from the closed forms; ``form`` is ``"series"`` or ``"derivative"``."""
    if k < 1:
        raise ValueError("build_L_minus needs k >= 1")
    top = pmax + 1
    if form == "series":
        f = f_series(top)
        fj = series_pow(f, 2).truncate(top)
        out = Series.zero(top)
        # f^(j+2) has valuation j+2, so j <= pmax - 1
        for j in range(0, pmax):
            coef = _c_monomial_sum(j + k + 1, j + 1)
            if coef:
                out = out + fj * coef
            fj = (fj * f).truncate(top)
        return _from_tangent(out, k, pmax)
    if form == "derivative":
        f = f_series(pmax + k + 1)
        out = derivative(f).shift(1 - k).truncate(top)
        for j in range(0, k + 1):
            coef = _c_monomial_sum(k - j, -j)
            if coef:
                out = out - (series_pow(f, 1 - j) * coef).truncate(top)
        return _from_tangent(out, k, pmax)
    raise ValueError(f"unknown form {form!r}; expected 'series' or 'derivative'")


@lru_cache(maxsize=None)
def build_L_minus_oracle(k: int, pmax: int) -> DiffOp:
    """``L_-k`` by residues, with no closed-form coefficients.

    For ``|f(z)| < |f(t)|``, ``1/(f(t) - f(z)) = sum_j f(z)^j / f(t)^(j+1)``, so the
    field is ``sum_j f(z)^(j+2) res_t t^(1-k) f'(t)^2 / f(t)^(j+3)``.
    """
    if k < 1:
        raise ValueError("build_L_minus_oracle needs k >= 1")
    top = pmax + 1
    ft = f_series(pmax + k + 2)
    ft = Series(ft.coeffs, ft.low, ft.trunc, "t")
    fp2 = derivative(ft) ** 2
    fz = f_series(top)
    fzj = series_pow(fz, 2).truncate(top)
    out = Series.zero(top)
    for j in range(0, pmax):
        integrand = (fp2 * series_pow(ft, -(j + 3))).shift(1 - k)
        res = integrand.coeff(-1)
        if res:
            out = out + fzj * res
        fzj = (fzj * fz).truncate(top)
    return _from_tangent(out, k, pmax)


@lru_cache(maxsize=None)
def _q_coeffs(order: int) -> tuple:
    q = q_series(order)
    return tuple(q.coeff(n) for n in range(order + 1))


@lru_cache(maxsize=None)
def build_hat(n: int, pmax: int, form: str = "series") -> DiffOp:
    """``L_n`` for ``n > 0``, ``L_0 + h`` for ``n = 0``, ``L_n + Q_|n|`` for ``n < 0``."""
    if abs(n) > pmax:
        raise HorizonError(f"component horizon exceeded: |n| = {abs(n)} > pMax {pmax}")
    if n > 0:
        return build_L_plus(n, pmax)
    k = -n
    q = _q_coeffs(k)[k]
    if n == 0:
        base = build_L_zero(pmax)
    elif form == "oracle":
        base = build_L_minus_oracle(k, pmax)
    else:
        base = build_L_minus(k, pmax, form)
    return DiffOp(base.deriv, q, base.shift, pmax)


def commutator(A: DiffOp, B: DiffOp) -> DiffOp:
    """``[A, B]`` for first-order operators: components ``A(b_q) - B(a_q)``.

    ``b_q`` has weight ``q + wB`` so it involves ``c`` indices up to ``q + wB``;
    the result horizon is the largest ``q`` for which every needed component exists.
    """
    pmax = min(A.pmax - max(B.shift, 0), B.pmax - max(A.shift, 0))
    if pmax < 0:
        raise HorizonError(f"component horizon exceeded: operators with pMax {A.pmax}, {B.pmax}")
    deriv = {}
    for q in range(1, pmax + 1):
        a, b = A.deriv.get(q, _ZERO), B.deriv.get(q, _ZERO)
        deriv[q] = A.derive(b) - B.derive(a)
    mult = A.derive(B.mult) - B.derive(A.mult)
    return DiffOp(deriv, mult, A.shift + B.shift, pmax)


@dataclass
class VirasoroReport:
    n: int
    m: int
    pmax: int
    convention: str
    central: Poly
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_text(self) -> str:
        head = f"[L{self.n}, L{self.m}] ({self.convention}, p <= {self.pmax}): {'PASS' if self.ok else 'FAIL'}"
        lines = [head]
        for p, lhs, rhs in self.mismatches[:3]:
            where = "mult" if p == 0 else f"d/dc{p}"
            lines.append(f"  {where}: lhs = {lhs.to_text()}  rhs = {rhs.to_text()}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "pMax": self.pmax,
            "convention": self.convention,
            "ok": self.ok,
            "central": self.central.to_json(),
            "mismatches": [{"p": p, "lhs": a.to_json(), "rhs": b.to_json()} for p, a, b in self.mismatches],
        }


CONVENTIONS = ("printed", "swapped")


def verify_virasoro(n: int, m: int, N: int, convention: str = "printed", form: str = "series") -> VirasoroReport:
    """Compare ``[L^_n, L^_m]`` with the structure-constant side on components ``p <= N``.

    ``printed``: ``(m - n) L^_{n+m} + (cc/12)(n^3 - n) delta``.
    ``swapped``: ``(n - m) L^_{n+m} + (cc/12)(n^3 - n) delta``.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    P = N + max(n, 0) + max(m, 0) + max(-n, 0) + max(-m, 0)
    lhs = commutator(build_hat(n, P, form), build_hat(m, P, form))
    coef = (m - n) if convention == "printed" else (n - m)
    central = _ZERO
    if n + m == 0:
        central = Poly.var("cc") * Fraction(n ** 3 - n, 12)
    rhs = build_hat(n + m, P, form).scale(coef) + DiffOp.identity(P, central)
    return VirasoroReport(n, m, N, convention, central, lhs.mismatches(rhs, N))
