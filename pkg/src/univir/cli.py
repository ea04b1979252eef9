"""Command-line entry point: ``univir <subcommand> [flags]``.

Exit codes: 0 on success, 1 when a ``verify`` suite finds a mismatch,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .exactalg import Poly, format_rational, parse_rational
from .expand import (
    compose_expand,
    compose_oracle,
    cyclotomic_ratio_expand,
    cyclotomic_ratio_oracle,
    divided_difference_expand,
    divided_difference_oracle,
    power_expand,
    product_powers_expand,
    product_powers_oracle,
    psi_phi_expand,
    psi_phi_oracle,
    theta_series,
)
from .fps import Series, series_pow
from .schlicht import (
    expand_a,
    expand_a_oracle,
    expand_b,
    expand_b_oracle,
    grunsky_oracle,
    grunsky_table,
    q_series,
    schwarzian,
    schwarzian_oracle,
)
from .symfun import (
    MonomialSymmetric,
    faber_Phi,
    faber_Q,
    phi_condition_series,
    waring_P,
)
from .virasoro import CONVENTIONS, build_hat, build_L_minus, build_L_minus_oracle, verify_virasoro


class UsageError(Exception):
    pass


@dataclass
class Check:
    name: str
    ok: bool
    closed: object = None
    oracle: object = None


def _show(x) -> str:
    if hasattr(x, "to_text"):
        return x.to_text()
    return str(x)


def _jsonable(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, Fraction):
        return format_rational(x)
    return x


# -- suites -------------------------------------------------------------------

PROP31_P = (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-3, 2), Fraction(7, 5), 5)


def _rand_q(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 6))


def _symbols(family: str, n: int) -> list[Poly]:
    return [Poly.var(f"{family}{j}") for j in range(1, n + 1)]


def suite_lemmas(order: int, seed: int, draws: int = 10) -> Iterator[Check]:
    n = min(order, 12)
    p = [MonomialSymmetric.power_sum(k, n) for k in range(1, n + 1)]
    e = [MonomialSymmetric.elementary(k, n) for k in range(1, n + 1)]
    for k in range(1, n + 1):
        lhs = waring_P(k, [p[j] * (-1) ** (j + 1) for j in range(k)])
        yield Check(f"waring P{k}(-p1, p2, ...) = e{k}", lhs == e[k - 1], lhs, e[k - 1])
        rhs = p[k - 1] * (-1) ** k
        lhs = faber_Q(k, e[:k])
        yield Check(f"waring Q{k}(e1, ..., e{k}) = (-1)^{k} p{k}", lhs == rhs, lhs, rhs)
    a, b = _symbols("a", n), _symbols("b", n)
    Pa = [waring_P(j, a) for j in range(1, n + 1)]
    Qb = [faber_Q(j, b) for j in range(1, n + 1)]
    for k in range(1, n + 1):
        back = faber_Q(k, Pa)
        yield Check(f"inverse Q{k}(P(a)) = a{k}", back == a[k - 1], back, a[k - 1])
        back = waring_P(k, Qb)
        yield Check(f"inverse P{k}(Q(b)) = b{k}", back == b[k - 1], back, b[k - 1])

    rng = random.Random(seed)
    for d in range(draws):
        alpha = [_rand_q(rng) for _ in range(3)]
        mu = [_rand_q(rng) for _ in range(3)]
        yield _pair(f"product-powers draw {d}", product_powers_expand(alpha, mu, order), product_powers_oracle(alpha, mu, order))
        cmu = {j: _rand_q(rng) for j in range(2, 5)}
        yield _pair(f"cyclotomic draw {d}", cyclotomic_ratio_expand(cmu, order), cyclotomic_ratio_oracle(cmu, order))
        A = [_rand_q(rng) for _ in range(order + 1)]
        yield _pair(f"compose draw {d}", compose_expand(A, order), compose_oracle(A, order))
        pw = _rand_q(rng)
        yield _pair(f"power p={pw} draw {d}", power_expand(pw, order), series_pow(Series([1], 0, order) + theta_series(order), pw))
        al = [_rand_q(rng) for _ in range(order)]
        k = rng.randint(0, 3)
        yield _pair(f"psi-phi k={k} p={pw} draw {d}", psi_phi_expand(al, k, pw, order), psi_phi_oracle(al, k, pw, order))
        H = [_rand_q(rng) for _ in range(order + 1)]
        dd_order = min(order, 8)
        yield _pair(f"divided-difference draw {d}", divided_difference_expand(H, dd_order), divided_difference_oracle(H, dd_order))


def _pair(name: str, closed, oracle) -> Check:
    return Check(name, closed == oracle, closed, oracle)


def suite_prop31(order: int, seed: int = 0) -> Iterator[Check]:
    for p in PROP31_P + (Poly.var("p"),):
        label = _show(p) if isinstance(p, Poly) else format_rational(Fraction(p))
        yield _pair(f"expand_a p={label}", expand_a(p, order), expand_a_oracle(p, order))
        yield _pair(f"expand_b p={label}", expand_b(p, order), expand_b_oracle(p, order))
    yield _pair("schwarzian", schwarzian(order), schwarzian_oracle(order))
    a = Poly.var("a")
    mobius = schwarzian(order).subs({f"c{j}": a ** j for j in range(1, order + 1)})
    yield Check("schwarzian vanishes for c_j = a^j", mobius.is_zero(), mobius, Series.zero(order))


def suite_grunsky(order: int, seed: int = 0) -> Iterator[Check]:
    closed, oracle = grunsky_table(order), grunsky_oracle(order)
    for n, k in closed.pairs():
        yield Check(f"beta[{n},{k}] closed = log oracle", closed[(n, k)] == oracle[(n, k)], closed[(n, k)], oracle[(n, k)])
        lhs, rhs = closed[(n, k)] * Fraction(1, n), closed[(k, n)] * Fraction(1, k)
        yield Check(f"beta[{n},{k}]/{n} = beta[{k},{n}]/{k}", lhs == rhs, lhs, rhs)
    shifted = grunsky_oracle(order, Poly.var("b1") + 1)
    yield Check("table independent of b1", shifted == oracle, shifted.to_text(), oracle.to_text())
    b = _symbols("b", order)
    for n in range(1, order):
        ser = phi_condition_series(n, b, order - n)
        head = [ser.coeff(e) for e in range(-n, 1)]
        ok = head[0] == 1 and all(not c for c in head[1:])
        yield Check(f"Phi{n}(g) = w^-{n} + O(w)", ok, head, [1] + [0] * n)
        for k in range(1, order - n + 1):
            yield Check(f"beta[{n},{k}] from Phi{n}", ser.coeff(k) == closed[(n, k)], ser.coeff(k), closed[(n, k)])


def suite_virasoro(order: int, seed: int = 0, bound: int = 4, convention: str = "printed") -> Iterator[Check]:
    for k in range(1, min(5, order) + 1):
        pm = min(order, 8)
        s, d, o = build_L_minus(k, pm, "series"), build_L_minus(k, pm, "derivative"), build_L_minus_oracle(k, pm)
        yield Check(f"L-{k} series form = derivative form", s == d, s, d)
        yield Check(f"L-{k} series form = residue oracle", s == o, s, o)
    one = Poly.one()
    yield _pair("L^0 . 1 = h", build_hat(0, order).apply(one), Poly.var("h"))
    for k in range(1, bound + 1):
        yield _pair(f"L^{k} . 1 = 0", build_hat(k, order).apply(one), Poly.zero())
    for n in range(-bound, bound + 1):
        for m in range(-bound, bound + 1):
            r = verify_virasoro(n, m, order, convention)
            first = r.mismatches[0] if r.mismatches else None
            yield Check(
                f"[L^{n}, L^{m}] {convention}",
                r.ok,
                first and f"{'mult' if first[0] == 0 else 'd/dc%d' % first[0]}: {first[1].to_text()}",
                first and first[2].to_text(),
            )


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "lemmas": suite_lemmas,
    "prop31": suite_prop31,
    "grunsky": suite_grunsky,
    "virasoro": suite_virasoro,
}

DEFAULT_ORDER = {"lemmas": 8, "prop31": 10, "grunsky": 10, "virasoro": 12}


# -- argument handling ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational_or_symbol(text: str):
    if text == "p":
        return Poly.var("p")
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--order", type=int, default=None, help="order, index or weight bound")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--p", type=_rational_or_symbol, default=Fraction(0), help="rational num/den (write --p=-3/2 for negatives) or the symbol p")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-weight", type=int, default=16)

    parser = _Parser(prog="univir", description="Exact Waring/Faber/Grunsky/Virasoro computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("waring", parents=[common], help="Waring polynomial P_n(a1, ..., an)")
    sub.add_parser("faber", parents=[common], help="Faber polynomial Q_n(b1, ..., bn)")
    sub.add_parser("phi", parents=[common], help="one-variable Faber polynomial Phi_n(z)")
    sub.add_parser("expand-a", parents=[common], help="z^(p+2) f'^2 / f^(p+2)")
    sub.add_parser("expand-b", parents=[common], help="z^(p+1) f'' / f^p")
    sub.add_parser("schwarzian", parents=[common], help="z^2 S_f")
    sub.add_parser("qseries", parents=[common], help="sum Q_n z^n")
    sub.add_parser("grunsky", parents=[common], help="Grunsky coefficients up to weight --order")
    op = sub.add_parser("op", parents=[common], help="hatted Virasoro generator L^_n, components p <= --order")
    op.add_argument("n", type=int)
    op.add_argument("--form", choices=("series", "derivative", "oracle"), default="series")
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=tuple(SUITES) + ("all",))
    ver.add_argument("--convention", choices=CONVENTIONS, default="printed",
                     help="structure constant (m-n) as printed, or (n-m)")
    return parser


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(_jsonable(obj), sort_keys=True) + "\n")
    else:
        out.write(_show(obj) + "\n")


def _order(args, default: int) -> int:
    order = default if args.order is None else args.order
    if order < 0:
        raise UsageError("--order must be nonnegative")
    if order > args.max_weight:
        raise UsageError(f"--order {order} exceeds --max-weight {args.max_weight}")
    return order


def _run_verify(args, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    rows = []
    for name in names:
        order = _order(args, DEFAULT_ORDER[name])
        kwargs = {"convention": args.convention} if name == "virasoro" else {}
        first_bad = None
        for chk in SUITES[name](order, args.seed, **kwargs):
            rows.append({"suite": name, "check": chk.name, "ok": chk.ok})
            if args.format == "text":
                out.write(f"{'PASS' if chk.ok else 'FAIL'}  {name}: {chk.name}\n")
            if not chk.ok and first_bad is None:
                first_bad = chk
        if first_bad is not None:
            failed = True
            if args.format == "text":
                out.write(f"first counterexample in {name}: {first_bad.name}\n")
                out.write(f"  closed form: {_show(first_bad.closed)}\n")
                out.write(f"  oracle:      {_show(first_bad.oracle)}\n")
            else:
                rows.append({"suite": name, "counterexample": first_bad.name,
                             "closed": _show(first_bad.closed), "oracle": _show(first_bad.oracle)})
    if args.format == "json":
        out.write(json.dumps(rows, sort_keys=True) + "\n")
    return 1 if failed else 0


def run(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        cmd = args.command
        if cmd == "verify":
            return _run_verify(args, out)
        if cmd in ("waring", "faber", "phi"):
            n = _order(args, 3)
            if cmd == "waring":
                result = waring_P(n, _symbols("a", n))
            elif n < 1:
                raise UsageError(f"{cmd} needs --order >= 1")
            elif cmd == "faber":
                result = faber_Q(n, _symbols("b", n))
            else:
                result = faber_Phi(n, _symbols("b", n))
        elif cmd == "expand-a":
            result = expand_a(args.p, _order(args, 4))
        elif cmd == "expand-b":
            result = expand_b(args.p, _order(args, 4))
        elif cmd == "schwarzian":
            result = schwarzian(_order(args, 4))
        elif cmd == "qseries":
            result = q_series(_order(args, 4))
        elif cmd == "grunsky":
            order = _order(args, 4)
            if order < 2:
                raise UsageError("grunsky needs --order >= 2")
            result = grunsky_table(order)
        elif cmd == "op":
            order = _order(args, 6)
            if abs(args.n) > order:
                raise UsageError(f"|n| = {abs(args.n)} exceeds --order {order}")
            result = build_hat(args.n, order, args.form)
        else:  # pragma: no cover - argparse rejects unknown commands
            raise UsageError(f"unknown subcommand {cmd!r}")
    except UsageError as exc:
        sys.stderr.write(f"univir: error: {exc}\n")
        return 2
    _emit(result, args.format, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
