import io
import json

import pytest

from univir.cli import run
from univir.exactalg import Poly
from univir.schlicht import GrunskyTable
from univir.virasoro import DiffOp


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_schwarzian_text():
    code, out = call("schwarzian", "--order", "3", "--format", "text")
    assert code == 0
    assert out.startswith("(12*c2 - 12*c1^2)*z^2 + ")


def test_grunsky_json_roundtrip():
    code, out = call("grunsky", "--order", "4", "--format", "json")
    assert code == 0
    table = GrunskyTable.from_json(json.loads(out))
    assert table[(1, 1)] == Poly.var("b2")
    assert table.max_weight == 4


def test_polynomial_commands():
    assert call("waring", "--order", "2")[1].strip() == "-1/2*a2 + 1/2*a1^2"
    assert call("faber", "--order", "2")[1].strip() == "-2*b2 + b1^2"
    assert call("phi", "--order", "1")[1].strip() == "z - b1"
    assert "2*h*c1*z" in call("qseries", "--order", "1")[1]
    assert call("expand-b", "--p", "p", "--order", "1")[1].strip() == "2*c1*z + O(z^2)"
    assert call("expand-a", "--p=-3/2", "--order", "0")[1].strip() == "1 + O(z^1)"


def test_op_json():
    code, out = call("op", "-1", "--order", "3", "--format", "json")
    op = DiffOp.from_json(json.loads(out), 3)
    assert op.component(1) == 3 * Poly.c(2) - 2 * Poly.c(1) ** 2
    assert op.mult == 2 * Poly.var("h") * Poly.c(1)
    assert call("op", "-1", "--order", "3", "--form", "oracle")[1] == call("op", "-1", "--order", "3")[1]


@pytest.mark.parametrize(
    "argv",
    [("bogus",), ("expand-a", "--p", "1/x"), ("schwarzian", "--order", "17"), ("grunsky", "--order", "1"), ()],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_max_weight_flag():
    assert call("schwarzian", "--order", "17", "--max-weight", "20")[0] == 0


def test_verify_suites():
    code, out = call("verify", "grunsky", "--order", "6")
    assert code == 0 and "FAIL" not in out
    code, out = call("verify", "lemmas", "--order", "5", "--seed", "7")
    assert code == 0
    assert out == call("verify", "lemmas", "--order", "5", "--seed", "7")[1]


def test_verify_virasoro_conventions():
    code, out = call("verify", "virasoro", "--order", "6", "--convention", "swapped")
    assert code == 0 and "FAIL" not in out
    code, out = call("verify", "virasoro", "--order", "6")
    assert code == 1
    assert "first counterexample in virasoro" in out


def test_verify_json():
    code, out = call("verify", "prop31", "--order", "4", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and all(r["ok"] for r in rows)
