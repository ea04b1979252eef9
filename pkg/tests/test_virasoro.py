from fractions import Fraction

import pytest

from univir.exactalg import Poly
from univir.virasoro import (
    DiffOp,
    HorizonError,
    build_hat,
    build_L_minus,
    build_L_minus_oracle,
    build_L_plus,
    build_L_zero,
    commutator,
    verify_virasoro,
)

c = {j: Poly.c(j) for j in range(1, 20)}
h, cc = Poly.var("h"), Poly.var("cc")


def test_L_plus():
    L1 = build_L_plus(1, 6)
    assert L1.apply(c[1]) == 1
    assert L1.apply(c[2]) == 2 * c[1]
    assert build_L_plus(2, 6).apply(c[1]) == 0
    assert L1.shift == -1 and L1.is_homogeneous()


def test_L_zero():
    L0 = build_L_zero(6)
    assert L0.apply(c[1] ** 2 * c[3]) == 5 * c[1] ** 2 * c[3]
    assert L0.apply(1) == 0
    assert L0.apply(c[2]) == 2 * c[2]


def test_L_minus_spot_values():
    L = build_L_minus(1, 6)
    assert L.component(1) == 3 * c[2] - 2 * c[1] ** 2
    assert L.component(2) == 4 * c[3] - 2 * c[1] * c[2]
    assert build_L_minus(2, 6).component(1).is_homogeneous(3)
    with pytest.raises(HorizonError):
        L.component(7)
    with pytest.raises(ValueError):
        build_L_minus(1, 4, "bogus")


@pytest.mark.parametrize("k", range(1, 6))
def test_three_routes(k):
    s = build_L_minus(k, 8, "series")
    assert s == build_L_minus(k, 8, "derivative")
    assert s == build_L_minus_oracle(k, 8)
    assert s.is_homogeneous() and s.shift == k


def test_hats_on_vacuum():
    assert build_hat(0, 6).apply(1) == h
    for k in (1, 2, 3, 4):
        assert build_hat(k, 6).apply(1) == 0
    assert build_hat(-1, 6).apply(1) == 2 * h * c[1]


def test_commutator_basics():
    L0 = build_L_zero(8)
    assert not commutator(L0, L0)
    # computed directly: the d/dc3 component of [L1, L2] is 2 - 3
    br = commutator(build_L_plus(1, 8), build_L_plus(2, 8))
    assert br.component(3) == -1
    assert br == build_L_plus(3, 8).scale(-1).restrict(br.pmax)
    with pytest.raises(HorizonError):
        commutator(build_hat(-3, 2), build_hat(3, 2))


@pytest.mark.parametrize("k", range(1, 5))
def test_L0_grading(k):
    Lm = build_hat(-k, 10)
    br = commutator(build_L_zero(14), Lm)
    assert br == Lm.scale(k).restrict(br.pmax)
    # L^_-k raises weight by k
    mono = c[1] * c[2]
    out = Lm.apply(mono)
    assert out.is_homogeneous(3 + k)


@pytest.mark.parametrize("n,m", [(2, -2), (1, 1), (3, -1), (1, -1), (-2, -1), (0, -3)])
def test_swapped_relation(n, m):
    assert verify_virasoro(n, m, 8, "swapped").ok


def test_central_term():
    r = verify_virasoro(2, -2, 8, "swapped")
    assert r.central == cc * Fraction(1, 2)
    lhs = commutator(build_hat(2, 12), build_hat(-2, 12))
    assert lhs.mult == 4 * h + cc * Fraction(1, 2)


def test_printed_relation_mismatch_is_a_global_sign():
    r = verify_virasoro(1, 2, 6, "printed")
    assert not r.ok
    for p, lhs, rhs in r.mismatches:
        assert lhs == -rhs
    assert verify_virasoro(1, 1, 6, "printed").ok


def test_diffop_json_roundtrip():
    op = build_hat(-2, 5)
    back = DiffOp.from_json(op.to_json(), 5)
    assert back == op and back.shift == op.shift


def test_full_grid_with_swapped_structure_constant():
    bad = [(n, m) for n in range(-4, 5) for m in range(-4, 5) if not verify_virasoro(n, m, 12, "swapped").ok]
    assert not bad
