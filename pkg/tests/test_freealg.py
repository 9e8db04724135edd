"""Free-superalgebra basics: formatting, parsing, gradings, supercommutator."""

from fractions import Fraction

import pytest

from superyangian import (
    Gen,
    NCPoly,
    SuperDim,
    TensorPoly,
    parse_poly,
    supercomm,
)
from superyangian.freealg import (
    format_poly,
    gen_parity,
    word_deg1,
    word_deg2,
    word_is_ordered,
)

D11 = SuperDim(1, 1)
D21 = SuperDim(2, 1)


def test_format_golden():
    p = (
        NCPoly.from_word((Gen(1, 1, 2), Gen(1, 2, 1)), coeff=-1)
        + NCPoly.gen(1, 2, 2)
        - NCPoly.gen(1, 1, 1)
    )
    assert format_poly(p) == "-t[1,2,1]*t[2,1,1] + t[2,2,1] - t[1,1,1]"
    assert format_poly(NCPoly.zero()) == "0"
    assert format_poly(NCPoly.one()) == "1"
    assert format_poly(NCPoly.c_power(2, coeff=Fraction(-3, 2))) == "-3/2*C^2"


def test_parse_roundtrip():
    texts = [
        "-t[1,2,1]*t[2,1,1] + t[2,2,1] - t[1,1,1]",
        "t[1,2,-2]*t[1,2,-1] - t[1,2,-3]*t[1,2,-1]",
        "1/2*C*t[1,1,-1] - C^2 + 3",
        "0",
        "1",
    ]
    for text in texts:
        p = parse_poly(text)
        assert format_poly(p) == text
        assert parse_poly(format_poly(p)) == p


def test_parse_rejects_label_zero():
    with pytest.raises(ValueError):
        parse_poly("t[1,1,0]")


def test_gradings():
    w = (Gen(3, 1, 2), Gen(-2, 2, 1), Gen(1, 1, 1))
    assert word_deg2(w) == 2 + (-2) + 0
    assert word_deg1(w) == 3 + 1
    assert gen_parity(Gen(5, 1, 2), D11) == 1
    assert gen_parity(Gen(-4, 2, 2), D11) == 0
    assert gen_parity(Gen(1, 3, 1), D21) == 1


def test_word_order():
    # dual letters come first; within a side (i, j) then label ascending
    assert word_is_ordered((Gen(-2, 1, 1), Gen(-1, 1, 1), Gen(1, 1, 1)), D11)
    assert not word_is_ordered((Gen(1, 1, 1), Gen(-1, 1, 1)), D11)
    assert not word_is_ordered((Gen(-1, 1, 1), Gen(-2, 1, 1)), D11)
    assert not word_is_ordered((Gen(1, 2, 1), Gen(1, 1, 2)), D11)
    # an odd letter may not repeat, an even one may
    assert not word_is_ordered((Gen(1, 1, 2), Gen(1, 1, 2)), D11)
    assert word_is_ordered((Gen(1, 1, 1), Gen(1, 1, 1)), D11)


def test_supercomm_antisymmetry():
    gens = [NCPoly.gen(1, i, j) for i in (1, 2) for j in (1, 2)]
    for x in gens:
        for y in gens:
            sign = 1
            (_, xo) = x.parity_split(D11)
            (_, yo) = y.parity_split(D11)
            if xo and yo:
                sign = -1
            lhs = supercomm(x, y, D11)
            rhs = supercomm(y, x, D11) * (-sign)
            assert lhs == rhs


def test_truncate_boundary():
    p = NCPoly.gen(-2, 1, 1) + NCPoly.gen(-3, 1, 1)
    # deg2 of t[1,1,-2] is -2, of t[1,1,-3] is -3; the boundary is dropped
    assert p.truncate_below(-3) == NCPoly.gen(-2, 1, 1)
    assert p.truncate_below(-4) == p
    assert p.truncate_below(None) == p


def test_subs_c():
    p = NCPoly.c_power(2, coeff=3) + NCPoly.gen(1, 1, 1) * NCPoly.c_power(1)
    q = p.subs_c(Fraction(1, 2))
    assert q == NCPoly.scalar(Fraction(3, 4)) + NCPoly.gen(1, 1, 1) * Fraction(1, 2)


def test_tensor_koszul():
    # (1 (x) x)(y (x) 1) = (-1)^{|x||y|} y (x) x
    one = NCPoly.one()
    for (i, j) in ((1, 2), (2, 1), (1, 1)):
        for (k, l) in ((1, 2), (2, 1), (2, 2)):
            x, y = NCPoly.gen(1, i, j), NCPoly.gen(-1, k, l)
            px = gen_parity(Gen(1, i, j), D11)
            py = gen_parity(Gen(-1, k, l), D11)
            lhs = TensorPoly.from_legs(D11, [one, x]) * TensorPoly.from_legs(D11, [y, one])
            rhs = TensorPoly.from_legs(D11, [y, x]) * (-1 if px and py else 1)
            assert lhs == rhs
