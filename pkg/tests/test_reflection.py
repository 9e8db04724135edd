"""Boundary matrices over the double Yangian and their exchange relations.

The three reflection equations, unitarity, and the coideal property are
verified inside windows whose soundness rests on the fact that rewriting
never raises the second degree.  Golden coefficient values are frozen from
hand-expanded low orders.
"""

from fractions import Fraction

import pytest

from superyangian import NCPoly, SuperDim, parse_poly
from superyangian.relations import BracketTable
from superyangian.reflection import (
    b_coefficient,
    build_B,
    check_grg,
    check_reflection,
    check_unitarity,
    coideal_check,
    epsilons,
    g_matrix,
    gamma_member,
    gamma_structure,
    generation_recursions,
    in_I0,
    leading_term_check,
    parity_homogeneous_check,
)

D11 = SuperDim(1, 1)
D21 = SuperDim(2, 1)
D20 = SuperDim(2, 0)

TABLES = {}


def table_for(dim):
    return TABLES.setdefault((dim.m, dim.n), BracketTable(dim))


# -- the diagonal matrix ----------------------------------------------------


def test_epsilons():
    assert epsilons(D21, 1) == (1, -1, -1)
    assert epsilons(D21, 2) == (1, 1, -1)
    assert epsilons(D11, 1) == (1, -1)
    with pytest.raises(ValueError):
        epsilons(D11, 0)
    with pytest.raises(ValueError):
        epsilons(D11, 3)


def test_g_matrix_squares_to_one():
    for (dim, ell) in ((D11, 1), (D21, 1), (D21, 2), (D20, 1)):
        G = g_matrix(dim, ell)
        I = G * G
        for i in dim.indices():
            for j in dim.indices():
                want = Fraction(1) if i == j else 0
                assert I.entries.get(((i, j),), 0) == want


def test_block_membership():
    assert in_I0(1, 1, 1) and in_I0(1, 2, 2)
    assert not in_I0(1, 1, 2) and not in_I0(1, 2, 1)
    assert gamma_member(1, 1, 1, 1)          # same block, odd label
    assert not gamma_member(1, 1, 1, 2)      # same block, even label
    assert gamma_member(1, 1, 2, 2)          # cross block, even label
    assert not gamma_member(1, 1, 2, 1)      # cross block, odd label
    assert gamma_member(1, 1, 1, -2)         # same block, even dual label
    assert not gamma_member(1, 1, 1, -1)
    assert gamma_member(1, 1, 2, -1)         # cross block, odd dual label
    assert not gamma_member(1, 1, 2, -2)


# -- the exchange identity for the constant matrix --------------------------


def test_grg_exchange():
    for (dim, ell) in ((D11, 1), (D21, 1), (D21, 2), (D20, 1)):
        assert check_grg(dim, ell)


def test_grg_non_involutive_control():
    # a diagonal matrix that does not square to one breaks the identity
    assert not check_grg(D11, 1, eps=(1, 2))


# -- the boundary matrices --------------------------------------------------


def test_constant_term_is_g():
    eps = epsilons(D11, 1)
    B = build_B(D11, "yangian", 1, {"u": (-3, 0)})
    for i in D11.indices():
        for j in D11.indices():
            ent = B.entries.get(((i, j),))
            got = ent.coeff(u=0) if ent is not None else 0
            if isinstance(got, NCPoly):
                assert set(got.terms) <= {((), 0)}
                got = got.terms.get(((), 0), 0)
            want = eps[i - 1] if i == j else 0
            assert Fraction(got) == Fraction(want)


def test_first_coefficient_golden():
    tb = table_for(D11)
    B = build_B(D11, "yangian", 1, {"u": (-3, 0)})
    assert tb.normal_form(b_coefficient(D11, 1, B, 1, 1, 1)) == parse_poly(
        "2*t[1,1,1]")
    assert tb.normal_form(b_coefficient(D11, 1, B, 1, 1, 2)) == parse_poly(
        "2*t[1,1,1]*t[1,1,1]")
    assert tb.normal_form(b_coefficient(D11, 1, B, 1, 2, 2)) == parse_poly(
        "2*t[1,1,1]*t[1,2,1] - 2*t[1,2,2]")


def test_cross_block_first_coefficient_vanishes():
    # unitarity at order u^-1 forces (eps_j - eps_i) b_ij^{(1)} = 0, so the
    # cross-block coefficients with label 1 vanish identically
    tb = table_for(D11)
    B = build_B(D11, "yangian", 1, {"u": (-3, 0)})
    assert not tb.normal_form(b_coefficient(D11, 1, B, 1, 2, 1))
    assert not tb.normal_form(b_coefficient(D11, 1, B, 2, 1, 1))


def test_parity_homogeneous():
    assert parity_homogeneous_check(D11, 1, 3, floor=-4)
    assert parity_homogeneous_check(D21, 1, 2, floor=-3)


# -- unitarity ---------------------------------------------------------------


def test_unitarity():
    for (dim, ell) in ((D11, 1), (D21, 1), (D21, 2), (D20, 1)):
        tb = table_for(dim)
        assert check_unitarity(dim, "yangian", ell, 3, floor=-4, table=tb)
        assert check_unitarity(dim, "dual", ell, 3, floor=-4, table=tb)


def test_unitarity_constant_level_consequence():
    # comparing B+(u) B+(-u) = 1 at u^0 gives a closed quadratic identity
    # for the first dual coefficients
    for (dim, ell) in ((D11, 1), (D21, 1), (D21, 2)):
        tb = table_for(dim)
        floor = -4
        B = build_B(dim, "dual", ell, {"u": (0, 1)}, floor=floor)
        eps = epsilons(dim, ell)
        for i in dim.indices():
            for j in dim.indices():
                lhs = NCPoly.scalar(eps[i - 1] + eps[j - 1]) * b_coefficient(
                    dim, ell, B, i, j, -1)
                rhs = NCPoly.zero()
                for a in dim.indices():
                    rhs = rhs + b_coefficient(dim, ell, B, i, a, -1) * \
                        b_coefficient(dim, ell, B, a, j, -1)
                assert not tb.normal_form(lhs - rhs, floor=floor), (i, j)


# -- the three reflection equations ------------------------------------------


def test_reflection_equations_small():
    tb = table_for(D11)
    for which in ("yy", "dual", "mixed"):
        assert check_reflection(D11, which, 1, 3, floor=-4, table=tb), which


def test_reflection_yangian_even_case():
    assert check_reflection(D20, "yy", 1, 3, floor=-4, table=table_for(D20))


def test_reflection_rejects_unknown_kind():
    with pytest.raises(ValueError):
        check_reflection(D11, "twist", 1, 2, floor=-3)


# -- the degree structure ----------------------------------------------------


def test_leading_terms():
    for (dim, ell) in ((D11, 1), (D21, 1), (D21, 2), (D20, 1)):
        assert leading_term_check(dim, ell, 3, floor=-4, table=table_for(dim))


def test_gamma_structure_rows():
    rep = gamma_structure(D11, 1, cap=3, floor=-4, table=table_for(D11))
    assert rep["all_ok"]
    by_key = {(r["i"], r["j"], r["label"]): r for r in rep["rows"]}
    row = by_key[(1, 1, 1)]
    assert row["member"] and row["deg2"] == 0
    row = by_key[(1, 2, -1)]
    assert row["member"] and row["deg2"] == -1
    row = by_key[(1, 1, 2)]
    assert not row["member"] and (row["deg2"] is None or row["deg2"] < 1)


def test_gamma_structure_wider():
    for ell in (1, 2):
        rep = gamma_structure(D21, ell, cap=3, floor=-4, table=table_for(D21))
        assert rep["all_ok"], [r for r in rep["rows"] if not r["ok"]]


def test_generation_recursions():
    for (dim, ell) in ((D11, 1), (D21, 1), (D21, 2)):
        rep = generation_recursions(dim, ell, floor=-4, table=table_for(dim))
        assert rep["ok"], rep


# -- the coideal property ----------------------------------------------------


def test_coideal_dual_side():
    assert coideal_check(D11, 1, 3, floor=-4, side="dual")


def test_coideal_yangian_side_exact():
    assert coideal_check(D11, 1, 3, floor=None, side="yangian")
    assert coideal_check(D21, 1, 2, floor=None, side="yangian")
