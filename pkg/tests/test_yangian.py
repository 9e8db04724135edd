"""Matrix-level double Yangian operations.

Covers series inversion of the generator matrices, the Hopf structure
(coproduct, counit, antipode), the quantum contraction with its central
coefficients and graded images, the pairing between the two halves with its
degree law and Gram ranks, vacuum-module invariance, and the exchange-action
consistency check.  Golden values are hand-expanded: the inverse entries come
from the geometric series for (1 + N)^-1, the contraction coefficients from
multiplying out two 2x2 generator matrices, and the first-order pairing table
from the residue of the rational R-matrix.
"""

import itertools
from fractions import Fraction

import pytest

from superyangian import Gen, NCPoly, SuperDim, parse_poly
from superyangian.freealg import TensorPoly, word_deg2
from superyangian.gradedtensor import identity_tensor
from superyangian.relations import BracketTable
from superyangian.series import Laurent
from superyangian.yangian import (antipode_matrix, build_T, centrality_check,
                                  contraction_commutation_check, coproduct,
                                  coproduct_leg, counit, counit_tensor,
                                  dual_action_check, graded_monomials,
                                  graded_pairing_rank, hopf, invariant_scan,
                                  invert, leading_graded_image_check, pairing,
                                  quantum_contraction, tensor_floor,
                                  vacuum_invariant_check, z_coefficients)

D10 = SuperDim(1, 0)
D11 = SuperDim(1, 1)
D21 = SuperDim(2, 1)


def all_pairs(dim):
    n = dim.m + dim.n
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def drop_generators(series):
    """Substitute zero for every generator, keeping the scalar parts."""
    return series.map_coeffs(
        lambda c: c.scalar_part() if isinstance(c, NCPoly) else c)


# -- inversion of the generator matrices ------------------------------------


def test_invert_golden_one_mode():
    T = build_T(D10, "yangian", {"u": (-2, 0)})
    Ti = invert(D10, T, "yangian")
    ent = Ti.entries[((1, 1),)]
    assert ent.coeff(u=0) == 1
    assert ent.coeff(u=-1) == parse_poly("-t[1,1,1]")
    assert ent.coeff(u=-2) == parse_poly("t[1,1,1]*t[1,1,1] - t[1,1,2]")


def test_invert_round_trip_yangian():
    win = {"u": (-3, 0)}
    T = build_T(D11, "yangian", win)
    Ti = invert(D11, T, "yangian")
    I = identity_tensor(D11, 1, one=Laurent.const(1, win))
    assert T * Ti == I
    assert Ti * T == I
    assert invert(D11, Ti, "yangian") == T


def test_invert_dual_requires_floor():
    T = build_T(D11, "dual", {"u": (0, 2)})
    with pytest.raises(ValueError):
        invert(D11, T, "dual")


def test_invert_dual_round_trip_modulo_floor():
    win = {"u": (0, 2)}
    T = build_T(D11, "dual", win)
    Ti = invert(D11, T, "dual", floor=-3)
    I = identity_tensor(D11, 1, one=Laurent.const(1, win))
    assert not tensor_floor(T * Ti - I, -3)
    assert not tensor_floor(invert(D11, Ti, "dual", floor=-3) - T, -3)


def test_invert_dual_constant_term_words():
    # the u^0 entry of the inverse collects 1 plus words in the label -1
    # letters only, of length at most 2 before the floor cuts in
    T = build_T(D11, "dual", {"u": (0, 2)})
    Ti = invert(D11, T, "dual", floor=-3)
    c0 = Ti.entries[((1, 1),)].coeff(u=0)
    assert c0.scalar_part() == 1
    for word, cpow in c0.terms:
        assert cpow == 0
        assert all(g.label == -1 for g in word)
        assert len(word) <= 2


# -- Hopf operations ---------------------------------------------------------


def test_counit_of_generator_matrices():
    for side, win in (("yangian", {"u": (-2, 0)}), ("dual", {"u": (0, 2)})):
        T = build_T(D21, side, win)
        I = identity_tensor(D21, 1, one=Laurent.const(1, win))
        assert counit_tensor(T) == I


def test_counit_values():
    assert counit(NCPoly.scalar(Fraction(3, 2))) == Fraction(3, 2)
    assert counit(NCPoly.gen(1, 1, 1)) == 0
    assert counit(NCPoly.gen(-2, 1, 2)) == 0
    assert counit(NCPoly.c_power(1)) == 0


def test_coproduct_first_generator_is_primitive():
    g = Gen(1, 1, 1)
    want = TensorPoly(D10, 2, {
        (((g,), ()), (0, 0)): Fraction(1),
        (((), (g,)), (0, 0)): Fraction(1),
    })
    assert coproduct(D10, NCPoly.gen(1, 1, 1)) == want


def test_coproduct_second_generator_level_zero():
    got = coproduct(D11, NCPoly.gen(2, 1, 1))
    g = Gen(2, 1, 1)
    terms = {
        (((g,), ()), (0, 0)): Fraction(1),
        (((), (g,)), (0, 0)): Fraction(1),
    }
    for k in (1, 2):
        terms[(((Gen(1, 1, k),), (Gen(1, k, 1),)), (0, 0))] = Fraction(1)
    assert got == TensorPoly(D11, 2, terms)


def test_coproduct_central_element():
    want = TensorPoly(D11, 2, {
        (((), ()), (1, 0)): Fraction(1),
        (((), ()), (0, 1)): Fraction(1),
    })
    assert coproduct(D11, NCPoly.c_power(1), level="central") == want
    square = coproduct(D11, NCPoly.c_power(2), level="central")
    assert square == TensorPoly(D11, 2, {
        (((), ()), (2, 0)): Fraction(1),
        (((), ()), (1, 1)): Fraction(2),
        (((), ()), (0, 2)): Fraction(1),
    })


def test_coproduct_central_dual_needs_floor():
    with pytest.raises(ValueError):
        coproduct(D21, NCPoly.gen(-1, 1, 1), level="central")


ZERO_SAMPLES = [
    NCPoly.gen(1, 1, 2),
    NCPoly.gen(3, 2, 2),
    NCPoly.from_word((Gen(1, 2, 1), Gen(2, 1, 2))),
    NCPoly.gen(-2, 2, 1),
    NCPoly.from_word((Gen(-1, 1, 2), Gen(1, 2, 1))),
    NCPoly.from_word((Gen(-1, 2, 2), Gen(-2, 1, 1))),
]

CENTRAL_SAMPLES = [
    NCPoly.c_power(2),
    NCPoly.from_word((Gen(1, 1, 2),), cpow=1),
    NCPoly.gen(-1, 2, 3),
    NCPoly.from_word((Gen(-1, 1, 3), Gen(1, 3, 1))),
]


def strip_leg(tp, leg):
    """Apply the counit to one leg of a two-leg tensor element."""
    out = NCPoly.zero()
    for (words, cpows), co in tp.terms.items():
        if not words[leg] and cpows[leg] == 0:
            other = 1 - leg
            out = out + NCPoly.from_word(words[other], cpow=cpows[other],
                                         coeff=co)
    return out


def test_counit_axiom_level_zero():
    for x in ZERO_SAMPLES:
        cop = coproduct(D11, x)
        assert strip_leg(cop, 0) == x
        assert strip_leg(cop, 1) == x


def test_counit_axiom_central_level():
    for x in CENTRAL_SAMPLES:
        cop = coproduct(D21, x, level="central", floor=-4)
        assert strip_leg(cop, 0) == x
        assert strip_leg(cop, 1) == x


def test_coassociativity_level_zero():
    for x in ZERO_SAMPLES:
        cop = coproduct(D11, x)
        left = coproduct_leg(D11, cop, 0)
        right = coproduct_leg(D11, cop, 1)
        assert left == right


def test_coassociativity_central_level():
    for x in CENTRAL_SAMPLES:
        cop = coproduct(D21, x, level="central", floor=-4)
        left = coproduct_leg(D21, cop, 0, level="central", floor=-4)
        right = coproduct_leg(D21, cop, 1, level="central", floor=-4)
        assert left == right


def test_hopf_dispatcher():
    x = NCPoly.gen(1, 1, 2)
    assert hopf(D11, "coproduct", x=x) == coproduct(D11, x)
    assert hopf(D11, "counit", x=x) == counit(x)
    win = {"u": (-2, 0)}
    T = build_T(D11, "yangian", win)
    S = hopf(D11, "antipode", side="yangian", window=win)
    assert S == antipode_matrix(D11, "yangian", win)
    assert T * S == identity_tensor(D11, 1, one=Laurent.const(1, win))
    with pytest.raises(ValueError):
        hopf(D11, "twist", x=x)


# -- quantum contraction -----------------------------------------------------


def test_contraction_scalar_factorization():
    # the assertion inside quantum_contraction is the factorization check:
    # the product pattern collapses onto the partial transpose with a single
    # scalar series
    for dim in (D11, D21):
        for order in (1, 2, 3, 4):
            z = quantum_contraction(dim, "yangian", order)
            assert z.coeff(u=0) == 1
            zp = quantum_contraction(dim, "dual", order, floor=-6)
            assert drop_generators(zp).coeff(u=0) == 1


def test_contraction_zero_substitution():
    z = quantum_contraction(D11, "yangian", 3)
    assert drop_generators(z) == Laurent.const(1, {"u": (-3, 0)})
    zp = quantum_contraction(D21, "dual", 3, floor=-5)
    assert drop_generators(zp).coeff(u=0) == 1
    for p in range(1, 3):
        assert drop_generators(zp).coeff(u=p) == 0


def test_z_coefficients_golden():
    zc = z_coefficients(D11, "dual", 2, floor=-4)
    assert str(zc[1]) == ("-t[2,2,-2]*t[2,2,-1] + t[1,2,-1]*t[2,1,-2]"
                          " + t[1,2,-2]*t[2,1,-1] + t[1,1,-2]*t[1,1,-1]"
                          " - t[2,2,-2] - t[2,2,-3] + t[1,1,-2] + t[1,1,-3]")
    assert str(zc[2]) == "-2*t[2,2,-3] + 2*t[1,1,-3]"
    zc21 = z_coefficients(D21, "dual", 2, floor=-4)
    assert str(zc21[2]) == "-2*t[3,3,-3] + 2*t[2,2,-3] + 2*t[1,1,-3]"
    zy = z_coefficients(D11, "yangian", 2)
    assert not zy[1]
    assert str(zy[2]) == "t[2,2,1] - t[1,1,1]"


def test_z_degree_bound():
    zc = z_coefficients(D21, "dual", 3, floor=-5)
    for r, p in zc.items():
        assert p.max_deg2() <= -r - 1


def test_leading_graded_image():
    for dim in (D11, D21):
        for r in (1, 2):
            assert leading_graded_image_check(dim, r)


def test_contraction_commutation():
    assert contraction_commutation_check(D11, 3, -5)
    assert contraction_commutation_check(D21, 2, -4)


def test_centrality_spec_probes():
    zc = z_coefficients(D11, "dual", 1, floor=-5)
    assert centrality_check(D11, zc[1], Gen(1, 1, 1), -5)
    assert centrality_check(D11, zc[1], Gen(-1, 1, 2), -5)
    # sanity: a non-central element fails the same bracket test
    table = BracketTable(D11)
    com = parse_poly("t[1,1,1]*t[1,2,1] - t[1,2,1]*t[1,1,1]")
    assert table.normal_form(com)
    assert not centrality_check(D11, NCPoly.gen(1, 1, 1), Gen(1, 2, 1), -5)


def test_centrality_sweep_small():
    zc = z_coefficients(D11, "dual", 2, floor=-6)
    zy = z_coefficients(D11, "yangian", 3)
    table = BracketTable(D11)
    for p in (zc[1], zc[2], zy[2], zy[3]):
        for s in (1, 2):
            for i, j in all_pairs(D11):
                for lab in (s, -s):
                    assert centrality_check(D11, p, Gen(lab, i, j), -6, table)


def test_centrality_sweep_central_level():
    zc = z_coefficients(D21, "dual", 1, floor=-5)
    zy = z_coefficients(D21, "yangian", 2)
    table = BracketTable(D21, level="central")
    for p in (zc[1], zy[2]):
        for s in (1, 2):
            for i, j in all_pairs(D21):
                for lab in (s, -s):
                    assert centrality_check(D21, p, Gen(lab, i, j), -5, table)


# -- the pairing -------------------------------------------------------------


def test_pairing_unit():
    assert pairing(D11, (), ()) == 1
    assert pairing(D11, (), (Gen(-1, 1, 1),)) == 0
    assert pairing(D11, (Gen(1, 1, 1),), ()) == 0


def test_pairing_first_order_table():
    for dim in (D11, D21):
        for i, j in all_pairs(dim):
            for k, l in all_pairs(dim):
                got = pairing(dim, (Gen(1, i, j),), (Gen(-1, k, l),))
                if k == j and l == i:
                    want = -1 if dim.parity(j) else 1
                else:
                    want = 0
                assert got == want, (i, j, k, l, got)


def test_pairing_degree_law_exhaustive():
    idx = all_pairs(D11)
    ylets = [Gen(s, i, j) for s in (1, 2) for (i, j) in idx]
    dlets = [Gen(-r, i, j) for r in (1, 2) for (i, j) in idx]
    nonzero = 0
    for k in range(0, 4):
        for l in range(0, 4 - k):
            for yw in itertools.product(ylets, repeat=k):
                raises = sum(g.label for g in yw)
                for dw in itertools.product(dlets, repeat=l):
                    lowers = sum(-g.label for g in dw)
                    value = pairing(D11, yw, dw)
                    if value:
                        nonzero += 1
                        assert raises >= lowers, (yw, dw, value)
    assert nonzero > 20


def test_graded_pairing_rank():
    report = graded_pairing_rank(D11, 0)
    assert report["rank"] == 1 and report["full"]
    report = graded_pairing_rank(D11, 1)
    assert report["rows"] == 4 and report["rank"] == 4 and report["full"]
    report = graded_pairing_rank(D21, 1)
    assert report["rows"] == 9 and report["rank"] == 9 and report["full"]


def test_graded_monomials_degree_one():
    mons = graded_monomials(D11, 1, "yangian")
    assert sorted(mons) == sorted((Gen(1, i, j),) for i, j in all_pairs(D11))
    duals = graded_monomials(D11, 1, "dual")
    assert sorted(duals) == sorted((Gen(-1, i, j),) for i, j in all_pairs(D11))


# -- vacuum invariance -------------------------------------------------------


def test_vacuum_invariant_level_zero():
    assert vacuum_invariant_check(D11, 1, 0, -5)


def test_vacuum_invariant_level_one():
    # a nonzero level needs m != n for the bracket table to close
    with pytest.raises(ValueError):
        vacuum_invariant_check(D11, 1, 1, -5)
    assert vacuum_invariant_check(D21, 1, 1, -5)


def test_vacuum_invariant_negative_control():
    assert not invariant_scan(D11, NCPoly.gen(-1, 1, 1), 0, -5)


# -- exchange action ---------------------------------------------------------


def test_dual_action_no_points():
    assert dual_action_check(D21, 0, order=2)


def test_dual_action_one_point():
    assert dual_action_check(D21, 1, c=0, order=4)


def test_dual_action_one_point_nonzero_level():
    assert dual_action_check(D21, 1, c=1, order=2)


def test_dual_action_unnormalized_fails():
    assert not dual_action_check(D21, 1, c=0, order=3, normalized=False)


def test_dual_action_equal_parity_sizes_rejected():
    with pytest.raises(ValueError):
        dual_action_check(D11, 1, c=0, order=2)
