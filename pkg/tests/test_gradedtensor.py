from fractions import Fraction

import pytest

from superyangian.gradedtensor import (
    SuperDim,
    GradedTensor,
    matrix_unit,
    identity_tensor,
    permutation_P,
    transpose_tau,
    embed,
    graded_mul,
)

ALL_DIMS_4 = [
    SuperDim(m, n) for m in range(0, 5) for n in range(0, 5) if 1 <= m + n <= 4
]


def test_parities():
    d = SuperDim(1, 1)
    assert d.parity(1) == 0 and d.parity(2) == 1
    e12 = matrix_unit(d, 1, 2)
    assert e12.unit_parity((1, 2)) == 1
    assert e12.unit_parity((2, 2)) == 0


def test_matrix_units_multiply():
    d = SuperDim(2, 1)
    e12, e23, e13 = matrix_unit(d, 1, 2), matrix_unit(d, 2, 3), matrix_unit(d, 1, 3)
    assert e12 * e23 == e13
    assert (e23 * e12).is_zero()


def test_permutation_squares_to_one():
    for d in ALL_DIMS_4:
        P = permutation_P(d)
        assert P * P == identity_tensor(d, 2), d


def test_permutation_example_gl11():
    d = SuperDim(1, 1)
    P = permutation_P(d)
    assert P[((1, 2), (2, 1))] == Fraction(-1)
    assert P[((2, 1), (1, 2))] == Fraction(1)
    assert P[((1, 1), (1, 1))] == Fraction(1)
    assert P[((2, 2), (2, 2))] == Fraction(-1)


def test_tau_is_an_antiautomorphism_with_tau2_not_identity():
    d = SuperDim(1, 1)
    e12 = matrix_unit(d, 1, 2)
    # tau(e_12) = (-1)^{|1||2| + |1|} e_21 = e_21
    assert transpose_tau(e12, 0) == matrix_unit(d, 2, 1)
    # tau^2(e_12) = -e_12
    assert transpose_tau(transpose_tau(e12, 0), 0) == -e12


def test_tau_reverses_products():
    # tau(xy) = (-1)^{|x||y|} tau(y) tau(x) on matrix units
    for d in [SuperDim(1, 1), SuperDim(2, 1)]:
        N = d.total
        for i in d.indices():
            for j in d.indices():
                for k in d.indices():
                    for l in d.indices():
                        x, y = matrix_unit(d, i, j), matrix_unit(d, k, l)
                        px = (d.parity(i) + d.parity(j)) % 2
                        py = (d.parity(k) + d.parity(l)) % 2
                        lhs = transpose_tau(x * y, 0)
                        rhs = transpose_tau(y, 0) * transpose_tau(x, 0)
                        if px * py:
                            rhs = -rhs
                        assert lhs == rhs, (d, i, j, k, l)


def test_partial_transpose_of_P():
    # P^{tau_2} = sum_{ij} (-1)^{|i||j|} e_ij (x) e_ij
    for d in [SuperDim(1, 1), SuperDim(2, 1), SuperDim(2, 2)]:
        Q = transpose_tau(permutation_P(d), 1)
        for i in d.indices():
            for j in d.indices():
                expect = Fraction(-1 if d.parity(i) * d.parity(j) else 1)
                assert Q[((i, j), (i, j))] == expect


def test_partial_transpose_squares_to_multiple():
    # (P^{tau_2})^2 = (m - n) P^{tau_2}
    for d in ALL_DIMS_4:
        Q = transpose_tau(permutation_P(d), 1)
        assert Q * Q == Q.scale(Fraction(d.m - d.n)), d


def test_graded_mul_associative_random():
    import random

    rng = random.Random(7)
    d = SuperDim(2, 1)
    def rand_tensor():
        t = GradedTensor(d, 2)
        for _ in range(4):
            idx = tuple(
                (rng.randint(1, 3), rng.randint(1, 3)) for _ in range(2)
            )
            t = t + GradedTensor(d, 2, {idx: Fraction(rng.randint(-3, 3))})
        return t

    for _ in range(25):
        A, B, C = rand_tensor(), rand_tensor(), rand_tensor()
        assert (A * B) * C == A * (B * C)


def test_even_case_matches_plain_kronecker():
    # n = 0: no signs anywhere; compare against naive matrix algebra
    d = SuperDim(3, 0)
    import random

    rng = random.Random(11)

    def rand_pair():
        ent = {}
        for _ in range(5):
            idx = ((rng.randint(1, 3), rng.randint(1, 3)),
                   (rng.randint(1, 3), rng.randint(1, 3)))
            ent[idx] = Fraction(rng.randint(-4, 4))
        return GradedTensor(d, 2, ent)

    def naive_mul(A, B):
        out = {}
        for I, x in A.entries.items():
            for J, y in B.entries.items():
                if I[0][1] == J[0][0] and I[1][1] == J[1][0]:
                    key = ((I[0][0], J[0][1]), (I[1][0], J[1][1]))
                    out[key] = out.get(key, 0) + x * y
        return GradedTensor(d, 2, {k: v for k, v in out.items() if v})

    for _ in range(20):
        A, B = rand_pair(), rand_pair()
        assert A * B == naive_mul(A, B)


def test_embed_is_multiplicative():
    d = SuperDim(1, 1)
    P = permutation_P(d)
    I3 = identity_tensor(d, 3)
    for pos in [(0, 1), (0, 2), (1, 2)]:
        E = embed(P, 3, pos)
        assert E * E == I3, pos


def test_sign_flip_negative_control():
    # dropping the (-1)^{|j|} from P breaks P^2 = 1 as soon as n > 0
    d = SuperDim(1, 1)
    wrongP = GradedTensor(
        d, 2, {((i, j), (j, i)): Fraction(1) for i in d.indices() for j in d.indices()}
    )
    assert wrongP * wrongP != identity_tensor(d, 2)


def test_graded_mul_alias():
    d = SuperDim(1, 1)
    P = permutation_P(d)
    assert graded_mul(P, P) == P * P
