"""Triangular matrix layer: substitution/derivation matrices, exp/log,
and the multiplier/derivative block decomposition of the substitution
operator.

Matrix convention throughout: entry [i][j] is the coefficient of x^i in
the image of x^j, so matrices are lower triangular and the product A @ B
acts as "B after A" on columns.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from prodiff import (
    FormalDiffeo,
    FormalVectorField,
    PreconditionError,
    TriangularOperator,
    compose,
    exp_strict,
    field_matrix,
    field_matrix_padded,
    h_multiplier,
    log_unitriangular,
    monomial_selector,
    substitution_matrix,
    taylor_decomposition,
    weighted_derivative,
)
from prodiff.verify import (
    random_diffeo,
    random_field,
    random_strict_operator,
    random_unitriangular,
)


def test_substitution_matrix_golden():
    # gamma = x + x^2 on degrees 0..3: columns are powers of gamma
    g = FormalDiffeo.from_coefficients(3, {2: 1})
    m = substitution_matrix(g, 3)
    assert m.entries == (
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 1, 1, 0),
        (0, 0, 2, 1),
    )
    assert m.is_unitriangular()


def test_substitution_antihomomorphism_for_matrix_order(rng):
    # S(g1) @ S(g2) = S(compose(g1, g2)): matrix order matches textual order
    for _ in range(25):
        g1, g2 = random_diffeo(rng, 7), random_diffeo(rng, 7)
        lhs = substitution_matrix(g1, 7) @ substitution_matrix(g2, 7)
        assert lhs == substitution_matrix(compose(g1, g2), 7)


def test_field_matrix_golden():
    # L_1 = x^2 d/dx maps x^m to m x^(m+1)
    v = FormalVectorField.basis(1, 3)
    m = field_matrix(v, 3)
    assert m.entries == (
        (0, 0, 0, 0),
        (0, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 2, 0),
    )
    assert m.strict


def test_field_matrix_requires_enough_order():
    v = FormalVectorField.basis(1, 2)
    with pytest.raises(PreconditionError):
        field_matrix(v, 5)
    padded = field_matrix_padded(v, 5)
    assert padded.dim == 6
    assert padded.entry(2, 1) == 1
    assert padded.entry(5, 4) == 4


def test_apply_matches_substitution():
    g = FormalDiffeo.from_coefficients(4, {2: 1, 3: -2})
    m = substitution_matrix(g, 4)
    # column j is gamma^j; applying to e_1 recovers gamma itself
    e1 = (Fraction(0), Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    image = m.apply(e1)
    assert image == (0, 1, 1, -2, 0)


def test_exp_log_are_mutually_inverse(rng):
    for _ in range(25):
        s = random_strict_operator(rng, 6)
        assert log_unitriangular(exp_strict(s)) == s
        a = random_unitriangular(rng, 6)
        assert exp_strict(log_unitriangular(a)) == a


def test_exp_strict_rejects_nonstrict():
    with pytest.raises(PreconditionError):
        exp_strict(TriangularOperator.identity(3))


def test_log_rejects_nonunit_diagonal():
    rows = ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(1)))
    with pytest.raises(PreconditionError):
        log_unitriangular(TriangularOperator(rows))


def test_matmul_tracks_strictness():
    s = TriangularOperator.zero(3)
    assert s.strict
    u = TriangularOperator.identity(3)
    assert not u.strict
    assert (s @ u).strict
    assert (u @ s).strict
    assert not (u @ u).strict
    # equality ignores the strict marker: zero is zero
    assert TriangularOperator.zero(3) == u.scale(Fraction(0))


def test_h_multiplier_golden():
    # h = a2 + a3 x + ...; multiplication hits degrees >= 2 only
    g = FormalDiffeo.from_tail([1, -2, 3])
    m = h_multiplier(g, 4)
    assert m.entry(2, 2) == 1
    assert m.entry(3, 2) == -2
    assert m.entry(4, 2) == 3
    assert m.entry(3, 3) == 1
    assert m.entry(4, 3) == -2
    assert m.column(0) == (0, 0, 0, 0, 0)
    assert m.column(1) == (0, 0, 0, 0, 0)


def test_weighted_derivative_golden():
    # x^4 D^2 maps x^k to k(k-1) x^(k+2)
    q2 = weighted_derivative(2, 7)
    assert q2.entry(4, 2) == 2
    assert q2.entry(5, 3) == 6
    assert q2.entry(6, 4) == 12
    assert q2.entry(2, 0) == 0
    assert weighted_derivative(0, 4) == TriangularOperator.identity(4)


def test_selector_is_the_rank_one_part():
    # the selector keeps only the [2n][n] entry n! of the weighted derivative
    q2 = monomial_selector(2, 7)
    assert q2.entry(4, 2) == 2
    assert sum(1 for i in range(7) for j in range(7) if q2.entry(i, j) != 0) == 1
    # below the diagonal block there is nothing to select
    assert monomial_selector(3, 5).is_zero()


def test_taylor_blocks_reassemble(rng):
    for n in (2, 3, 5, 8, 12):
        for _ in range(4):
            g = random_diffeo(rng, n)
            decomposition = taylor_decomposition(g, n)
            # the constructor certifies reassembly; spot-check the blocks
            assert decomposition.multiplier == h_multiplier(g, n)
            assert len(decomposition.blocks) == n // 2 + 1


def test_taylor_identity_case():
    ident = FormalDiffeo.identity(6)
    decomposition = taylor_decomposition(ident, 6)
    assert decomposition.multiplier.is_zero()


def test_triangular_validation():
    with pytest.raises(PreconditionError):
        TriangularOperator(((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1))))
    with pytest.raises(PreconditionError):
        TriangularOperator(((Fraction(1),), (Fraction(0), Fraction(1))))
    with pytest.raises(PreconditionError):
        TriangularOperator(((Fraction(1),),), strict=True)
