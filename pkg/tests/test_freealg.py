"""Free algebra over two letters, PBW straightening, and quotient norms.

The quotient norm tests avoid trusting the implementation's own degree
split: additivity is re-verified through a joint linear program over both
degree blocks, and every LP optimum must reproject onto its element.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from prodiff import (
    EnvelopingElement,
    FormalVectorField,
    NCPolynomial,
    PreconditionError,
    basis_quotient_upper,
    element_matrix,
    field_quotient_upper,
    free_norm,
    l1_minimize,
    operator_norm_trunc,
    pbw_basis,
    pbw_straighten,
    project,
    project_word,
    quotient_lower_bound,
    quotient_norm,
    quotient_norm_result,
    quotient_norm_scaled,
    words_of_degree,
)
from prodiff.freealg import _word_images_matrix
from prodiff.verify import (
    random_homogeneous_element,
    random_ncpoly,
    random_product_tuple,
    random_word,
)

HALF = Fraction(1, 2)
ONE = Fraction(1)
TWO = Fraction(2)


def test_words_counted_by_fibonacci():
    # compositions of n into parts 1 and 2
    counts = [len(words_of_degree(n)) for n in range(1, 9)]
    assert counts == [1, 2, 3, 5, 8, 13, 21, 34]


def test_pbw_basis_weakly_increasing():
    basis = pbw_basis(4)
    assert all(list(mono) == sorted(mono) for mono in basis)
    assert all(sum(mono) == 4 for mono in basis)
    # partitions of 4: 4, 1+3, 2+2, 1+1+2, 1+1+1+1
    assert len(basis) == 5


def test_straighten_golden():
    # L2 L1 = L1 L2 - [L1, L2] = L1 L2 - L3
    u = pbw_straighten({(2, 1): ONE})
    assert u.components[3] == {(1, 2): ONE, (3,): Fraction(-1)}


def test_straighten_already_ordered():
    u = pbw_straighten({(1, 2): ONE})
    assert u.components[3] == {(1, 2): ONE}


def test_straighten_strategies_agree(rng):
    for _ in range(120):
        products = {
            random_product_tuple(rng, max_len=5, max_degree=12):
                Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for _ in range(rng.randint(1, 3))
        }
        assert pbw_straighten(products, "leftmost") == pbw_straighten(products, "rightmost")


def test_straighten_respects_multiplication(rng):
    for _ in range(40):
        s1 = random_product_tuple(rng, max_len=3, max_degree=6)
        s2 = random_product_tuple(rng, max_len=3, max_degree=6)
        lhs = pbw_straighten({s1 + s2: ONE})
        rhs = pbw_straighten({s1: ONE}) * pbw_straighten({s2: ONE})
        assert lhs == rhs


def test_projection_is_a_homomorphism(rng):
    for _ in range(40):
        w1, w2 = random_word(rng, 6), random_word(rng, 6)
        p1, p2 = NCPolynomial.from_word(w1), NCPolynomial.from_word(w2)
        assert project(p1 * p2) == project(p1) * project(p2)


def test_free_norm_golden():
    p = NCPolynomial({(1, 2): Fraction(3), (2,): Fraction(-1, 2)})
    # 3 t1 t2 + (1/2) t2
    assert free_norm(p, TWO, HALF).value == 3 * 2 * HALF + HALF * HALF


def test_free_norm_submultiplicative(rng):
    for _ in range(40):
        p, q = random_ncpoly(rng), random_ncpoly(rng)
        t1 = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        t2 = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        lhs = free_norm(p * q, t1, t2).value
        assert lhs <= free_norm(p, t1, t2).value * free_norm(q, t1, t2).value


def test_free_norm_monotone(rng):
    for _ in range(40):
        p = random_ncpoly(rng)
        assert free_norm(p, HALF, HALF).value <= free_norm(p, ONE, TWO).value


def test_quotient_goldens():
    assert quotient_norm(EnvelopingElement.basis_field(1)).value == 1
    assert quotient_norm(EnvelopingElement.basis_field(2)).value == 1
    assert quotient_norm(EnvelopingElement.basis_field(3)).value == 2


def test_quotient_l3_certificate():
    result = quotient_norm_result(EnvelopingElement.basis_field(3))
    assert result.value == 2
    ((degree, chosen),) = result.certificate
    assert degree == 3
    assert dict(chosen) == {(1, 2): ONE, (2, 1): Fraction(-1)}


def test_quotient_unit_and_zero():
    assert quotient_norm(EnvelopingElement.zero()).value == 0
    assert quotient_norm(EnvelopingElement.unit(Fraction(-5))).value == 5


def test_quotient_basis_bound():
    for n in range(1, 9):
        value = quotient_norm(EnvelopingElement.basis_field(n)).value
        assert value <= basis_quotient_upper(n, ONE)


def test_quotient_upper_bound_matches_lp_for_low_degrees():
    # the bracket-recursion preimage is optimal through degree 8
    for n in range(3, 9):
        value = quotient_norm(EnvelopingElement.basis_field(n)).value
        assert value == Fraction(2) ** (n - 2) / factorial(n - 2)


def test_certificates_reproject(rng):
    for _ in range(15):
        u = random_homogeneous_element(rng, rng.randint(1, 5))
        result = quotient_norm_result(u)
        rebuilt = EnvelopingElement.zero()
        mass = Fraction(0)
        for _, chosen in result.certificate:
            for word, coeff in chosen:
                mass += abs(coeff)
                rebuilt = rebuilt + project_word(word).scale(coeff)
        assert mass == result.value
        assert rebuilt == u


def test_quotient_homogeneity(rng):
    for _ in range(12):
        degree = rng.randint(1, 5)
        u = random_homogeneous_element(rng, degree)
        for t in (HALF, TWO, Fraction(3, 2)):
            assert (quotient_norm_scaled(u, t).value
                    == t ** degree * quotient_norm(u).value)


def test_quotient_additivity_joint_program(rng):
    """Additivity over degrees, certified by one LP spanning both blocks."""
    for _ in range(15):
        d1 = rng.randint(1, 5)
        d2 = (d1 + rng.randint(1, 4) - 1) % 5 + 1
        if d1 == d2:
            d2 = d1 % 5 + 1
        u1 = random_homogeneous_element(rng, d1)
        u2 = random_homogeneous_element(rng, d2)
        split = quotient_norm(u1).value + quotient_norm(u2).value
        assert quotient_norm(u1 + u2).value == split
        m1, m2 = _word_images_matrix(d1), _word_images_matrix(d2)
        n1, n2 = len(words_of_degree(d1)), len(words_of_degree(d2))
        rows = [list(r) + [Fraction(0)] * n2 for r in m1]
        rows += [[Fraction(0)] * n1 + list(r) for r in m2]
        rhs = [u1.components[d1].get(mono, Fraction(0)) for mono in pbw_basis(d1)]
        rhs += [u2.components[d2].get(mono, Fraction(0)) for mono in pbw_basis(d2)]
        joint, _ = l1_minimize(rows, rhs)
        assert joint == split


def test_scaled_quotient_needs_positive_t():
    with pytest.raises(PreconditionError):
        quotient_norm_scaled(EnvelopingElement.basis_field(1), Fraction(0))


def test_field_quotient_upper_variants():
    v = FormalVectorField.from_coefficients(3, {1: 1, 3: 1})
    bound = field_quotient_upper(v, TWO)
    # certified: t|p1| + 2 t^3; as displayed: |p1| + 2 t^3
    assert bound.certified.value == 2 + 2 * 8
    assert bound.as_displayed == 1 + 2 * 8
    exact = quotient_norm_scaled(EnvelopingElement.from_field(v), TWO).value
    assert exact <= bound.certified.value
    # and at t = 2 the as-displayed variant is weaker than the certified one
    assert bound.as_displayed < bound.certified.value


def test_element_matrix_monomial_order():
    # (1, 2) acts as L1 after L2 on columns: matches the derivation product
    from prodiff import field_matrix_padded

    u = pbw_straighten({(1, 2): ONE})
    dim = 8
    m1 = field_matrix_padded(FormalVectorField.basis(1, 1), dim - 1)
    m2 = field_matrix_padded(FormalVectorField.basis(2, 2), dim - 1)
    assert element_matrix(u, dim) == m1 @ m2


def test_quotient_lower_bound_column_reading():
    lower = quotient_lower_bound(EnvelopingElement.basis_field(1), ONE, 50)
    assert lower.value.value == Fraction(50, 51)
    assert lower.scale == 1
    assert lower.halved_scale_reading == HALF
    zero = quotient_lower_bound(EnvelopingElement.zero(), ONE, 5)
    assert zero.value.value == 0


def test_quotient_sandwich_on_fields(rng):
    for _ in range(12):
        v = FormalVectorField.from_coeffs(
            [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(5)])
        if v.is_zero():
            continue
        u = EnvelopingElement.from_field(v)
        for t in (HALF, ONE, TWO):
            exact = quotient_norm_scaled(u, t).value
            assert quotient_lower_bound(u, t, 25).value.value <= exact
            assert exact <= field_quotient_upper(v, t).certified.value


def test_representation_dominated_by_free_norm(rng):
    for _ in range(30):
        word = random_word(rng, 7)
        if not word:
            continue
        t = Fraction(rng.randint(1, 4), 2)
        poly = NCPolynomial.from_word(word)
        u = project(poly)
        bound = free_norm(poly, t, t * t).value
        matrix = element_matrix(u, 12 + u.max_degree())
        assert operator_norm_trunc(matrix, t).value <= bound


def test_pbw_validation():
    with pytest.raises(PreconditionError):
        EnvelopingElement({2: {(2, 1): ONE}})
    with pytest.raises(PreconditionError):
        EnvelopingElement({2: {(2,): ONE, (1,): ONE}})
    with pytest.raises(PreconditionError):
        project_word((1, 3))
