"""Weighted coefficient norms, truncated operator norms, the inversion
majorant, and the growth-classification report."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from prodiff import (
    FormalDiffeo,
    FormalVectorField,
    PreconditionError,
    diffeo_norm,
    enumerate_weight_tuples,
    exp_upper_bound,
    field_matrix_padded,
    field_norm_bound,
    inversion_norm_bound,
    inversion_weight,
    membership_report,
    monomial_selector,
    multiplier_norm_bound,
    operator_norm_trunc,
    selector_norm,
)
from prodiff.norms import MEMBERSHIP_RULES, membership_coefficients
from prodiff.verify import random_diffeo, random_field

HALF = Fraction(1, 2)
ONE = Fraction(1)
TWO = Fraction(2)


def test_diffeo_norm_golden():
    # x + x^2 at sigma = 2: |1| * 2 / 2! = 1
    g = FormalDiffeo.from_coefficients(4, {2: 1})
    assert diffeo_norm(g, TWO).value == 1
    assert diffeo_norm(g, ONE).value == HALF
    assert diffeo_norm(g, TWO).kind == "lower_approx"
    assert diffeo_norm(g, TWO, complete=True).kind == "exact"


def test_diffeo_norm_needs_positive_sigma():
    with pytest.raises(PreconditionError):
        diffeo_norm(FormalDiffeo.identity(3), Fraction(0))


def test_field_norm_bound_golden():
    # 2 L_1 at t = 1: series sum 2/2! = 1, upper twice that
    v = FormalVectorField.from_coefficients(3, {1: 2})
    lower, upper = field_norm_bound(v, ONE)
    assert lower.value == 1
    assert upper.value == 2
    assert lower.witness_column == 1
    assert lower.kind == "lower_approx"
    assert upper.kind == "upper_bound"


def test_operator_norm_column_readings():
    # L_1 columns read m t/(m+1): increasing toward the unattained sup t
    matrix = field_matrix_padded(FormalVectorField.basis(1, 1), 9)
    for m in (1, 4, 8):
        value = operator_norm_trunc(matrix, ONE, m).value
        assert value == Fraction(m, m + 1)
    full = operator_norm_trunc(matrix, ONE)
    assert full.value == Fraction(8, 9)
    assert full.witness_column == 8


def test_selector_norm_goldens():
    assert selector_norm(0).value == 1
    assert selector_norm(1).value == HALF
    assert selector_norm(3).value == Fraction(1, 20)
    assert selector_norm(5).value == Fraction(1, 252)
    computed = operator_norm_trunc(monomial_selector(5, 11), ONE)
    assert computed.value == Fraction(1, 252)
    assert computed.witness_column == 5


def test_selector_norm_equals_sqrt_cap_at_one():
    # (1!)^2/2! = 1/2 equals 2 sqrt(1)/4: the cap is tight at n = 1
    assert selector_norm(1).value == Fraction(2, 4)


def test_multiplier_cap_attained_for_quadratic():
    computed, cap = multiplier_norm_bound(FormalDiffeo.from_coefficients(8, {2: 1}))
    assert computed.value == 1
    assert cap.value == 1


def test_multiplier_cap_holds(rng):
    for _ in range(40):
        computed, cap = multiplier_norm_bound(random_diffeo(rng, 9))
        assert computed.value <= cap.value


def test_inversion_weight_goldens():
    assert inversion_weight(()) == 1
    assert inversion_weight((1,)) == 1
    assert inversion_weight((2,)) == Fraction(8, 3)
    assert inversion_weight((0, 1)) == 1


def test_inversion_weight_enumeration_bound():
    count = 0
    for ks in enumerate_weight_tuples(12):
        count += 1
        assert inversion_weight(ks) <= Fraction(8) ** sum(ks)
    # partitions of 0..12 sum to 1+1+2+...+77 = 272 tuples
    assert count == 272


def test_exp_upper_bound_certifies():
    for q in (Fraction(0), HALF, ONE, Fraction(4), Fraction(25, 3)):
        cap = exp_upper_bound(q)
        assert float(cap) >= math.exp(float(q)) * (1 - 1e-12)
        assert float(cap) <= math.exp(float(q)) * 1.001 + 1e-9


def test_inversion_bound_catalan_case():
    g = FormalDiffeo.from_coefficients(12, {2: 1})
    partial, cap = inversion_norm_bound(g)
    assert partial.value <= cap.value
    # the majorant is exp(8 * 1/2) evaluated with certified rounding
    assert cap.value >= Fraction(54)  # e^4 = 54.598...
    assert cap.value <= Fraction(55)


def test_inversion_bound_random(rng):
    for _ in range(30):
        partial, cap = inversion_norm_bound(random_diffeo(rng, 8))
        assert partial.value <= cap.value


def test_sandwich_monotone_in_columns(rng):
    for t in (HALF, ONE, TWO):
        for _ in range(15):
            v = random_field(rng, 7)
            lower, upper = field_norm_bound(v, t)
            matrix = field_matrix_padded(v, 10)
            previous = Fraction(0)
            for m in range(1, matrix.dim):
                value = operator_norm_trunc(matrix, t, m).value
                assert lower.value <= value <= upper.value
                assert value >= previous
                previous = value


def test_membership_classifications():
    all_sigma = membership_report("geometric", 24, ONE)
    assert all_sigma["classification"] == "all_sigma"
    small = membership_report("factorial", 24, ONE)
    assert small["classification"] == "small_sigma"
    assert abs(small["threshold_estimate"] - 1.0) < 0.2
    small_half = membership_report("factorial", 24, HALF)
    assert small_half["classification"] == "small_sigma"
    assert abs(small_half["threshold_estimate"] - 2.0) < 0.4
    sub = membership_report("subfactorial", 24, ONE)
    assert sub["classification"] in ("all_sigma", "small_sigma")
    divergent = membership_report("factorial_squared", 24, ONE)
    assert divergent["classification"] == "divergent"


def test_membership_user_rule():
    report = membership_report("user", 6, ONE, coeffs=[1, 0, 1])
    assert report["classification"] == "all_sigma"
    tail = membership_coefficients("user", 6, ONE, [1, 0, 1]).tail
    assert tail == (1, 0, 1, 0, 0)
    with pytest.raises(PreconditionError):
        membership_report("user", 6, ONE)
    with pytest.raises(PreconditionError):
        membership_report("mystery", 6, ONE)
    assert "user" in MEMBERSHIP_RULES


def test_membership_partial_norms_are_exact():
    report = membership_report("geometric", 8, HALF)
    for entry in report["partial_norms"]:
        g = membership_coefficients("geometric", 8, HALF)
        assert entry["value"] == diffeo_norm(g, entry["sigma"]).value
