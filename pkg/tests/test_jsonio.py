"""Wire formats: strict parsing with key-path diagnostics, canonical
serialization, and round trips for every object kind."""

from __future__ import annotations

from fractions import Fraction

import pytest

from prodiff import FormalDiffeo, FormalVectorField, InputFormatError
from prodiff.freealg import EnvelopingElement, pbw_straighten
from prodiff.jsonio import (
    diffeo_to_obj,
    dumps_canonical,
    field_to_obj,
    monomial_to_str,
    normvalue_to_obj,
    obj_to_diffeo,
    obj_to_field,
    obj_to_uelement,
    str_to_monomial,
    uelement_to_obj,
)
from prodiff.norms import NormValue
from prodiff.verify import random_diffeo, random_field


def test_diffeo_round_trip(rng):
    for _ in range(20):
        g = random_diffeo(rng, 7)
        assert obj_to_diffeo(diffeo_to_obj(g)) == g


def test_field_round_trip(rng):
    for _ in range(20):
        v = random_field(rng, 7)
        assert obj_to_field(field_to_obj(v)) == v


def test_diffeo_obj_shape():
    g = FormalDiffeo.from_coefficients(5, {2: Fraction(1, 2)})
    obj = diffeo_to_obj(g)
    assert obj == {"kind": "diffeo", "order": 5, "coeffs": {"2": "1/2"}}


def test_sparse_coeffs_only():
    v = FormalVectorField.from_coefficients(9, {3: -2})
    assert field_to_obj(v)["coeffs"] == {"3": "-2"}


def test_default_order_applies():
    g = obj_to_diffeo({"kind": "diffeo", "coeffs": {"2": "1"}}, default_order=6)
    assert g.order == 6


def test_parse_errors_name_the_key():
    with pytest.raises(InputFormatError, match="coeffs.2"):
        obj_to_diffeo({"kind": "diffeo", "order": 4, "coeffs": {"2": "x"}})
    with pytest.raises(InputFormatError, match="kind"):
        obj_to_diffeo({"kind": "field", "order": 4})
    with pytest.raises(InputFormatError, match="bogus"):
        obj_to_diffeo({"kind": "diffeo", "order": 4, "bogus": 1})
    with pytest.raises(InputFormatError, match="order"):
        obj_to_diffeo({"kind": "diffeo", "order": 0})
    with pytest.raises(InputFormatError, match="order"):
        obj_to_diffeo({"kind": "diffeo", "order": True, "coeffs": {}})
    with pytest.raises(InputFormatError, match="coeffs.7"):
        obj_to_diffeo({"kind": "diffeo", "order": 4, "coeffs": {"7": "1"}})


def test_rational_strings_are_strict():
    with pytest.raises(InputFormatError):
        obj_to_field({"kind": "field", "order": 3, "coeffs": {"1": "1/0"}})
    with pytest.raises(InputFormatError):
        obj_to_field({"kind": "field", "order": 3, "coeffs": {"1": "0.5"}})
    with pytest.raises(InputFormatError):
        obj_to_field({"kind": "field", "order": 3, "coeffs": {"1": 0.5}})
    v = obj_to_field({"kind": "field", "order": 3, "coeffs": {"1": "-3/4"}})
    assert v.coefficient(1) == Fraction(-3, 4)


def test_monomial_strings():
    assert monomial_to_str((1, 2, 2)) == "(1,2,2)"
    assert monomial_to_str(()) == "()"
    assert str_to_monomial("(1, 2)", "k") == (1, 2)
    assert str_to_monomial("()", "k") == ()
    with pytest.raises(InputFormatError, match="weakly increasing"):
        str_to_monomial("(2,1)", "k")
    with pytest.raises(InputFormatError):
        str_to_monomial("1,2", "k")
    with pytest.raises(InputFormatError):
        str_to_monomial("(0)", "k")


def test_uelement_round_trip(rng):
    for _ in range(15):
        products = {
            tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 4))):
                Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for _ in range(2)
        }
        u = pbw_straighten(products)
        assert obj_to_uelement(uelement_to_obj(u)) == u


def test_uelement_wire_example():
    u = obj_to_uelement({"components": {"3": {"(3)": "1"}}})
    assert u == EnvelopingElement.basis_field(3)


def test_uelement_degree_mismatch():
    with pytest.raises(InputFormatError, match=r"components.3"):
        obj_to_uelement({"components": {"3": {"(1,1)": "1"}}})


def test_uelement_rejects_unknown_keys():
    with pytest.raises(InputFormatError, match="extra"):
        obj_to_uelement({"components": {}, "extra": 1})


def test_normvalue_obj():
    assert normvalue_to_obj(NormValue(Fraction(1, 3), "exact")) == {
        "value": "1/3", "kind": "exact"}
    assert normvalue_to_obj(
        NormValue(Fraction(2), "lower_approx", witness_column=4)) == {
        "value": "2", "kind": "lower_approx", "witness_column": 4}


def test_dumps_canonical_is_sorted_with_trailing_newline():
    text = dumps_canonical({"b": 1, "a": [1, 2]})
    assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
