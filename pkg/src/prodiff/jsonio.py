"""JSON wire formats: exact rational strings, sorted keys, strict parsing.

Every emitted document re-parses to an equal value. Parse errors name the
offending key so CLI diagnostics are actionable.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputFormatError
from .freealg import EnvelopingElement
from .norms import NormValue
from .rational import format_rational, parse_rational
from .series import FormalDiffeo, FormalVectorField
from .triangular import TriangularOperator


def dumps_canonical(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def diffeo_to_obj(gamma: FormalDiffeo) -> dict:
    coeffs = {
        str(j): format_rational(a)
        for j, a in enumerate(gamma.tail, start=2)
        if a != 0
    }
    return {"kind": "diffeo", "order": gamma.order, "coeffs": coeffs}


def field_to_obj(field: FormalVectorField) -> dict:
    coeffs = {
        str(j): format_rational(p)
        for j, p in enumerate(field.coeffs, start=1)
        if p != 0
    }
    return {"kind": "field", "order": field.order, "coeffs": coeffs}


def _parse_order(obj: dict, fallback: int | None) -> int:
    if "order" in obj:
        order = obj["order"]
        if not isinstance(order, int) or isinstance(order, bool) or order < 1:
            raise InputFormatError("order must be a positive integer", "order")
        return order
    if fallback is not None:
        return fallback
    raise InputFormatError("missing required key", "order")


def _parse_coeffs(obj: dict, low: int, order: int) -> dict[int, Fraction]:
    raw = obj.get("coeffs", {})
    if not isinstance(raw, dict):
        raise InputFormatError("coeffs must be an object", "coeffs")
    out: dict[int, Fraction] = {}
    for key, value in raw.items():
        try:
            j = int(key)
        except ValueError:
            raise InputFormatError("coefficient keys must be integers",
                                   f"coeffs.{key}") from None
        if not low <= j <= order:
            raise InputFormatError(
                f"coefficient index outside {low}..{order}", f"coeffs.{key}"
            )
        out[j] = parse_rational(value, f"coeffs.{key}")
    return out


def _reject_unknown(obj: dict, allowed: set[str]) -> None:
    for key in obj:
        if key not in allowed:
            raise InputFormatError("unknown key", key)


def obj_to_diffeo(obj: object, default_order: int | None = None) -> FormalDiffeo:
    if not isinstance(obj, dict):
        raise InputFormatError("expected a JSON object for a diffeomorphism")
    _reject_unknown(obj, {"kind", "order", "coeffs"})
    kind = obj.get("kind", "diffeo")
    if kind != "diffeo":
        raise InputFormatError(f"expected kind 'diffeo', got {kind!r}", "kind")
    order = _parse_order(obj, default_order)
    return FormalDiffeo.from_coefficients(order, _parse_coeffs(obj, 2, order))


def obj_to_field(obj: object, default_order: int | None = None) -> FormalVectorField:
    if not isinstance(obj, dict):
        raise InputFormatError("expected a JSON object for a vector field")
    _reject_unknown(obj, {"kind", "order", "coeffs"})
    kind = obj.get("kind", "field")
    if kind != "field":
        raise InputFormatError(f"expected kind 'field', got {kind!r}", "kind")
    order = _parse_order(obj, default_order)
    return FormalVectorField.from_coefficients(order, _parse_coeffs(obj, 1, order))


def monomial_to_str(mono: tuple[int, ...]) -> str:
    return "(" + ",".join(str(i) for i in mono) + ")"


def str_to_monomial(text: str, key: str) -> tuple[int, ...]:
    inner = text.strip()
    if not (inner.startswith("(") and inner.endswith(")")):
        raise InputFormatError("monomial keys look like '(1,2)'", key)
    inner = inner[1:-1].strip()
    if not inner:
        return ()
    parts = [p.strip() for p in inner.split(",")]
    try:
        indices = tuple(int(p) for p in parts)
    except ValueError:
        raise InputFormatError("monomial indices must be integers", key) from None
    if any(i < 1 for i in indices):
        raise InputFormatError("monomial indices must be >= 1", key)
    if any(indices[i] > indices[i + 1] for i in range(len(indices) - 1)):
        raise InputFormatError("monomial indices must be weakly increasing", key)
    return indices


def uelement_to_obj(u: EnvelopingElement) -> dict:
    components = {}
    for degree in u.degrees():
        level = {
            monomial_to_str(mono): format_rational(coeff)
            for mono, coeff in sorted(u.components[degree].items())
        }
        components[str(degree)] = level
    return {"components": components}


def obj_to_uelement(obj: object) -> EnvelopingElement:
    if not isinstance(obj, dict):
        raise InputFormatError("expected a JSON object for an enveloping element")
    _reject_unknown(obj, {"kind", "components"})
    kind = obj.get("kind", "uelement")
    if kind != "uelement":
        raise InputFormatError(f"expected kind 'uelement', got {kind!r}", "kind")
    raw = obj.get("components", {})
    if not isinstance(raw, dict):
        raise InputFormatError("components must be an object", "components")
    components: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for deg_key, level in raw.items():
        try:
            degree = int(deg_key)
        except ValueError:
            raise InputFormatError("degree keys must be integers",
                                   f"components.{deg_key}") from None
        if degree < 0:
            raise InputFormatError("degrees must be >= 0", f"components.{deg_key}")
        if not isinstance(level, dict):
            raise InputFormatError("each component must be an object",
                                   f"components.{deg_key}")
        parsed_level: dict[tuple[int, ...], Fraction] = {}
        for mono_key, value in level.items():
            path = f"components.{deg_key}.{mono_key}"
            mono = str_to_monomial(mono_key, path)
            if sum(mono) != degree:
                raise InputFormatError(
                    f"monomial degree {sum(mono)} does not match component {degree}",
                    path,
                )
            parsed_level[mono] = parse_rational(value, path)
        if parsed_level:
            components[degree] = parsed_level
    return EnvelopingElement(components)


def matrix_to_rows(op: TriangularOperator) -> list[list[str]]:
    """Row-major dump with canonical rational strings."""
    return [[format_rational(v) for v in row] for row in op.entries]


def normvalue_to_obj(nv: NormValue) -> dict:
    out = {"value": format_rational(nv.value), "kind": nv.kind}
    if nv.witness_column is not None:
        out["witness_column"] = nv.witness_column
    return out
