"""Canonical string form for exact rational scalars.

Coefficients are ``fractions.Fraction`` everywhere in this package. On the
wire they are strings "<int>" or "<int>/<posint>" with no whitespace, which
keeps JSON output byte-stable across runs.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputFormatError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(value: object, key: str | None = None) -> Fraction:
    """Parse an exact rational from a string or integer.

    Floats are rejected: they would silently trade exactness for rounding.
    """
    if isinstance(value, bool):
        raise InputFormatError(f"expected a rational, got boolean {value!r}", key)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise InputFormatError(
                f"expected '<int>' or '<int>/<posint>', got {value!r}", key
            )
        return Fraction(text)
    raise InputFormatError(f"expected a rational string, got {type(value).__name__}", key)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
