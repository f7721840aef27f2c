from __future__ import annotations

import random
from fractions import Fraction

import pytest


def F(text) -> Fraction:
    return Fraction(text)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
