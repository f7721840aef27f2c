"""Truncated formal power series and the group of formal diffeomorphisms.

Everything lives modulo x^(N+1) for a declared truncation order N and all
coefficients are exact rationals, so each operation below is exact on the
quotient: degrees above the order are dropped, never approximated.

A formal diffeomorphism is a series gamma(x) = x + a2 x^2 + ... + aN x^N.
These form a group under substitution. The composition convention here is
"apply the first argument, then the second": compose(f, g)(x) = g(f(x)).
With this convention the substitution matrices of ``triangular`` satisfy
matmul(rep(f), rep(g)) = rep(compose(f, g)), i.e. the matrix representation
is a homomorphism, and bch(A, B) carries the (+1/2)[A, B] sign.

Two compositional-inverse algorithms are provided, a direct Lagrange
inversion and a degree-by-degree solve; they serve as mutual oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError

Coeff = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"not a rational literal: {value!r}") from exc
    raise PreconditionError(
        f"coefficients must be exact rationals, got {type(value).__name__}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Dense series u0 + u1 x + ... + uN x^N with order N = len(coeffs) - 1."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise PreconditionError("a truncated series needs at least the constant term")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[object]) -> "TruncatedSeries":
        return cls(tuple(_as_fraction(c) for c in coeffs))

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((_ZERO,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((_ONE,) + (_ZERO,) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i <= self.order:
            return self.coeffs[i]
        return _ZERO

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise PreconditionError(
                f"cannot extend a series of order {self.order} to order {order}"
            )
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1))
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = [_ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(tuple(out))

    def scale(self, factor: Fraction) -> "TruncatedSeries":
        f = _as_fraction(factor)
        return TruncatedSeries(tuple(f * c for c in self.coeffs))

    def add_scalar(self, value: Fraction) -> "TruncatedSeries":
        v = _as_fraction(value)
        return TruncatedSeries((self.coeffs[0] + v,) + self.coeffs[1:])

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        u0 = self.coeffs[0]
        if u0 == 0:
            raise PreconditionError("series with zero constant term has no reciprocal")
        inv0 = 1 / u0
        out = [inv0] + [_ZERO] * self.order
        for n in range(1, self.order + 1):
            acc = _ZERO
            for k in range(1, n + 1):
                if self.coeffs[k] != 0:
                    acc += self.coeffs[k] * out[n - k]
            out[n] = -inv0 * acc
        return TruncatedSeries(tuple(out))


@dataclass(frozen=True)
class FormalDiffeo:
    """gamma(x) = x + a2 x^2 + ... + aN x^N modulo x^(N+1).

    ``tail`` stores (a2, ..., aN); the order is len(tail) + 1 >= 1.
    """

    tail: tuple[Fraction, ...]

    @classmethod
    def identity(cls, order: int) -> "FormalDiffeo":
        if order < 1:
            raise PreconditionError("order must be >= 1")
        return cls((_ZERO,) * (order - 1))

    @classmethod
    def from_tail(cls, tail: Iterable[object]) -> "FormalDiffeo":
        return cls(tuple(_as_fraction(c) for c in tail))

    @classmethod
    def from_coefficients(cls, order: int, coeffs: Mapping[int, object]) -> "FormalDiffeo":
        if order < 1:
            raise PreconditionError("order must be >= 1")
        tail = [_ZERO] * (order - 1)
        for j, value in coeffs.items():
            if not 2 <= j <= order:
                raise PreconditionError(f"coefficient index {j} outside 2..{order}")
            tail[j - 2] = _as_fraction(value)
        return cls(tuple(tail))

    @property
    def order(self) -> int:
        return len(self.tail) + 1

    def coefficient(self, j: int) -> Fraction:
        if j == 1:
            return _ONE
        if 2 <= j <= self.order:
            return self.tail[j - 2]
        return _ZERO

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.tail)

    def to_series(self) -> TruncatedSeries:
        return TruncatedSeries((_ZERO, _ONE) + self.tail)

    @classmethod
    def from_series(cls, series: TruncatedSeries) -> "FormalDiffeo":
        if series.order < 1:
            raise PreconditionError("a diffeomorphism needs order >= 1")
        if series.coeffs[0] != 0 or series.coeffs[1] != 1:
            raise PreconditionError(
                "series is not a formal diffeomorphism (needs u0 = 0, u1 = 1)"
            )
        return cls(series.coeffs[2:])

    def truncate(self, order: int) -> "FormalDiffeo":
        if order < 1:
            raise PreconditionError("order must be >= 1")
        if order > self.order:
            raise PreconditionError(
                f"cannot extend a diffeomorphism of order {self.order} to order {order}"
            )
        return FormalDiffeo(self.tail[: order - 1])


@dataclass(frozen=True)
class FormalVectorField:
    """Formal vector field sum_j p_j x^(j+1) d/dx with degrees 1..N.

    ``coeffs`` stores (p1, ..., pN); the degree-j basis field maps x^m to
    m x^(m+j).
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) < 1:
            raise PreconditionError("a vector field needs order >= 1")

    @classmethod
    def zero(cls, order: int) -> "FormalVectorField":
        if order < 1:
            raise PreconditionError("order must be >= 1")
        return cls((_ZERO,) * order)

    @classmethod
    def basis(cls, degree: int, order: int) -> "FormalVectorField":
        """The basis field of the given degree, L_degree, at truncation order."""
        if not 1 <= degree <= order:
            raise PreconditionError(f"degree {degree} outside 1..{order}")
        coeffs = [_ZERO] * order
        coeffs[degree - 1] = _ONE
        return cls(tuple(coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[object]) -> "FormalVectorField":
        return cls(tuple(_as_fraction(c) for c in coeffs))

    @classmethod
    def from_coefficients(cls, order: int, coeffs: Mapping[int, object]) -> "FormalVectorField":
        if order < 1:
            raise PreconditionError("order must be >= 1")
        out = [_ZERO] * order
        for j, value in coeffs.items():
            if not 1 <= j <= order:
                raise PreconditionError(f"coefficient index {j} outside 1..{order}")
            out[j - 1] = _as_fraction(value)
        return cls(tuple(out))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coefficient(self, j: int) -> Fraction:
        if 1 <= j <= self.order:
            return self.coeffs[j - 1]
        return _ZERO

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def truncate(self, order: int) -> "FormalVectorField":
        if order < 1:
            raise PreconditionError("order must be >= 1")
        if order > self.order:
            raise PreconditionError(
                f"cannot extend a field of order {self.order} to order {order}"
            )
        return FormalVectorField(self.coeffs[:order])


def compose(gamma1: FormalDiffeo, gamma2: FormalDiffeo) -> FormalDiffeo:
    """Group law: gamma1 followed by gamma2, i.e. x -> gamma2(gamma1(x)).

    Requires equal orders; the CLI truncates to the minimum first.
    """
    if gamma1.order != gamma2.order:
        raise PreconditionError(
            f"compose needs equal orders, got {gamma1.order} and {gamma2.order}"
        )
    n = gamma1.order
    inner = gamma1.to_series()
    # Horner evaluation of gamma2 at the inner series:
    # gamma2(y) = y (b1 + y (b2 + y (... ))) with b1 = 1.
    acc = TruncatedSeries.zero(n).add_scalar(gamma2.coefficient(n))
    for j in range(n - 1, 0, -1):
        acc = (acc * inner).add_scalar(gamma2.coefficient(j))
    return FormalDiffeo.from_series(acc * inner)


def invert_lagrange(gamma: FormalDiffeo) -> FormalDiffeo:
    """Compositional inverse via Lagrange inversion.

    c_n = (1/n) [x^(n-1)] (x / gamma(x))^n, computed with incremental powers
    of the unit series x/gamma(x).
    """
    n = gamma.order
    # x/gamma(x) = 1/(1 + a2 x + ... + aN x^(N-1)) as a series of order N-1.
    denom = TruncatedSeries((_ONE,) + gamma.tail)
    s = denom.reciprocal()
    tail = []
    power = TruncatedSeries.one(s.order)
    for k in range(1, n + 1):
        power = power * s
        if k >= 2:
            tail.append(power.coefficient(k - 1) / k)
    return FormalDiffeo(tuple(tail))


def invert_recursive(gamma: FormalDiffeo) -> FormalDiffeo:
    """Compositional inverse solved degree by degree.

    At step k the candidate mu has c_k = 0 and the defect of gamma(mu(x))
    at degree k is exactly c_k's correction; degrees below k are already
    final. Independent of (and cross-checked against) invert_lagrange.
    """
    n = gamma.order
    mu_tail: list[Fraction] = []
    for k in range(2, n + 1):
        candidate = FormalDiffeo(tuple(mu_tail) + (_ZERO,) * (k - 1 - len(mu_tail)))
        defect = compose(candidate, gamma.truncate(k)).coefficient(k)
        mu_tail.append(-defect)
    return FormalDiffeo(tuple(mu_tail))


def scale_automorphism(gamma: FormalDiffeo, sigma: Fraction) -> FormalDiffeo:
    """The rescaling automorphism a_j -> sigma^(j-1) a_j.

    Equals x -> gamma(sigma x)/sigma for sigma != 0; at sigma = 0 every tail
    coefficient is killed and the identity is returned, which is the limit.
    """
    s = _as_fraction(sigma)
    tail = []
    power = s
    for a in gamma.tail:
        tail.append(power * a)
        power *= s
    return FormalDiffeo(tuple(tail))


def scale_field(field: FormalVectorField, sigma: Fraction) -> FormalVectorField:
    """Degree grading action p_j -> sigma^j p_j on vector fields."""
    s = _as_fraction(sigma)
    out = []
    power = s
    for p in field.coeffs:
        out.append(power * p)
        power *= s
    return FormalVectorField(tuple(out))
