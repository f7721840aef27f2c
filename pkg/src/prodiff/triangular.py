"""Triangular matrix realizations of substitution and differentiation.

A diffeomorphism gamma acts on the coefficient space of series in degrees
0..N by substitution: the image of x^j is gamma(x)^j mod x^(N+1). Entry
convention throughout: s[i][j] is the coefficient of x^i in the image of
x^j, so matrices are lower triangular (zeros for i < j) and substitution
matrices are unitriangular. With the composition convention of ``series``
the map gamma -> substitution_matrix(gamma) is a homomorphism:

    matmul(rep(f), rep(g)) = rep(compose(f, g)).

Vector fields act as strictly triangular derivation matrices, and exp/log
are finite sums on these nilpotent operators, inverse to each other.

The substitution matrix also factors through multiplication operators:
writing gamma(x) - x = x^2 h(x),

    T(gamma) = sum_n (1/n!) H^n Q_n,

where H is multiplication by h(x) restricted to degrees >= 2 and Q_n is
x^(2n) (d/dx)^n (``weighted_derivative``). The rank-one variant
``monomial_selector`` (x^n -> n! x^(2n), all other monomials -> 0) agrees
with Q_n on matrices of dimension 2n+1 and carries the closed-form operator
norm (n!)^2/(2n)!; the full variant is the one that makes the factorization
identity exact at every dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import InvariantViolation, PreconditionError
from .series import FormalDiffeo, FormalVectorField, TruncatedSeries

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class TriangularOperator:
    """Square lower-triangular matrix of exact rationals.

    ``strict`` marks a provably nilpotent operator (zero diagonal); it is
    metadata and never enters equality comparisons. Triangularity is
    validated on every construction, so products built from valid operators
    stay valid by construction.
    """

    entries: tuple[tuple[Fraction, ...], ...]
    strict: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        dim = len(self.entries)
        if dim == 0:
            raise PreconditionError("empty matrix")
        for i, row in enumerate(self.entries):
            if len(row) != dim:
                raise PreconditionError("matrix must be square")
            for j in range(i + 1, dim):
                if row[j] != 0:
                    raise PreconditionError(f"entry [{i}][{j}] above the diagonal is nonzero")
        if self.strict:
            for i in range(dim):
                if self.entries[i][i] != 0:
                    raise PreconditionError(f"strict operator has nonzero diagonal at [{i}][{i}]")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def from_rows(cls, rows, strict: bool = False) -> "TriangularOperator":
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows), strict)

    @classmethod
    def identity(cls, dim: int) -> "TriangularOperator":
        return cls(
            tuple(
                tuple(_ONE if i == j else _ZERO for j in range(dim)) for i in range(dim)
            )
        )

    @classmethod
    def zero(cls, dim: int) -> "TriangularOperator":
        return cls(tuple((_ZERO,) * dim for _ in range(dim)), strict=True)

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def is_unitriangular(self) -> bool:
        return all(self.entries[i][i] == 1 for i in range(self.dim))

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def __matmul__(self, other: "TriangularOperator") -> "TriangularOperator":
        if self.dim != other.dim:
            raise PreconditionError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )
        dim = self.dim
        a, b = self.entries, other.entries
        rows = []
        for i in range(dim):
            row = [_ZERO] * dim
            for j in range(i + 1):
                # triangularity: only k between j and i can contribute
                acc = _ZERO
                for k in range(j, i + 1):
                    if a[i][k] != 0 and b[k][j] != 0:
                        acc += a[i][k] * b[k][j]
                row[j] = acc
            rows.append(tuple(row))
        return TriangularOperator(tuple(rows), strict=self.strict or other.strict)

    def __add__(self, other: "TriangularOperator") -> "TriangularOperator":
        if self.dim != other.dim:
            raise PreconditionError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )
        rows = tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        )
        return TriangularOperator(rows, strict=self.strict and other.strict)

    def __sub__(self, other: "TriangularOperator") -> "TriangularOperator":
        return self + other.scale(Fraction(-1))

    def scale(self, factor: Fraction) -> "TriangularOperator":
        f = Fraction(factor)
        rows = tuple(tuple(f * v for v in row) for row in self.entries)
        return TriangularOperator(rows, strict=self.strict)

    def apply(self, coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        """Image of a coefficient vector (index = degree)."""
        if len(coeffs) != self.dim:
            raise PreconditionError("vector length must match matrix dimension")
        out = []
        for i in range(self.dim):
            acc = _ZERO
            for j in range(i + 1):
                if self.entries[i][j] != 0 and coeffs[j] != 0:
                    acc += self.entries[i][j] * coeffs[j]
            out.append(acc)
        return tuple(out)


def substitution_matrix(gamma: FormalDiffeo, n: int) -> TriangularOperator:
    """Matrix of the substitution action of gamma on degrees 0..n.

    Column j holds the coefficients of gamma(x)^j mod x^(n+1); requires
    gamma.order >= n so every retained entry is determined.
    """
    if n < 1:
        raise PreconditionError("truncation order must be >= 1")
    if gamma.order < n:
        raise PreconditionError(
            f"diffeomorphism order {gamma.order} is below truncation {n}"
        )
    base = gamma.truncate(n).to_series()
    dim = n + 1
    cols: list[tuple[Fraction, ...]] = []
    power = TruncatedSeries.one(n)
    cols.append(power.coeffs)
    for _ in range(n):
        power = power * base
        cols.append(power.coeffs)
    rows = tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))
    return TriangularOperator(rows)


def _field_matrix_raw(coeffs: tuple[Fraction, ...], n: int) -> TriangularOperator:
    # The degree-j basis field maps x^m to m x^(m+j); entries beyond the
    # supplied coefficients are zero.
    dim = n + 1
    rows = [[_ZERO] * dim for _ in range(dim)]
    for j, p in enumerate(coeffs, start=1):
        if p == 0:
            continue
        for m in range(1, dim - j):
            rows[m + j][m] = p * m
    return TriangularOperator(tuple(tuple(r) for r in rows), strict=True)


def field_matrix(field_: FormalVectorField, n: int) -> TriangularOperator:
    """Strictly triangular derivation matrix of a vector field on degrees 0..n."""
    if n < 1:
        raise PreconditionError("truncation order must be >= 1")
    if field_.order < n:
        raise PreconditionError(
            f"field order {field_.order} is below truncation {n}"
        )
    return _field_matrix_raw(field_.coeffs, n)


def field_matrix_padded(field_: FormalVectorField, n: int) -> TriangularOperator:
    """Derivation matrix on degrees 0..n with zero coefficients past the order.

    Unlike field_matrix this accepts n above the stored order; the result is
    the exact matrix of the stored field, whose components beyond its order
    are zero by construction. Useful when the matrix must retain the full
    image of a low column, e.g. so column 1 realizes the series norm.
    """
    if n < 1:
        raise PreconditionError("truncation order must be >= 1")
    return _field_matrix_raw(field_.coeffs, n)


def exp_strict(s: TriangularOperator) -> TriangularOperator:
    """exp of a strictly triangular operator; a finite sum, exactly computed."""
    if not s.strict:
        raise PreconditionError("exp_strict requires a strictly triangular operator")
    result = TriangularOperator.identity(s.dim)
    term = TriangularOperator.identity(s.dim)
    for k in range(1, s.dim):
        term = (term @ s).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def log_unitriangular(a: TriangularOperator) -> TriangularOperator:
    """log of a unitriangular operator via the finite Mercator series.

    Mutually inverse with exp_strict on their stated domains.
    """
    if not a.is_unitriangular():
        raise PreconditionError("log_unitriangular requires ones on the diagonal")
    s = a - TriangularOperator.identity(a.dim)
    s = TriangularOperator(s.entries, strict=True)
    result = TriangularOperator.zero(a.dim)
    power = TriangularOperator.identity(a.dim)
    for k in range(1, a.dim):
        power = power @ s
        if power.is_zero():
            break
        sign = Fraction(1, k) if k % 2 == 1 else Fraction(-1, k)
        result = result + power.scale(sign)
    return TriangularOperator(result.entries, strict=True)


def h_multiplier(gamma: FormalDiffeo, n: int) -> TriangularOperator:
    """Multiplication by h(x) = (gamma(x) - x)/x^2 restricted to degrees >= 2.

    Columns 0 and 1 are zero; column k >= 2 holds x^k h(x) mod x^(n+1).
    """
    if n < 1:
        raise PreconditionError("truncation order must be >= 1")
    if gamma.order < n:
        raise PreconditionError(
            f"diffeomorphism order {gamma.order} is below truncation {n}"
        )
    dim = n + 1
    rows = [[_ZERO] * dim for _ in range(dim)]
    h = gamma.tail[: max(0, n - 1)]  # h_m = a_{m+2}
    for k in range(2, dim):
        for m, hm in enumerate(h):
            if k + m > n:
                break
            if hm != 0:
                rows[k + m][k] = hm
    return TriangularOperator(tuple(tuple(r) for r in rows))


def weighted_derivative(n: int, dim: int) -> TriangularOperator:
    """Matrix of x^(2n) (d/dx)^n on degrees 0..dim-1.

    Maps x^k to k!/(k-n)! x^(k+n) for k >= n; n = 0 gives the identity.
    """
    if n < 0:
        raise PreconditionError("derivative order must be >= 0")
    if dim < 1:
        raise PreconditionError("dimension must be >= 1")
    rows = [[_ZERO] * dim for _ in range(dim)]
    for k in range(n, dim - n):
        rows[k + n][k] = Fraction(factorial(k), factorial(k - n))
    return TriangularOperator(tuple(tuple(r) for r in rows), strict=n >= 1)


def monomial_selector(n: int, dim: int) -> TriangularOperator:
    """Rank-one operator x^n -> n! x^(2n), all other monomials -> 0.

    Agrees with weighted_derivative(n, 2n+1); zero whenever 2n >= dim.
    """
    if n < 0:
        raise PreconditionError("selector index must be >= 0")
    if dim < 1:
        raise PreconditionError("dimension must be >= 1")
    rows = [[_ZERO] * dim for _ in range(dim)]
    if 2 * n < dim:
        rows[2 * n][n] = Fraction(factorial(n))
    return TriangularOperator(tuple(tuple(r) for r in rows), strict=n >= 1)


@dataclass(frozen=True)
class TaylorDecomposition:
    """Factorization data for a substitution matrix.

    ``multiplier`` is the h-multiplication operator H and ``blocks`` the
    operators Q_0..Q_floor(n/2); reassembly sum (1/k!) H^k Q_k equals the
    substitution matrix exactly (verified at construction).
    """

    multiplier: TriangularOperator
    blocks: tuple[TriangularOperator, ...]


def taylor_decomposition(gamma: FormalDiffeo, n: int) -> TaylorDecomposition:
    """Decompose substitution by gamma into h-multiplications and derivatives.

    Raises InvariantViolation if the reassembled sum differs from
    substitution_matrix(gamma, n); that identity is exact for every input.
    """
    h_op = h_multiplier(gamma, n)
    dim = n + 1
    blocks = tuple(weighted_derivative(k, dim) for k in range(n // 2 + 1))
    total = TriangularOperator.zero(dim)
    h_power = TriangularOperator.identity(dim)
    for k, block in enumerate(blocks):
        if k > 0:
            h_power = h_power @ h_op
        total = total + (h_power @ block).scale(Fraction(1, factorial(k)))
    if total != substitution_matrix(gamma, n):
        raise InvariantViolation(
            "taylor decomposition failed to reassemble the substitution matrix"
        )
    return TaylorDecomposition(h_op, blocks)
