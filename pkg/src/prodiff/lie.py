"""Bracket, exponential and logarithm between vector fields and diffeomorphisms.

The basis fields L_j (x^(j+1) d/dx) satisfy [L_n, L_m] = (m - n) L_(n+m).
exp maps a field of order N to the time-1 flow diffeomorphism of order N+1
(a degree-j field component first shows up in coefficient a_(j+1), so the
exponential determines exactly one more coefficient than its input); log
inverts this, lowering the order by one. Both round trips are exact.

Two independent exponentials are provided: the matrix exponential of the
derivation matrix, and direct Picard integration of the flow ODE
x' = sum p_j x^(j+1) with polynomial time dependence. They must agree
coefficient for coefficient.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvariantViolation, PreconditionError
from .series import FormalDiffeo, FormalVectorField, compose
from .triangular import (
    _field_matrix_raw,
    exp_strict,
    log_unitriangular,
    substitution_matrix,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def bracket(a: FormalVectorField, b: FormalVectorField) -> FormalVectorField:
    """Lie bracket, truncated to the common order."""
    if a.order != b.order:
        raise PreconditionError(
            f"bracket needs equal orders, got {a.order} and {b.order}"
        )
    n = a.order
    out = [_ZERO] * n
    for i, p in enumerate(a.coeffs, start=1):
        if p == 0:
            continue
        for j, q in enumerate(b.coeffs, start=1):
            if q == 0 or i + j > n:
                continue
            out[i + j - 1] += (j - i) * p * q
    return FormalVectorField(tuple(out))


def exp_field(field: FormalVectorField) -> FormalDiffeo:
    """Time-1 flow of a field, via the matrix exponential of its derivation.

    Returns a diffeomorphism of order field.order + 1. The full substitution
    matrix of the result is checked against the exponential, not just the
    column of x.
    """
    n = field.order
    matrix = exp_strict(_field_matrix_raw(field.coeffs, n + 1))
    tail = tuple(matrix.entry(i, 1) for i in range(2, n + 2))
    gamma = FormalDiffeo(tail)
    if substitution_matrix(gamma, n + 1) != matrix:
        raise InvariantViolation(
            "exponential of a derivation is not a substitution matrix"
        )
    return gamma


# Time-dependent coefficients for the Picard iteration are polynomials in
# the flow time, stored dense as tuples of Fractions.

def _poly_add(p: tuple, q: tuple) -> tuple:
    if len(p) < len(q):
        p, q = q, p
    return tuple(
        a + (q[i] if i < len(q) else _ZERO) for i, a in enumerate(p)
    )


def _poly_mul(p: tuple, q: tuple) -> tuple:
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b != 0:
                out[i + j] += a * b
    return tuple(out)


def _poly_scale(p: tuple, c: Fraction) -> tuple:
    return tuple(c * a for a in p)


def _poly_integrate(p: tuple) -> tuple:
    # antiderivative with zero constant term
    return (_ZERO,) + tuple(a / (i + 1) for i, a in enumerate(p))


def _poly_at_one(p: tuple) -> Fraction:
    return sum(p, _ZERO)


def _xseries_mul(a: list, b: list, degree: int) -> list:
    out = [(_ZERO,)] * (degree + 1)
    for i, p in enumerate(a):
        if i > degree or p == (_ZERO,):
            continue
        for j in range(degree + 1 - i):
            q = b[j]
            if q != (_ZERO,):
                out[i + j] = _poly_add(out[i + j], _poly_mul(p, q))
    return out


def exp_field_flow(field: FormalVectorField) -> FormalDiffeo:
    """Time-1 flow by exact Picard iteration of x' = sum p_j x^(j+1).

    Independent oracle for exp_field: no matrices are involved, only series
    integration with polynomial-in-time coefficients. After the step with
    target degree d the flow is exact through x-degree d.
    """
    n = field.order
    top = n + 1
    # y[k] is the polynomial-in-time coefficient of x0^k in the flow.
    y: list[tuple] = [(_ZERO,), (_ONE,)] + [(_ZERO,)] * (top - 1)
    for target in range(2, top + 1):
        rhs: list[tuple] = [(_ZERO,)] * (target + 1)
        power = y[: target + 1]
        for j, p in enumerate(field.coeffs, start=1):
            if j + 1 > target:
                break
            power = _xseries_mul(power, y[: target + 1], target)
            if p != 0:
                for k in range(target + 1):
                    rhs[k] = _poly_add(rhs[k], _poly_scale(power[k], p))
        new_y = [(_ZERO,), (_ONE,)] + [_poly_integrate(rhs[k]) for k in range(2, target + 1)]
        y = new_y + [(_ZERO,)] * (top - target)
    tail = []
    for k in range(2, top + 1):
        tail.append(_poly_at_one(y[k]))
    return FormalDiffeo(tuple(tail))


def log_diffeo(gamma: FormalDiffeo) -> FormalVectorField:
    """Generating field of a diffeomorphism, of order gamma.order - 1.

    The logarithm of the substitution matrix is read off its column of x;
    the whole matrix is then checked to be the derivation matrix of the
    resulting field, which certifies that the logarithm is a derivation.
    """
    if gamma.order < 2:
        raise PreconditionError("log needs order >= 2 (identity carries no data)")
    n = gamma.order
    matrix = log_unitriangular(substitution_matrix(gamma, n))
    coeffs = tuple(matrix.entry(j + 1, 1) for j in range(1, n))
    field = FormalVectorField(coeffs)
    if _field_matrix_raw(field.coeffs, n) != matrix:
        raise InvariantViolation(
            "log of a substitution matrix is not a derivation matrix"
        )
    return field


def bch(a: FormalVectorField, b: FormalVectorField) -> FormalVectorField:
    """Baker-Campbell-Hausdorff combination log(exp(a) exp(b)).

    Computed through the group: flow a, then flow b, then take the log.
    Agrees with a + b + 1/2 [a,b] + higher brackets.
    """
    if a.order != b.order:
        raise PreconditionError(
            f"bch needs equal orders, got {a.order} and {b.order}"
        )
    return log_diffeo(compose(exp_field(a), exp_field(b)))
