"""Weighted norms on diffeomorphism coefficients, series spaces and operators.

Three families of exact quantities live here:

* the sigma-weighted coefficient norm sum |a_j| sigma^(j-1)/j! of a
  diffeomorphism tail, and the t-weighted series norm it induces on the
  space with basis weights t^m/m!;
* truncated operator norms: for a triangular matrix the weighted column sum
  (m!/t^m) sum_i |s[i][m]| t^i/i! is the norm of the image of x^m, and the
  maximum over retained columns is a certified lower approximation of the
  true operator norm (truncation only drops nonnegative terms), reported
  with the witnessing column;
* combinatorial majorants for composition inverses: the weight U(k) attached
  to a multi-index of coefficient multiplicities, its 8^(sum k) cap, and the
  resulting bound  sum |c_n|/n! <= exp(8 * sum |a_j|/j!)  checked with a
  certified rational upper bound for exp.

NormValue.kind records the epistemic status of each number: "exact" when the
defining supremum or series is provably attained within the truncation,
"lower_approx"/"upper_bound" for certified one-sided values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from .errors import InvariantViolation, PreconditionError
from .series import FormalDiffeo, FormalVectorField, invert_lagrange
from .triangular import TriangularOperator, h_multiplier

_ZERO = Fraction(0)

DEFAULT_SIGMA_GRID = (
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(4),
)


@dataclass(frozen=True)
class NormValue:
    value: Fraction
    kind: str  # "exact" | "lower_approx" | "upper_bound"
    witness_column: int | None = None


def diffeo_norm(gamma: FormalDiffeo, sigma: Fraction, complete: bool = False) -> NormValue:
    """Weighted coefficient norm sum_j |a_j| sigma^(j-1) / j!.

    The sum runs over the stored tail only, so for a truncation of an
    infinite series it is a lower approximation; callers that know the
    series is finitely supported may pass complete=True to mark it exact.
    """
    sigma = Fraction(sigma)
    if sigma <= 0:
        raise PreconditionError("sigma must be positive")
    total = _ZERO
    power = sigma
    for j, a in enumerate(gamma.tail, start=2):
        if a != 0:
            total += abs(a) * power / factorial(j)
        power *= sigma
    return NormValue(total, "exact" if complete else "lower_approx")


def field_norm_bound(field: FormalVectorField, t: Fraction) -> tuple[NormValue, NormValue]:
    """Two-sided bracket for the operator norm of a vector field.

    Returns (S, 2S) with S = sum_j |p_j| t^j / (j+1)!. The lower value is
    the norm of the image of x (column 1); every other column is below 2S.
    """
    t = Fraction(t)
    if t <= 0:
        raise PreconditionError("t must be positive")
    total = _ZERO
    power = t
    for j, p in enumerate(field.coeffs, start=1):
        if p != 0:
            total += abs(p) * power / factorial(j + 1)
        power *= t
    return (
        NormValue(total, "lower_approx", witness_column=1),
        NormValue(2 * total, "upper_bound"),
    )


def operator_norm_trunc(a: TriangularOperator, t: Fraction, columns: int | None = None) -> NormValue:
    """Truncated weighted operator norm: max weighted column sum over 0..columns.

    Exact on the retained block and a certified lower bound for the true
    norm of the untruncated operator; the witnessing column is the smallest
    one attaining the maximum.
    """
    t = Fraction(t)
    if t <= 0:
        raise PreconditionError("t must be positive")
    m = a.dim - 1 if columns is None else columns
    if not 0 <= m <= a.dim - 1:
        raise PreconditionError(
            f"columns must lie in 0..{a.dim - 1}, got {m}"
        )
    # weights[i] = t^i / i!
    weights = [Fraction(1)]
    for i in range(1, a.dim):
        weights.append(weights[-1] * t / i)
    best = _ZERO
    witness = 0
    for col in range(m + 1):
        acc = _ZERO
        for i in range(col, a.dim):
            v = a.entries[i][col]
            if v != 0:
                acc += abs(v) * weights[i]
        acc /= weights[col]
        if acc > best:
            best = acc
            witness = col
    return NormValue(best, "lower_approx", witness_column=witness)


def selector_norm(n: int) -> NormValue:
    """Closed-form operator norm (n!)^2 / (2n)! of the monomial selector.

    The supremum is attained at column n on any block of dimension at least
    2n+1; it satisfies (n!)^2/(2n)! <= 2 sqrt(n)/4^n with equality at n = 1.
    """
    if n < 0:
        raise PreconditionError("selector index must be >= 0")
    return NormValue(Fraction(factorial(n) ** 2, factorial(2 * n)), "exact",
                     witness_column=n)


def multiplier_norm_bound(gamma: FormalDiffeo) -> tuple[NormValue, NormValue]:
    """Truncated norm of the h-multiplication operator and its coefficient cap.

    The cap is 2 sum_j |a_j|/j!; the computed truncated norm can never
    exceed it (column k contributes k!/(k+m)! <= 2/(m+2)! per coefficient),
    so a violation marks an internal bug.
    """
    h_op = h_multiplier(gamma, gamma.order)
    computed = operator_norm_trunc(h_op, Fraction(1))
    cap = 2 * diffeo_norm(gamma, Fraction(1)).value
    if computed.value > cap:
        raise InvariantViolation("h-multiplier norm exceeded its coefficient cap")
    return computed, NormValue(cap, "upper_bound")


def inversion_weight(multiplicities: Sequence[int]) -> Fraction:
    """Combinatorial weight U(k) of a coefficient-multiplicity tuple.

    With w = sum j k_j and s = sum k_j this is the ascending product
    (w+2)(w+3)...(w+s) times prod_j ((j+1)!)^(k_j), divided by (w+1)!.
    The ascending product is empty (= 1) when s <= 1.
    """
    if any(k < 0 for k in multiplicities):
        raise PreconditionError("multiplicities must be nonnegative")
    w = sum(j * k for j, k in enumerate(multiplicities, start=1))
    s = sum(multiplicities)
    numerator = 1
    for i in range(w + 2, w + s + 1):
        numerator *= i
    for j, k in enumerate(multiplicities, start=1):
        if k:
            numerator *= factorial(j + 1) ** k
    return Fraction(numerator, factorial(w + 1))


def enumerate_weight_tuples(max_weighted_sum: int) -> Iterator[tuple[int, ...]]:
    """All multiplicity tuples with sum j k_j <= max_weighted_sum.

    Tuples are emitted with trailing zeros trimmed; the empty tuple stands
    for the empty multi-index. Deterministic order: by weighted sum, then
    by the recursive partition enumeration.
    """
    if max_weighted_sum < 0:
        raise PreconditionError("bound must be nonnegative")

    def partitions(remaining: int, largest: int) -> Iterator[dict[int, int]]:
        if remaining == 0:
            yield {}
            return
        for part in range(min(remaining, largest), 0, -1):
            for count in range(remaining // part, 0, -1):
                for rest in partitions(remaining - part * count, part - 1):
                    out = dict(rest)
                    out[part] = count
                    yield out

    for w in range(max_weighted_sum + 1):
        for mult in partitions(w, w):
            if not mult:
                yield ()
            else:
                top = max(mult)
                yield tuple(mult.get(j, 0) for j in range(1, top + 1))


def exp_upper_bound(q: Fraction) -> Fraction:
    """Certified rational upper bound for exp(q), q >= 0.

    Truncated Taylor sum plus a geometric tail majorant: after m >= 2q
    terms the ratio between consecutive terms is below 1/2, so the tail is
    at most twice the first omitted term.
    """
    q = Fraction(q)
    if q < 0:
        raise PreconditionError("argument must be nonnegative")
    if q == 0:
        return Fraction(1)
    m = max(16, 2 * math.ceil(q))
    total = Fraction(1)
    term = Fraction(1)
    for i in range(1, m + 1):
        term = term * q / i
        total += term
    first_omitted = term * q / (m + 1)
    ratio = q / (m + 2)
    return total + first_omitted / (1 - ratio)


def inversion_norm_bound(gamma: FormalDiffeo) -> tuple[NormValue, NormValue]:
    """Coefficient norm of the inverse against its exponential majorant.

    Returns (partial, cap) with partial = sum_{n>=2} |c_n|/n! over the
    truncation and cap = exp_upper_bound(8 * sum_{j>=2} |a_j|/j!). The
    inequality partial <= cap holds for every input; a violation marks an
    internal bug, not bad data.
    """
    mu = invert_lagrange(gamma)
    partial = diffeo_norm(mu, Fraction(1)).value
    cap = exp_upper_bound(8 * diffeo_norm(gamma, Fraction(1)).value)
    if partial > cap:
        raise InvariantViolation(
            "inverse coefficient norm exceeded its exponential majorant"
        )
    return (
        NormValue(partial, "lower_approx"),
        NormValue(cap, "upper_bound"),
    )


# --- membership classification -------------------------------------------

_FAMILY_BUILDERS = {
    # name -> coefficient a_j as a function of (j, r)
    "geometric": lambda j, r: r ** j,
    "factorial": lambda j, r: factorial(j) * r ** j,
    "subfactorial": lambda j, r: factorial(j - 1) * r ** j,
    "factorial_squared": lambda j, r: Fraction(factorial(j)) ** 2 * r ** j,
}

MEMBERSHIP_RULES = tuple(sorted(_FAMILY_BUILDERS)) + ("user",)


def membership_coefficients(rule: str, order: int, r: Fraction,
                            coeffs: Sequence[Fraction] | None = None) -> FormalDiffeo:
    """Coefficient tail a_2..a_order for a named family, or the user list."""
    if order < 2:
        raise PreconditionError("membership needs order >= 2")
    if rule == "user":
        if not coeffs:
            raise PreconditionError("rule 'user' needs an explicit coefficient list")
        tail = [Fraction(c) for c in coeffs][: order - 1]
        tail += [_ZERO] * (order - 1 - len(tail))
        return FormalDiffeo(tuple(tail))
    try:
        build = _FAMILY_BUILDERS[rule]
    except KeyError:
        raise PreconditionError(f"unknown membership rule {rule!r}") from None
    r = Fraction(r)
    return FormalDiffeo(tuple(build(j, r) for j in range(2, order + 1)))


def _indicator(a: Fraction, j: int) -> float:
    # (|a_j| / j!)^(1/(j-1)); the j-th root tracks the growth class.
    if a == 0:
        return 0.0
    ratio = abs(a) / factorial(j)
    try:
        return float(ratio) ** (1.0 / (j - 1))
    except OverflowError:
        return math.inf


def membership_report(rule: str, order: int, r: Fraction = Fraction(1),
                      coeffs: Sequence[Fraction] | None = None,
                      sigmas: Sequence[Fraction] = DEFAULT_SIGMA_GRID) -> dict:
    """Growth diagnostics for a coefficient family.

    The indicator (|a_j|/j!)^(1/(j-1)) tends to 0 for tails lying in every
    sigma-weighted space, to a finite limit c for tails summable exactly
    when sigma < 1/c, and diverges for tails in none. Classification from a
    finite truncation is a heuristic: the tail ratio indicator(order) over
    indicator(order//2) is compared against fixed bands.
    """
    gamma = membership_coefficients(rule, order, r, coeffs)
    indicator = []
    values = {}
    for j in range(2, order + 1):
        w = _indicator(gamma.coefficient(j), j)
        values[j] = w
        indicator.append({"j": j, "value": w})
    partials = [
        {
            "sigma": sigma,
            "value": diffeo_norm(gamma, Fraction(sigma)).value,
        }
        for sigma in sigmas
    ]
    j_last = order
    j_mid = max(2, order // 2)
    w_last, w_mid = values[j_last], values[j_mid]
    if math.isinf(w_last):
        classification = "divergent"
    elif w_last == 0.0 or w_mid == 0.0:
        classification = "all_sigma"
    else:
        ratio = w_last / w_mid
        if ratio < 0.75:
            classification = "all_sigma"
        elif ratio > 1.25:
            classification = "divergent"
        else:
            classification = "small_sigma"
    report = {
        "kind": "membership",
        "rule": rule,
        "r": Fraction(r),
        "order": order,
        "indicator": indicator,
        "partial_norms": partials,
        "classification": classification,
    }
    if classification == "small_sigma":
        report["threshold_estimate"] = 1.0 / w_last
    return report
