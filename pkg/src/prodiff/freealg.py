"""Free algebra on two weighted generators, the enveloping algebra of the
formal vector fields, and exact quotient norms via linear programming.

The free side has generators of weight 1 and 2; a word is a tuple over
{1, 2} and its graded degree is the sum of its letters (word counts per
degree follow the Fibonacci numbers). The weighted l1 norm R_[t1,t2] puts
weight t1^(number of 1s) * t2^(number of 2s) on a word; it is
submultiplicative and monotone in (t1, t2).

Projection sends letter j to the degree-j basis field L_j and words to
products in the enveloping algebra. Elements there are kept in the
Poincare-Birkhoff-Witt basis of weakly increasing index tuples; the
straightening rewrite L_a L_b -> L_b L_a + (b - a) L_(a+b) for a > b is
confluent, which the verification suite checks by comparing leftmost and
rightmost rewrite strategies.

The quotient norm at unit scale of an element u is, per homogeneous
component, the minimum l1 norm over all word combinations projecting onto
that component; the minimum is an exact linear program (positive/negative
variable split, equality constraints in PBW coordinates) solved by the
rational simplex. Scaled norms follow from the grading action: component n
is multiplied by t^n, so the norm is sum_n t^n Q(u_n). Certified one-sided
companions: an upper bound from the iterated-bracket expression of each
L_n through L_1 and L_2, and a lower bound from the truncated operator norm
of the represented element on a t-weighted series space (the representation
sends L_1 and L_2 to operators of norm at most t and t^2/6, so every word
image has norm below its free norm at scale (t, t^2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping

from .errors import InvariantViolation, LPInfeasibleError, PreconditionError
from .norms import NormValue, operator_norm_trunc
from .series import FormalVectorField
from .simplex import l1_minimize
from .triangular import TriangularOperator, _field_matrix_raw

Word = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def word_degree(word: Word) -> int:
    return sum(word)


@lru_cache(maxsize=None)
def words_of_degree(degree: int) -> tuple[Word, ...]:
    """All words over {1, 2} of the given graded degree, in lexicographic order."""
    if degree < 0:
        return ()
    if degree == 0:
        return ((),)
    out = [(1,) + w for w in words_of_degree(degree - 1)]
    out.extend((2,) + w for w in words_of_degree(degree - 2))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def pbw_basis(degree: int) -> tuple[tuple[int, ...], ...]:
    """Weakly increasing index tuples of total degree, in lexicographic order."""
    if degree < 0:
        return ()
    if degree == 0:
        return ((),)

    def rec(remaining: int, minimum: int):
        if remaining == 0:
            yield ()
            return
        for first in range(minimum, remaining + 1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return tuple(sorted(rec(degree, 1)))


class NCPolynomial:
    """Finite rational combination of words in the free algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        clean: dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            if any(letter not in (1, 2) for letter in word):
                raise PreconditionError(f"letters must be 1 or 2, got {word}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[word] = clean.get(word, _ZERO) + coeff
        self.terms = {w: c for w, c in clean.items() if c != 0}

    @classmethod
    def from_word(cls, word: Word, coeff: Fraction = _ONE) -> "NCPolynomial":
        return cls({tuple(word): coeff})

    @classmethod
    def zero(cls) -> "NCPolynomial":
        return cls({})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NCPolynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"NCPolynomial({self.terms!r})"

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            out[word] = out.get(word, _ZERO) + coeff
        return NCPolynomial(out)

    def scale(self, factor: Fraction) -> "NCPolynomial":
        f = Fraction(factor)
        return NCPolynomial({w: f * c for w, c in self.terms.items()})

    def __mul__(self, other: "NCPolynomial") -> "NCPolynomial":
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = w1 + w2
                out[key] = out.get(key, _ZERO) + c1 * c2
        return NCPolynomial(out)

    def sorted_terms(self) -> tuple[tuple[Word, Fraction], ...]:
        return tuple(sorted(self.terms.items()))


def free_norm(p: NCPolynomial, t1: Fraction, t2: Fraction) -> NormValue:
    """Weighted l1 norm: sum |c_w| t1^(ones in w) t2^(twos in w). Exact."""
    t1, t2 = Fraction(t1), Fraction(t2)
    if t1 <= 0 or t2 <= 0:
        raise PreconditionError("weights must be positive")
    total = _ZERO
    for word, coeff in p.terms.items():
        ones = sum(1 for letter in word if letter == 1)
        twos = len(word) - ones
        total += abs(coeff) * t1 ** ones * t2 ** twos
    return NormValue(total, "exact")


@lru_cache(maxsize=None)
def _straighten_cached(seq: tuple[int, ...], leftmost: bool) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    # Rewrite L_a L_b -> L_b L_a + (b-a) L_(a+b) at the first (or last)
    # descent until the index tuple is weakly increasing. The swap lowers
    # the inversion count and the merge shortens the tuple, so this
    # terminates for any strategy.
    positions = range(len(seq) - 1) if leftmost else range(len(seq) - 2, -1, -1)
    pos = next((i for i in positions if seq[i] > seq[i + 1]), None)
    if pos is None:
        return ((seq, _ONE),)
    a, b = seq[pos], seq[pos + 1]
    out: dict[tuple[int, ...], Fraction] = {}
    for mono, coeff in _straighten_cached(seq[:pos] + (b, a) + seq[pos + 2:], leftmost):
        out[mono] = out.get(mono, _ZERO) + coeff
    factor = Fraction(b - a)
    for mono, coeff in _straighten_cached(seq[:pos] + (a + b,) + seq[pos + 2:], leftmost):
        out[mono] = out.get(mono, _ZERO) + factor * coeff
    return tuple(sorted((m, c) for m, c in out.items() if c != 0))


class EnvelopingElement:
    """Element of the enveloping algebra in the PBW basis.

    components[n] maps weakly increasing index tuples of total degree n to
    rational coefficients; degree 0 holds the multiple of the unit under
    the empty tuple.
    """

    __slots__ = ("components",)

    def __init__(self, components: Mapping[int, Mapping[tuple[int, ...], Fraction]] | None = None):
        clean: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for degree, monos in (components or {}).items():
            for mono, coeff in monos.items():
                mono = tuple(mono)
                if any(i < 1 for i in mono):
                    raise PreconditionError(f"indices must be >= 1, got {mono}")
                if any(mono[i] > mono[i + 1] for i in range(len(mono) - 1)):
                    raise PreconditionError(f"index tuple {mono} is not weakly increasing")
                if sum(mono) != degree:
                    raise PreconditionError(
                        f"index tuple {mono} has degree {sum(mono)}, filed under {degree}"
                    )
                coeff = Fraction(coeff)
                if coeff != 0:
                    level = clean.setdefault(int(degree), {})
                    level[mono] = level.get(mono, _ZERO) + coeff
        self.components = {
            n: {m: c for m, c in level.items() if c != 0}
            for n, level in clean.items()
        }
        self.components = {n: lvl for n, lvl in self.components.items() if lvl}

    @classmethod
    def zero(cls) -> "EnvelopingElement":
        return cls({})

    @classmethod
    def unit(cls, coeff: Fraction = _ONE) -> "EnvelopingElement":
        return cls({0: {(): Fraction(coeff)}})

    @classmethod
    def basis_field(cls, degree: int, coeff: Fraction = _ONE) -> "EnvelopingElement":
        if degree < 1:
            raise PreconditionError("basis field degree must be >= 1")
        return cls({degree: {(degree,): Fraction(coeff)}})

    @classmethod
    def from_field(cls, field: FormalVectorField) -> "EnvelopingElement":
        comps: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for j, p in enumerate(field.coeffs, start=1):
            if p != 0:
                comps[j] = {(j,): p}
        return cls(comps)

    @classmethod
    def from_products(cls, products: Mapping[tuple[int, ...], Fraction],
                      strategy: str = "leftmost") -> "EnvelopingElement":
        """Straighten a combination of arbitrary index products into the basis."""
        leftmost = _strategy_flag(strategy)
        comps: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for seq, coeff in products.items():
            seq = tuple(seq)
            if any(i < 1 for i in seq):
                raise PreconditionError(f"indices must be >= 1, got {seq}")
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            for mono, c in _straighten_cached(seq, leftmost):
                level = comps.setdefault(sum(mono), {})
                level[mono] = level.get(mono, _ZERO) + coeff * c
        return cls(comps)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EnvelopingElement) and self.components == other.components

    def __repr__(self) -> str:
        return f"EnvelopingElement({self.components!r})"

    def is_zero(self) -> bool:
        return not self.components

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.components))

    def component(self, degree: int) -> dict[tuple[int, ...], Fraction]:
        return dict(self.components.get(degree, {}))

    def homogeneous_part(self, degree: int) -> "EnvelopingElement":
        level = self.components.get(degree)
        return EnvelopingElement({degree: level} if level else {})

    def __add__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        comps: dict[int, dict[tuple[int, ...], Fraction]] = {
            n: dict(level) for n, level in self.components.items()
        }
        for n, level in other.components.items():
            mine = comps.setdefault(n, {})
            for mono, coeff in level.items():
                mine[mono] = mine.get(mono, _ZERO) + coeff
        return EnvelopingElement(comps)

    def scale(self, factor: Fraction) -> "EnvelopingElement":
        f = Fraction(factor)
        return EnvelopingElement({
            n: {m: f * c for m, c in level.items()}
            for n, level in self.components.items()
        })

    def __mul__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        products: dict[tuple[int, ...], Fraction] = {}
        for _, level in self.components.items():
            for mono1, c1 in level.items():
                for _, level2 in other.components.items():
                    for mono2, c2 in level2.items():
                        key = mono1 + mono2
                        products[key] = products.get(key, _ZERO) + c1 * c2
        return EnvelopingElement.from_products(products)

    def scale_graded(self, t: Fraction) -> "EnvelopingElement":
        """Grading action: multiply the degree-n component by t^n."""
        t = Fraction(t)
        return EnvelopingElement({
            n: {m: t ** n * c for m, c in level.items()}
            for n, level in self.components.items()
        })

    def max_degree(self) -> int:
        return max(self.components, default=0)


def _strategy_flag(strategy: str) -> bool:
    if strategy == "leftmost":
        return True
    if strategy == "rightmost":
        return False
    raise PreconditionError(f"unknown straightening strategy {strategy!r}")


def pbw_straighten(products: Mapping[tuple[int, ...], Fraction],
                   strategy: str = "leftmost") -> EnvelopingElement:
    """Rewrite arbitrary products of basis fields into the PBW basis."""
    return EnvelopingElement.from_products(products, strategy)


def project_word(word: Word) -> EnvelopingElement:
    """Image of a free word: letter j becomes the degree-j basis field."""
    if any(letter not in (1, 2) for letter in word):
        raise PreconditionError(f"letters must be 1 or 2, got {word}")
    return EnvelopingElement.from_products({tuple(word): _ONE})


def project(p: NCPolynomial) -> EnvelopingElement:
    """Algebra homomorphism from the free algebra onto the enveloping algebra."""
    out = EnvelopingElement.zero()
    for word, coeff in p.sorted_terms():
        out = out + project_word(word).scale(coeff)
    return out


@lru_cache(maxsize=None)
def _word_images_matrix(degree: int) -> tuple[tuple[Fraction, ...], ...]:
    # Row r, column w: coefficient of pbw_basis(degree)[r] in the image of
    # words_of_degree(degree)[w].
    words = words_of_degree(degree)
    basis = pbw_basis(degree)
    index = {mono: r for r, mono in enumerate(basis)}
    columns = []
    for word in words:
        col = [_ZERO] * len(basis)
        for mono, coeff in _straighten_cached(tuple(word), True):
            col[index[mono]] = coeff
        columns.append(col)
    return tuple(
        tuple(columns[w][r] for w in range(len(words)))
        for r in range(len(basis))
    )


@dataclass(frozen=True)
class QuotientNormResult:
    """Exact quotient norm with its optimal word certificates per degree."""

    value: Fraction
    by_degree: tuple[tuple[int, Fraction], ...]
    certificate: tuple[tuple[int, tuple[tuple[Word, Fraction], ...]], ...]


def quotient_norm_result(u: EnvelopingElement, pivot: str = "bland") -> QuotientNormResult:
    """Minimum free-algebra l1 norm over preimages, per homogeneous component.

    The norm is additive over components, so each degree is an independent
    linear program: minimize the l1 norm of word coefficients subject to
    projecting onto the component in PBW coordinates. Projection is onto
    (the basis fields generate), so the programs are always feasible; an
    infeasible report marks an internal bug.
    """
    total = _ZERO
    by_degree = []
    certificate = []
    for degree in u.degrees():
        level = u.components[degree]
        if degree == 0:
            coeff = level[()]
            total += abs(coeff)
            by_degree.append((0, abs(coeff)))
            certificate.append((0, (((), coeff),)))
            continue
        words = words_of_degree(degree)
        basis = pbw_basis(degree)
        matrix = _word_images_matrix(degree)
        rhs = [level.get(mono, _ZERO) for mono in basis]
        try:
            value, solution = l1_minimize([list(row) for row in matrix], rhs, pivot)
        except LPInfeasibleError as exc:
            raise InvariantViolation(
                f"degree-{degree} component not in the projection image"
            ) from exc
        total += value
        by_degree.append((degree, value))
        chosen = tuple(
            (words[w], solution[w]) for w in range(len(words)) if solution[w] != 0
        )
        certificate.append((degree, chosen))
    return QuotientNormResult(total, tuple(by_degree), tuple(certificate))


def quotient_norm(u: EnvelopingElement, pivot: str = "bland") -> NormValue:
    """Quotient norm at unit scale; exact via the rational simplex."""
    return NormValue(quotient_norm_result(u, pivot).value, "exact")


def quotient_norm_scaled(u: EnvelopingElement, t: Fraction, pivot: str = "bland") -> NormValue:
    """Quotient norm at scale t: unit-scale norm after the grading action."""
    t = Fraction(t)
    if t <= 0:
        raise PreconditionError("t must be positive")
    return NormValue(quotient_norm_result(u.scale_graded(t), pivot).value, "exact")


@dataclass(frozen=True)
class QuotientUpperBound:
    """Certified upper bound for the scaled quotient norm of a vector field.

    ``certified``: t|p1| + (1/4) sum_{j>=2} |p_j| (2t)^j / (j-2)!, valid for
    every t because the degree-1 basis field has scaled norm exactly t.
    ``as_displayed``: the same expression with first term |p1| (no t); it is
    tighter for t < 1 but fails to dominate for t > 1, so it is reported as
    data, never used as a certificate.
    """

    certified: NormValue
    as_displayed: Fraction


def basis_quotient_upper(degree: int, t: Fraction) -> Fraction:
    """Upper bound for the scaled quotient norm of the degree-n basis field.

    Exact t and t^2 for degrees 1 and 2; for n >= 3 the recursion
    L_n = [L_1, L_(n-1)]/(n-2) gives 2^(n-2) t^n / (n-2)!.
    """
    t = Fraction(t)
    if degree < 1:
        raise PreconditionError("degree must be >= 1")
    if degree == 1:
        return t
    if degree == 2:
        return t * t
    return Fraction(2) ** (degree - 2) * t ** degree / factorial(degree - 2)


def field_quotient_upper(field: FormalVectorField, t: Fraction) -> QuotientUpperBound:
    t = Fraction(t)
    if t <= 0:
        raise PreconditionError("t must be positive")
    tail = _ZERO
    for j, p in enumerate(field.coeffs, start=1):
        if j >= 2 and p != 0:
            tail += abs(p) * basis_quotient_upper(j, t)
    p1 = abs(field.coefficient(1))
    certified = t * p1 + tail
    return QuotientUpperBound(
        NormValue(certified, "upper_bound"),
        p1 + tail,
    )


def element_matrix(u: EnvelopingElement, dim: int) -> TriangularOperator:
    """Represent an element as a triangular operator on degrees 0..dim-1.

    Basis fields act as derivation matrices, monomials as products (leftmost
    factor applied last), the unit as the identity.
    """
    if dim < 2:
        raise PreconditionError("dimension must be >= 2")

    basis_cache: dict[int, TriangularOperator] = {}

    def basis_matrix(index: int) -> TriangularOperator:
        if index not in basis_cache:
            coeffs = tuple(
                _ONE if j == index else _ZERO for j in range(1, index + 1)
            )
            basis_cache[index] = _field_matrix_raw(coeffs, dim - 1)
        return basis_cache[index]

    total = TriangularOperator.zero(dim)
    for degree in u.degrees():
        for mono, coeff in sorted(u.components[degree].items()):
            if mono == ():
                term = TriangularOperator.identity(dim)
            else:
                term = basis_matrix(mono[0])
                for index in mono[1:]:
                    term = term @ basis_matrix(index)
            total = total + term.scale(coeff)
    return total


# Scaled-representation generator caps: the degree-1 basis field has column
# norms m t/(m+1) < t and the degree-2 field m t^2/((m+1)(m+2)) <= t^2/6,
# so the represented element is bounded by the free norm at scale (t, t^2)
# and the truncated operator norm below certifies a lower bound at scale t.
GENERATOR_CAPS = (("L1", Fraction(1)), ("L2", Fraction(1, 6)))


@dataclass(frozen=True)
class QuotientLowerBound:
    """Certified lower bound for the scaled quotient norm."""

    value: NormValue
    scale: Fraction
    halved_scale_reading: Fraction


def quotient_lower_bound(u: EnvelopingElement, t: Fraction, columns: int) -> QuotientLowerBound:
    """Truncated operator norm of the represented element, certified at scale t.

    The certificate is sound because the representation maps the degree-1
    and degree-2 generators to operators of norm at most t and t^2 (their
    exact suprema are t, approached but not attained along the columns,
    and t^2/6). The t/2 column-1 reading of the degree-1 generator norm
    would certify the stronger scale t/2; it is reported as a diagnostic,
    not used. Needs columns >= 1 so the witnessing column of a bare field
    is retained.
    """
    t = Fraction(t)
    if t <= 0:
        raise PreconditionError("t must be positive")
    if columns < 1:
        raise PreconditionError("columns must be >= 1")
    if u.is_zero():
        return QuotientLowerBound(NormValue(_ZERO, "lower_approx"), t, t / 2)
    dim = columns + 1 + u.max_degree()
    norm = operator_norm_trunc(element_matrix(u, dim), t, columns)
    return QuotientLowerBound(norm, t, t / 2)


def basis_norm_table(t: Fraction, nmax: int, columns: int = 40,
                     pivot: str = "bland") -> list[dict]:
    """Exact scaled quotient norms of the basis fields with their certificates.

    Columns per row: the exact LP value, the bracket-recursion upper bound,
    the represented-operator lower bound at certified scale t, and the
    column-1 series lower bounds t^n/(n+1)! (certified) and (2t)^n/(n+1)!
    (the halved-scale reading, diagnostic). Flags record the certified
    sandwich and the diagnostic comparison.
    """
    t = Fraction(t)
    if t <= 0:
        raise PreconditionError("t must be positive")
    if nmax < 1:
        raise PreconditionError("nmax must be >= 1")
    rows = []
    for n in range(1, nmax + 1):
        element = EnvelopingElement.basis_field(n)
        exact = quotient_norm_scaled(element, t, pivot).value
        upper = basis_quotient_upper(n, t)
        lower = quotient_lower_bound(element, t, columns)
        series_lower = t ** n / factorial(n + 1)
        series_lower_2t = (2 * t) ** n / factorial(n + 1)
        rows.append({
            "n": n,
            "exact": exact,
            "upper": upper,
            "lower_operator": lower.value.value,
            "lower_operator_witness": lower.value.witness_column,
            "lower_series_t": series_lower,
            "lower_series_2t": series_lower_2t,
            "sandwich_ok": lower.value.value <= exact <= upper
            and series_lower <= exact,
            "halved_reading_ok": series_lower_2t <= exact,
        })
    return rows
