"""Exact simplex over the rationals.

Two-phase primal simplex on a dense tableau of Fractions, so optima are
exact. The default pivot rule is Bland's (smallest eligible index for both
the entering and the leaving variable), which cannot cycle; "dantzig"
(most negative reduced cost) is available as an alternative and is fine on
the small nondegenerate systems produced here but has no anti-cycling
guarantee. Intended for the little l1-minimization systems this package
generates: problems have tens of rows and a few hundred columns, so no
sparsity or numerical scaling is attempted.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import LPInfeasibleError, LPUnboundedError, PreconditionError

_ZERO = Fraction(0)
_ONE = Fraction(1)

PIVOT_RULES = ("bland", "dantzig")


def _entering(costs: list[Fraction], ncols: int, pivot: str) -> int | None:
    if pivot == "bland":
        for j in range(ncols):
            if costs[j] < 0:
                return j
        return None
    best = None
    best_val = _ZERO
    for j in range(ncols):
        if costs[j] < best_val:
            best = j
            best_val = costs[j]
    return best


def _pivot_step(tableau: list[list[Fraction]], costs: list[Fraction],
                basis: list[int], row: int, col: int) -> None:
    pivot_row = tableau[row]
    inv = _ONE / pivot_row[col]
    if inv != 1:
        tableau[row] = pivot_row = [v * inv for v in pivot_row]
    for i, other in enumerate(tableau):
        if i == row:
            continue
        factor = other[col]
        if factor != 0:
            tableau[i] = [a - factor * b for a, b in zip(other, pivot_row)]
    factor = costs[col]
    if factor != 0:
        for j, b in enumerate(pivot_row):
            costs[j] -= factor * b
    basis[row] = col


def _optimize(tableau: list[list[Fraction]], costs: list[Fraction],
              basis: list[int], ncols: int, pivot: str) -> None:
    while True:
        col = _entering(costs, ncols, pivot)
        if col is None:
            return
        row = None
        best_ratio = None
        for i, tab_row in enumerate(tableau):
            coeff = tab_row[col]
            if coeff > 0:
                ratio = tab_row[-1] / coeff
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[row])):
                    best_ratio = ratio
                    row = i
        if row is None:
            raise LPUnboundedError("objective is unbounded below")
        _pivot_step(tableau, costs, basis, row, col)


def solve_lp(a, b, c, pivot: str = "bland"):
    """Minimize c.x subject to a x = b, x >= 0; returns (value, x).

    Raises LPInfeasibleError when no feasible point exists and
    LPUnboundedError when the objective has no finite minimum. Redundant
    equality rows are tolerated (dropped after phase 1).
    """
    if pivot not in PIVOT_RULES:
        raise PreconditionError(f"unknown pivot rule {pivot!r}")
    m = len(a)
    n = len(c)
    cost_vec = [Fraction(v) for v in c]
    if any(len(row) != n for row in a):
        raise PreconditionError("constraint matrix rows must match the cost length")
    if len(b) != m:
        raise PreconditionError("right-hand side length must match the row count")
    if m == 0:
        if any(v < 0 for v in cost_vec):
            raise LPUnboundedError("objective is unbounded below")
        return _ZERO, [_ZERO] * n

    # Phase 1: artificial variables n..n+m-1, minimize their sum.
    tableau: list[list[Fraction]] = []
    for i in range(m):
        rhs = Fraction(b[i])
        row = [Fraction(v) for v in a[i]]
        if rhs < 0:
            rhs = -rhs
            row = [-v for v in row]
        art = [_ZERO] * m
        art[i] = _ONE
        tableau.append(row + art + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    costs = [_ZERO] * (width + 1)
    for j in range(width + 1):
        acc = _ZERO
        for i in range(m):
            acc += tableau[i][j]
        costs[j] = (_ONE if n <= j < width else _ZERO) - acc
    _optimize(tableau, costs, basis, width, pivot)
    if -costs[-1] != 0:
        raise LPInfeasibleError("equality system has no nonnegative solution")

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep_rows = []
    for i in range(m):
        if basis[i] < n:
            keep_rows.append(i)
            continue
        pivot_col = next((j for j in range(n) if tableau[i][j] != 0), None)
        if pivot_col is None:
            continue  # all-zero row: redundant constraint
        _pivot_step(tableau, costs, basis, i, pivot_col)
        keep_rows.append(i)
    tableau = [tableau[i][:n] + [tableau[i][-1]] for i in keep_rows]
    basis = [basis[i] for i in keep_rows]

    # Phase 2 with the real costs.
    costs = list(cost_vec) + [_ZERO]
    for i, var in enumerate(basis):
        factor = cost_vec[var]
        if factor != 0:
            for j in range(n + 1):
                costs[j] -= factor * tableau[i][j]
    _optimize(tableau, costs, basis, n, pivot)

    x = [_ZERO] * n
    for i, var in enumerate(basis):
        x[var] = tableau[i][-1]
    value = sum((cost_vec[j] * x[j] for j in range(n)), _ZERO)
    return value, x


def l1_minimize(a, b, pivot: str = "bland"):
    """Minimize the l1 norm of x subject to a x = b; returns (value, x).

    Standard positive/negative split: x = u - v with u, v >= 0 and cost
    1 on every split variable. Always feasible systems stay feasible and
    the objective is bounded below by 0, so unboundedness cannot occur.
    """
    n = len(a[0]) if a else 0
    doubled = [list(row) + [-v for v in row] for row in a]
    value, uv = solve_lp(doubled, b, [_ONE] * (2 * n), pivot)
    x = [uv[j] - uv[n + j] for j in range(n)]
    return value, x
