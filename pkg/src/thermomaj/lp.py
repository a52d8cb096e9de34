"""Exact feasibility and optimization for small linear programs.

A dense two-phase primal simplex over `fractions.Fraction` for programs in
equality form

    min / max  c^T x    subject to    A x = b,  x >= 0.

Bland's smallest-index rule is used for both the entering and the leaving
variable, which rules out cycling, so the solver always terminates.  Every
pivot is exact; feasibility verdicts are decisions, not numerics.  Intended
for desk-scale problems (tens of variables).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError
from .exact import ZERO, Vec

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Vec | None
    value: Fraction | None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    inv = 1 / piv
    tableau[row] = [e * inv for e in tableau[row]]
    prow = tableau[row]
    for i, r in enumerate(tableau):
        if i == row:
            continue
        f = r[col]
        if f:
            tableau[i] = [a - f * b for a, b in zip(r, prow)]
    basis[row] = col


def _bland_step(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """One simplex iteration; returns 'optimal', 'unbounded' or 'pivoted'."""
    cost = tableau[-1]
    col = next((j for j in range(ncols) if cost[j] < 0), None)
    if col is None:
        return OPTIMAL
    best_ratio = None
    best_row = None
    for i in range(len(tableau) - 1):
        a = tableau[i][col]
        if a > 0:
            ratio = tableau[i][-1] / a
            if (
                best_ratio is None
                or ratio < best_ratio
                or (ratio == best_ratio and basis[i] < basis[best_row])
            ):
                best_ratio = ratio
                best_row = i
    if best_row is None:
        return UNBOUNDED
    _pivot(tableau, basis, best_row, col)
    return "pivoted"


def _run_simplex(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    while True:
        outcome = _bland_step(tableau, basis, ncols)
        if outcome != "pivoted":
            return outcome


def _reduce_cost_row(tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> None:
    row = cost + [ZERO]
    for i, b in enumerate(basis):
        coef = row[b]
        if coef:
            row = [a - coef * e for a, e in zip(row, tableau[i])]
    tableau.append(row)


def solve_lp(
    c: list[Fraction],
    a_rows: list[list[Fraction]],
    b: list[Fraction],
    maximize: bool = False,
) -> LPResult:
    """Solve min (or max) c^T x subject to A x = b, x >= 0, exactly."""
    n = len(c)
    m = len(a_rows)
    if len(b) != m or any(len(row) != n for row in a_rows):
        raise DimensionError("inconsistent LP dimensions")
    c = [Fraction(v) for v in c]
    if maximize:
        c = [-v for v in c]

    # Phase one: artificial variable per row, minimize their sum.
    tableau: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(v) for v in a_rows[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [ZERO] * m
        art[i] = Fraction(1)
        tableau.append(row + art + [rhs])
    basis = [n + i for i in range(m)]
    _reduce_cost_row(tableau, basis, [ZERO] * n + [Fraction(1)] * m)
    _run_simplex(tableau, basis, n + m)
    if -tableau[-1][-1] != 0:
        return LPResult(INFEASIBLE, None, None)

    # Drive surviving artificials out of the basis; rows that cannot be
    # pivoted are redundant constraints and are dropped.
    drop: list[int] = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is None:
                drop.append(i)
            else:
                _pivot(tableau, basis, i, col)
    tableau.pop()  # phase-one cost row
    keep = [i for i in range(m) if i not in drop]
    tableau = [[tableau[i][j] for j in range(n)] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # Phase two with the real objective.
    _reduce_cost_row(tableau, basis, c)
    status = _run_simplex(tableau, basis, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)
    x = [ZERO] * n
    for i, bvar in enumerate(basis):
        x[bvar] = tableau[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    if maximize:
        value = -value
    return LPResult(OPTIMAL, tuple(x), value)


def feasible_point(a_rows: list[list[Fraction]], b: list[Fraction]) -> Vec | None:
    """A nonnegative solution of A x = b, or None if none exists."""
    n = len(a_rows[0]) if a_rows else 0
    result = solve_lp([ZERO] * n, a_rows, b)
    return result.x if result.status == OPTIMAL else None
