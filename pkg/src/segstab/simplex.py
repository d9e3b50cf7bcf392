"""Exact rational simplex for covering LPs.

Solves  min c.x  s.t.  A x >= b,  x >= 0  with dense two-phase tableau
pivoting over Fractions and Bland's rule, so the optimum, the solution and
the dual values are exact.  Intended for desk-scale instances; large
instances go through the float path in :mod:`segstab.setcover`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class SimplexError(RuntimeError):
    pass


@dataclass
class LPResult:
    x: list[Fraction]
    objective: Fraction
    duals: list[Fraction]  # one per covering constraint, >= 0


def solve_covering_lp(
    columns: Sequence[Sequence[int]],
    costs: Sequence[Fraction],
    n_rows: int,
    rhs: Sequence[Fraction] | None = None,
) -> LPResult:
    """Exact optimum of min c.x s.t. sum over columns covering row i >= b_i.

    ``columns[j]`` lists the row indices covered by variable j.  Every row
    must be coverable, otherwise the LP is infeasible and this raises.
    """
    m = n_rows
    n = len(columns)
    b = [ONE] * m if rhs is None else [Fraction(v) for v in rhs]
    # Variables: x_0..x_{n-1}, surplus s_0..s_{m-1}, artificial a_0..a_{m-1}.
    width = n + 2 * m
    rows: list[list[Fraction]] = []
    for i in range(m):
        row = [ZERO] * (width + 1)
        for j, col in enumerate(columns):
            if i in col:
                row[j] = ONE
        row[n + i] = -ONE
        row[n + m + i] = ONE
        row[width] = b[i]
        rows.append(row)
    basis = [n + m + i for i in range(m)]

    def pivot(r: int, c: int) -> None:
        piv = rows[r][c]
        if piv == 0:
            raise SimplexError("zero pivot")
        inv = ONE / piv
        rows[r] = [v * inv for v in rows[r]]
        prow = rows[r]
        for i in range(m + 1):
            if i == r:
                continue
            f = rows[i][c]
            if f != 0:
                ri = rows[i]
                rows[i] = [ri[k] - f * prow[k] for k in range(width + 1)]
        basis[r] = c

    def run(obj: list[Fraction], allowed: int) -> None:
        # obj row stored at rows[m]; Bland's rule: lowest eligible index.
        while True:
            z = rows[m]
            enter = -1
            for j in range(allowed):
                if z[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return
            leave, best = -1, None
            for i in range(m):
                a = rows[i][enter]
                if a > 0:
                    ratio = rows[i][width] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        leave, best = i, ratio
            if leave < 0:
                raise SimplexError("unbounded LP")
            pivot(leave, enter)

    # Phase 1: minimize sum of artificials.
    phase1 = [ZERO] * (width + 1)
    for j in range(n + m, width):
        phase1[j] = ONE
    rows.append(phase1)
    for i in range(m):  # price out initial basis
        rows[m] = [rows[m][k] - rows[i][k] for k in range(width + 1)]
    run(rows[m], width)
    if -rows[m][width] != 0:
        raise SimplexError("infeasible covering LP (uncoverable row)")
    # Drive leftover artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= n + m:
            for j in range(n + m):
                if rows[i][j] != 0:
                    pivot(i, j)
                    break

    # Phase 2 objective.
    obj = [ZERO] * (width + 1)
    for j in range(n):
        obj[j] = Fraction(costs[j])
    rows[m] = obj
    for i in range(m):
        cb = obj[basis[i]] if basis[i] < n else ZERO
        if cb != 0:
            rows[m] = [rows[m][k] - cb * rows[i][k] for k in range(width + 1)]
    run(rows[m], n + m)  # artificials stay out

    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = rows[i][width]
    objective = sum((Fraction(costs[j]) * x[j] for j in range(n)), ZERO)
    # Dual of covering row i = reduced cost of its surplus column.
    duals = [rows[m][n + i] for i in range(m)]
    return LPResult(x, objective, duals)
