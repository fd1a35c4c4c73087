"""Minor-polynomial linear program for the Ratio-Type bound, solved exactly.

The unknowns are the values x_i = f(theta_i) of a polynomial f with
f(theta_0) = 1.  Requiring all divided differences of order > k to vanish
forces deg f <= k; minimizing sum m(theta_i) x_i over x >= 0 gives the
best Ratio-Type bound obtainable with a nonnegative polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .spectra import Spectrum

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def divided_difference_row(thetas: Sequence[int], s: int) -> tuple[Fraction, ...]:
    """Coefficients c_0..c_s with f[theta_0, ..., theta_s] = sum c_i f(theta_i)."""
    if not 1 <= s < len(thetas):
        raise ValueError(f"order {s} out of range")
    pts = thetas[: s + 1]
    if len(set(pts)) != len(pts):
        raise ValueError("divided differences need distinct nodes")
    row = []
    for i, ti in enumerate(pts):
        den = 1
        for j, tj in enumerate(pts):
            if j != i:
                den *= ti - tj
        row.append(Fraction(1, den))
    return tuple(row)


def divided_difference(thetas: Sequence, values: Sequence) -> Fraction:
    """f[theta_0, ..., theta_s] by the Newton recursion on the given values."""
    if len(thetas) != len(values) or not thetas:
        raise ValueError("need one value per node")
    table = [Fraction(v) for v in values]
    for order in range(1, len(thetas)):
        table = [
            (table[i + 1] - table[i]) / (thetas[i + order] - thetas[i])
            for i in range(len(table) - 1)
        ]
    return table[0]


@dataclass(frozen=True)
class MinorLpProblem:
    """Rows are linear forms in x_0..x_r that must vanish; x_0 is fixed to 1."""

    thetas: tuple[int, ...]
    mults: tuple[int, ...]
    k: int
    equality_rows: tuple[tuple[Fraction, ...], ...]

    @property
    def objective(self) -> tuple[int, ...]:
        return self.mults

    @property
    def r(self) -> int:
        return len(self.thetas) - 1


@dataclass(frozen=True)
class LpSolution:
    status: str
    x: tuple[Fraction, ...] | None = None
    objective_value: Fraction | None = None


def build_minor_lp(spec: Spectrum, k: int) -> MinorLpProblem:
    r = spec.r
    if not 1 <= k <= r:
        raise ValueError(f"k must lie in 1..{r}, got {k}")
    rows = []
    for s in range(k + 1, r + 1):
        coeffs = divided_difference_row(spec.thetas, s)
        rows.append(coeffs + (Fraction(0),) * (r - s))
    return MinorLpProblem(spec.thetas, spec.mults, k, tuple(rows))


def simplex_min(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]):
    """Minimize c.x subject to A x = b, x >= 0, in exact arithmetic.

    Two-phase tableau simplex with Bland's rule.  Returns ``(status, x)``.
    """
    m, n = len(A), len(c)
    rows = []
    for ai, bi in zip(A, b):
        ai = [Fraction(v) for v in ai]
        bi = Fraction(bi)
        if bi < 0:
            ai, bi = [-v for v in ai], -bi
        rows.append(ai + [Fraction(int(i == len(rows))) for i in range(m)] + [bi])
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(pr: int, pc: int) -> None:
        piv = rows[pr][pc]
        rows[pr] = [v / piv for v in rows[pr]]
        for i, row in enumerate(rows):
            if i != pr and row[pc]:
                f = row[pc]
                rows[i] = [v - f * w for v, w in zip(row, rows[pr])]
        basis[pr] = pc

    def run(cost: list[Fraction], allowed: int) -> str:
        while True:
            # reduced costs of the current basis
            reduced = list(cost[:allowed])
            for i, bv in enumerate(basis):
                cb = cost[bv]
                if cb:
                    for j in range(allowed):
                        reduced[j] -= cb * rows[i][j]
            entering = next((j for j in range(allowed) if reduced[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(rows):
                if row[entering] > 0:
                    key = (row[-1] / row[entering], basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            pivot(best[1], entering)

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    run(phase1, width)
    if sum(rows[i][-1] for i, bv in enumerate(basis) if bv >= n) != 0:
        return INFEASIBLE, None
    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(rows):
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j] != 0), None)
            if col is None:
                del rows[i], basis[i]
                continue
            pivot(i, col)
        i += 1
    status = run([Fraction(v) for v in c] + [Fraction(0)] * m, n)
    if status != OPTIMAL:
        return status, None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = rows[i][-1]
    return OPTIMAL, x


def solve_exact(problem: MinorLpProblem) -> LpSolution:
    """Optimal x_0..x_r of the minor LP (x_0 = 1), or an infeasible/unbounded status."""
    A = [list(row[1:]) for row in problem.equality_rows]
    b = [-row[0] for row in problem.equality_rows]
    c = [Fraction(v) for v in problem.mults[1:]]
    status, x = simplex_min(A, b, c)
    if status != OPTIMAL:
        return LpSolution(status)
    full = (Fraction(1),) + tuple(x)
    value = sum((k * v for k, v in zip(problem.mults, full)), Fraction(0))
    return LpSolution(OPTIMAL, full, value)


def lp_bound(spec: Spectrum, k: int) -> int:
    """Floor of the minor-LP optimum, an upper bound on alpha_k."""
    solution = solve_exact(build_minor_lp(spec, k))
    if solution.status != OPTIMAL:
        raise ArithmeticError(f"minor LP is {solution.status}")
    return floor(solution.objective_value)
