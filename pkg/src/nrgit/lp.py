"""Two-phase primal simplex over the rationals with Bland's rule.

Solves ``max c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0`` exactly.
Bland's rule guarantees termination; there is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import q

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    inv = 1 / T[r][c]
    T[r] = [x * inv for x in T[r]]
    pr = T[r]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [x - f * y for x, y in zip(row, pr)]
    basis[r] = c


def _run(T, basis, cost, allowed) -> str:
    """Maximize ``cost`` over the tableau in place; columns outside ``allowed`` never enter."""
    ncols = len(cost)
    while True:
        enter = None
        for j in range(ncols):
            if not allowed[j] or j in basis:
                continue
            rc = cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(len(T))), Fraction(0))
            if rc > 0:
                enter = j
                break
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return UNBOUNDED
        _pivot(T, basis, leave, enter)


def solve_lp(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
) -> LPResult:
    n = len(c)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_slack = len(A_ub)
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [q(x) for x in a] + [Fraction(0)] * n_slack
        row[n + k] = Fraction(1)
        rows.append(row)
        rhs.append(q(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([q(x) for x in a] + [Fraction(0)] * n_slack)
        rhs.append(q(b))
    for row in rows:
        if len(row) != n + n_slack:
            raise ValueError("constraint row has the wrong length")
    m = len(rows)
    nv = n + n_slack
    # phase 1: one artificial per row, rhs made nonnegative
    T = []
    for i in range(m):
        row, b = rows[i], rhs[i]
        if b < 0:
            row, b = [-x for x in row], -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [b])
    basis = [nv + i for i in range(m)]
    total = nv + m
    cost1 = [Fraction(0)] * nv + [Fraction(-1)] * m
    _run(T, basis, cost1, [True] * total)
    if any(T[i][-1] != 0 for i in range(m) if basis[i] >= nv):
        return LPResult(INFEASIBLE)
    # drive remaining (zero-level) artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, j)
        i += 1
    cost2 = [q(x) for x in c] + [Fraction(0)] * n_slack + [Fraction(0)] * m
    allowed = [True] * nv + [False] * m
    status = _run(T, basis, cost2, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * nv
    for i, bvar in enumerate(basis):
        if bvar < nv:
            x[bvar] = T[i][-1]
    xs = tuple(x[:n])
    value = sum((q(ci) * xi for ci, xi in zip(c, xs)), Fraction(0))
    return LPResult(OPTIMAL, xs, value)


def feasible_point(A_eq, b_eq, A_ub=(), b_ub=(), nvars: int | None = None) -> tuple | None:
    """A nonnegative solution of the constraints, or None."""
    if nvars is None:
        nvars = len(A_eq[0]) if A_eq else len(A_ub[0])
    res = solve_lp([0] * nvars, A_eq, b_eq, A_ub, b_ub)
    return res.x if res.status == OPTIMAL else None
