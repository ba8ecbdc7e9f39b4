"""Exact rational linear programming.

``solve`` maximizes a linear objective over a :class:`ConstraintForm`.
Equality rows are presolved away by writing ``x = x_p + N t``; the reduced
problem over free variables ``t = t+ - t-`` is solved with a two-phase
dense tableau simplex using Bland's rule, which cannot cycle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .forms import ConstraintForm
from .rational import ZERO, QVector, dot, nullspace_basis, solve_affine, unit, vector


class Status(enum.Enum):
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    OPTIMAL = "optimal"


@dataclass(frozen=True)
class LinearProgram:
    """Maximize ``<objective, x>`` subject to ``constraints``."""

    objective: QVector
    constraints: ConstraintForm

    def __post_init__(self):
        object.__setattr__(self, "objective", vector(self.objective))
        if len(self.objective) != self.constraints.dim:
            raise ValueError("objective and constraints have different dimensions")


@dataclass(frozen=True)
class LPResult:
    status: Status
    point: Optional[QVector] = None
    value: Optional[Fraction] = None
    # unboundedness certificate: a feasible direction with positive objective
    ray: Optional[QVector] = None
    # infeasibility certificate: optimum of the phase-one problem (< 0)
    phase_one_value: Optional[Fraction] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Tableau:
    """Dense simplex tableau for ``max c x`` s.t. ``rows x = rhs``, ``x >= 0``."""

    def __init__(self, rows, rhs, basis):
        self.rows = [list(r) for r in rows]
        self.rhs = list(rhs)
        self.basis = list(basis)

    def reduced_costs(self, cost):
        ncols = len(cost)
        red = list(cost)
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                row = self.rows[i]
                for j in range(ncols):
                    if row[j]:
                        red[j] -= cb * row[j]
        return red

    def pivot(self, r, c):
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            row = [a / piv for a in row]
            self.rows[r] = row
            self.rhs[r] /= piv
        for i in range(len(self.rows)):
            if i != r:
                f = self.rows[i][c]
                if f:
                    self.rows[i] = [a - f * b for a, b in zip(self.rows[i], row)]
                    self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def run(self, cost, allowed):
        """Bland's rule iterations; returns ``None`` at optimum or the
        entering column of an unbounded edge."""
        while True:
            red = self.reduced_costs(cost)
            enter = next((j for j in allowed if red[j] > 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter
            self.pivot(best[1], enter)

    def solution(self, ncols):
        x = [ZERO] * ncols
        for i, bv in enumerate(self.basis):
            x[bv] = self.rhs[i]
        return x


def _solve_free(c: Sequence, G: Sequence[Sequence], h: Sequence):
    """Maximize ``<c, t>`` over ``{t free : G t <= h}``.

    Returns ``(status, t, ray, phase_one_value)``.
    """
    k = len(c)
    m = len(G)
    nstruct = 2 * k + m
    rows, rhs, basis, art_rows = [], [], [], []
    for i in range(m):
        row = list(G[i]) + [-a for a in G[i]] + [ZERO] * m
        row[2 * k + i] = Fraction(1)
        b = h[i]
        if b < 0:
            row = [-a for a in row]
            b = -b
            art_rows.append(i)
        rows.append(row)
        rhs.append(b)
    nart = len(art_rows)
    ncols = nstruct + nart
    for i in range(m):
        rows[i] = rows[i] + [ZERO] * nart
    for j, i in enumerate(art_rows):
        rows[i][nstruct + j] = Fraction(1)
    for i in range(m):
        basis.append(2 * k + i)
    for j, i in enumerate(art_rows):
        basis[i] = nstruct + j
    tab = _Tableau(rows, rhs, basis)
    phase_one = None
    if nart:
        cost1 = [ZERO] * nstruct + [Fraction(-1)] * nart
        tab.run(cost1, range(ncols))
        x = tab.solution(ncols)
        phase_one = -sum(x[nstruct:], ZERO)
        if phase_one < 0:
            return Status.INFEASIBLE, None, None, phase_one
        # drive artificial variables out of the basis
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= nstruct:
                col = next((j for j in range(nstruct) if tab.rows[i][j] != 0), None)
                if col is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1
        tab.rows = [r[:nstruct] for r in tab.rows]
    cost = list(c) + [-a for a in c] + [ZERO] * m
    enter = tab.run(cost, range(nstruct))
    x = tab.solution(nstruct)
    t = tuple(x[j] - x[k + j] for j in range(k))
    if enter is not None:
        d = [ZERO] * nstruct
        d[enter] = Fraction(1)
        for i, bv in enumerate(tab.basis):
            d[bv] = -tab.rows[i][enter]
        ray = tuple(d[j] - d[k + j] for j in range(k))
        return Status.UNBOUNDED, t, ray, phase_one
    return Status.OPTIMAL, t, None, phase_one


def _solve_raw(c: QVector, cf: ConstraintForm) -> LPResult:
    n = cf.dim
    if cf.eq_lhs:
        xp = solve_affine(cf.eq_lhs, cf.eq_rhs)
        if xp is None:
            return LPResult(Status.INFEASIBLE)
        N = nullspace_basis(cf.eq_lhs)
    else:
        xp = (ZERO,) * n
        N = [unit(n, i) for i in range(n)]
    G = [tuple(dot(a, col) for col in N) for a in cf.ineq_lhs]
    h = [b - dot(a, xp) for a, b in cf.inequalities]
    cr = [dot(c, col) for col in N]
    status, t, ray, p1 = _solve_free(cr, G, h)
    if status is Status.INFEASIBLE:
        return LPResult(status, phase_one_value=p1)

    def lift(tt, base):
        x = list(base)
        for coef, col in zip(tt, N):
            if coef:
                x = [a + coef * b for a, b in zip(x, col)]
        return tuple(x)

    x = lift(t, xp)
    if status is Status.UNBOUNDED:
        return LPResult(status, point=x, ray=lift(ray, (ZERO,) * n), phase_one_value=p1)
    return LPResult(status, point=x, value=dot(c, x), phase_one_value=p1)


def solve(lp: LinearProgram, lexicographic: bool = True) -> LPResult:
    """Solve ``lp`` exactly.

    With ``lexicographic`` set, an optimal point is refined coordinate by
    coordinate to the lexicographically smallest point of the optimal face;
    refinement stops at the first coordinate that is unbounded below there.
    """
    res = _solve_raw(lp.objective, lp.constraints)
    if res.status is not Status.OPTIMAL or not lexicographic:
        return res
    n = lp.constraints.dim
    cf = lp.constraints.add_rows(eqs=[(lp.objective, res.value)])
    point = res.point
    for j in range(n):
        e = unit(n, j)
        sub = _solve_raw(tuple(-a for a in e), cf)
        if sub.status is not Status.OPTIMAL:
            break
        point = sub.point
        cf = cf.add_rows(eqs=[(e, point[j])])
    return LPResult(Status.OPTIMAL, point=point, value=res.value, phase_one_value=res.phase_one_value)


def maximize(c: Sequence, cf: ConstraintForm, lexicographic: bool = False) -> LPResult:
    return solve(LinearProgram(vector(c), cf), lexicographic=lexicographic)


def minimize(c: Sequence, cf: ConstraintForm, lexicographic: bool = False) -> LPResult:
    """Minimize ``<c, x>``; the returned ``value`` is the minimum itself."""
    res = maximize(tuple(-a for a in vector(c)), cf, lexicographic)
    if res.status is Status.OPTIMAL:
        return LPResult(res.status, res.point, -res.value, phase_one_value=res.phase_one_value)
    if res.status is Status.UNBOUNDED:
        return LPResult(res.status, res.point, ray=res.ray, phase_one_value=res.phase_one_value)
    return res


def feasible_point(cf: ConstraintForm) -> Optional[QVector]:
    """Some point of the set, or ``None`` if it is empty."""
    res = _solve_raw((ZERO,) * cf.dim, cf)
    return None if res.status is Status.INFEASIBLE else res.point


def is_bounded_above(c: Sequence, cf: ConstraintForm) -> bool:
    """True iff ``sup <c, x>`` over the set is finite or the set is empty."""
    return _solve_raw(vector(c), cf).status is not Status.UNBOUNDED


__all__ = [
    "LPResult",
    "LinearProgram",
    "Status",
    "feasible_point",
    "is_bounded_above",
    "maximize",
    "minimize",
    "solve",
]

