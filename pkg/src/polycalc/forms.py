"""Constraint and generator forms of polyhedral sets, and conversion between them.

A set in ``Q^n`` is described either by constraints::

    {x : A x = y,  <a_i, x> <= alpha_i  (i = 1..p)}

or by generators::

    conv{u_i} + cone{v_j} + span{w_k}

Both conversions run the double description method on a homogenized cone
(see :func:`cone_generators`); all arithmetic inside the kernel is on
Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .rational import (
    ONE,
    ZERO,
    QMatrix,
    QVector,
    dot,
    integer_direction,
    normalize_row,
    nullspace_basis,
    rref,
    vector,
)


@dataclass(frozen=True)
class ConstraintForm:
    """Equality rows ``A x = y`` plus inequality rows ``<a_i, x> <= alpha_i``."""

    dim: int
    eq_lhs: QMatrix = ()
    eq_rhs: QVector = ()
    ineq_lhs: QMatrix = ()
    ineq_rhs: QVector = ()

    def __post_init__(self):
        for name in ("eq_lhs", "ineq_lhs"):
            rows = tuple(vector(r) for r in getattr(self, name))
            if any(len(r) != self.dim for r in rows):
                raise ValueError(f"{name} rows must have length {self.dim}")
            object.__setattr__(self, name, rows)
        for name in ("eq_rhs", "ineq_rhs"):
            object.__setattr__(self, name, vector(getattr(self, name)))
        if len(self.eq_lhs) != len(self.eq_rhs):
            raise ValueError("eq_lhs and eq_rhs have different lengths")
        if len(self.ineq_lhs) != len(self.ineq_rhs):
            raise ValueError("ineq_lhs and ineq_rhs have different lengths")

    @classmethod
    def universe(cls, dim: int) -> "ConstraintForm":
        return cls(dim)

    @classmethod
    def empty(cls, dim: int) -> "ConstraintForm":
        """The canonical empty set: the single row ``0 <= -1``."""
        return cls(dim, ineq_lhs=((ZERO,) * dim,), ineq_rhs=(-ONE,))

    @property
    def equalities(self):
        return list(zip(self.eq_lhs, self.eq_rhs))

    @property
    def inequalities(self):
        return list(zip(self.ineq_lhs, self.ineq_rhs))

    @property
    def is_empty_sentinel(self) -> bool:
        return any(all(a == 0 for a in row) and b < 0 for row, b in self.inequalities) or any(
            all(a == 0 for a in row) and b != 0 for row, b in self.equalities
        )

    def satisfied_by(self, x: Sequence) -> bool:
        x = vector(x)
        if len(x) != self.dim:
            raise ValueError(f"point has dimension {len(x)}, expected {self.dim}")
        return all(dot(a, x) == b for a, b in self.equalities) and all(
            dot(a, x) <= b for a, b in self.inequalities
        )

    def add_rows(self, eqs: Iterable = (), ineqs: Iterable = ()) -> "ConstraintForm":
        eqs, ineqs = list(eqs), list(ineqs)
        return ConstraintForm(
            self.dim,
            self.eq_lhs + tuple(a for a, _ in eqs),
            self.eq_rhs + tuple(b for _, b in eqs),
            self.ineq_lhs + tuple(a for a, _ in ineqs),
            self.ineq_rhs + tuple(b for _, b in ineqs),
        )


@dataclass(frozen=True)
class GeneratorForm:
    """``conv(points) + cone(rays) + span(lineality)``; no points means empty."""

    dim: int
    points: QMatrix = ()
    rays: QMatrix = ()
    lineality: QMatrix = ()

    def __post_init__(self):
        for name in ("points", "rays", "lineality"):
            rows = tuple(vector(r) for r in getattr(self, name))
            if any(len(r) != self.dim for r in rows):
                raise ValueError(f"{name} must have length {self.dim}")
            object.__setattr__(self, name, rows)

    @property
    def is_empty(self) -> bool:
        return not self.points


# -- normalization -----------------------------------------------------------


def _reduce_modulo(v, basis_rows, pivots, rhs=None):
    """Subtract multiples of RREF ``basis_rows`` so ``v`` vanishes on ``pivots``."""
    v = list(v)
    for row, pc in zip(basis_rows, pivots):
        f = v[pc]
        if f != 0:
            for j in range(len(v)):
                v[j] -= f * row[j]
            if rhs is not None:
                rhs = rhs - f * row[len(v)]
    return (tuple(v), rhs) if rhs is not None else tuple(v)


def normalize_constraints(cf: ConstraintForm) -> ConstraintForm:
    """Normalize rows without removing redundancy.

    Equalities are replaced by the RREF of ``[A | y]``; inequalities are
    reduced modulo the equalities (zero on the equality pivot columns),
    scaled to coprime integer left-hand sides, deduplicated by direction
    and sorted.  Inconsistent systems that are detected become the empty
    sentinel.  The result is the canonical form whenever the input
    inequalities are irredundant and contain no implicit equalities.
    """
    n = cf.dim
    eq_rows: list[tuple] = []
    pivots: tuple = ()
    if cf.eq_lhs:
        R, rk, pivots = rref([tuple(a) + (b,) for a, b in cf.equalities])
        if pivots and pivots[-1] == n:
            return ConstraintForm.empty(n)
        eq_rows = [R[i] for i in range(rk)]
    best: dict = {}
    for a, alpha in cf.inequalities:
        a, alpha = _reduce_modulo(a, eq_rows, pivots, alpha)
        if all(c == 0 for c in a):
            if alpha < 0:
                return ConstraintForm.empty(n)
            continue
        d = integer_direction(a)
        k = next(c for c in d if c != 0) / next(c for c in a if c != 0)
        alpha = alpha * k
        if d not in best or alpha < best[d]:
            best[d] = alpha
    eq_lhs, eq_rhs = [], []
    for row in eq_rows:
        d = integer_direction(row[:n])
        k = next(c for c in d if c != 0) / next(c for c in row[:n] if c != 0)
        eq_lhs.append(d)
        eq_rhs.append(row[n] * k)
    ineqs = sorted(best.items())
    return ConstraintForm(
        n,
        tuple(eq_lhs),
        tuple(eq_rhs),
        tuple(a for a, _ in ineqs),
        tuple(b for _, b in ineqs),
    )


def normalize_generators(gf: GeneratorForm) -> GeneratorForm:
    """Normalize generators without removing redundant points or rays.

    The lineality basis becomes the RREF of the given vectors (rows scaled
    to coprime integers); points and rays are reduced modulo it, rays are
    scaled to coprime integers, duplicates and zero rays are dropped and
    everything is sorted.
    """
    n = gf.dim
    if not gf.points:
        return GeneratorForm(n)
    lin_rows: list = []
    pivots: tuple = ()
    if gf.lineality:
        R, rk, pivots = rref(gf.lineality)
        lin_rows = [R[i] for i in range(rk)]
    points = sorted({_reduce_modulo(u, lin_rows, pivots) for u in gf.points})
    rays = set()
    for v in gf.rays:
        v = _reduce_modulo(v, lin_rows, pivots)
        if any(c != 0 for c in v):
            rays.add(integer_direction(v))
    lineality = tuple(normalize_row(w) for w in lin_rows)
    return GeneratorForm(n, tuple(points), tuple(sorted(rays)), lineality)


# -- double description ------------------------------------------------------


def _int_vector(v) -> tuple:
    """Positive multiple of a rational vector with coprime integer entries."""
    return tuple(int(c) for c in integer_direction(v))


def _prim(v: list) -> tuple:
    g = reduce(gcd, (abs(c) for c in v if c), 0)
    if g > 1:
        return tuple(c // g for c in v)
    return tuple(v)


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _double_description(rows: list, k: int):
    """Generators of the cone ``{z in Z^k : <b, z> <= 0 for b in rows}``.

    Returns ``(lineality, rays)`` as lists of integer tuples.  Rays are the
    extreme rays of the cone modulo its lineality space; adjacency is
    decided with the combinatorial test on zero sets.
    """
    lin = [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
    rays: list = []  # (vector, zero-set bitmask)
    seen = 0
    for idx, b in enumerate(rows):
        if not any(b):
            continue
        bit = 1 << idx
        piv = next((l for l in lin if _idot(b, l) != 0), None)
        if piv is not None:
            bl = _idot(b, piv)
            new_lin = []
            for l in lin:
                if l is piv:
                    continue
                c = _idot(b, l)
                if c:
                    l = _prim([bl * x - c * y for x, y in zip(l, piv)])
                new_lin.append(l)
            sign = 1 if bl > 0 else -1
            new_rays = []
            for r, z in rays:
                c = _idot(b, r)
                if c:
                    r = _prim([abs(bl) * x - sign * c * y for x, y in zip(r, piv)])
                new_rays.append((r, z | bit))
            new_rays.append((tuple(-sign * y for y in piv), seen))
            lin, rays = new_lin, new_rays
        else:
            vals = [_idot(b, r) for r, _ in rays]
            pos = [i for i, v in enumerate(vals) if v > 0]
            neg = [i for i, v in enumerate(vals) if v < 0]
            new_rays = [(r, z | bit) for (r, z), v in zip(rays, vals) if v == 0]
            new_rays += [rays[i] for i in neg]
            min_common = k - len(lin) - 2
            for p in pos:
                rp, zp = rays[p]
                for q in neg:
                    rq, zq = rays[q]
                    common = zp & zq
                    if bin(common).count("1") < min_common:
                        continue
                    if any(
                        i != p and i != q and (z & common) == common
                        for i, (_, z) in enumerate(rays)
                    ):
                        continue
                    bp, bq = vals[p], vals[q]
                    r = _prim([bp * x - bq * y for x, y in zip(rq, rp)])
                    new_rays.append((r, common | bit))
            rays = new_rays
        seen |= bit
    return lin, [r for r, _ in rays]


def cone_generators(eq_rows: Sequence, ineq_rows: Sequence, dim: int):
    """Lineality basis and extreme rays of ``{z : E z = 0, B z <= 0}``.

    The equalities are eliminated first by parametrizing their null space
    with an integer basis; the double description method then runs on the
    reduced, full-dimensional problem and the results are mapped back.
    """
    eq_rows = [r for r in eq_rows if any(c != 0 for c in r)]
    N = [_int_vector(v) for v in nullspace_basis(eq_rows, dim)] if eq_rows else None
    if N is None:
        reduced = [_int_vector(b) for b in ineq_rows]
        k = dim
    else:
        k = len(N)
        reduced = []
        for b in ineq_rows:
            ib = _int_vector(b)
            reduced.append(_prim([_idot(ib, col) for col in N]))
    lin, rays = _double_description(reduced, k)
    if N is None:
        back = lambda t: tuple(Fraction(c) for c in t)  # noqa: E731
    else:
        back = lambda t: tuple(  # noqa: E731
            Fraction(sum(t[j] * N[j][i] for j in range(k))) for i in range(dim)
        )
    return [back(l) for l in lin], [back(r) for r in rays]


def constraints_to_generators(cf: ConstraintForm) -> GeneratorForm:
    """Generator form of a constraint form (any input, redundant or not).

    Homogenizes ``x -> (x, s)`` with ``s >= 0``: extreme rays with ``s > 0``
    give the vertices, those with ``s = 0`` the extreme rays.
    """
    n = cf.dim
    eqs = [tuple(a) + (-b,) for a, b in cf.equalities]
    ineqs = [tuple(a) + (-b,) for a, b in cf.inequalities]
    ineqs.append((ZERO,) * n + (-ONE,))
    lin, rays = cone_generators(eqs, ineqs, n + 1)
    points, dirs = [], []
    for r in rays:
        s = r[n]
        if s > 0:
            points.append(tuple(c / s for c in r[:n]))
        else:
            dirs.append(r[:n])
    if not points:
        return GeneratorForm(n)
    return normalize_generators(GeneratorForm(n, tuple(points), tuple(dirs), tuple(l[:n] for l in lin)))


def generators_to_constraints(gf: GeneratorForm) -> ConstraintForm:
    """Irredundant constraint form of a generator form.

    Runs the same kernel on the polar of the homogenized generator cone
    ``cone{(u, 1), (v, 0)} + span{(w, 0)}``; each polar ray ``(a, c)`` is the
    inequality ``<a, x> <= -c`` and each polar lineality vector an equality.
    """
    n = gf.dim
    if not gf.points:
        return ConstraintForm.empty(n)
    eqs = [tuple(w) + (ZERO,) for w in gf.lineality]
    ineqs = [tuple(u) + (ONE,) for u in gf.points] + [tuple(v) + (ZERO,) for v in gf.rays]
    lin, rays = cone_generators(eqs, ineqs, n + 1)
    eq_lhs, eq_rhs, ineq_lhs, ineq_rhs = [], [], [], []
    for l in lin:
        eq_lhs.append(l[:n])
        eq_rhs.append(-l[n])
    for r in rays:
        if any(c != 0 for c in r[:n]):
            ineq_lhs.append(r[:n])
            ineq_rhs.append(-r[n])
    return normalize_constraints(
        ConstraintForm(n, tuple(eq_lhs), tuple(eq_rhs), tuple(ineq_lhs), tuple(ineq_rhs))
    )
