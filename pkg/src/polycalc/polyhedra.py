"""Polyhedral convex sets and their set-level calculus.

A :class:`Polyhedron` always carries its canonical constraint form and
computes the canonical generator form on first use.  In finite dimension
every set built here (sums, images, convex hulls of unions, generated cones)
is automatically closed, so none of the operations need a closure step.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import lp
from .errors import DimensionMismatchError, EmptySetError, NotContainingOriginError, PointNotInSetError
from .forms import (
    ConstraintForm,
    GeneratorForm,
    constraints_to_generators,
    generators_to_constraints,
    normalize_constraints,
)
from .rational import (
    ZERO,
    QMatrix,
    QVector,
    add,
    dot,
    mat_mul,
    mat_vec,
    matrix,
    neg,
    rowspace_basis,
    vector,
)


def canonicalize_constraints(cf: ConstraintForm, method: str = "lp") -> ConstraintForm:
    """Canonical irredundant constraint form of the set described by ``cf``.

    With ``method="lp"`` implicit equalities and redundant inequalities are
    found with linear programs: row ``i`` is an implicit equality when the
    minimum of its left-hand side over the set equals its right-hand side,
    and redundant when its maximum subject to the remaining rows does not
    exceed the right-hand side.  ``method="dd"`` instead converts to
    generators and back.  Both give identical output.
    """
    if method == "dd":
        return generators_to_constraints(constraints_to_generators(cf))
    if method != "lp":
        raise ValueError(f"unknown method {method!r}")
    cf = normalize_constraints(cf)
    if cf.is_empty_sentinel:
        return cf
    if lp.feasible_point(cf) is None:
        return ConstraintForm.empty(cf.dim)
    implicit, keep = [], []
    for a, b in cf.inequalities:
        res = lp.minimize(a, cf)
        (implicit if res.optimal and res.value == b else keep).append((a, b))
    if implicit:
        cf = normalize_constraints(
            ConstraintForm(cf.dim).add_rows(eqs=cf.equalities + implicit, ineqs=keep)
        )
    rows = list(cf.inequalities)
    eqs = ConstraintForm(cf.dim, cf.eq_lhs, cf.eq_rhs)
    i = 0
    while i < len(rows):
        a, b = rows[i]
        res = lp.maximize(a, eqs.add_rows(ineqs=rows[:i] + rows[i + 1 :]))
        if res.optimal and res.value <= b:
            del rows[i]
        else:
            i += 1
    return normalize_constraints(eqs.add_rows(ineqs=rows))


class Polyhedron:
    """An immutable polyhedral convex set in ``Q^dim``.

    Build one with :meth:`from_constraints`, :meth:`from_generators` or the
    ``hrep``/``vrep`` shortcuts.  ``constraints`` is the canonical
    irredundant constraint form; ``generators`` is the canonical generator
    form (vertices, extreme rays modulo lineality, lineality basis) and is
    computed lazily under a lock.  ``==`` is set equality.
    """

    __slots__ = ("dim", "_constraints", "_generators", "_lock")

    def __init__(self, constraints: ConstraintForm, generators: Optional[GeneratorForm] = None):
        # both forms must already be canonical; use the constructors below
        self.dim = constraints.dim
        self._constraints = constraints
        self._generators = generators
        self._lock = threading.Lock()

    @classmethod
    def from_constraints(cls, cf: ConstraintForm, method: str = "dd") -> "Polyhedron":
        return cls(canonicalize_constraints(cf, method))

    @classmethod
    def from_generators(cls, gf: GeneratorForm) -> "Polyhedron":
        cf = generators_to_constraints(gf)
        return cls(cf)

    @classmethod
    def hrep(cls, dim: int, eqs=(), ineqs=(), method: str = "dd") -> "Polyhedron":
        """``eqs``/``ineqs`` are sequences of ``(lhs, rhs)`` pairs."""
        return cls.from_constraints(ConstraintForm(dim).add_rows(eqs, ineqs), method)

    @classmethod
    def vrep(cls, points=(), rays=(), lineality=(), dim: Optional[int] = None) -> "Polyhedron":
        if dim is None:
            for group in (points, rays, lineality):
                if group:
                    dim = len(group[0])
                    break
            else:
                raise ValueError("dim is required when no generators are given")
        return cls.from_generators(GeneratorForm(dim, points, rays, lineality))

    @classmethod
    def universe(cls, dim: int) -> "Polyhedron":
        return cls(ConstraintForm.universe(dim))

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls(ConstraintForm.empty(dim), GeneratorForm(dim))

    @classmethod
    def point(cls, x: Sequence) -> "Polyhedron":
        return cls.from_generators(GeneratorForm(len(x), (vector(x),)))

    @property
    def constraints(self) -> ConstraintForm:
        return self._constraints

    @property
    def generators(self) -> GeneratorForm:
        if self._generators is None:
            with self._lock:
                if self._generators is None:
                    self._generators = constraints_to_generators(self._constraints)
        return self._generators

    def is_empty(self) -> bool:
        return self._constraints.is_empty_sentinel

    def contains(self, x: Sequence) -> bool:
        return contains(self, x)

    @property
    def affine_dim(self) -> int:
        """Dimension of the affine hull (-1 for the empty set)."""
        if self.is_empty():
            return -1
        return self.dim - len(self._constraints.eq_lhs)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self._constraints == other._constraints

    def __hash__(self):
        return hash(self._constraints)

    def __repr__(self):
        if self.is_empty():
            return f"Polyhedron(dim={self.dim}, empty)"
        c = self._constraints
        return f"Polyhedron(dim={self.dim}, eqs={len(c.eq_lhs)}, ineqs={len(c.ineq_lhs)})"


@dataclass(frozen=True)
class LinearMap:
    """A linear map given by its matrix (rows = output dim, cols = input dim)."""

    matrix: QMatrix
    in_dim: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", matrix(self.matrix))
        if self.in_dim is None:
            if not self.matrix:
                raise ValueError("in_dim is required for a map with no rows")
            object.__setattr__(self, "in_dim", len(self.matrix[0]))
        elif self.matrix and len(self.matrix[0]) != self.in_dim:
            raise ValueError("matrix width does not match in_dim")

    @property
    def out_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence) -> QVector:
        return mat_vec(self.matrix, x)


def _check_dim(P: Polyhedron, n: int, what: str = "argument"):
    if P.dim != n:
        raise DimensionMismatchError(f"{what} has dimension {P.dim}, expected {n}")


def _check_point(P: Polyhedron, x) -> QVector:
    x = vector(x)
    if len(x) != P.dim:
        raise DimensionMismatchError(f"point has dimension {len(x)}, expected {P.dim}")
    return x


def contains(P: Polyhedron, x: Sequence) -> bool:
    x = _check_point(P, x)
    return not P.is_empty() and P.constraints.satisfied_by(x)


def is_empty(P: Polyhedron) -> bool:
    return P.is_empty()


def _cone_ok(cf: ConstraintForm, v, lineal: bool) -> bool:
    if any(dot(a, v) != 0 for a in cf.eq_lhs):
        return False
    if lineal:
        return all(dot(a, v) == 0 for a in cf.ineq_lhs)
    return all(dot(a, v) <= 0 for a in cf.ineq_lhs)


def subset(P: Polyhedron, Q: Polyhedron) -> bool:
    """``P`` is contained in ``Q``: every generator of ``P`` satisfies ``Q``'s rows."""
    _check_dim(Q, P.dim)
    if P.is_empty():
        return True
    if Q.is_empty():
        return False
    g, cf = P.generators, Q.constraints
    return (
        all(cf.satisfied_by(u) for u in g.points)
        and all(_cone_ok(cf, v, False) for v in g.rays)
        and all(_cone_ok(cf, w, True) for w in g.lineality)
    )


def set_equal(P: Polyhedron, Q: Polyhedron) -> bool:
    return subset(P, Q) and subset(Q, P)


def translate(P: Polyhedron, t: Sequence) -> Polyhedron:
    t = _check_point(P, t)
    if P.is_empty():
        return P
    c = P.constraints
    return Polyhedron(
        normalize_constraints(
            ConstraintForm(
                P.dim,
                c.eq_lhs,
                tuple(b + dot(a, t) for a, b in c.equalities),
                c.ineq_lhs,
                tuple(b + dot(a, t) for a, b in c.inequalities),
            )
        )
    )


def minkowski_sum(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    """``P + Q``: pairwise sums of points, union of rays and of lineality bases."""
    # in finite dimension the sum of two polyhedra is closed, so no closure step
    _check_dim(Q, P.dim)
    if P.is_empty() or Q.is_empty():
        return Polyhedron.empty(P.dim)
    g, h = P.generators, Q.generators
    return Polyhedron.from_generators(
        GeneratorForm(
            P.dim,
            tuple(add(u, v) for u in g.points for v in h.points),
            g.rays + h.rays,
            g.lineality + h.lineality,
        )
    )


def intersect(P: Polyhedron, Q: Polyhedron, method: str = "dd") -> Polyhedron:
    _check_dim(Q, P.dim)
    a, b = P.constraints, Q.constraints
    return Polyhedron.from_constraints(a.add_rows(b.equalities, b.inequalities), method)


def image(T: LinearMap, P: Polyhedron) -> Polyhedron:
    _check_dim(P, T.in_dim)
    if P.is_empty():
        return Polyhedron.empty(T.out_dim)
    # linear images of polyhedra are closed in finite dimension
    g = P.generators
    return Polyhedron.from_generators(
        GeneratorForm(
            T.out_dim,
            tuple(T(u) for u in g.points),
            tuple(T(v) for v in g.rays),
            tuple(T(w) for w in g.lineality),
        )
    )


def preimage(T: LinearMap, Q: Polyhedron, method: str = "dd") -> Polyhedron:
    """``{x : T x in Q}``: each row ``a`` of ``Q`` pulls back to ``a T``."""
    _check_dim(Q, T.out_dim)
    n = T.in_dim
    if Q.is_empty():
        return Polyhedron.empty(n)
    c = Q.constraints
    M = T.matrix

    def pull(rows):
        return mat_mul(rows, M) if rows else ()

    return Polyhedron.from_constraints(
        ConstraintForm(n, pull(c.eq_lhs), c.eq_rhs, pull(c.ineq_lhs), c.ineq_rhs), method
    )


def hull_union(*polyhedra: Polyhedron, dim: Optional[int] = None) -> Polyhedron:
    """Smallest closed convex set containing all arguments (empty ones skipped)."""
    if not polyhedra:
        if dim is None:
            raise ValueError("dim is required when no polyhedra are given")
        return Polyhedron.empty(dim)
    n = polyhedra[0].dim
    for P in polyhedra:
        _check_dim(P, n)
    members = [P.generators for P in polyhedra if not P.is_empty()]
    if not members:
        return Polyhedron.empty(n)
    # the generated hull is already closed in finite dimension
    return Polyhedron.from_generators(
        GeneratorForm(
            n,
            tuple(u for g in members for u in g.points),
            tuple(v for g in members for v in g.rays),
            tuple(w for g in members for w in g.lineality),
        )
    )


def recession_cone(P: Polyhedron, via: str = "generators") -> Polyhedron:
    """Directions ``v`` with ``x + t v`` in ``P`` for all ``x`` in ``P``, ``t >= 0``.

    ``via="generators"`` keeps the rays and lineality of ``P``;
    ``via="constraints"`` homogenizes the constraint rows.
    """
    if P.is_empty():
        raise EmptySetError("the recession cone of the empty set is not defined here")
    n = P.dim
    if via == "generators":
        g = P.generators
        return Polyhedron.from_generators(GeneratorForm(n, ((ZERO,) * n,), g.rays, g.lineality))
    if via == "constraints":
        c = P.constraints
        return Polyhedron.from_constraints(
            ConstraintForm(n, c.eq_lhs, (ZERO,) * len(c.eq_lhs), c.ineq_lhs, (ZERO,) * len(c.ineq_lhs))
        )
    raise ValueError(f"unknown route {via!r}")


def cone_of(P: Polyhedron) -> Polyhedron:
    """The cone generated by ``P``, which must contain the origin."""
    n = P.dim
    if not contains(P, (ZERO,) * n):
        raise NotContainingOriginError("the set does not contain the origin")
    g = P.generators
    # finitely generated cones are closed, so this is also the closed cone
    return Polyhedron.from_generators(GeneratorForm(n, ((ZERO,) * n,), g.points + g.rays, g.lineality))


def active_indices(P: Polyhedron, x: Sequence) -> tuple[int, ...]:
    """Indices of canonical inequality rows that hold with equality at ``x``."""
    x = _check_point(P, x)
    if not contains(P, x):
        raise PointNotInSetError("point is not in the set")
    return tuple(i for i, (a, b) in enumerate(P.constraints.inequalities) if dot(a, x) == b)


def tangent_cone(P: Polyhedron, x: Sequence, method: str = "dd") -> Polyhedron:
    """``{h : A h = 0, <a_i, h> <= 0 for active i}``, which equals ``cone(P - x)``."""
    active = active_indices(P, x)
    c = P.constraints
    n = P.dim
    return Polyhedron.from_constraints(
        ConstraintForm(
            n,
            c.eq_lhs,
            (ZERO,) * len(c.eq_lhs),
            tuple(c.ineq_lhs[i] for i in active),
            (ZERO,) * len(active),
        ),
        method,
    )


def normal_cone(P: Polyhedron, x: Sequence) -> Polyhedron:
    """Normal cone at ``x`` (a set in the dual space, identified with ``Q^n``).

    Generated by the active inequality normals plus the row space of the
    equality matrix, i.e. the annihilator of its kernel.
    """
    active = active_indices(P, x)
    c = P.constraints
    n = P.dim
    return Polyhedron.from_generators(
        GeneratorForm(
            n,
            ((ZERO,) * n,),
            tuple(c.ineq_lhs[i] for i in active),
            tuple(rowspace_basis(c.eq_lhs)),
        )
    )


def polar(P: Polyhedron, method: str = "dd") -> Polyhedron:
    """``{y : <y, x> <= 1 for all x in P}`` from the generators of ``P``."""
    if P.is_empty():
        raise EmptySetError("polar of the empty set is not supported")
    g = P.generators
    n = P.dim
    return Polyhedron.from_constraints(
        ConstraintForm(
            n,
            g.lineality,
            (ZERO,) * len(g.lineality),
            g.points + g.rays,
            (Fraction(1),) * len(g.points) + (ZERO,) * len(g.rays),
        ),
        method,
    )


@dataclass(frozen=True)
class Separation:
    """``sup <functional, P1> = upper < lower = inf <functional, P2>``."""

    functional: QVector
    upper: Fraction
    lower: Fraction


@dataclass(frozen=True)
class Intersecting:
    witness: QVector


def separate(P1: Polyhedron, P2: Polyhedron) -> Union[Separation, Intersecting]:
    """Strictly separate two disjoint sets or return a common point.

    The functional ``y`` is found by a linear program over the generators
    of ``P2 - P1``: ``<y, d> >= 1`` on its points, ``<y, r> >= 0`` on its
    rays and ``<y, w> = 0`` on its lineality space.
    """
    _check_dim(P2, P1.dim)
    if P1.is_empty() or P2.is_empty():
        raise EmptySetError("separation needs two nonempty sets")
    n = P1.dim
    both = P1.constraints.add_rows(P2.constraints.equalities, P2.constraints.inequalities)
    common = lp.feasible_point(both)
    if common is not None:
        return Intersecting(common)
    g1 = P1.generators
    neg_p1 = Polyhedron.from_generators(
        GeneratorForm(n, tuple(neg(u) for u in g1.points), tuple(neg(v) for v in g1.rays), g1.lineality)
    )
    D = minkowski_sum(P2, neg_p1).generators
    cf = ConstraintForm(
        n,
        D.lineality,
        (ZERO,) * len(D.lineality),
        tuple(neg(d) for d in D.points) + tuple(neg(r) for r in D.rays),
        (Fraction(-1),) * len(D.points) + (ZERO,) * len(D.rays),
    )
    res = lp.solve(lp.LinearProgram((ZERO,) * n, cf))
    y = res.point
    upper = max(dot(y, u) for u in P1.generators.points)
    lower = min(dot(y, v) for v in P2.generators.points)
    return Separation(y, upper, lower)


__all__ = [
    "Intersecting",
    "LinearMap",
    "Polyhedron",
    "Separation",
    "active_indices",
    "canonicalize_constraints",
    "cone_of",
    "contains",
    "hull_union",
    "image",
    "intersect",
    "is_empty",
    "minkowski_sum",
    "normal_cone",
    "polar",
    "preimage",
    "recession_cone",
    "separate",
    "set_equal",
    "subset",
    "tangent_cone",
    "translate",
]
