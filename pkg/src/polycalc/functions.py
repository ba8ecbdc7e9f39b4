"""Polyhedral convex functions ``f(x) = max_k (<v_k, x> + beta_k)`` on a polyhedral domain.

Values off the domain are ``+inf`` (:data:`INF`); ``-inf`` cannot be
represented, so every :class:`GPCFunction` is proper by construction.
Operations that would produce an improper function raise
:class:`NotAnEpigraphError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Sequence, Union

from . import lp
from .errors import (
    DimensionMismatchError,
    EmptyDomainIntersectionError,
    EmptySetError,
    NotAnEpigraphError,
    PointNotInDomainError,
)
from .forms import ConstraintForm, GeneratorForm
from .polyhedra import (
    Polyhedron,
    active_indices,
    contains,
    intersect,
    minkowski_sum,
    set_equal,
    tangent_cone,
)
from .rational import add as vadd
from .rational import ONE, ZERO, QVector, dot, rowspace_basis, unit, vector


@total_ordering
class PlusInfinity:
    """The value ``+inf``; larger than every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("+inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+inf"

    def __reduce__(self):
        return (PlusInfinity, ())


INF = PlusInfinity()
ExtendedValue = Union[Fraction, PlusInfinity]


class GPCFunction:
    """Maximum of affine pieces ``(slope, offset)`` on a nonempty polyhedral domain."""

    __slots__ = ("domain", "pieces", "dim")

    def __init__(self, domain: Polyhedron, pieces: Sequence):
        pieces = tuple((vector(v), Fraction(b)) for v, b in pieces)
        if not pieces:
            raise ValueError("at least one affine piece is required")
        if domain.is_empty():
            raise EmptySetError("the domain of a proper function is nonempty")
        if any(len(v) != domain.dim for v, _ in pieces):
            raise DimensionMismatchError("piece slope dimension differs from the domain")
        self.domain = domain
        self.pieces = pieces
        self.dim = domain.dim

    @classmethod
    def affine_max(cls, pieces: Sequence, domain: Optional[Polyhedron] = None, dim: Optional[int] = None):
        """Shortcut: the domain defaults to the whole space."""
        if domain is None:
            if dim is None:
                dim = len(pieces[0][0])
            domain = Polyhedron.universe(dim)
        return cls(domain, pieces)

    def __call__(self, x: Sequence) -> ExtendedValue:
        return evaluate(self, x)

    def canonical(self) -> "GPCFunction":
        """Same function with dominated and duplicate pieces removed."""
        return from_epigraph(epigraph(self))

    def __repr__(self):
        return f"GPCFunction(dim={self.dim}, pieces={len(self.pieces)}, domain={self.domain!r})"


@dataclass(frozen=True)
class Cell:
    """A region of the domain on which the function is one affine piece."""

    region: Polyhedron
    slope: QVector
    offset: Fraction


def _point(f: GPCFunction, x) -> QVector:
    x = vector(x)
    if len(x) != f.dim:
        raise DimensionMismatchError(f"point has dimension {len(x)}, expected {f.dim}")
    return x


def _piece_values(f: GPCFunction, x: QVector) -> list:
    return [dot(v, x) + b for v, b in f.pieces]


def evaluate(f: GPCFunction, x: Sequence) -> ExtendedValue:
    x = _point(f, x)
    if not contains(f.domain, x):
        return INF
    return max(_piece_values(f, x))


def active_pieces(f: GPCFunction, x: Sequence) -> tuple[int, ...]:
    """Indices of the pieces attaining the maximum at ``x`` (all ties kept)."""
    x = _point(f, x)
    if not contains(f.domain, x):
        raise PointNotInDomainError("point is outside the domain")
    vals = _piece_values(f, x)
    top = max(vals)
    return tuple(i for i, v in enumerate(vals) if v == top)


def indicator(P: Polyhedron) -> GPCFunction:
    """``0`` on ``P`` and ``+inf`` elsewhere."""
    if P.is_empty():
        raise EmptySetError("the indicator of the empty set is improper")
    return GPCFunction(P, [((ZERO,) * P.dim, ZERO)])


def epigraph(f: GPCFunction) -> Polyhedron:
    """``{(x, t) : x in dom f, <v_k, x> - t <= -beta_k}`` in dimension ``n + 1``."""
    c = f.domain.constraints
    lift = lambda a: tuple(a) + (ZERO,)  # noqa: E731
    cf = ConstraintForm(
        f.dim + 1,
        tuple(lift(a) for a in c.eq_lhs),
        c.eq_rhs,
        tuple(lift(a) for a in c.ineq_lhs) + tuple(tuple(v) + (-ONE,) for v, _ in f.pieces),
        c.ineq_rhs + tuple(-b for _, b in f.pieces),
    )
    return Polyhedron.from_constraints(cf)


def from_epigraph(P: Polyhedron, strict: bool = False) -> GPCFunction:
    """The function ``x -> inf{t : (x, t) in P}``.

    ``P + cone{e_t}`` is an epigraph whenever the infimum is never
    ``-inf``; its rows with negative ``t`` coefficient, scaled to ``-1``,
    are the pieces and its rows without ``t`` describe the domain.  With
    ``strict`` set, ``P`` itself must already contain its upward ray.
    """
    if P.is_empty():
        raise NotAnEpigraphError("the set is empty")
    m = P.dim
    n = m - 1
    if n < 0:
        raise NotAnEpigraphError("an epigraph needs dimension at least 1")
    up = unit(m, n)
    c = P.constraints
    if strict and not (
        all(dot(a, up) == 0 for a in c.eq_lhs) and all(dot(a, up) <= 0 for a in c.ineq_lhs)
    ):
        raise NotAnEpigraphError("the upward direction is not a recession direction")
    g = P.generators
    Q = Polyhedron.from_generators(GeneratorForm(m, g.points, g.rays + (up,), g.lineality))
    qc = Q.constraints
    if all(a[n] == 0 for a in qc.ineq_lhs) and all(a[n] == 0 for a in qc.eq_lhs):
        raise NotAnEpigraphError("the downward direction is a recession direction (value -inf)")
    pieces, dom_lhs, dom_rhs = [], [], []
    for a, b in qc.inequalities:
        at = a[n]
        if at < 0:
            s = -at
            pieces.append((tuple(x / s for x in a[:n]), -b / s))
        else:
            # at > 0 cannot occur because e_t is a recession direction of Q
            dom_lhs.append(a[:n])
            dom_rhs.append(b)
    domain = Polyhedron.from_constraints(
        ConstraintForm(n, tuple(a[:n] for a in qc.eq_lhs), qc.eq_rhs, tuple(dom_lhs), tuple(dom_rhs))
    )
    return GPCFunction(domain, pieces)


def equal(f: GPCFunction, g: GPCFunction) -> bool:
    """Pointwise equality on the whole space (epigraphs coincide)."""
    return f.dim == g.dim and set_equal(epigraph(f), epigraph(g))


def pwl_decompose(f: GPCFunction) -> list[Cell]:
    """One cell per piece: the part of the domain where that piece is maximal."""
    cells = []
    c = f.domain.constraints
    for k, (vk, bk) in enumerate(f.pieces):
        rows = [
            (tuple(a - b for a, b in zip(vi, vk)), bk - bi)
            for i, (vi, bi) in enumerate(f.pieces)
            if i != k
        ]
        region = Polyhedron.from_constraints(c.add_rows(ineqs=rows))
        if not region.is_empty():
            cells.append(Cell(region, vk, bk))
    return cells


def _dedupe(pieces) -> list:
    seen, out = set(), []
    for p in pieces:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def add(f1: GPCFunction, f2: GPCFunction) -> GPCFunction:
    """``f1 + f2`` with pieces ``(v + w, beta + gamma)`` over all pairs."""
    if f1.dim != f2.dim:
        raise DimensionMismatchError("functions have different dimensions")
    dom = intersect(f1.domain, f2.domain)
    if dom.is_empty():
        raise EmptyDomainIntersectionError("the domains do not intersect")
    pieces = _dedupe((vadd(v, w), b + c) for v, b in f1.pieces for w, c in f2.pieces)
    return GPCFunction(dom, pieces)


def directional_derivative(f: GPCFunction, x: Sequence) -> GPCFunction:
    """``h -> f'(x; h)``: the active pieces, made linear, on the tangent cone of the domain."""
    x = _point(f, x)
    if not contains(f.domain, x):
        raise PointNotInDomainError("point is outside the domain")
    J = active_pieces(f, x)
    return GPCFunction(tangent_cone(f.domain, x), [(f.pieces[j][0], ZERO) for j in J])


def inf_convolution(f1: GPCFunction, f2: GPCFunction) -> GPCFunction:
    """``x -> inf{f1(x1) + f2(x2) : x1 + x2 = x}`` via the sum of the epigraphs."""
    if f1.dim != f2.dim:
        raise DimensionMismatchError("functions have different dimensions")
    return from_epigraph(minkowski_sum(epigraph(f1), epigraph(f2)))


def conjugate(f: GPCFunction) -> GPCFunction:
    """``y -> sup_x (<y, x> - f(x))`` built from the cells of ``f``.

    For a cell ``conv(U) + cone(R) + span(W)`` with slope ``v`` the
    conjugate is finite exactly when ``<y - v, w> = 0`` and
    ``<y - v, r> <= 0``; on the intersection of these sets it is the
    maximum of ``<y, u> - f(u)`` over all cell vertices ``u``.
    """
    eqs, ineqs, pieces = [], [], []
    for cell in pwl_decompose(f):
        g = cell.region.generators
        v = cell.slope
        eqs.extend((w, dot(w, v)) for w in g.lineality)
        ineqs.extend((r, dot(r, v)) for r in g.rays)
        pieces.extend((u, -(dot(v, u) + cell.offset)) for u in g.points)
    dom = Polyhedron.from_constraints(ConstraintForm(f.dim).add_rows(eqs, ineqs))
    return GPCFunction(dom, _dedupe(pieces)).canonical()


def conjugate_value(f: GPCFunction, y: Sequence) -> ExtendedValue:
    """``f*(y)`` by linear programming over the epigraph of ``f``."""
    y = _point(f, y)
    res = lp.maximize(tuple(y) + (-ONE,), epigraph(f).constraints)
    if res.status is lp.Status.UNBOUNDED:
        return INF
    return res.value


def subdifferential(f: GPCFunction, x: Sequence) -> Polyhedron:
    """``conv{active slopes} + cone{active domain normals} + rowspace(A)``."""
    x = _point(f, x)
    if not contains(f.domain, x):
        raise PointNotInDomainError("point is outside the domain")
    J = active_pieces(f, x)
    I = active_indices(f.domain, x)
    c = f.domain.constraints
    return Polyhedron.from_generators(
        GeneratorForm(
            f.dim,
            tuple(f.pieces[j][0] for j in J),
            tuple(c.ineq_lhs[i] for i in I),
            tuple(rowspace_basis(c.eq_lhs)),
        )
    )


def fenchel_young_check(f: GPCFunction, x: Sequence, y: Sequence) -> bool:
    """Whether ``f(x) + f*(y) == <y, x>``, with ``f*`` computed by LP."""
    fx = evaluate(f, x)
    if fx is INF:
        raise PointNotInDomainError("point is outside the domain")
    fy = conjugate_value(f, y)
    if fy is INF:
        return False
    return fx + fy == dot(vector(y), vector(x))
