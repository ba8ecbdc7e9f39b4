"""Faces of polyhedral sets.

Every nonempty face of ``P`` is ``F_J = {x in P : <a_i, x> = alpha_i, i in J}``
for some set ``J`` of inequality rows of the canonical constraint form.  A
face is identified by its largest such ``J``, which is the active set of any
relative-interior point of the face.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptySetError, NotAFaceError
from .forms import ConstraintForm
from .polyhedra import Polyhedron, active_indices, subset
from .rational import ZERO, QVector, add, dot


@dataclass(frozen=True)
class Face:
    """A nonempty face: its maximal index set and the face itself."""

    indices: tuple
    body: Polyhedron

    @property
    def dim(self) -> int:
        return self.body.affine_dim


def active_set(P: Polyhedron, x: Sequence) -> tuple[int, ...]:
    return active_indices(P, x)


def face_from_index_set(P: Polyhedron, J: Iterable[int]) -> Polyhedron:
    """``F_J``: the rows in ``J`` are turned into equalities (may be empty)."""
    J = sorted(set(J))
    c = P.constraints
    if P.is_empty():
        return P
    if any(not 0 <= j < len(c.ineq_lhs) for j in J):
        raise IndexError(f"index set {J} out of range for {len(c.ineq_lhs)} inequalities")
    if not J:
        return P
    cf = ConstraintForm(
        P.dim,
        c.eq_lhs + tuple(c.ineq_lhs[j] for j in J),
        c.eq_rhs + tuple(c.ineq_rhs[j] for j in J),
        tuple(a for i, a in enumerate(c.ineq_lhs) if i not in J),
        tuple(b for i, b in enumerate(c.ineq_rhs) if i not in J),
    )
    return Polyhedron.from_constraints(cf)


def relative_interior_point(P: Polyhedron) -> QVector:
    """Barycenter of the vertices plus the sum of the extreme rays."""
    if P.is_empty():
        raise EmptySetError("the empty set has no relative interior point")
    g = P.generators
    k = len(g.points)
    x = tuple(sum((u[i] for u in g.points), ZERO) / k for i in range(P.dim))
    for v in g.rays:
        x = add(x, v)
    return x


def _canonical_face(P: Polyhedron, body: Polyhedron) -> Face:
    return Face(active_indices(P, relative_interior_point(body)), body)


def enumerate_faces(P: Polyhedron) -> list[Face]:
    """All nonempty faces of ``P``, each once, ordered by dimension then index set.

    Breadth-first search from ``P`` itself: every child adds one more
    inequality to the parent's index set and is deduplicated by its
    maximal index set.
    """
    if P.is_empty():
        raise EmptySetError("faces are enumerated for nonempty sets only")
    p = len(P.constraints.ineq_lhs)
    root = _canonical_face(P, P)
    found = {root.indices: root}
    tried: set = set()
    queue = deque([root])
    while queue:
        face = queue.popleft()
        for i in range(p):
            if i in face.indices:
                continue
            J = tuple(sorted(face.indices + (i,)))
            if J in tried or J in found:
                continue
            tried.add(J)
            body = face_from_index_set(P, J)
            if body.is_empty():
                continue
            child = _canonical_face(P, body)
            if child.indices not in found:
                found[child.indices] = child
                queue.append(child)
    return sorted(found.values(), key=lambda f: (f.dim, f.indices))


def canonical_face(P: Polyhedron, F: Polyhedron) -> Face:
    """Wrap a face given as a set, checking that it really is a face of ``P``."""
    if F.is_empty() or not subset(F, P):
        raise NotAFaceError("not a nonempty subset of the set")
    face = _canonical_face(P, F)
    if face_from_index_set(P, face.indices) != F:
        raise NotAFaceError("the set is not a face")
    return face


def exposing_functional(P: Polyhedron, F) -> QVector:
    """``y`` whose minimizers over ``P`` are exactly the face ``F``.

    ``y`` is the average of the negated normals ``-a_j`` over the face's
    index set, and ``0`` for ``F = P``.
    """
    face = F if isinstance(F, Face) else canonical_face(P, F)
    J = face.indices
    if not J:
        return (ZERO,) * P.dim
    rows = P.constraints.ineq_lhs
    k = len(J)
    return tuple(-sum((rows[j][i] for j in J), ZERO) / k for i in range(P.dim))


def exposed_value(P: Polyhedron, F) -> Fraction:
    """Common value of the exposing functional on ``F`` (its minimum over ``P``)."""
    face = F if isinstance(F, Face) else canonical_face(P, F)
    y = exposing_functional(P, face)
    return dot(y, face.body.generators.points[0])
