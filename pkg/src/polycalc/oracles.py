"""Independent brute-force checks used by the ``--oracle`` CLI flag and the tests.

These avoid the double description code path wherever practical: faces
are found by LP over all index subsets, directional derivatives by
difference quotients and conjugate values by LP over the epigraph.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import lp
from .errors import OracleMismatchError
from .forms import ConstraintForm
from .functions import INF, ExtendedValue, GPCFunction, conjugate_value, evaluate
from .polyhedra import Polyhedron
from .rational import add, rank, scale, unit, vector


def _tight_closure(cf: ConstraintForm, J: tuple) -> Optional[tuple]:
    """Rows tight on all of ``F_J``, or ``None`` if ``F_J`` is empty."""
    sub = ConstraintForm(
        cf.dim,
        cf.eq_lhs + tuple(cf.ineq_lhs[j] for j in J),
        cf.eq_rhs + tuple(cf.ineq_rhs[j] for j in J),
        cf.ineq_lhs,
        cf.ineq_rhs,
    )
    if lp.feasible_point(sub) is None:
        return None
    tight = list(J)
    for i, (a, b) in enumerate(cf.inequalities):
        if i in J:
            continue
        res = lp.minimize(a, sub)
        if res.optimal and res.value == b:
            tight.append(i)
    return tuple(sorted(tight))


def brute_force_faces(P: Polyhedron) -> dict:
    """Map each face's maximal index set to its affine dimension.

    Every subset ``J`` of the inequality rows is visited.  A subset whose
    one-smaller parent already has a closure containing ``J`` reuses that
    closure (same face); an empty parent means an empty face.  All other
    subsets are settled by LP.
    """
    cf = P.constraints
    p = len(cf.ineq_lhs)
    closure: dict = {}
    faces: dict = {}
    for size in range(p + 1):
        for J in itertools.combinations(range(p), size):
            K = "?"
            for i in J:
                parent = closure[tuple(j for j in J if j != i)]
                if parent is None:
                    K = None
                    break
                if set(J) <= set(parent):
                    K = parent
                    break
            if K == "?":
                K = _tight_closure(cf, J)
            closure[J] = K
            if K is not None and K not in faces:
                rows = list(cf.eq_lhs) + [cf.ineq_lhs[k] for k in K]
                faces[K] = P.dim - rank(rows) if rows else P.dim
    return faces


def check_faces(P: Polyhedron, faces) -> None:
    """Raise :class:`OracleMismatchError` unless ``faces`` matches the brute force."""
    expected = brute_force_faces(P)
    got = {f.indices: f.dim for f in faces}
    if got != expected:
        raise OracleMismatchError(f"face enumeration differs from brute force: {got} != {expected}")


def difference_quotient(f: GPCFunction, x: Sequence, h: Sequence, max_halvings: int = 64) -> ExtendedValue:
    """``f'(x; h)`` as the eventual value of ``(f(x + t h) - f(x)) / t``.

    ``t`` is halved from 1 until two consecutive finite quotients agree.
    For a polyhedral convex function the quotient is eventually constant,
    and two equal consecutive values mean it is already constant.
    """
    x, h = vector(x), vector(h)
    fx = evaluate(f, x)
    if fx is INF:
        raise ValueError("x must lie in the domain")
    t = Fraction(1)
    prev = None
    for _ in range(max_halvings):
        ft = evaluate(f, add(x, scale(t, h)))
        q = INF if ft is INF else (ft - fx) / t
        if q is not INF and q == prev:
            return q
        prev = q
        t /= 2
    return INF if prev is INF else prev


def directional_samples(dim: int, extra: Iterable = ()) -> list:
    """Unit directions, their negatives, their pairwise sums and any extras."""
    out = []
    for i in range(dim):
        out += [unit(dim, i), scale(-1, unit(dim, i))]
    for i, j in itertools.combinations(range(dim), 2):
        out.append(add(unit(dim, i), unit(dim, j)))
        out.append(add(unit(dim, i), scale(-1, unit(dim, j))))
    out += [vector(v) for v in extra]
    return out


def check_directional_derivative(f: GPCFunction, x: Sequence, d: GPCFunction, directions=None) -> None:
    x = vector(x)
    if directions is None:
        directions = directional_samples(f.dim, d.domain.generators.rays)
    for h in directions:
        a, b = evaluate(d, h), difference_quotient(f, x, h)
        if a != b:
            raise OracleMismatchError(f"f'(x; {h}) = {a}, difference quotient gives {b}")


def dual_samples(g: GPCFunction, radius: int = 2, limit: int = 125) -> list:
    """Integer grid points around the origin plus the vertices of ``dom g``."""
    pts = [tuple(Fraction(c) for c in p) for p in itertools.product(range(-radius, radius + 1), repeat=g.dim)]
    pts = pts[:limit]
    pts += list(g.domain.generators.points)
    return pts


def check_conjugate(f: GPCFunction, fstar: GPCFunction, samples=None) -> None:
    """Compare ``fstar`` with the LP value of the conjugate at sample points."""
    if samples is None:
        samples = dual_samples(fstar)
    for y in samples:
        a, b = evaluate(fstar, y), conjugate_value(f, y)
        if a != b:
            raise OracleMismatchError(f"f*({y}) = {a}, LP gives {b}")
