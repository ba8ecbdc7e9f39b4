"""Exact rational vectors, matrices and the row-reduction kernel.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors are tuples of Fractions and matrices are tuples of
row vectors, so every value is immutable and hashable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

QVector = tuple  # tuple[Fraction, ...]
QMatrix = tuple  # tuple[QVector, ...]

_RATIONAL_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?")

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse the literal syntax ``p/q`` (``q`` may be omitted)."""
    m = _RATIONAL_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"malformed rational literal {text!r}")
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or int")
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def vector(values: Iterable) -> QVector:
    return tuple(as_rational(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> QMatrix:
    out = tuple(vector(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("matrix rows have different lengths")
    return out


def zeros(n: int) -> QVector:
    return (ZERO,) * n


def unit(n: int, i: int) -> QVector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n: int) -> QMatrix:
    return tuple(unit(n, i) for i in range(n))


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def add(u: QVector, v: QVector) -> QVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: QVector, v: QVector) -> QVector:
    return tuple(a - b for a, b in zip(u, v))


def scale(t, v: QVector) -> QVector:
    return tuple(t * a for a in v)


def neg(v: QVector) -> QVector:
    return tuple(-a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def mat_vec(M: Sequence[Sequence], x: Sequence) -> QVector:
    return tuple(dot(row, x) for row in M)


def transpose(M: Sequence[Sequence], ncols: Optional[int] = None) -> QMatrix:
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(col) for col in zip(*M))


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> QMatrix:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def integer_direction(v: Sequence) -> tuple:
    """Positive multiple of ``v`` with coprime integer entries (zero stays zero)."""
    v = [as_rational(a) for a in v]
    if all(a == 0 for a in v):
        return tuple(ZERO for _ in v)
    lcm = reduce(lambda a, b: a * b // gcd(a, b), (a.denominator for a in v), 1)
    ints = [a.numerator * (lcm // a.denominator) for a in v]
    g = reduce(gcd, (abs(a) for a in ints if a), 0)
    return tuple(Fraction(a // g) for a in ints)


def normalize_row(v: Sequence) -> tuple:
    """Coprime integer multiple of ``v`` whose first nonzero entry is positive.

    Used for rows that may be multiplied by any nonzero scalar (equality
    rows, subspace basis vectors).
    """
    w = integer_direction(v)
    for a in w:
        if a != 0:
            return w if a > 0 else tuple(-b for b in w)
    return w


def rref(M: Sequence[Sequence]) -> tuple[QMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns ``(R, rank, pivot_cols)``.  ``R`` has the same shape as ``M``;
    its first ``rank`` rows are the nonzero rows with leading ones in
    ``pivot_cols``.
    """
    rows = [list(vector(r)) for r in M]
    if not rows:
        return (), 0, ()
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [a / piv for a in rows[r]]
        pivot_row = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), r, tuple(pivots)


def rank(M: Sequence[Sequence]) -> int:
    return rref(M)[1]


def nullspace_basis(M: Sequence[Sequence], ncols: Optional[int] = None) -> list[QVector]:
    """Basis of ``{x : M x = 0}``; one vector per free column.

    ``ncols`` is required when ``M`` has no rows.
    """
    if not M:
        if ncols is None:
            raise ValueError("ncols is required for a matrix without rows")
        return list(identity(ncols))
    n = len(M[0])
    R, rk, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for i, pc in enumerate(pivots):
            x[pc] = -R[i][f]
        basis.append(tuple(x))
    return basis


def rowspace_basis(M: Sequence[Sequence]) -> list[QVector]:
    """Independent rows spanning the row space (the nonzero rows of the RREF)."""
    if not M:
        return []
    R, rk, _ = rref(M)
    return [R[i] for i in range(rk)]


def solve_affine(M: Sequence[Sequence], y: Sequence, ncols: Optional[int] = None) -> Optional[QVector]:
    """A solution of ``M x = y`` or ``None`` when the system is infeasible.

    Free variables are set to zero, so the answer is deterministic.
    """
    y = vector(y)
    if not M:
        if y:
            raise ValueError("right-hand side length does not match the matrix")
        if ncols is None:
            raise ValueError("ncols is required for a matrix without rows")
        return zeros(ncols)
    if len(y) != len(M):
        raise ValueError("right-hand side length does not match the matrix")
    n = len(M[0])
    aug = [tuple(row) + (b,) for row, b in zip(vector_rows(M), y)]
    R, rk, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for i, pc in enumerate(pivots):
        x[pc] = R[i][n]
    return tuple(x)


def vector_rows(M: Sequence[Sequence]) -> QMatrix:
    return tuple(vector(r) for r in M)
