from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycalc.rational import (
    dot,
    format_rational,
    integer_direction,
    mat_vec,
    normalize_row,
    nullspace_basis,
    parse_rational,
    rank,
    rowspace_basis,
    rref,
    solve_affine,
    vector,
)

small = st.integers(-5, 5)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def bareiss_rank(M) -> int:
    """Fraction-free elimination on integers; independent of :func:`rref`."""
    A = [list(map(int, row)) for row in M]
    rows, cols = len(A), len(A[0])
    r, prev = 0, 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == rows:
            break
    return r


def test_parse_and_format():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert parse_rational("+2/3") == Fraction(2, 3)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(5)) == "5"
    for bad in ("1/0", "1.5", "", "a/b", "1/-2", "1 /2"):
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30))
def test_rational_lowest_terms(p, q):
    x = parse_rational(f"{p}/{q}")
    assert x.denominator > 0 and format_rational(x) in (f"{x.numerator}/{x.denominator}", str(x.numerator))
    assert parse_rational(format_rational(x)) == x


def test_vector_rejects_float():
    with pytest.raises(TypeError):
        vector([0.5])


def test_rref_examples():
    R, r, piv = rref([[1, 0], [0, 1]])
    assert R == ((1, 0), (0, 1)) and r == 2 and piv == (0, 1)
    R, r, piv = rref([[1, 1], [2, 2]])
    assert R == ((1, 1), (0, 0)) and r == 1


def test_rref_matches_bareiss_on_random_3x5():
    rng = random.Random(5)
    for _ in range(100):
        M = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(3)]
        R, r, piv = rref(M)
        assert r == bareiss_rank(M)
        # R is in reduced echelon form
        for i, c in enumerate(piv):
            assert R[i][c] == 1
            assert all(R[k][c] == 0 for k in range(len(R)) if k != i)
        assert all(not any(row) for row in R[r:])
        # same row space: stacking M on R adds no rank
        assert bareiss_rank([list(row) for row in M] + [list(integer_direction(row)) for row in R[:r]]) == r


def test_nullspace_examples():
    (b,) = nullspace_basis([[1, 1]])
    assert b[0] == -b[1] != 0
    assert nullspace_basis([[1, 0], [0, 1]]) == []


@settings(max_examples=150)
@given(matrices())
def test_rank_nullity_and_pairing(M):
    n = len(M[0])
    N = nullspace_basis(M)
    assert rank(M) + len(N) == n
    assert rank(N) == len(N) if N else True
    for b in N:
        assert mat_vec(M, b) == (0,) * len(M)
    for r in rowspace_basis(M):
        for b in N:
            assert dot(r, b) == 0
    assert len(rowspace_basis(M)) == bareiss_rank(M)


def test_solve_affine_examples():
    assert solve_affine([[1, 0], [0, 1]], [2, 3]) == (2, 3)
    x = solve_affine([[1, 1]], [1])
    assert x[0] + x[1] == 1
    assert solve_affine([[1, 1], [1, 1]], [0, 1]) is None


@given(matrices(3, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_affine_substitution(M, x0):
    x0 = x0[: len(M[0])]
    y = mat_vec(M, x0)
    x = solve_affine(M, y)
    assert x is not None and mat_vec(M, x) == y


def test_rowspace_examples():
    assert rowspace_basis([[1, 0], [0, 1]]) == [(1, 0), (0, 1)]
    assert [normalize_row(r) for r in rowspace_basis([[1, 1], [2, 2]])] == [(1, 1)]


def test_normalization():
    assert normalize_row((Fraction(-1, 2), Fraction(3, 4))) == (2, -3)
    assert integer_direction((Fraction(-1, 2), Fraction(3, 4))) == (-2, 3)
    assert normalize_row((0, 0)) == (0, 0)
