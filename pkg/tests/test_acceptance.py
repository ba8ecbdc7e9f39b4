"""Acceptance suite: each numbered criterion is one test that prints a PASS/FAIL line.

Every check is exact (rational arithmetic, zero tolerance).  Reference
values come from oracles that avoid the code under test: LP over the raw
constraint systems, brute-force subset search for faces, difference
quotients for directional derivatives and LP over epigraphs for
conjugates.
"""

from __future__ import annotations

import random
import time

import pytest

from polycalc import lp, oracles
from polycalc.cli import run
from polycalc.errors import NotAnEpigraphError
from polycalc.faces import enumerate_faces, exposed_value, exposing_functional
from polycalc.forms import ConstraintForm, GeneratorForm
from polycalc.functions import (
    INF,
    GPCFunction,
    add,
    conjugate,
    conjugate_value,
    directional_derivative,
    epigraph,
    evaluate,
    fenchel_young_check,
    inf_convolution,
    subdifferential,
)
from polycalc.polyhedra import (
    Intersecting,
    Polyhedron,
    Separation,
    contains,
    intersect,
    minkowski_sum,
    normal_cone,
    separate,
    set_equal,
    tangent_cone,
)
from polycalc.rational import dot, sub

from randgen import rand_function, rand_int_vector, rand_point_in, rand_raw_system

# -- reporting -------------------------------------------------------------------


@pytest.fixture
def report(capsys):
    """Call ``report(n, label, check)``; prints one line and re-raises failures."""

    def _report(n, label, check, limit=None):
        t0 = time.perf_counter()
        err = None
        try:
            detail = check()
        except AssertionError as exc:
            err, detail = exc, str(exc).splitlines()[0] if str(exc) else "assertion failed"
        elapsed = time.perf_counter() - t0
        if err is None and limit is not None and elapsed >= limit:
            err = AssertionError(f"runtime {elapsed:.1f}s exceeds {limit}s")
            detail = str(err)
        status = "PASS" if err is None else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {n:2d} [{status}] {label}: {detail} ({elapsed:.1f}s)")
        if err is not None:
            raise err

    return _report


# -- independent LP helpers --------------------------------------------------------


def lp_max(c, cf: ConstraintForm):
    res = lp.maximize(c, cf)
    return INF if res.status is lp.Status.UNBOUNDED else res.value


def sup_over_generators(c, g: GeneratorForm):
    if any(dot(c, r) > 0 for r in g.rays) or any(dot(c, w) != 0 for w in g.lineality):
        return INF
    return max(dot(c, u) for u in g.points)


def generator_samples(g: GeneratorForm):
    """Points, point + ray and point +/- lineality direction."""
    out = list(g.points)
    u = g.points[0]
    out += [tuple(a + b for a, b in zip(u, r)) for r in g.rays]
    for w in g.lineality:
        out.append(tuple(a + b for a, b in zip(u, w)))
        out.append(tuple(a - b for a, b in zip(u, w)))
    return out


def is_universe(P: Polyhedron) -> bool:
    c = P.constraints
    return not c.eq_lhs and not c.ineq_lhs


def vertices(P: Polyhedron):
    g = P.generators
    return list(g.points) if not g.lineality else []


# -- 1 ------------------------------------------------------------------------------


def test_criterion_01_representation_equivalence(report):
    def check():
        rng = random.Random(101)
        for trial in range(200):
            raw, _ = rand_raw_system(rng, max_ineq=8, max_eq=2)
            P = Polyhedron.from_constraints(raw)
            g = P.generators
            Q = Polyhedron.from_generators(g)
            assert set_equal(P, Q), f"trial {trial}: round trip not set-equal"
            # generators satisfy the raw system
            for u in g.points:
                assert raw.satisfied_by(u)
            for a, _ in raw.equalities:
                assert all(dot(a, v) == 0 for v in g.rays + g.lineality)
            for a, _ in raw.inequalities:
                assert all(dot(a, r) <= 0 for r in g.rays)
                assert all(dot(a, w) == 0 for w in g.lineality)
            # every row derived from the generators is valid on the raw system (LP)
            derived = Q.constraints
            for a, b in derived.inequalities:
                v = lp_max(a, raw)
                assert v is not INF and v <= b, f"trial {trial}: derived row cuts the raw set"
            for a, b in derived.equalities:
                assert lp_max(a, raw) == b and -lp_max(tuple(-x for x in a), raw) == b
            # support functions agree in random directions
            for _ in range(3):
                c = rand_int_vector(rng, P.dim)
                assert lp_max(c, raw) == sup_over_generators(c, g)
        return "200 round trips set-equal, LP-verified"

    report(1, "representation equivalence", check, limit=60)


# -- 2 ------------------------------------------------------------------------------


def test_criterion_02_faces(report):
    def check():
        square = Polyhedron.hrep(2, [], [((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)])
        sq_faces = enumerate_faces(square)
        assert len(sq_faces) == 9, f"unit square has {len(sq_faces)} faces"
        rng = random.Random(202)
        total = 0
        for trial in range(100):
            P = Polyhedron.from_constraints(rand_raw_system(rng, max_ineq=8, max_eq=2)[0])
            assert len(P.constraints.ineq_lhs) <= 8
            found = enumerate_faces(P)
            got = {f.indices: f.dim for f in found}
            assert got == oracles.brute_force_faces(P), f"trial {trial}: face sets differ"
            total += len(found)
            for face in found:
                y = exposing_functional(P, face)
                res = lp.minimize(y, P.constraints)
                assert res.optimal and res.value == exposed_value(P, face)
                argmin = Polyhedron.from_constraints(P.constraints.add_rows(eqs=[(y, res.value)]))
                assert set_equal(argmin, face.body), f"trial {trial}: argmin is not the face"
        return f"unit square 9 faces; {total} faces over 100 sets match brute force"

    report(2, "faces and exposing functionals", check, limit=120)


# -- 3 ------------------------------------------------------------------------------


def test_criterion_03_normal_cone(report):
    def check():
        rng = random.Random(303)
        done = checked = 0
        while done < 50:
            P = Polyhedron.from_constraints(rand_raw_system(rng, max_ineq=7, max_eq=1)[0])
            verts = vertices(P)
            if not verts:
                continue
            done += 1
            dg = P.generators
            for x in verts:
                N = normal_cone(P, x)
                ng = N.generators
                gens = list(ng.points) + list(ng.rays) + list(ng.lineality)
                gens += [tuple(-c for c in w) for w in ng.lineality]
                for g in gens:
                    assert lp_max(g, P.constraints) == dot(g, x), "normal generator not maximized at x"
                outside = 0
                while outside < 20 and not is_universe(N):
                    y = rand_int_vector(rng, P.dim, -4, 4)
                    if contains(N, y):
                        continue
                    outside += 1
                    violated = (
                        any(dot(y, sub(u, x)) > 0 for u in dg.points)
                        or any(dot(y, r) > 0 for r in dg.rays)
                        or any(dot(y, w) != 0 for w in dg.lineality)
                    )
                    assert violated, f"{y} outside the computed cone but normal at {x}"
                checked += 1
        return f"{checked} vertices of 50 sets, 20 outside duals each"

    report(3, "normal cone formula", check, limit=60)


# -- 4 ------------------------------------------------------------------------------


def test_criterion_04_normal_cone_of_intersection(report):
    def check():
        rng = random.Random(404)
        points = 0
        for _ in range(50):
            n = rng.randint(1, 3)
            c = rand_int_vector(rng, n, -2, 2, nonzero=False)
            P = Polyhedron.from_constraints(rand_raw_system(rng, n, max_ineq=5, max_eq=1, center=c)[0])
            Q = Polyhedron.from_constraints(rand_raw_system(rng, n, max_ineq=5, max_eq=1, center=c)[0])
            R = intersect(P, Q)
            for x in [c] + vertices(R)[:4]:
                lhs = normal_cone(R, x)
                rhs = minkowski_sum(normal_cone(P, x), normal_cone(Q, x))
                assert set_equal(lhs, rhs), f"N at {x} differs"
                points += 1
        return f"50 pairs, {points} common points, exact equality"

    report(4, "normal cone of an intersection", check)


# -- 5 ------------------------------------------------------------------------------


def test_criterion_05_directional_derivative(report):
    def check():
        rng = random.Random(505)
        points = 0
        for _ in range(50):
            f = rand_function(rng)
            samples = vertices(f.domain) + [rand_point_in(rng, f.domain) for _ in range(10)]
            E = epigraph(f)
            for x in samples:
                d = directional_derivative(f, x)
                fx = evaluate(f, x)
                T = tangent_cone(E, tuple(x) + (fx,))
                assert set_equal(epigraph(d), T), f"epigraph mismatch at {x}"
                oracles.check_directional_derivative(f, x, d)
                points += 1
        return f"{points} points over 50 functions; epigraphs and quotients agree"

    report(5, "directional derivative", check)


# -- 6 ------------------------------------------------------------------------------


def _infconv_lp(f1: GPCFunction, f2: GPCFunction, x):
    """``min t1 + t2`` over ``(x1, t1) in epi f1``, ``(x - x1, t2) in epi f2`` by LP."""
    n = f1.dim
    E1, E2 = epigraph(f1).constraints, epigraph(f2).constraints
    # variables (x1, t1, t2); the second block is (x - x1, t2)
    eqs, ineqs = [], []
    for a, b in E1.equalities:
        eqs.append((tuple(a) + (0,), b))
    for a, b in E1.inequalities:
        ineqs.append((tuple(a) + (0,), b))

    def lift2(a, b):
        return tuple(-c for c in a[:n]) + (0, a[n]), b - dot(a[:n], x)

    eqs += [lift2(a, b) for a, b in E2.equalities]
    ineqs += [lift2(a, b) for a, b in E2.inequalities]
    cf = ConstraintForm(n + 2).add_rows(eqs, ineqs)
    res = lp.minimize((0,) * n + (1, 1), cf)
    if res.status is lp.Status.INFEASIBLE:
        return INF
    assert res.optimal, "inf-convolution unbounded below at a sample"
    return res.value


def test_criterion_06_inf_convolution(report):
    def check():
        with pytest.raises(NotAnEpigraphError):
            inf_convolution(
                GPCFunction.affine_max([((1,), 0)]), GPCFunction.affine_max([((2,), 0)])
            )
        rng = random.Random(606)
        proper = improper = 0
        while proper < 50:
            n = rng.randint(1, 3)
            f1 = rand_function(rng, n, max_eq=0, bounded=rng.random() < 0.7)
            f2 = rand_function(rng, n)
            try:
                h = inf_convolution(f1, f2)
            except NotAnEpigraphError:
                # improper exactly when the conjugate domains are disjoint
                d = intersect(conjugate(f1).domain, conjugate(f2).domain)
                assert d.is_empty(), "rejected a proper inf-convolution"
                improper += 1
                continue
            proper += 1
            assert set_equal(epigraph(h), minkowski_sum(epigraph(f1), epigraph(f2)))
            S = minkowski_sum(f1.domain, f2.domain)
            for _ in range(4):
                x = rand_point_in(rng, S)
                assert evaluate(h, x) == _infconv_lp(f1, f2, x)
            y = rand_int_vector(rng, n, -4, 4)
            assert evaluate(h, y) == _infconv_lp(f1, f2, y)
        return f"x and 2x rejected; 50 proper pairs match, {improper} improper pairs rejected"

    report(6, "infimal convolution", check)


# -- 7 ------------------------------------------------------------------------------


def test_criterion_07_conjugate(report):
    def check():
        rng = random.Random(707)
        for trial in range(50):
            f = rand_function(rng)
            fs = conjugate(f)
            duals = list(fs.domain.generators.points)[:5]
            while len(duals) < 20:
                duals.append(rand_int_vector(rng, f.dim, -4, 4, nonzero=False))
            for y in duals:
                assert evaluate(fs, y) == conjugate_value(f, y), f"trial {trial}: f*({y})"
            fss = conjugate(fs)
            xs = [rand_point_in(rng, f.domain) for _ in range(5)]
            xs += [rand_int_vector(rng, f.dim, -4, 4, nonzero=False) for _ in range(5)]
            for x in xs:
                assert evaluate(fss, x) == evaluate(f, x), f"trial {trial}: f** differs at {x}"
        return "50 functions x 20 dual points match LP; biconjugates agree"

    report(7, "conjugate vs LP", check)


# -- 8 ------------------------------------------------------------------------------


def test_criterion_08_fenchel_young(report):
    def check():
        ABS = GPCFunction.affine_max([((1,), 0), ((-1,), 0)])
        assert set_equal(subdifferential(ABS, (0,)), Polyhedron.vrep([(-1,), (1,)]))
        rng = random.Random(808)
        members = non_members = 0
        for _ in range(40):
            f = rand_function(rng)
            for x in vertices(f.domain)[:2] + [rand_point_in(rng, f.domain) for _ in range(2)]:
                S = subdifferential(f, x)
                for y in generator_samples(S.generators):
                    assert fenchel_young_check(f, x, y), f"subgradient {y} fails at {x}"
                    members += 1
                k = 0
                while k < 20 and not is_universe(S):
                    y = rand_int_vector(rng, f.dim, -4, 4, nonzero=False)
                    if contains(S, y):
                        continue
                    assert not fenchel_young_check(f, x, y), f"non-subgradient {y} passes"
                    k += 1
                    non_members += 1
        return f"ABS at 0 is [-1,1]; {members} members pass, {non_members} non-members fail"

    report(8, "Fenchel-Young", check)


# -- 9 ------------------------------------------------------------------------------


def test_criterion_09_subdifferential_sum(report):
    def check():
        rng = random.Random(909)
        with_eq = 0
        for _ in range(50):
            n = rng.randint(1, 3)
            c = rand_int_vector(rng, n, -2, 2, nonzero=False)
            f1 = rand_function(rng, n, center=c)
            f2 = rand_function(rng, n, center=c)
            with_eq += bool(f1.domain.constraints.eq_lhs)
            g = add(f1, f2)
            pts = [c] + [rand_point_in(rng, g.domain) for _ in range(4)]
            for x in pts:
                lhs = subdifferential(g, x)
                rhs = minkowski_sum(subdifferential(f1, x), subdifferential(f2, x))
                assert set_equal(lhs, rhs), f"sum rule fails at {x}"
        return f"50 pairs x 5 points exact ({with_eq} with equality rows)"

    report(9, "subdifferential sum rule", check)


# -- 10 -----------------------------------------------------------------------------


def test_criterion_10_separation(report):
    def check():
        rng = random.Random(1010)
        disjoint = meeting = 0
        while disjoint < 50 or meeting < 50:
            n = rng.randint(1, 3)
            P = Polyhedron.from_constraints(rand_raw_system(rng, n, max_ineq=5, max_eq=0)[0])
            Q = Polyhedron.from_constraints(rand_raw_system(rng, n, max_ineq=5, max_eq=1)[0])
            res = separate(P, Q)
            if isinstance(res, Intersecting):
                if meeting >= 50:
                    continue
                assert contains(P, res.witness) and contains(Q, res.witness)
                meeting += 1
            else:
                if disjoint >= 50:
                    continue
                assert isinstance(res, Separation)
                y = res.functional
                up = lp_max(y, P.constraints)
                lo = lp.minimize(y, Q.constraints)
                assert up is not INF and lo.optimal, "separating bounds not attained"
                assert up == res.upper and lo.value == res.lower and up < lo.value
                disjoint += 1
        return "50 disjoint pairs with sup < inf, 50 meeting pairs with verified witness"

    report(10, "separation", check)


# -- 11 -----------------------------------------------------------------------------


def test_criterion_11_cli_determinism(report):
    from test_cli import DATA, GOLDEN, GOLDEN_DIR, render

    def check():
        assert len(GOLDEN) >= 25
        for name, argv in GOLDEN.items():
            first = render(run([str(DATA / a) if (DATA / a).exists() else a for a in argv]))
            second = render(run([str(DATA / a) if (DATA / a).exists() else a for a in argv]))
            assert first == second, f"{name}: two runs differ"
            assert first == (GOLDEN_DIR / f"{name}.out").read_text(), f"{name}: golden differs"
        return f"{len(GOLDEN)} golden commands byte-identical across two runs"

    report(11, "CLI determinism", check)

