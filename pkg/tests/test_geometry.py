import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hfree.errors import EmptyPolytope, InputError, NotFullDim, NotInterior
from hfree.geometry import (HRep, LinearEquation, LinearInequality, Polytope, VRep, affine_hull,
                            barycenter, contains, hrep_to_vrep, minimize_hrep,
                            minimize_hrep_detailed, polar_dual, polytopes_equal, vrep_to_hrep)
from hfree.linalg import nullspace, rank, rref
from hfree.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, check_certificate, lp_optimize, solve_lp
from hfree.rational import Q, fmt, parse_rational

from oracles import to_f, affine_dim, brute_facets, brute_vertices, golden_point_sets, row_key


def box(d, lo=0, hi=1):
    rows = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        rows.append(LinearInequality(e, hi))
        e = [0] * d
        e[i] = -1
        rows.append(LinearInequality(e, -lo))
    return HRep(d, tuple(rows))


def test_parse_rational():
    assert parse_rational("3/6") == Q(1, 2)
    assert parse_rational("-4") == -4
    for bad in ("1.5", "1/0", "a", "1 /2"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    assert fmt(Q(-6, 4)) == "-3/2"


def test_rref_and_rank():
    R, piv = rref([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert piv == [0, 1]
    assert rank([[1, 2], [2, 4]]) == 1
    ns = nullspace([[1, 1, 1]], 3)
    assert len(ns) == 2
    assert all(sum(x) == 0 for x in ns)


def test_square_roundtrip():
    h = vrep_to_hrep(VRep(2, ((0, 0), (1, 0), (0, 1), (1, 1))))
    assert len(h.inequalities) == 4 and not h.equations
    v = hrep_to_vrep(h)
    assert v.point_set() == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_cube_facets():
    assert len(vrep_to_hrep(VRep(3, tuple(Polytope.from_vertices(
        [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]).vertices))).inequalities) == 6


def test_triangle_with_redundant_row():
    h = HRep(2, (LinearInequality((-1, 0), 0), LinearInequality((0, -1), 0),
                 LinearInequality((1, 1), 1), LinearInequality((1, 1), 2)))
    m = minimize_hrep_detailed(h)
    assert m.kept == (0, 1, 2)
    assert len(hrep_to_vrep(h)) == 3


def test_implicit_equality_detected():
    h = HRep(2, (LinearInequality((1, 0), 1), LinearInequality((-1, 0), -1),
                 LinearInequality((0, 1), 1), LinearInequality((0, -1), 0)))
    m = minimize_hrep(h)
    assert len(m.equations) == 1
    assert len(m.inequalities) == 2


def test_infeasible_and_unbounded():
    h = HRep(1, (LinearInequality((1,), 0), LinearInequality((-1,), -1)))
    with pytest.raises(EmptyPolytope):
        minimize_hrep(h)
    assert Polytope.from_hrep(h).is_empty
    assert solve_lp((1,), [(-1,)], [0]).status == UNBOUNDED
    assert solve_lp((1,), [(1,), (-1,)], [0, -1]).status == INFEASIBLE


@pytest.mark.parametrize("name", sorted(golden_point_sets()))
def test_golden_dd_roundtrip(name):
    pts = golden_point_sets()[name]
    p = Polytope.from_vertices(pts)
    h = p.minimal_hrep
    back = hrep_to_vrep(h)
    assert back.point_set() == set(p.vertices)
    # facets against the brute-force oracle where the hull is full-dimensional
    if affine_dim(pts) == len(pts[0]) and len(pts) <= 16:
        assert {row_key(r) for r in h.inequalities} == brute_facets(pts)
        assert brute_vertices([r.a for r in h.inequalities],
                              [r.b for r in h.inequalities]) == set(p.vertices)
    eqs, k = affine_hull(VRep(p.dim, tuple(pts)))
    assert k == affine_dim(pts) == p.dimension


def test_lower_dimensional_equations():
    p = Polytope.from_vertices([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert p.dimension == 2
    assert len(p.equations) == 1
    assert len(p.facets) == 3


def test_point_and_empty():
    p = Polytope.from_vertices([(1, 2)])
    assert p.dimension == 0 and p.facets == ()
    e = Polytope.empty(2)
    assert e.is_empty and polytopes_equal(e, Polytope.empty(2))


def test_contains():
    p = Polytope.from_vertices([(0, 0), (2, 0), (0, 2)])
    assert contains(p, (1, 1)) is None
    assert contains(p, ("1/2", "1/2")) is None
    r = contains(p, (2, 1))
    assert r is not None and r.violated_by((2, 1))
    with pytest.raises(InputError):
        contains(p, (1,))


def test_polar_square():
    sq = Polytope.from_vertices([(-1, -1), (1, -1), (-1, 1), (1, 1)])
    pd = polar_dual(sq, (0, 0))
    assert set(pd.vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert polytopes_equal(polar_dual(pd, (0, 0)), sq)


def test_polar_errors():
    sq = Polytope.from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])
    with pytest.raises(NotInterior):
        polar_dual(sq, (0, 0))
    with pytest.raises(NotFullDim):
        polar_dual(Polytope.from_vertices([(0, 0), (1, 1)]))


@pytest.mark.parametrize("name", sorted(n for n, pts in golden_point_sets().items()
                                        if affine_dim(pts) == len(pts[0])))
def test_golden_polar_involution(name):
    p = Polytope.from_vertices(golden_point_sets()[name])
    c = barycenter(p.vertices)
    assert polytopes_equal(polar_dual(polar_dual(p, c), c), p)


@pytest.mark.parametrize("name", sorted(golden_point_sets()))
def test_golden_lp_duality(name):
    p = Polytope.from_vertices(golden_point_sets()[name])
    h = p.minimal_hrep
    A, b, E, e = h.matrices()
    rng = random.Random(name)
    for _ in range(5):
        c = [Q(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(p.dim)]
        res = solve_lp(c, A, b, E, e)
        assert res.status == OPTIMAL
        assert res.value == max(sum(ci * vi for ci, vi in zip(c, v)) for v in p.vertices)
        assert check_certificate(c, A, b, E, e, res)


def test_lp_optimize_min():
    h = box(2)
    r = lp_optimize((1, 1), h, maximize=False)
    assert r.value == 0
    r = lp_optimize((1, 1), h)
    assert r.value == 2


def test_lp_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule terminates
    c = [Q(3, 4), -150, Q(1, 50), -6]
    A = [[Q(1, 4), -60, Q(-1, 25), 9], [Q(1, 2), -90, Q(-1, 50), 3], [0, 0, 1, 0],
         [-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    b = [0, 0, 1, 0, 0, 0, 0]
    res = solve_lp(c, A, b)
    assert res.status == OPTIMAL and res.value == Q(1, 20)
    assert check_certificate(c, A, b, [], [], res)


coords = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=8))
def test_random_planar_hulls(pts):
    if affine_dim(pts) < 2:
        return
    p = Polytope.from_vertices(pts)
    assert {row_key(r) for r in p.facets} == brute_facets(pts)
    for q in pts:
        assert contains(p, q) is None


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(coords, coords, coords), min_size=4, max_size=8),
       st.tuples(coords, coords, coords))
def test_random_lp_matches_vertices(pts, c):
    p = Polytope.from_vertices(pts)
    res = lp_optimize(c, p.minimal_hrep)
    assert res.value == max(sum(F(ci) * to_f(vi) for ci, vi in zip(c, v)) for v in p.vertices)


def test_hrep_equations_roundtrip():
    h = HRep(3, (LinearInequality((-1, 0, 0), 0), LinearInequality((0, -1, 0), 0),
                 LinearInequality((0, 0, -1), 0)), (LinearEquation((1, 1, 1), 1),))
    v = hrep_to_vrep(h)
    assert v.point_set() == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
