from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from schubcode.fieldcore import gaussian_binomial, gf, qint
from schubcode.grassgeo import (
    GrassmannIndex,
    Line,
    disc_contains,
    index_tuples,
    injection_distance,
    line_disc_intersection,
    line_points,
    line_through_two,
    lines_through,
    plucker,
)
from schubcode.linalg import enumerate_subspaces, solve_dependence, span, subspace_leq, unit

F2, F3 = gf(2), gf(3)
G24 = GrassmannIndex(2, 4, F2)
G34 = GrassmannIndex(2, 4, F3)


def e(i, m=4, F=F2):
    return span(F, m, unit(m, i))


def pspan(F, m, *idx):
    return span(F, m, *(unit(m, i) for i in idx))


def test_index_tuples_lexicographic():
    assert index_tuples(2, 4) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert len(index_tuples(3, 6)) == 20


def test_plucker_examples():
    assert plucker(pspan(F2, 4, 0, 1)) == (1, 0, 0, 0, 0, 0)
    # hand expansion of the six 2x2 minors of [[1,0,0,1],[0,1,1,0]]
    P = span(F2, 4, (1, 0, 0, 1), (0, 1, 1, 0))
    assert plucker(P) == (1, 1, 0, 0, 1, 1)
    with pytest.raises(ValueError):
        plucker(P, ell=3)


def test_plucker_projective_invariance_gf3():
    P = span(F3, 4, (1, 2, 0, 1), (0, 1, 1, 2))
    Q = span(F3, 4, (2, 1, 0, 2), (1, 0, 1, 0))  # rows 2*r1 and r1 + r2
    assert P == Q and plucker(P) == plucker(Q)


def test_plucker_injective_on_g24_gf3():
    assert len({plucker(P) for P in G34.points}) == len(G34) == gaussian_binomial(4, 2, 3)


def test_distance_examples():
    P = pspan(F2, 4, 0, 1)
    assert injection_distance(P, P) == 0
    assert injection_distance(P, pspan(F2, 4, 2, 3)) == 2
    assert injection_distance(P, pspan(F2, 4, 1, 2)) == 1
    assert disc_contains(P, P, 0) and not disc_contains(P, P, -1)
    assert not disc_contains(P, pspan(F2, 4, 2, 3), 1)
    assert disc_contains(P, pspan(F2, 4, 2, 3), 2)


def test_metric_axioms_exhaustive_g24():
    pts = G24.points
    d = {(a, b): injection_distance(pts[a], pts[b]) for a, b in product(range(len(pts)), repeat=2)}
    for a, b in d:
        assert 0 <= d[a, b] <= 2
        assert (d[a, b] == 0) == (a == b)
        assert d[a, b] == d[b, a]
    for a, b, c in product(range(len(pts)), repeat=3):
        assert d[a, c] <= d[a, b] + d[b, c]


def test_line_points_examples():
    L = Line(e(0), pspan(F2, 4, 0, 1, 2))
    pts = line_points(L)
    assert len(pts) == 3 and all(L.U.dim == 1 and P in L for P in pts)
    assert list(pts) == sorted(pts, key=lambda s: s.order_key)
    proj = Line(span(F2, 2), pspan(F2, 2, 0, 1))
    assert len(line_points(proj)) == 3
    assert len(line_points(Line(span(F3, 4, unit(4, 0)), pspan(F3, 4, 0, 1, 2)))) == 4


def test_line_validation():
    with pytest.raises(ValueError):
        Line(e(3), pspan(F2, 4, 0, 1, 2))
    with pytest.raises(ValueError):
        Line(e(0), pspan(F2, 4, 0, 1))


def test_line_through_two_examples():
    P, Q = pspan(F2, 4, 0, 1), pspan(F2, 4, 1, 2)
    L = line_through_two(P, Q)
    assert P in line_points(L) and Q in line_points(L)
    assert line_through_two(P, P) is None
    assert line_through_two(P, pspan(F2, 4, 2, 3)) is None


@pytest.mark.parametrize("q,m,ell", [(2, 4, 2), (3, 4, 2), (2, 5, 2), (2, 4, 1), (2, 5, 3), (2, 3, 3)])
def test_lines_through_count(q, m, ell):
    F = gf(q)
    P = next(enumerate_subspaces(m, ell, F))
    lt = lines_through(P)
    assert len(lt) == qint(ell, q) * qint(m - ell, q)
    # oracle: filter every (U, W) pair
    brute = [
        (U, W)
        for U in enumerate_subspaces(m, ell - 1, F)
        if subspace_leq(U, P)
        for W in enumerate_subspaces(m, ell + 1, F)
        if ell + 1 <= m and subspace_leq(P, W)
    ] if ell < m else []
    assert {(L.U, L.W) for L in lt} == set(brute)


def test_every_line_found_once():
    lines = G24.all_lines()
    assert len(lines) == len(set(lines))
    # each point lies on 9 lines and each line has 3 points
    assert 3 * len(lines) == 9 * len(G24)


def test_collinear_pluckers_have_full_dependence():
    for F, grass in ((F2, G24), (F3, G34)):
        for L in grass.all_lines()[:60]:
            for trio in combinations(line_points(L), 3):
                lam = solve_dependence([plucker(T) for T in trio], F)
                assert lam is not None and all(lam)


def test_line_disc_intersection_examples():
    P = pspan(F2, 4, 0, 1)
    for L in lines_through(P):
        assert len(line_disc_intersection(L, P, 1)) == 3
    Q = pspan(F2, 4, 2, 3)  # distance 2
    for L in lines_through(Q):
        assert line_disc_intersection(L, P, 0) == []
        meets = line_disc_intersection(L, P, 1)
        assert len(meets) <= 1


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_line_disc_statements_sampled_gf3(data):
    from schubcode.linalg import subspace_intersection, subspace_sum

    P = data.draw(st.sampled_from(G34.points))
    Q = data.draw(st.sampled_from(G34.points))
    L = data.draw(st.sampled_from(lines_through(Q)))
    i = injection_distance(P, Q)
    near = lambda r: len(line_disc_intersection(L, P, r))  # noqa: E731
    a = subspace_leq(subspace_intersection(P, Q), L.U)
    b = subspace_leq(L.W, subspace_sum(P, Q))
    assert (near(i) >= 2) == (a or b)
    assert (near(i - 1) == 1) == (a and b)
    assert near(i - 1) <= 1
    assert all(near(j) == 0 for j in range(i - 1))
