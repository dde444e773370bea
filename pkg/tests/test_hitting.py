import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.sparse.csgraph import dijkstra

from conftest import graphs, random_graph, tri
from girthkit.graph import build_graph
from girthkit.hitting import (build_hitting_structure, default_r, greedy_hitting_set,
                              hitting_set_bound, r_nearest_set)
from girthkit.oracle import _csr


def all_pairs(g):
    return dijkstra(_csr(g), directed=True)


def test_default_r_on_cubes():
    assert [default_r(n) for n in (1, 7, 8, 26, 27, 64, 124, 125, 216)] == [1, 1, 2, 2, 3, 4, 4, 5, 6]


def test_nearest_star():
    g = build_graph([(0, i, i) for i in range(1, 6)], mode="int")
    assert r_nearest_set(g, 0, 3).members == [(0, 0), (1, 1), (2, 2)]


def test_nearest_triangle_tie_by_id():
    assert r_nearest_set(tri(), 0, 3).members == [(0, 0), (1, 1), (2, 1)]


def test_nearest_c6():
    g = build_graph([(i, (i + 1) % 6, 1) for i in range(6)], mode="int")
    assert r_nearest_set(g, 0, 4).members == [(0, 0), (1, 1), (5, 1), (2, 2)]


def test_nearest_small_component():
    g = build_graph([(0, 1, 1), (2, 3, 1)], mode="int")
    assert [x for x, _ in r_nearest_set(g, 0, 5).members] == [0, 1]
    with pytest.raises(ValueError):
        r_nearest_set(g, 0, 0)


@given(graphs(max_n=20, mode="real", zero=0.2), st.integers(1, 8), st.data())
def test_nearest_set_is_valid(g, r, data):
    v = data.draw(st.integers(0, g.n - 1))
    D = all_pairs(g)[v]
    ns = r_nearest_set(g, v, r)
    reach = int(np.isfinite(D).sum())
    assert len(ns.members) == min(r, reach)
    inside = {x for x, _ in ns.members}
    for x, d in ns.members:
        assert d == pytest.approx(D[x], rel=1e-12, abs=1e-12)
    outside = [D[y] for y in range(g.n) if y not in inside]
    if outside:
        assert max(d for _, d in ns.members) <= min(outside) + 1e-9
    ds = [d for _, d in ns.members]
    assert ds == sorted(ds)


def test_greedy_examples():
    assert greedy_hitting_set([[0, 1, 2]] * 10) == [0]
    assert greedy_hitting_set([[0], [1], [2]]) == [0, 1, 2]
    assert greedy_hitting_set([[0, 1], [1, 2], [2, 3]]) == [1, 2]
    with pytest.raises(ValueError):
        greedy_hitting_set([[0], []])


@given(st.lists(st.lists(st.integers(0, 30), min_size=1, max_size=6), min_size=1, max_size=40))
def test_greedy_hits_everything(sets):
    S = set(greedy_hitting_set(sets))
    assert all(S & set(x) for x in sets)


def test_triangle_structure():
    hs = build_hitting_structure(tri(), 3)
    assert list(hs.S) == [0]
    assert hs.ball(0) == []
    assert hs.ball(1) == [(1, 0.0)] and hs.ball(2) == [(2, 0.0)]
    assert list(hs.dist_to_S) == [0, 1, 1]


def test_r_one_is_degenerate():
    g = random_graph(np.random.default_rng(0), 20, 10)
    hs = build_hitting_structure(g, 1)
    assert list(hs.S) == list(range(20))
    assert (hs.ball_sizes() == 0).all() and (hs.dist_to_S == 0).all()


def test_path_27():
    g = build_graph([(i, i + 1, 1) for i in range(26)], mode="int")
    hs = build_hitting_structure(g, 3)
    assert len(hs.S) <= math.ceil(9 * (math.log(27) + 1))
    assert hs.ball_sizes().max() <= 2
    assert hs.report().startswith("r=3 S=")


def check_structure(g, hs):
    n, r = g.n, hs.r
    D = all_pairs(g)
    members, _, counts = hs.nearest
    assert len(hs.S) <= hitting_set_bound(n, r)
    for v in range(n):
        row = set(members[v, :counts[v]].tolist())
        assert row & set(hs.S.tolist()), "nearest set not hit"
        dS = D[v, hs.S].min()
        assert hs.dist_to_S[v] == pytest.approx(dS, rel=1e-12, abs=1e-12)
        truth = {u for u in range(n) if D[v, u] < dS}
        ball = set(hs.ball_vertices[v].tolist())
        assert ball == truth
        assert len(ball) < r
        assert ball <= row
        assert (v in ball) == (dS > 0)


@given(graphs(max_n=30, mode="real", connected=True, max_extra=40), st.integers(1, 5))
def test_structure_against_dijkstra(g, r):
    check_structure(g, build_hitting_structure(g, r))


@pytest.mark.parametrize("n", [27, 64, 125])
def test_structure_default_r(n):
    g = random_graph(np.random.default_rng(n), n, 2 * n, mode="real")
    hs = build_hitting_structure(g)
    assert hs.r == default_r(n)
    check_structure(g, hs)


def test_deterministic():
    g = random_graph(np.random.default_rng(3), 80, 200, mode="real")
    a, b = build_hitting_structure(g), build_hitting_structure(g)
    assert list(a.S) == list(b.S)
