import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import close, graphs, random_graph, tri
from girthkit.approx import (SmallGirthSubroutine, approx_general, approx_short_close_cycle,
                             default_subroutine, small_girth, subquadratic_approx)
from girthkit.graph import GraphError, build_graph, validate_cycle
from girthkit.hitting import build_hitting_structure
from girthkit.oracle import exact_girth
from girthkit.poly_approx import poly_girth


def pendant_triangle(k=30):
    """Unit triangle hanging off a long path that attracts every S-member."""
    es = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 5)] + [(i, i + 1, 1) for i in range(3, k)]
    return build_graph(es, mode="int")


def test_short_close_cycle_examples():
    assert approx_short_close_cycle(tri(), 0, 1).total_weight == 3
    star = build_graph([(0, i, 1) for i in range(1, 6)], mode="int")
    assert approx_short_close_cycle(star, 0, 1) is None
    g = build_graph([(0, 1, 2), (1, 2, 2), (0, 2, 2), (0, 3, 1)], mode="int")
    assert approx_short_close_cycle(g, 3, 2).total_weight == 6
    with pytest.raises(GraphError):
        approx_short_close_cycle(tri(mode="real"), 0, 1)


def test_subquadratic_examples():
    est = subquadratic_approx(tri())
    assert est.weight == 3 and est.declared_factor == 2
    c6 = build_graph([(i, (i + 1) % 6, 1) for i in range(6)] + [(0, 2, 1)], mode="int")
    assert exact_girth(c6).weight == 3
    assert subquadratic_approx(c6).weight <= 6
    forest = build_graph([(0, 1, 1), (1, 2, 1)], mode="int")
    assert subquadratic_approx(forest).acyclic
    with pytest.raises(GraphError):
        subquadratic_approx(tri(mode="real"))


def test_small_girth_modes():
    assert small_girth(tri()).weight == 3
    c5 = build_graph([(i, (i + 1) % 5, i + 1) for i in range(5)], mode="int")
    assert small_girth(c5).weight == 15
    assert small_girth(c5, "hbd-sweep").weight == 15
    rng = np.random.default_rng(30)
    for mode in ("int", "real"):
        g = random_graph(rng, 30, 30, mode=mode)
        est = small_girth(g, "hbd-sweep")
        assert est.declared_factor == 2
        assert est.weight <= 2 * exact_girth(g).weight * (1 + 1e-12)
    with pytest.raises(GraphError, match="limit"):
        small_girth(tri(), size_threshold=2)
    with pytest.raises(ValueError):
        default_subroutine("nope")


def test_approx_general_examples():
    assert approx_general(tri(mode="real"), 0.5).weight == 3
    rng = np.random.default_rng(80)
    for _ in range(5):
        g = random_graph(rng, 80, 80, mode="real")
        assert approx_general(g, 0.1).weight <= 2.1 * exact_girth(g).weight * (1 + 1e-12)
    assert approx_general(build_graph([(0, 1, 1.0)]), 0.1).acyclic
    with pytest.raises(ValueError):
        approx_general(tri(), 0)


def test_ball_branch_wins_on_pendant_triangle():
    g = pendant_triangle()
    hs = build_hitting_structure(g, 4)
    assert not set(hs.S.tolist()) & {0, 1, 2}
    assert set(hs.ball_vertices[0].tolist()) == {0, 1, 2}
    est = approx_general(g, 0.1, r=4)
    assert est.label == "ball" and est.weight == 3
    est = subquadratic_approx(g, r=4)
    assert est.label == "ball" and est.weight == 3


@given(graphs(min_n=3, max_n=20, mode="int", M=10, connected=True, max_extra=30))
def test_subquadratic_factor(g):
    est = subquadratic_approx(g)
    opt = exact_girth(g).weight
    if math.isinf(opt):
        assert est.acyclic
    else:
        assert validate_cycle(g, est.cycle)
        assert est.weight <= 2 * opt


@given(graphs(min_n=3, max_n=20, mode="real", zero=0.2, max_extra=30),
       st.sampled_from([0.01, 0.1, 1.0]), st.sampled_from(["exact", "hbd-sweep"]))
def test_approx_general_factor(g, eps, mode):
    est = approx_general(g, eps, sub=default_subroutine(mode))
    opt = exact_girth(g).weight
    if math.isinf(opt):
        assert est.acyclic
    else:
        assert validate_cycle(g, est.cycle)
        assert est.weight <= (2 + eps) * opt * (1 + 1e-12)


def _case(g, hs, cyc):
    vs = set(cyc.vertices)
    if vs & set(hs.S.tolist()):
        return "meets-S"
    if any(vs <= set(hs.ball_vertices[v].tolist()) for v in range(g.n)):
        return "in-ball"
    return "escapes"


def test_case_coverage_factor_two():
    rng = np.random.default_rng(5)
    seen = Counter()
    for i in range(160):
        n = int(rng.integers(10, 40))
        r = int(rng.integers(3, 7))
        g = random_graph(rng, n, int(rng.integers(1, n)), mode="int", M=int(rng.choice([1, 10])))
        if i % 4 == 0:
            g = pendant_triangle(n)
        opt = exact_girth(g)
        if opt.acyclic:
            continue
        hs = build_hitting_structure(g, r)
        case = _case(g, hs, opt.cycle)
        seen[case] += 1
        est = subquadratic_approx(g, r=r)
        assert est.weight <= 2 * opt.weight, (case, est.label)
        est = approx_general(g, 0.1, r=r)
        assert est.weight <= 2.1 * opt.weight, (case, est.label)
    assert min(seen[c] for c in ("meets-S", "in-ball", "escapes")) > 0, seen


@pytest.mark.parametrize("seed", range(6))
def test_work_bound(seed):
    rng = np.random.default_rng(seed)
    M = [1, 10, 100][seed % 3]
    n = 60
    g = random_graph(rng, n, 3 * n, mode="int", M=M)
    stats = Counter()
    subquadratic_approx(g, stats=stats)
    hs = build_hitting_structure(g)
    L = math.ceil(math.log2(M * n))
    assert stats["hbd_visited"] <= len(hs.S) * n * L + n * hs.r * L


def test_grid_window_contains_girth():
    rng = np.random.default_rng(11)
    for _ in range(20):
        g = random_graph(rng, 40, 40, mode="real")
        est, F = poly_girth(g)
        opt = exact_girth(g).weight
        assert est.weight / F <= opt * (1 + 1e-12) and opt <= est.weight


def test_custom_subroutine_wrapper():
    calls = []

    def proc(h):
        calls.append(h.n)
        return exact_girth(h)

    sub = SmallGirthSubroutine(proc, 1.0, None, "spy")
    g = pendant_triangle()
    est = approx_general(g, 0.5, r=4, sub=sub)
    assert calls and est.weight == 3


def test_zero_weights_are_reduced_automatically():
    g = build_graph([(0, 1, 0.0), (1, 2, 0.0), (0, 2, 1.5), (2, 3, 1.0), (3, 0, 1.0)])
    est = approx_general(g, 0.1)
    assert close(est.weight, exact_girth(g).weight)
