import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import close, graphs, random_graph, tri
from girthkit.graph import Cycle, GraphError, build_graph, validate_cycle
from girthkit.oracle import exact_girth
from girthkit.reductions import (ceil_weights, girth_with_reduction, lift_reduced_cycle,
                                 scale_weights, zero_weight_reduce)


def test_scale_examples():
    assert exact_girth(scale_weights(tri(), 2)).weight == 6
    g = tri((1, 2, 3))
    assert scale_weights(g, 1).edges == g.edges
    h = scale_weights(g, 0.5)
    assert h.mode == "real" and sorted(w for *_, w in h.edges) == [0.5, 1.0, 1.5]
    assert scale_weights(g, 3).is_int
    with pytest.raises(GraphError):
        scale_weights(g, 0)
    with pytest.raises(GraphError, match="overflow"):
        scale_weights(g, 2 ** 52)


def test_ceil_examples():
    g = tri((0.5, 1.2, 3.0), mode="real")
    assert sorted(w for *_, w in ceil_weights(g).edges) == [1, 2, 3]
    h = tri((1, 2, 3))
    assert ceil_weights(h) is h
    t = tri((0.1, 0.1, 0.1), mode="real")
    assert exact_girth(ceil_weights(t)).weight == 3
    with pytest.raises(GraphError, match="zero"):
        ceil_weights(tri((0.0, 1.0, 1.0), mode="real"))


def test_zero_triangle():
    g = tri((0.0, 0.0, 1.0), mode="real")
    zr = zero_weight_reduce(g)
    assert zr.zero_forest_cycle is None
    assert zr.best_intra.total_weight == 1
    assert zr.contracted.n == 1 and zr.contracted.m == 0
    assert girth_with_reduction(g, exact_girth).weight == 1


def test_all_positive_is_identity():
    g = random_graph(np.random.default_rng(1), 15, 15, mode="real")
    zr = zero_weight_reduce(g)
    assert zr.best_intra is None and zr.best_two_component is None
    assert zr.contracted.edges == g.edges
    c = exact_girth(zr.contracted).cycle
    assert lift_reduced_cycle(zr, c) == c
    assert girth_with_reduction(g, exact_girth).weight == exact_girth(g).weight


def test_zero_square():
    g = build_graph([(0, 1, 0.0), (1, 2, 0.0), (2, 3, 0.0), (0, 3, 0.0), (0, 4, 1.0)])
    zr = zero_weight_reduce(g)
    assert zr.zero_forest_cycle.total_weight == 0
    assert girth_with_reduction(g, exact_girth).weight == 0


def test_lift_two_zero_paths():
    # zero paths 0-1-2 and 3-4-5 and singleton 6; positive edges make a contracted triangle
    g = build_graph([(0, 1, 0.0), (1, 2, 0.0), (3, 4, 0.0), (4, 5, 0.0),
                     (0, 3, 2.0), (5, 6, 3.0), (2, 6, 4.0)])
    zr = zero_weight_reduce(g)
    assert zr.contracted.n == 3
    c = exact_girth(zr.contracted).cycle
    lifted = lift_reduced_cycle(zr, c)
    assert validate_cycle(g, lifted)
    assert lifted.total_weight == c.total_weight == 9
    assert exact_girth(g).weight == 9


def test_two_component_case():
    # two zero paths joined by two positive edges, plus a heavier triangle elsewhere
    g = build_graph([(0, 1, 0.0), (2, 3, 0.0), (0, 2, 1.0), (1, 3, 1.5),
                     (4, 5, 5.0), (5, 6, 5.0), (4, 6, 5.0)])
    zr = zero_weight_reduce(g)
    assert zr.best_two_component.total_weight == 2.5
    est = girth_with_reduction(g, exact_girth)
    assert est.weight == 2.5 and est.label == "zero-pair"


def test_shared_endpoint_pair():
    # both inter-component edges leave vertex 0
    g = build_graph([(1, 2, 0.0), (0, 1, 1.0), (0, 2, 2.0)])
    zr = zero_weight_reduce(g)
    assert validate_cycle(g, zr.best_two_component)
    assert zr.best_two_component.total_weight == 3


@given(graphs(min_n=3, max_n=14, mode="real", zero=0.6))
def test_reduction_with_exact_equals_exact(g):
    est = girth_with_reduction(g, exact_girth)
    assert close(est.weight, exact_girth(g).weight)
    if est.cycle is not None:
        assert validate_cycle(g, est.cycle)


@given(graphs(min_n=3, max_n=14, mode="real", zero=0.4), st.floats(0.01, 100))
def test_scaling_is_linear(g, f):
    h = scale_weights(g, f)
    assert close(exact_girth(h).weight, f * exact_girth(g).weight, rel=1e-9)


@given(graphs(min_n=3, max_n=14, mode="real"))
def test_ceil_shift_bounded(g):
    a = exact_girth(g).weight
    b = exact_girth(ceil_weights(g)).weight
    if np.isinf(a):
        assert np.isinf(b)
    else:
        assert a - 1e-9 <= b <= a + g.n


@given(graphs(min_n=3, max_n=14, mode="int", M=50), st.integers(1, 1000))
def test_scaling_keeps_argmin_integer(g, f):
    a, b = exact_girth(g).cycle, exact_girth(scale_weights(g, f)).cycle
    assert (a is None) == (b is None)
    if a is not None:
        assert a.vertices == b.vertices


def test_reduced_lift_on_random():
    rng = np.random.default_rng(7)
    for _ in range(30):
        g = random_graph(rng, 20, 25, mode="real", zero=0.5)
        zr = zero_weight_reduce(g)
        if zr.zero_forest_cycle is not None:
            continue
        c = exact_girth(zr.contracted).cycle
        if c is None:
            continue
        lifted = lift_reduced_cycle(zr, c)
        assert validate_cycle(g, lifted)
        assert lifted.total_weight <= c.total_weight * (1 + 1e-12)
        assert isinstance(lifted, Cycle)
