import math
import os

import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from girthkit.graph import build_graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    for u, v, w in g.edges:
        G.add_edge(u, v, weight=w)
    return G


def brute_girth(g):
    """Minimum cycle weight by enumerating every simple cycle (small graphs only)."""
    G = to_nx(g)
    best = math.inf
    for cyc in nx.simple_cycles(G):
        if len(cyc) < 3:
            continue
        w = sum(G[cyc[i]][cyc[(i + 1) % len(cyc)]]["weight"] for i in range(len(cyc)))
        best = min(best, w)
    return best


def close(a, b, rel=1e-9):
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


@st.composite
def graphs(draw, min_n=3, max_n=12, mode="int", M=10, zero=0.0, max_extra=None,
           connected=False):
    """Random simple graph; ``zero`` is the chance a real weight is 0."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = set()
    if connected:
        for v in range(1, n):
            edges.add((draw(st.integers(0, v - 1)), v))
    extra = len(pairs) if max_extra is None else max_extra
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=extra)) if pairs else []
    edges.update(chosen)
    out = []
    for u, v in sorted(edges):
        if mode == "int":
            w = draw(st.integers(1, M))
        elif draw(st.floats(0, 1)) < zero:
            w = 0.0
        else:
            w = draw(st.floats(0.01, 100.0, allow_nan=False, allow_infinity=False))
        out.append((u, v, w))
    return build_graph(out, n=n, mode=mode)


def random_graph(rng, n, m_extra, mode="int", M=10, lo=0.01, hi=100.0, zero=0.0):
    """Connected random graph: random tree plus ``m_extra`` further edges."""
    edges = {(int(rng.integers(0, v)), v) for v in range(1, n)}
    total = n * (n - 1) // 2
    target = min(total, n - 1 + m_extra)
    while len(edges) < target:
        u, v = sorted(rng.choice(n, 2, replace=False).tolist())
        edges.add((u, v))
    out = []
    for u, v in sorted(edges):
        if mode == "int":
            w = int(rng.integers(1, M + 1))
        elif rng.random() < zero:
            w = 0.0
        else:
            w = float(rng.uniform(lo, hi))
        out.append((u, v, w))
    return build_graph(out, n=n, mode=mode, M=M if mode == "int" else None)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def tri(w=(1, 1, 1), mode="int"):
    return build_graph([(0, 1, w[0]), (1, 2, w[1]), (0, 2, w[2])], mode=mode)


# one PASS/FAIL line per acceptance criterion, collected by test_acceptance
ACCEPTANCE = []


def record_criterion(num, title, ok, detail=""):
    line = f"criterion {num:>2} {'PASS' if ok else 'FAIL'} {title}" + (f" [{detail}]" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
