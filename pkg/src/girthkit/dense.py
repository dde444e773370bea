"""Algorithms whose cost does not depend on the edge count.

Only the cheapest ``K ~ n**1.5 / 2`` edges are ever read.  Either the girth
cycle lies among them, or the girth is at least the heaviest of them and a
4-cycle, which such a dense prefix always contains, is a 4-approximation.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .approx import approx_general
from .graph import Cycle, GirthEstimate, WeightedGraph, best_cycle
from .hbd import HbdRunner, SearchGrid, search_grid
from .hitting import build_hitting_structure
from .kernels import prefix_kernel
from .reductions import girth_with_reduction

BOOTSTRAP_EPS = 1.0
BOOTSTRAP_FACTOR = 8.0 + BOOTSTRAP_EPS


def density_threshold(n: int) -> int:
    """Edge count that forces a 4-cycle: ceil(n**1.5 / 2 + n)."""
    return math.ceil(n ** 1.5 / 2 + n)


@dataclass
class PrefixSubgraph:
    H: WeightedGraph
    w_max: float
    K: int
    reads: int


def build_prefix_subgraph(g: WeightedGraph, K: int | None = None) -> PrefixSubgraph:
    """The ``K`` lightest edges of ``g``, ties by (weight, u, v).

    Reads at most ``2K + n`` sorted-adjacency entries.
    """
    K = min(g.m, density_threshold(g.n)) if K is None else min(int(K), g.m)
    eu, ev, ew, reads = prefix_kernel(g.ptr, g.sorted_nbr, g.sorted_wt, K)
    w_max = g._w(ew[-1]) if len(ew) else 0
    order = np.lexsort((ev, eu))
    H = WeightedGraph(g.n, eu[order], ev[order], ew[order], g.mode, g.M)
    return PrefixSubgraph(H, w_max, K, int(reads))


def find_c4(g: WeightedGraph):
    """Some 4-cycle of ``g`` (weights ignored), or ``None``.

    Each vertex files its neighbor pairs in a table; the first pair filed
    twice closes a 4-cycle.  At most ``n(n-1)/2`` pairs fit before a repeat.
    """
    seen = {}
    for v in range(g.n):
        nb = g.ordered_nbr[g.ptr[v]:g.ptr[v + 1]].tolist()
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                x = seen.setdefault((a, b), v)
                if x != v:
                    return Cycle.from_vertices(g, [a, v, b, x])
    return None


def controlled_density_approx(g: WeightedGraph, eps: float, sparse_eps: float = 2.0,
                              stats=None) -> GirthEstimate:
    """(8+eps)-approximation touching only the lightest edges.

    Sparse inputs go straight to :func:`approx_general` with ``sparse_eps``.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    stats = Counter() if stats is None else stats
    factor = 8.0 + eps
    if g.is_forest():
        return GirthEstimate(None, factor, "forest", stats)
    if g.has_zero_weights():
        return girth_with_reduction(g, lambda h: controlled_density_approx(h, eps, sparse_eps, stats))
    if g.m <= density_threshold(g.n):
        est = approx_general(g, sparse_eps, stats=stats)
        return GirthEstimate(est.cycle, factor, "sparse:" + est.label, stats)
    pre = build_prefix_subgraph(g)
    stats["prefix_reads"] += pre.reads
    stats["prefix_K"] = pre.K
    est = approx_general(pre.H, eps / 4, stats=stats)
    c4 = find_c4(pre.H)
    c, label = best_cycle([(est.cycle, "prefix:" + est.label), (c4, "c4")])
    return GirthEstimate(c, factor, label, stats)


class _ConfinedRunner:
    """HBD runner that checks each run stays inside a given vertex budget."""

    def __init__(self, run, stats):
        self.run = run
        self.stats = stats
        self.limit = None

    def __call__(self, s, t):
        det = self.run(s, t)
        if self.limit is not None:
            self.stats["confined_runs"] += 1
            if det.visited_count > self.limit:
                self.stats["confinement_violations"] += 1
        return det


def derandomized_4eps(g: WeightedGraph, eps: float, r: int | None = None,
                      stats=None) -> GirthEstimate:
    """Deterministic (4+eps)-approximation without reading all edges.

    A bootstrap estimate ``g*`` within factor 9 fixes a ``(1+eps/6)``-grid
    over ``[g*/9, 5g*]``.  S-members search the whole grid; any other
    vertex only searches thresholds below its distance to S, which keeps
    each run inside its ball.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    stats = Counter() if stats is None else stats
    factor = 4.0 + eps
    if g.is_forest():
        return GirthEstimate(None, factor, "forest", stats)
    if g.has_zero_weights():
        return girth_with_reduction(g, lambda h: derandomized_4eps(h, eps, r, stats))
    boot = controlled_density_approx(g, BOOTSTRAP_EPS, stats=Counter())
    g_star = float(boot.weight)
    grid = SearchGrid.spanning(g_star / BOOTSTRAP_FACTOR, 5 * g_star, eps / 6)
    stats["grid_size"] = len(grid)
    hs = build_hitting_structure(g, r, stats)
    stats["S_size"] = len(hs.S)
    run = _ConfinedRunner(HbdRunner(g, stats), stats)
    cands = []
    for s in hs.S:
        cands.append((search_grid(g, int(s), grid, runner=run)[2], "S"))
    for v in np.flatnonzero(~hs.in_S):
        run.limit = len(hs.ball_vertices[v])
        cands.append((search_grid(g, int(v), grid, cap=hs.dist_to_S[v], runner=run)[2], "ball"))
    run.limit = None
    cands.append((boot.cycle, "bootstrap:" + boot.label))
    c, label = best_cycle(cands)
    return GirthEstimate(c, factor, label, stats)


def integer_eps(g: WeightedGraph) -> float:
    """``1 / (M (n+1))``: with it the (4+eps) bound rounds down to 4 on integer weights."""
    return 1.0 / (g.M * (g.n + 1))
