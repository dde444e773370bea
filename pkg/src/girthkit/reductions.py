"""Weight-domain reductions: scaling, rounding up, and zero-weight contraction."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import breadth_first_order

from .graph import (INT_MODE, REAL_MODE, Cycle, GirthEstimate, GraphError, WeightedGraph,
                    _EXACT_LIMIT, _sparse_pattern, best_cycle, cycle_from_closed_walk, tree_path)


def scale_weights(g: WeightedGraph, factor: float) -> WeightedGraph:
    """Multiply every weight by ``factor``.

    Integer graphs stay integer under an integer factor; anything else
    yields a real-mode graph.  To turn an additive error ``beta`` into a
    multiplicative ``eps``, scale by ``beta / (3 * eps * w_min)`` first.
    """
    if not factor > 0 or math.isinf(factor):
        raise GraphError("scale factor must be positive and finite")
    if g.is_int and float(factor).is_integer():
        f = int(factor)
        M = g.M * f
        if M * max(g.n, 1) >= _EXACT_LIMIT:
            raise GraphError(f"scaling by {f} overflows the exact integer range")
        return WeightedGraph(g.n, g.eu, g.ev, g.ew * f, INT_MODE, M)
    ew = g.ew * float(factor)
    if not np.isfinite(ew).all():
        raise GraphError("scaled weight overflow")
    return WeightedGraph(g.n, g.eu, g.ev, ew, REAL_MODE, None)


def ceil_weights(g: WeightedGraph) -> WeightedGraph:
    """Round every weight up to an integer; the girth grows by at most ``n``."""
    if g.is_int:
        return g
    if g.has_zero_weights():
        raise GraphError("zero-weight edge present; run zero_weight_reduce first")
    ew = np.ceil(g.ew)
    M = int(ew.max()) if g.m else 1
    if M * max(g.n, 1) >= _EXACT_LIMIT:
        raise GraphError("rounded weights overflow the exact integer range")
    return WeightedGraph(g.n, g.eu, g.ev, ew, INT_MODE, M)


class _ZeroForest:
    """Rooted spanning forest of the zero-weight edges, for path queries."""

    def __init__(self, g, zero):
        n = g.n
        self.comp = np.full(n, -1, np.int64)
        self.parent = np.full(n, -1, np.int64)
        self.depth = np.zeros(n, np.int64)
        sub = WeightedGraph(n, g.eu[zero], g.ev[zero], g.ew[zero], g.mode, g.M)
        A = _sparse_pattern(sub)
        A = A + A.T
        ncomp = 0
        for v in range(n):
            if self.comp[v] >= 0:
                continue
            order, pred = breadth_first_order(A, v, directed=False, return_predecessors=True)
            self.comp[order] = ncomp
            for x in order[1:]:
                self.parent[x] = pred[x]
                self.depth[x] = self.depth[pred[x]] + 1
            ncomp += 1
        self.ncomp = ncomp

    def path(self, a, b):
        return tree_path(self.parent, self.depth, int(a), int(b))


@dataclass
class ZeroReduction:
    """Outcome of contracting the zero-weight forest.

    ``components[v]`` is the component index of ``v`` (components are
    numbered by smallest member).  ``contracted`` has one vertex per
    component; ``witness[e]`` is the original ``(u, v)`` realising contracted
    edge ``e``.
    """

    graph: WeightedGraph
    zero_forest_cycle: Cycle | None
    components: np.ndarray | None
    best_intra: Cycle | None
    best_two_component: Cycle | None
    contracted: WeightedGraph | None
    witness: dict | None
    forest: _ZeroForest | None = None


def _zero_cycle(g, zero_idx):
    """A cycle among the zero-weight edges, if they contain one."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    used = []
    for e in zero_idx:
        a, b = int(g.eu[e]), int(g.ev[e])
        ra, rb = find(a), find(b)
        if ra == rb:
            sub = np.array(used, np.int64)
            forest = _ZeroForest(WeightedGraph(g.n, g.eu[sub], g.ev[sub], g.ew[sub], g.mode, g.M),
                                 np.ones(len(sub), bool))
            return Cycle.from_vertices(g, forest.path(a, b))
        parent[ra] = rb
        used.append(e)
    return None


def zero_weight_reduce(g: WeightedGraph) -> ZeroReduction:
    """Split girth search around the forest of zero-weight edges.

    Candidates: a zero cycle (short-circuit), the lightest positive edge
    inside one component, the two lightest edges between a pair of
    components, and the contracted graph for cycles meeting three or more
    components.
    """
    zero = g.ew == 0
    zc = _zero_cycle(g, np.flatnonzero(zero))
    if zc is not None:
        return ZeroReduction(g, zc, None, None, None, None, None)
    forest = _ZeroForest(g, zero)
    comp = forest.comp
    pos = ~zero
    eu, ev, ew = g.eu[pos], g.ev[pos], g.ew[pos]
    cu, cv = comp[eu], comp[ev]

    best_intra = None
    intra = np.flatnonzero(cu == cv)
    if len(intra):
        e = intra[np.lexsort((ev[intra], eu[intra], ew[intra]))[0]]
        path = forest.path(ev[e], eu[e])  # closes through edge (eu, ev)
        best_intra = Cycle.from_vertices(g, path)

    inter = np.flatnonzero(cu != cv)
    a, b = np.minimum(cu[inter], cv[inter]), np.maximum(cu[inter], cv[inter])
    order = np.lexsort((ev[inter], eu[inter], ew[inter], b, a))
    inter, a, b = inter[order], a[order], b[order]

    best_two = None
    if len(inter):
        start = np.r_[True, (a[1:] != a[:-1]) | (b[1:] != b[:-1])]
        firsts = np.flatnonzero(start)
        has_two = np.r_[firsts[1:], len(inter)] - firsts >= 2
        f = firsts[has_two]
        if len(f):
            tot = ew[inter[f]] + ew[inter[f + 1]]
            j = f[int(np.argmin(tot))]
            e1, e2 = inter[j], inter[j + 1]
            # orient both edges as (end in component a, end in component b)
            x1, y1 = (eu[e1], ev[e1]) if cu[e1] == a[j] else (ev[e1], eu[e1])
            x2, y2 = (eu[e2], ev[e2]) if cu[e2] == a[j] else (ev[e2], eu[e2])
            walk = [x1] + forest.path(y1, y2) + forest.path(x2, x1)[:-1]
            best_two = cycle_from_closed_walk(g, walk, anchor=0)

        # contracted graph: lightest edge per component pair
        keep = start
        ce = inter[keep]
        cw = ew[ce]
        cg = WeightedGraph(forest.ncomp, a[keep].astype(np.int64), b[keep].astype(np.int64),
                           cw, g.mode, g.M)
        witness = {(int(p), int(q)): (int(eu[e]), int(ev[e]))
                   for p, q, e in zip(a[keep], b[keep], ce)}
    else:
        cg = WeightedGraph(forest.ncomp, np.empty(0, np.int64), np.empty(0, np.int64),
                           np.empty(0), g.mode, g.M)
        witness = {}
    return ZeroReduction(g, None, comp, best_intra, best_two, cg, witness, forest)


def lift_reduced_cycle(zr: ZeroReduction, c: Cycle) -> Cycle:
    """Uncontract a cycle of the contracted graph by splicing zero-weight paths."""
    g, comp, forest = zr.graph, zr.components, zr.forest
    k = len(c.vertices)
    hops = []  # (end in comp i, end in comp i+1)
    for i in range(k):
        p, q = c.vertices[i], c.vertices[(i + 1) % k]
        x, y = zr.witness[(min(p, q), max(p, q))]
        if comp[x] != p:
            x, y = y, x
        hops.append((x, y))
    walk = []
    for i in range(k):
        entry = hops[i - 1][1]
        exit_ = hops[i][0]
        walk.extend(forest.path(entry, exit_))
    # the walk ends at hops[k-1][0]; hops[k-1] closes it back to walk[0]
    return cycle_from_closed_walk(g, walk, anchor=len(walk) - 1)


def girth_with_reduction(g: WeightedGraph, subroutine) -> GirthEstimate:
    """Run a positive-weight girth routine on any non-negative-weight graph.

    ``subroutine`` maps a positive-weight graph to a :class:`GirthEstimate`;
    its declared factor carries over.
    """
    zr = zero_weight_reduce(g)
    if zr.zero_forest_cycle is not None:
        return GirthEstimate(zr.zero_forest_cycle, 1.0, "zero-cycle")
    sub = subroutine(zr.contracted)
    lifted = None if sub.cycle is None else lift_reduced_cycle(zr, sub.cycle)
    c, label = best_cycle([(zr.best_intra, "zero-intra"), (zr.best_two_component, "zero-pair"),
                           (lifted, "contracted:" + sub.label)])
    return GirthEstimate(c, sub.declared_factor, label, sub.stats)
