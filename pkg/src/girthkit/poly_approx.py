"""Polynomial-factor girth estimate from a shortest-path forest rooted at S.

Five steps: girths of the small balls, a forest partition of V with one
tree per S-member, cycles closed inside one tree, cycles through two trees,
and the girth of the quotient graph on S lifted back to G.  The lightest
candidate is within ``max(9, 2|S|)`` of the girth when the small-graph
routine is exact.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .approx import SmallGirthSubroutine, default_subroutine
from .graph import (Cycle, GirthEstimate, WeightedGraph, best_cycle,
                    cycle_from_closed_walk, induced_subgraph, tree_path)
from .hitting import HittingStructure, build_hitting_structure
from .kernels import forest_kernel
from .reductions import girth_with_reduction


@dataclass
class TreePartition:
    """Shortest-path forest: ``root_of[v]`` is v's nearest S-member."""

    root_of: np.ndarray
    parent: np.ndarray
    dist_to_root: np.ndarray
    depth: np.ndarray

    def path(self, a, b):
        return tree_path(self.parent, self.depth, int(a), int(b))


@dataclass
class QuotientGraph:
    """Graph on S; vertex ``i`` stands for tree ``S[i]``.

    ``witness[(i, j)]`` (``i < j``) is the original edge ``(x, y)`` with
    ``x`` in tree ``S[i]`` and ``y`` in tree ``S[j]`` whose
    ``dist(S[i], x) + w(xy) + dist(y, S[j])`` is the quotient weight.
    """

    S: np.ndarray
    graph: WeightedGraph
    witness: dict


def build_tree_partition(g: WeightedGraph, hs: HittingStructure) -> TreePartition:
    """One Dijkstra from a virtual root joined to every S-member at weight 0."""
    if len(hs.S) == 0:
        raise ValueError("hitting set is empty")
    dist, root, parent, depth = forest_kernel(g.ptr, g.sorted_nbr, g.sorted_wt,
                                              np.asarray(hs.S, np.int64))
    return TreePartition(root, parent, dist, depth)


def step1_ball_girths(g: WeightedGraph, hs: HittingStructure,
                      sub: SmallGirthSubroutine | None = None):
    """Run the small-graph routine on each ball ``G[B_S(v)]``, v outside S."""
    sub = sub or default_subroutine()
    found = []
    for v in range(g.n):
        ball = hs.ball_vertices[v]
        if hs.in_S[v] or len(ball) < 3:
            continue
        h, ids = induced_subgraph(g, ball)
        if h.m < 3:
            continue
        est = sub(h)
        if est.cycle is not None:
            found.append((v, est.cycle.relabel(ids)))
    return found


def _non_tree(g, tp):
    eu, ev = g.eu, g.ev
    tree = (tp.parent[ev] == eu) | (tp.parent[eu] == ev)
    return ~tree


def _ell(g, tp, idx):
    return tp.dist_to_root[g.eu[idx]] + g.ew[idx] + tp.dist_to_root[g.ev[idx]]


def step3_intra_tree(g: WeightedGraph, tp: TreePartition, best_only=False):
    """Non-tree edges inside one tree, each closed by its tree path.

    Returns ``[(estimate, cycle)]`` ordered by estimate; the estimate is
    ``dist(s,u) + w(uv) + dist(v,s)`` and bounds the cycle weight.
    """
    ru, rv = tp.root_of[g.eu], tp.root_of[g.ev]
    idx = np.flatnonzero((ru == rv) & (ru >= 0) & _non_tree(g, tp))
    ell = _ell(g, tp, idx)
    order = np.argsort(ell, kind="stable")
    if best_only:
        order = order[:1]
    out = []
    for j in order:
        e = idx[j]
        c = Cycle.from_vertices(g, tp.path(g.eu[e], g.ev[e]))
        out.append((g._w(ell[j]), c))
    return out


def _inter_tree(g, tp):
    """Edges between distinct trees, grouped by root pair then by estimate."""
    ru, rv = tp.root_of[g.eu], tp.root_of[g.ev]
    idx = np.flatnonzero((ru != rv) & (ru >= 0) & (rv >= 0))
    a = np.minimum(ru[idx], rv[idx])
    b = np.maximum(ru[idx], rv[idx])
    ell = _ell(g, tp, idx)
    order = np.lexsort((idx, ell, b, a))
    idx, a, b, ell = idx[order], a[order], b[order], ell[order]
    start = np.r_[True, (a[1:] != a[:-1]) | (b[1:] != b[:-1])] if len(idx) else np.zeros(0, bool)
    return idx, a, b, ell, start


def _orient(g, tp, e, root):
    """Endpoints of edge ``e`` as (end in tree ``root``, other end)."""
    u, v = int(g.eu[e]), int(g.ev[e])
    return (u, v) if tp.root_of[u] == root else (v, u)


def step4_two_tree(g: WeightedGraph, tp: TreePartition, best_only=False):
    """For each pair of trees joined by 2+ edges, close the two cheapest.

    Returns ``[(estimate, cycle)]`` with estimate ``l(e) + l(e')``.
    """
    idx, a, b, ell, start = _inter_tree(g, tp)
    firsts = np.flatnonzero(start)
    sizes = np.r_[firsts[1:], len(idx)] - firsts
    f = firsts[sizes >= 2]
    tot = ell[f] + ell[f + 1]
    order = np.argsort(tot, kind="stable")
    if best_only:
        order = order[:1]
    out = []
    for j in order:
        i = f[j]
        x1, y1 = _orient(g, tp, idx[i], a[i])
        x2, y2 = _orient(g, tp, idx[i + 1], a[i])
        walk = [x1] + tp.path(y1, y2) + tp.path(x2, x1)[:-1]
        out.append((g._w(tot[j]), cycle_from_closed_walk(g, walk, anchor=0)))
    return out


def build_quotient(g: WeightedGraph, tp: TreePartition, S) -> QuotientGraph:
    """Graph on S weighted by the cheapest single-edge root-to-root route."""
    S = np.asarray(S, np.int64)
    pos = np.full(g.n, -1, np.int64)
    pos[S] = np.arange(len(S))
    idx, a, b, ell, start = _inter_tree(g, tp)
    keep = np.flatnonzero(start)
    qa, qb = pos[a[keep]], pos[b[keep]]
    # S is sorted, so root order and index order agree
    order = np.lexsort((qb, qa))
    keep, qa, qb = keep[order], qa[order], qb[order]
    w = ell[keep]
    M = None
    if g.is_int:
        M = int(w.max()) if len(w) else 1
    H = WeightedGraph(len(S), qa, qb, w.astype(np.float64), g.mode, M)
    witness = {}
    for i, j, k in zip(qa.tolist(), qb.tolist(), keep.tolist()):
        witness[(i, j)] = _orient(g, tp, idx[k], S[i])
    return QuotientGraph(S, H, witness)


def lift_quotient_cycle(g: WeightedGraph, tp: TreePartition, q: QuotientGraph, c: Cycle) -> Cycle:
    """Replace each quotient vertex by the tree path between its two witnesses."""
    k = len(c.vertices)
    hops = []
    for i in range(k):
        p, r = c.vertices[i], c.vertices[(i + 1) % k]
        x, y = q.witness[(min(p, r), max(p, r))]
        hops.append((x, y) if p < r else (y, x))
    walk = []
    for i in range(k):
        walk.extend(tp.path(hops[i - 1][1], hops[i][0]))
    return cycle_from_closed_walk(g, walk, anchor=len(walk) - 1)


def certified_factor(num_s: int, alpha: float = 1.0) -> float:
    """Multiplicative bound on the poly estimate for a given |S| and routine factor."""
    if alpha <= 1:
        return float(max(9, 2 * num_s))
    return float(max(9.0, alpha * (num_s + 1)))


def poly_girth_from(g: WeightedGraph, hs: HittingStructure, sub: SmallGirthSubroutine,
                    stats=None):
    """All five steps on a prepared hitting structure.

    Returns ``(estimate, factor, ball_cycles)`` so callers can reuse Step 1.
    """
    stats = Counter() if stats is None else stats
    balls = step1_ball_girths(g, hs, sub)
    tp = build_tree_partition(g, hs)
    s3 = step3_intra_tree(g, tp, best_only=True)
    s4 = step4_two_tree(g, tp, best_only=True)
    q = build_quotient(g, tp, hs.S)
    s5 = None
    if q.graph.m >= 3:
        qe = sub(q.graph)
        if qe.cycle is not None:
            s5 = lift_quotient_cycle(g, tp, q, qe.cycle)
    stats["poly_step1"] += len(balls)
    stats["poly_step3"] += len(s3)
    stats["poly_step4"] += len(s4)
    stats["poly_step5"] += s5 is not None
    cands = [(c, "step1") for _, c in balls]
    cands += [(c, "step3") for _, c in s3]
    cands += [(c, "step4") for _, c in s4]
    cands.append((s5, "step5"))
    c, label = best_cycle(cands)
    F = certified_factor(len(hs.S), sub.factor)
    return GirthEstimate(c, F, label, stats), F, balls


def poly_girth(g: WeightedGraph, sub: SmallGirthSubroutine | None = None, r=None, stats=None):
    """Girth estimate within a certified factor; returns ``(estimate, factor)``.

    Zero-weight edges are contracted away first.
    """
    sub = sub or default_subroutine()
    stats = Counter() if stats is None else stats
    if g.is_forest():
        return GirthEstimate(None, 1.0, "forest", stats), 1.0
    if g.has_zero_weights():
        box = {}

        def inner(h):
            est, box["F"] = poly_girth(h, sub, r, stats)
            return est

        est = girth_with_reduction(g, inner)
        return est, box.get("F", 1.0)
    hs = build_hitting_structure(g, r, stats)
    stats["S_size"] = len(hs.S)
    est, F, _ = poly_girth_from(g, hs, sub, stats)
    return est, F
