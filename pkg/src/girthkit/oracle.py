"""Exact girth by brute force over shortest-path trees.

For each source ``s`` a shortest-path tree is built and every non-tree edge
whose endpoints hang below different children of ``s`` closes a simple cycle
through ``s``.  The lightest such cycle over all sources is a girth cycle.
Shortest paths come from scipy so this stays independent of the HBD kernels.
"""
import math

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from .graph import Cycle, GirthEstimate, WeightedGraph

_TIE_RTOL = 1e-12
_CHUNK = 1 << 22  # candidate matrix entries per block


def _csr(g, drop=None):
    eu, ev, ew = g.eu, g.ev, g.ew
    if drop is not None:
        keep = np.ones(g.m, bool)
        keep[drop] = False
        eu, ev, ew = eu[keep], ev[keep], ew[keep]
    rows = np.concatenate([eu, ev])
    cols = np.concatenate([ev, eu])
    data = np.concatenate([ew, ew])
    # explicit zeros are kept as edges by csgraph
    return sp.csr_matrix((data, (rows, cols)), shape=(g.n, g.n))


def _branch_labels(pred, sources):
    """``lab[i, v]`` = child of ``sources[i]`` whose subtree holds ``v``."""
    rows = np.arange(len(sources))[:, None]
    cols = np.arange(pred.shape[1])[None, :]
    lab = np.where((pred < 0) | (pred == sources[:, None]), cols, pred)
    while True:
        nxt = lab[rows, lab]
        if np.array_equal(nxt, lab):
            return lab
        lab = nxt


def _tree_path_up(pred_row, v):
    out = []
    while v >= 0:
        out.append(int(v))
        v = pred_row[v]
    return out


def girth_through_each_vertex(g: WeightedGraph):
    """Weight of the lightest cycle through every vertex (inf if none).

    Returns ``(weights, dist, pred)`` with the scipy distance and predecessor
    matrices used, so callers can rebuild the witnesses.
    """
    n = g.n
    through = np.full(n, np.inf)
    if g.m == 0:
        return through, None, None
    A = _csr(g)
    dist, pred = dijkstra(A, directed=True, return_predecessors=True)
    block = max(1, _CHUNK // max(g.m, 1))
    for lo in range(0, n, block):
        src = np.arange(lo, min(n, lo + block))
        through[src] = _candidate_block(g, src, dist[src], pred[src]).min(axis=1)
    return through, dist, pred


def _candidate_block(g, src, D, P):
    lab = _branch_labels(P, src)
    eu, ev, ew = g.eu, g.ev, g.ew
    rows = np.arange(len(src))[:, None]
    du, dv = D[:, eu], D[:, ev]
    ok = np.isfinite(du) & np.isfinite(dv)
    ok &= lab[rows, eu] != lab[rows, ev]
    ok &= (P[:, ev] != eu) & (P[:, eu] != ev)
    cand = du + ew + dv
    cand[~ok] = np.inf
    return cand


def exact_girth(g: WeightedGraph, method: str = "sssp") -> GirthEstimate:
    """Minimum-weight simple cycle of ``g`` (``cycle=None`` for forests).

    ``method="sssp"`` scans shortest-path trees from every source;
    ``method="edge-deletion"`` removes each edge in turn and closes it with a
    shortest detour, which is slower and kept as a cross-check.
    Ties within a relative 1e-12 go to the lexicographically smallest
    canonical vertex sequence among the witnesses the method produces.
    """
    if method == "edge-deletion":
        return _exact_by_edge_deletion(g)
    if method != "sssp":
        raise ValueError(f"unknown method {method!r}")
    through, dist, pred = girth_through_each_vertex(g)
    best = through.min() if g.n else np.inf
    if not np.isfinite(best):
        return GirthEstimate(None, 1.0, "exact")
    thr = best * (1 + _TIE_RTOL)
    s = int(np.flatnonzero(through <= thr)[0])
    src = np.array([s])
    cand = _candidate_block(g, src, dist[src], pred[src])[0]
    lab = _branch_labels(pred[src], src)[0]
    idx = np.flatnonzero(cand <= thr)
    # second canonical vertex is the smaller of the two branch labels
    second = np.minimum(lab[g.eu[idx]], lab[g.ev[idx]])
    idx = idx[second == second.min()]
    cycles = []
    for e in idx:
        up_u = _tree_path_up(pred[s], g.eu[e])
        up_v = _tree_path_up(pred[s], g.ev[e])
        seq = up_u[::-1] + up_v[:-1]  # s ... u, v ... (child of s)
        cycles.append(Cycle.from_vertices(g, seq))
    c = min(cycles, key=lambda c: c.vertices)
    return GirthEstimate(c, 1.0, "exact")


def _exact_by_edge_deletion(g):
    cands = []
    for e in range(g.m):
        u, v = int(g.eu[e]), int(g.ev[e])
        D, P = dijkstra(_csr(g, drop=e), directed=True, indices=u, return_predecessors=True)
        if not math.isfinite(D[v]):
            continue
        path = _tree_path_up(P, v)  # v ... u
        c = Cycle.from_vertices(g, path)
        cands.append((c, "exact"))
    if not cands:
        return GirthEstimate(None, 1.0, "exact")
    lo = min(c.total_weight for c, _ in cands)
    tied = [(c, lab) for c, lab in cands if c.total_weight <= lo * (1 + _TIE_RTOL)]
    c = min((c for c, _ in tied), key=lambda c: c.vertices)
    return GirthEstimate(c, 1.0, "exact")
