"""Girth approximations built on the hitting structure and the HBD searches.

``subquadratic_approx`` is the factor-2 algorithm for bounded integer
weights; ``approx_general`` is the (2+eps) version for arbitrary weights.
Both split the work between S-members (searched on the whole graph) and the
other vertices (searched only inside their small ball).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import GirthEstimate, GraphError, WeightedGraph, best_cycle, induced_subgraph
from .hbd import HbdRunner, SearchGrid, min_detecting_threshold_exact, search_grid, search_int
from .hitting import build_hitting_structure
from .oracle import exact_girth
from .reductions import girth_with_reduction


def approx_short_close_cycle(g: WeightedGraph, s: int, M: int | None = None, runner=None):
    """Search ``t`` over ``[3, M*n]`` for the first detection from ``s``.

    Returns the lightest cycle met during the search (never heavier than
    the one at the minimal threshold), or ``None``.
    """
    if not g.is_int:
        raise GraphError("approx_short_close_cycle needs integer weights")
    M = g.M if M is None else int(M)
    _, _, best = search_int(g, s, 3, M * g.n, runner or HbdRunner(g))
    return best


def _hbd_sweep(g: WeightedGraph) -> GirthEstimate:
    """Factor-2 small-graph routine: a threshold search from every vertex."""
    run = HbdRunner(g)
    cands = []
    for s in range(g.n):
        if g.is_int:
            c = approx_short_close_cycle(g, s, runner=run)
        else:
            res = min_detecting_threshold_exact(g, s, run)
            c = None if res is None else res[1]
        cands.append((c, "sweep"))
    c, label = best_cycle(cands)
    return GirthEstimate(c, 2.0, label)


SMALL_GIRTH_MODES = {"exact": (exact_girth, 1.0), "hbd-sweep": (_hbd_sweep, 2.0)}


@dataclass
class SmallGirthSubroutine:
    """Girth routine for small graphs with a declared factor ``alpha <= 2``."""

    procedure: Callable[[WeightedGraph], GirthEstimate]
    factor: float = 1.0
    size_threshold: int | None = None
    name: str = "custom"

    def __call__(self, g: WeightedGraph) -> GirthEstimate:
        if self.size_threshold is not None and g.n > self.size_threshold:
            raise GraphError(f"graph has {g.n} vertices, routine limit is {self.size_threshold}")
        return self.procedure(g)


def default_subroutine(mode: str = "exact", size_threshold=None) -> SmallGirthSubroutine:
    try:
        proc, factor = SMALL_GIRTH_MODES[mode]
    except KeyError:
        raise ValueError(f"unknown small-girth mode {mode!r}") from None
    return SmallGirthSubroutine(proc, factor, size_threshold, mode)


def small_girth(g: WeightedGraph, mode: str = "exact", size_threshold=None) -> GirthEstimate:
    """Exact girth (factor 1) or the HBD sweep (factor 2) on a small graph."""
    return default_subroutine(mode, size_threshold)(g)


def _ball_graphs(g, hs):
    """Yield ``(v, ball_graph, ids)`` for v outside S whose ball holds a cycle candidate."""
    for v in range(g.n):
        ball = hs.ball_vertices[v]
        if hs.in_S[v] or len(ball) < 3:
            continue
        h, ids = induced_subgraph(g, ball)
        if h.m >= 3:
            yield v, h, ids


def subquadratic_approx(g: WeightedGraph, M: int | None = None, r: int | None = None,
                        stats=None) -> GirthEstimate:
    """Deterministic 2-approximation for positive integer weights."""
    if not g.is_int:
        raise GraphError("subquadratic_approx needs integer weights")
    if g.has_zero_weights():
        raise GraphError("zero-weight edges present; wrap with girth_with_reduction")
    stats = Counter() if stats is None else stats
    if g.is_forest():
        return GirthEstimate(None, 2.0, "forest", stats)
    M = g.M if M is None else int(M)
    hs = build_hitting_structure(g, r, stats)
    stats["S_size"] = len(hs.S)
    run = HbdRunner(g, stats)
    cands = []
    for v, h, ids in _ball_graphs(g, hs):
        lv = int(np.searchsorted(ids, v))
        c = approx_short_close_cycle(h, lv, M, HbdRunner(h, stats))
        if c is not None:
            cands.append((c.relabel(ids), "ball"))
    cands += [(approx_short_close_cycle(g, int(s), M, run), "S") for s in hs.S]
    c, label = best_cycle(cands)
    return GirthEstimate(c, 2.0, label, stats)


def approx_general(g: WeightedGraph, eps: float, r: int | None = None,
                   sub: SmallGirthSubroutine | None = None, stats=None) -> GirthEstimate:
    """Deterministic (2+eps)-approximation for non-negative weights.

    A poly-factor estimate ``g*`` with certified factor ``F`` brackets the
    girth in ``[g*/F, g*]``; S-members then search a ``(1+eps/2)``-geometric
    grid over that window, and balls use the small-graph routine.
    """
    from .poly_approx import poly_girth_from

    if not eps > 0:
        raise ValueError("eps must be positive")
    stats = Counter() if stats is None else stats
    factor = 2.0 + eps
    if g.is_forest():
        return GirthEstimate(None, factor, "forest", stats)
    if g.has_zero_weights():
        return girth_with_reduction(g, lambda h: approx_general(h, eps, r, sub, stats))
    sub = sub or default_subroutine()
    hs = build_hitting_structure(g, r, stats)
    stats["S_size"] = len(hs.S)
    poly, F, balls = poly_girth_from(g, hs, sub, stats)
    g_star = float(poly.weight)
    grid = SearchGrid.spanning(g_star / F, g_star, eps / 2)
    stats["grid_size"] = len(grid)
    run = HbdRunner(g, stats)
    cands = [(c, "ball") for _, c in balls]
    for s in hs.S:
        _, _, c = search_grid(g, int(s), grid, runner=run)
        cands.append((c, "S"))
    cands.append((poly.cycle, "poly:" + poly.label))
    c, label = best_cycle(cands)
    return GirthEstimate(c, factor, label, stats)
