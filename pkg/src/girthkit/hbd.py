"""Bounded-radius cycle detection and the searches over its threshold.

``hbd(g, s, t)`` grows a Dijkstra ball around ``s`` but only relaxes an
edge ``uv`` while ``d(u) + w(uv) <= t``, and stops the moment some vertex is
reached twice.  The cycle it reports weighs at most ``2t``, and detection is
monotone in ``t``, which is what the searches below rely on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Cycle, WeightedGraph
from .kernels import hbd_kernel, hbd_workspace


@dataclass
class Detection:
    cycle: Cycle | None
    trigger: tuple | None
    visited_count: int
    relaxed_count: int
    next_threshold: float = math.inf

    @property
    def found(self):
        return self.cycle is not None


class HbdRunner:
    """Reuses one scratch workspace across many runs on the same graph."""

    def __init__(self, g: WeightedGraph, stats=None):
        self.g = g
        self.ws = hbd_workspace(g.n)
        self.stats = stats

    def __call__(self, s, t) -> Detection:
        g = self.g
        d, parent, mark, touched, path, cyc = self.ws
        k, visited, relaxed, tu, tv, next_t = hbd_kernel(
            g.ptr, g.sorted_nbr, g.sorted_wt, s, float(t), d, parent, mark, touched, path, cyc)
        if self.stats is not None:
            self.stats["hbd_calls"] += 1
            self.stats["hbd_visited"] += visited
            self.stats["hbd_relaxed"] += relaxed
        if k == 0:
            return Detection(None, None, visited, relaxed, next_t)
        c = Cycle.from_vertices(g, cyc[:k])
        return Detection(c, (int(tu), int(tv)), visited, relaxed)


def hbd(g: WeightedGraph, s: int, t: float, stats=None) -> Detection:
    """Single detector run from ``s`` with threshold ``t``."""
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} out of range")
    return HbdRunner(g, stats)(s, t)


def _first_detecting(run, s, count, value):
    """Smallest index in ``[0, count)`` whose threshold detects.

    Probes ``ceil(log2(count + 1))`` thresholds; index ``count`` stands for
    "none".  Returns ``(index, cycle_at_index, lightest_cycle_seen)``.
    """
    lo, hi = 0, count
    at_hi = None
    lightest = None
    while lo < hi:
        mid = (lo + hi) // 2
        det = run(s, value(mid))
        if det.found:
            hi = mid
            at_hi = det.cycle
            if lightest is None or det.cycle.sort_key() < lightest.sort_key():
                lightest = det.cycle
        else:
            lo = mid + 1
    if hi == count:
        return None, None, None
    return hi, at_hi, lightest


def search_int(g, s, lo, hi, runner=None):
    """Integer dichotomic search; returns ``(t0, cycle_at_t0, lightest)``."""
    if lo > hi:
        return None, None, None
    run = runner or HbdRunner(g)
    i, c, best = _first_detecting(run, s, hi - lo + 1, lambda k: lo + k)
    if i is None:
        return None, None, None
    return lo + i, c, best


def min_detecting_threshold_int(g: WeightedGraph, s: int, lo: int, hi: int, stats=None):
    """Smallest integer ``t`` in ``[lo, hi]`` at which ``hbd`` detects, with its cycle.

    ``None`` when even ``hi`` does not detect.
    """
    t0, c, _ = search_int(g, s, int(lo), int(hi), HbdRunner(g, stats))
    return None if t0 is None else (t0, c)


def min_detecting_threshold_exact(g: WeightedGraph, s: int, runner=None):
    """Exact minimal detecting threshold over all reals.

    Below the threshold the relaxed edges form a shortest-path tree, so the
    next value where the run can change is the cheapest edge it refused.
    Stepping through those values costs at most ``m`` runs.
    Returns ``(t0, cycle)`` or ``None`` when no cycle is reachable from ``s``.
    """
    run = runner or HbdRunner(g)
    t = 0.0
    while True:
        det = run(s, t)
        if det.found:
            return t, det.cycle
        if math.isinf(det.next_threshold):
            return None
        t = det.next_threshold


@dataclass(frozen=True)
class SearchGrid:
    """Geometric thresholds ``base**i`` for ``i_min <= i <= i_max``."""

    base: float
    i_min: int
    i_max: int

    def __post_init__(self):
        if not self.base > 1:
            raise ValueError("grid base must exceed 1")
        if self.i_min > self.i_max:
            raise ValueError("empty grid")

    @classmethod
    def spanning(cls, low: float, high: float, eta: float) -> "SearchGrid":
        """Smallest exponents with ``low <= base**i_min`` and ``high <= base**i_max``."""
        if not (0 < low <= high):
            raise ValueError("need 0 < low <= high")
        base = 1.0 + eta
        return cls(base, _ceil_exponent(base, low), _ceil_exponent(base, high))

    def __len__(self):
        return self.i_max - self.i_min + 1

    def value(self, k: int) -> float:
        return self.base ** (self.i_min + k)

    @property
    def values(self):
        return [self.value(k) for k in range(len(self))]

    def count_below(self, cap: float) -> int:
        """Number of grid values strictly below ``cap``."""
        lo, hi = 0, len(self)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.value(mid) < cap:
                lo = mid + 1
            else:
                hi = mid
        return lo


def _ceil_exponent(base, x):
    i = math.ceil(math.log(x) / math.log(base))
    while base ** (i - 1) >= x:
        i -= 1
    while base ** i < x:
        i += 1
    return i


def search_grid(g, s, grid: SearchGrid, cap=None, runner=None):
    """Grid dichotomic search; returns ``(t0, cycle_at_t0, lightest)``."""
    count = len(grid) if cap is None else grid.count_below(cap)
    run = runner or HbdRunner(g)
    i, c, best = _first_detecting(run, s, count, grid.value)
    if i is None:
        return None, None, None
    return grid.value(i), c, best


def min_detecting_threshold_grid(g: WeightedGraph, s: int, grid: SearchGrid, cap=None,
                                 stats=None):
    """Smallest grid value (strictly below ``cap`` if given) that detects."""
    t0, c, _ = search_grid(g, s, grid, cap, HbdRunner(g, stats))
    return None if t0 is None else (t0, c)
