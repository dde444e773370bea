"""Deterministic hitting set over r-nearest sets, and the open balls it induces."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph
from .kernels import nearest_one, nearest_sets_kernel


def default_r(n: int) -> int:
    """floor(n ** (1/3)), guarded against float round-off on perfect cubes."""
    if n < 1:
        return 1
    r = int(round(n ** (1.0 / 3.0)))
    while r ** 3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return max(r, 1)


def hitting_set_bound(n: int, r: int) -> int:
    """Greedy guarantee ceil((n / r) * (ln n + 1))."""
    return math.ceil((n / r) * (math.log(n) + 1)) if n > 0 else 0


@dataclass
class NearestSet:
    center: int
    members: list  # [(vertex, distance)] by non-decreasing distance


def r_nearest_set(g: WeightedGraph, v: int, r: int) -> NearestSet:
    """The ``r`` vertices closest to ``v`` (fewer if its component is smaller)."""
    if r < 1:
        raise ValueError("r must be at least 1")
    n = g.n
    mem = np.empty(r, np.int64)
    dist = np.empty(r)
    c, _ = nearest_one(g.ptr, g.sorted_nbr, g.sorted_wt, v, r, np.zeros(n, np.uint8),
                       np.full(n, np.inf), np.empty(n, np.int64), mem, dist)
    return NearestSet(v, [(int(x), g._w(d)) for x, d in zip(mem[:c], dist[:c])])


def greedy_hitting_set(sets, universe_size: int | None = None) -> list:
    """Greedy hitting set: repeatedly take the element in most unhit sets.

    Ties go to the smaller id.  Stale heap entries are refreshed lazily, so
    the cost is O((s + sum |set|) log s).
    """
    sets = [list(dict.fromkeys(int(x) for x in S)) for S in sets]
    for i, S in enumerate(sets):
        if not S:
            raise ValueError(f"set {i} is empty")
    if universe_size is None:
        universe_size = 1 + max((max(S) for S in sets), default=-1)
    where = [[] for _ in range(universe_size)]
    for i, S in enumerate(sets):
        for x in S:
            where[x].append(i)
    count = [len(w) for w in where]
    heap = [(-c, x) for x, c in enumerate(count) if c > 0]
    heapq.heapify(heap)
    hit = [False] * len(sets)
    left = len(sets)
    chosen = []
    while left:
        negc, x = heapq.heappop(heap)
        if -negc != count[x]:
            if count[x] > 0:
                heapq.heappush(heap, (-count[x], x))
            continue
        chosen.append(x)
        for i in where[x]:
            if not hit[i]:
                hit[i] = True
                left -= 1
                for y in sets[i]:
                    count[y] -= 1
        count[x] = 0
    return sorted(chosen)


@dataclass
class HittingStructure:
    """Hitting set ``S`` plus each vertex's open ball ``{u : d(v,u) < d(v,S)}``.

    ``ball_vertices[v]`` / ``ball_dists[v]`` list the ball by non-decreasing
    distance; ``nearest_s[v]`` is the S-member that fixes ``dist_to_S[v]``.
    """

    r: int
    S: np.ndarray
    in_S: np.ndarray
    dist_to_S: np.ndarray
    nearest_s: np.ndarray
    ball_vertices: list
    ball_dists: list
    nearest: tuple  # (members, dists, counts) from the batch search
    reads: int

    def ball(self, v):
        return list(zip(self.ball_vertices[v].tolist(), self.ball_dists[v].tolist()))

    def ball_sizes(self):
        return np.array([len(b) for b in self.ball_vertices], np.int64)

    def report(self) -> str:
        sizes = self.ball_sizes()
        hist = np.bincount(sizes, minlength=self.r) if len(sizes) else np.zeros(1, int)
        parts = [f"r={self.r}", f"S={len(self.S)}",
                 "ball_hist=" + ",".join(f"{i}:{c}" for i, c in enumerate(hist) if c)]
        return " ".join(parts)


def build_hitting_structure(g: WeightedGraph, r: int | None = None, stats=None) -> HittingStructure:
    """Nearest sets for every vertex, a greedy hitting set, then the balls."""
    n = g.n
    r = default_r(n) if r is None else int(r)
    if r < 1:
        raise ValueError("r must be at least 1")
    members, dists, counts, reads = nearest_sets_kernel(g.ptr, g.sorted_nbr, g.sorted_wt, r)
    if stats is not None:
        stats["nearest_reads"] += int(reads)
    sets = [members[v, :counts[v]] for v in range(n)]
    S = np.array(greedy_hitting_set(sets, n), np.int64)
    in_S = np.zeros(n, bool)
    in_S[S] = True

    dist_to_S = np.zeros(n)
    nearest_s = np.empty(n, np.int64)
    ball_v, ball_d = [], []
    for v in range(n):
        row = members[v, :counts[v]]
        j = int(np.argmax(in_S[row]))  # first S-member in distance order
        dist_to_S[v] = dists[v, j]
        nearest_s[v] = row[j]
        # members are in distance order, so the open ball is a prefix
        k = int(np.searchsorted(dists[v, :counts[v]], dists[v, j], side="left"))
        ball_v.append(row[:k].copy())
        ball_d.append(dists[v, :k].copy())
    return HittingStructure(r, S, in_S, dist_to_S, nearest_s, ball_v, ball_d,
                            (members, dists, counts), int(reads))
