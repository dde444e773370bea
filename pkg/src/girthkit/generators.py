"""Seeded random instance families."""
from __future__ import annotations

import math

import numpy as np

from .dense import density_threshold
from .graph import INT_MODE, REAL_MODE, GraphError, WeightedGraph, build_graph

KINDS = ("erdos-renyi", "grid", "cycle-plus-chords", "two-cluster", "dense-threshold")
WEIGHT_KINDS = ("unit", "int", "real")


def _weights(rng, k, weights, M, lo, hi):
    if weights == "unit":
        return np.ones(k)
    if weights == "int":
        return rng.integers(1, M + 1, size=k).astype(float)
    if weights == "real":
        return rng.uniform(lo, hi, size=k)
    raise GraphError(f"unknown weight kind {weights!r}")


def _mode(weights):
    return REAL_MODE if weights == "real" else INT_MODE


def _pairs_from_index(n, idx):
    """Map linear indices over the strict upper triangle to (u, v)."""
    # row u holds n-1-u pairs; cum[u] is the first index of row u
    cum = np.r_[0, np.cumsum(np.arange(n - 1, 0, -1))]
    u = np.searchsorted(cum, idx, side="right") - 1
    v = idx - cum[u] + u + 1
    return u, v


def _sample_pairs(rng, n, m):
    total = n * (n - 1) // 2
    if m > total:
        raise GraphError(f"cannot place {m} edges on {n} vertices")
    idx = np.sort(rng.choice(total, size=m, replace=False))
    return _pairs_from_index(n, idx)


def _finish(n, u, v, rng, weights, M, lo, hi):
    w = _weights(rng, len(u), weights, M, lo, hi)
    mode = _mode(weights)
    edges = list(zip(u.tolist(), v.tolist(), w.tolist()))
    return build_graph(edges, n=n, mode=mode, M=M if weights == "int" else None)


def random_tree_edges(rng, n, offset=0):
    """Random recursive tree on ``offset .. offset+n-1``."""
    if n < 2:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    child = np.arange(1, n)
    par = (rng.random(n - 1) * child).astype(np.int64)
    return par + offset, child + offset


def random_connected(n, extra, seed=0, weights="unit", M=10, lo=1.0, hi=2.0):
    """Random spanning tree plus ``extra`` further distinct edges."""
    rng = np.random.default_rng(seed)
    tu, tv = random_tree_edges(rng, n)
    total = n * (n - 1) // 2
    extra = min(int(extra), total - (n - 1))
    taken = set(zip(tu.tolist(), tv.tolist()))
    us, vs = tu.tolist(), tv.tolist()
    if extra > 0:
        if extra > total // 2:
            iu, iv = np.triu_indices(n, 1)
            keep = [i for i, p in enumerate(zip(iu.tolist(), iv.tolist())) if p not in taken]
            pick = rng.choice(len(keep), size=extra, replace=False)
            sel = np.asarray(keep)[np.sort(pick)]
            us += iu[sel].tolist()
            vs += iv[sel].tolist()
        else:
            while extra > 0:
                a, b = _sample_pairs(rng, n, min(total, 2 * extra + 8))
                for p in zip(a.tolist(), b.tolist()):
                    if extra and p not in taken:
                        taken.add(p)
                        us.append(p[0])
                        vs.append(p[1])
                        extra -= 1
    return _finish(n, np.array(us, np.int64), np.array(vs, np.int64), rng, weights, M, lo, hi)


def erdos_renyi(n, p, seed=0, weights="unit", M=10, lo=1.0, hi=2.0):
    rng = np.random.default_rng(seed)
    total = n * (n - 1) // 2
    idx = np.flatnonzero(rng.random(total) < p)
    u, v = _pairs_from_index(n, idx)
    return _finish(n, u, v, rng, weights, M, lo, hi)


def grid(rows, cols, seed=0, weights="unit", M=10, lo=1.0, hi=2.0):
    rng = np.random.default_rng(seed)
    ids = np.arange(rows * cols).reshape(rows, cols)
    u = np.r_[ids[:, :-1].ravel(), ids[:-1, :].ravel()]
    v = np.r_[ids[:, 1:].ravel(), ids[1:, :].ravel()]
    return _finish(rows * cols, u, v, rng, weights, M, lo, hi)


def cycle_plus_chords(n, girth=3, chords=None, seed=0, weights="unit", M=10, lo=1.0, hi=2.0):
    """A planted ``girth``-cycle on ``0..girth-1`` that is the unique lightest cycle.

    Every other edge outweighs the whole planted cycle, so any other cycle
    (which must use one) is strictly heavier.
    """
    if not 3 <= girth <= n:
        raise GraphError("planted cycle length must be in [3, n]")
    rng = np.random.default_rng(seed)
    chords = n // 2 if chords is None else int(chords)
    ring = np.arange(girth)
    pu = np.minimum(ring, (ring + 1) % girth)
    pv = np.maximum(ring, (ring + 1) % girth)
    # tree hanging the other vertices off the cycle
    rest = np.arange(girth, n)
    tu = (rng.random(len(rest)) * rest).astype(np.int64)
    taken = set(zip(pu.tolist(), pv.tolist())) | set(zip(tu.tolist(), rest.tolist()))
    total = n * (n - 1) // 2
    chords = min(chords, total - len(taken))
    cu, cv = [], []
    while len(cu) < chords:
        a, b = _sample_pairs(rng, n, min(total, 2 * chords + 8))
        for p in zip(a.tolist(), b.tolist()):
            if len(cu) < chords and p not in taken:
                taken.add(p)
                cu.append(p[0])
                cv.append(p[1])
    if weights == "unit":
        wp = np.ones(girth)
    else:
        wp = _weights(rng, girth, weights, M, lo, hi)
    heavy = float(wp.sum()) + 1
    k = len(rest) + len(cu)
    if weights == "real":
        wo = heavy + rng.uniform(0, 1, size=k)
    else:
        wo = np.full(k, heavy)
    u = np.r_[pu, tu, np.array(cu, np.int64)]
    v = np.r_[pv, rest, np.array(cv, np.int64)]
    w = np.r_[wp, wo]
    mode = _mode(weights)
    Mx = int(w.max()) if mode == INT_MODE else None
    return build_graph(list(zip(u.tolist(), v.tolist(), w.tolist())), n=n, mode=mode, M=Mx)


def two_cluster(n, p=0.5, bridges=2, seed=0, weights="unit", M=10, lo=1.0, hi=2.0):
    """Two dense halves joined by ``bridges`` random cross edges."""
    rng = np.random.default_rng(seed)
    a = n // 2
    parts = []
    for off, size in ((0, a), (a, n - a)):
        tu, tv = random_tree_edges(rng, size, off)
        total = size * (size - 1) // 2
        iu, iv = _pairs_from_index(size, np.flatnonzero(rng.random(total) < p)) if size > 1 else ([], [])
        parts.append((np.r_[tu, np.asarray(iu, np.int64) + off], np.r_[tv, np.asarray(iv, np.int64) + off]))
    bridges = min(int(bridges), a * (n - a))
    cross = rng.choice(a * (n - a), size=bridges, replace=False) if bridges else np.empty(0, np.int64)
    bu, bv = cross // (n - a), a + cross % (n - a)
    u = np.r_[parts[0][0], parts[1][0], bu]
    v = np.r_[parts[0][1], parts[1][1], bv]
    key = np.unique(u * n + v)
    return _finish(n, key // n, key % n, rng, weights, M, lo, hi)


def dense_threshold(n, extra=None, seed=0, weights="unit", M=10, lo=1.0, hi=2.0):
    """``m`` just above the 4-cycle density threshold."""
    rng = np.random.default_rng(seed)
    extra = max(1, n // 8) if extra is None else int(extra)
    m = min(density_threshold(n) + extra, n * (n - 1) // 2)
    u, v = _sample_pairs(rng, n, m)
    return _finish(n, u, v, rng, weights, M, lo, hi)


def generate(kind: str, n: int, seed: int = 0, weights: str = "unit", M: int = 10,
             lo: float = 1.0, hi: float = 2.0, **params) -> WeightedGraph:
    """Build an instance of family ``kind``; same seed, same graph."""
    if n < 1:
        raise GraphError("n must be positive")
    if weights not in WEIGHT_KINDS:
        raise GraphError(f"unknown weight kind {weights!r}")
    common = dict(seed=seed, weights=weights, M=M, lo=lo, hi=hi)
    if kind == "erdos-renyi":
        return erdos_renyi(n, params.get("p", 0.1), **common)
    if kind == "grid":
        rows = params.get("rows") or max(1, math.isqrt(n))
        if n % rows:
            raise GraphError(f"n={n} is not a multiple of rows={rows}")
        return grid(rows, n // rows, **common)
    if kind == "cycle-plus-chords":
        return cycle_plus_chords(n, params.get("girth", 3), params.get("chords"), **common)
    if kind == "two-cluster":
        return two_cluster(n, params.get("p", 0.5), params.get("bridges", 2), **common)
    if kind == "dense-threshold":
        return dense_threshold(n, params.get("extra"), **common)
    raise GraphError(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")
