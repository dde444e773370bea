"""Scaling and backend benchmarks.

``scaling_rows`` runs the (4+eps) algorithm on dense random graphs of
doubling size and records its HBD work; ``fit_exponent`` fits ``n**beta``
to it.  ``backend_comparison`` times each kernel jitted and as plain Python.
"""
from __future__ import annotations

import time
from collections import Counter

import numpy as np

from . import kernels
from ._accel import NUMBA_ENABLED
from .dense import derandomized_4eps
from .generators import erdos_renyi


def fit_exponent(ns, counts) -> float:
    """Least-squares slope of log(count) against log(n)."""
    x = np.log(np.asarray(ns, float))
    y = np.log(np.maximum(np.asarray(counts, float), 1.0))
    return float(np.polyfit(x, y, 1)[0])


def scaling_rows(sizes, seed=0, eps=0.5, p=0.5, timing=False):
    """One row per size: HBD work of :func:`derandomized_4eps` plus edge-read terms.

    Weights are uniform on [1, 2), so every instance has girth at least 3
    and a cheap triangle is always nearby.
    """
    rows = []
    for i, n in enumerate(sizes):
        g = erdos_renyi(n, p, seed=seed + i, weights="real", lo=1.0, hi=2.0)
        stats = Counter()
        t0 = time.perf_counter()
        est = derandomized_4eps(g, eps, stats=stats)
        dt = time.perf_counter() - t0
        row = [("n", n), ("m", g.m), ("weight", est.weight), ("label", est.label),
               ("S_size", stats["S_size"]), ("grid_size", stats["grid_size"]),
               ("hbd_calls", stats["hbd_calls"]), ("hbd_visited", stats["hbd_visited"]),
               ("nearest_reads", stats["nearest_reads"]),
               ("confinement_violations", stats["confinement_violations"])]
        if timing:
            row.append(("seconds", round(dt, 6)))
        rows.append(row)
    return rows


def _best_of(f, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        f()
        best = min(best, time.perf_counter() - t0)
    return best


def backend_comparison(n=128, seed=0, repeat=3):
    """Time the hot kernels jitted against their plain-Python originals.

    Returns rows ``[(kernel, numba_s, python_s, speedup)]``; under
    ``GIRTHKIT_DISABLE_NUMBA`` both columns run Python.
    """
    g = erdos_renyi(n, 0.3, seed=seed, weights="real", lo=1.0, hi=2.0)
    ptr, nbr, wt = g.ptr, g.sorted_nbr, g.sorted_wt
    S = np.arange(0, n, 7, dtype=np.int64)
    r = max(2, round(n ** (1 / 3)))
    ws = kernels.hbd_workspace(n)
    K = min(g.m, n * 4)

    def mem():
        return np.empty(r, np.int64), np.empty(r)

    cases = {
        "hbd": lambda f: [f(ptr, nbr, wt, s, 3.0, *ws) for s in range(n)],
        "nearest": lambda f: [f(ptr, nbr, wt, v, r, np.zeros(n, np.uint8), np.full(n, np.inf),
                                np.empty(n, np.int64), *mem()) for v in range(n)],
        "forest": lambda f: f(ptr, nbr, wt, S),
        "prefix": lambda f: f(ptr, nbr, wt, K),
    }
    funcs = {"hbd": kernels.hbd_kernel, "nearest": kernels.nearest_one,
             "forest": kernels.forest_kernel, "prefix": kernels.prefix_kernel}
    rows = []
    for name, call in cases.items():
        f = funcs[name]
        call(f)  # compile / warm up
        fast = _best_of(lambda: call(f), repeat)
        slow = _best_of(lambda: call(f.py_func), repeat)
        rows.append([("kernel", name), ("numba", NUMBA_ENABLED), ("numba_s", round(fast, 6)),
                     ("python_s", round(slow, 6)), ("speedup", round(slow / max(fast, 1e-9), 1))])
    return rows
