"""Hot loops over CSR adjacency arrays.

Every kernel takes ``ptr, nbr, wt`` (the weight-sorted CSR view of a graph)
and plain numpy buffers, so the same source runs under numba or as Python.
Heaps are ``heapq`` over lists of tuples; numba compiles those natively.
"""
import heapq

import numpy as np

from ._accel import njit


@njit
def hbd_kernel(ptr, nbr, wt, s, t, d, parent, mark, touched, path, cyc):
    """One bounded relaxed-Dijkstra run from ``s`` with threshold ``t``.

    ``d`` must be all-inf, ``parent`` all -1 and ``mark`` all 0 on entry; they
    are restored before returning.  When a vertex is reached a second time the
    run stops and the cycle closed by the triggering edge is written into
    ``cyc``.

    Returns ``(k, visited, relaxed, tu, tv, next_t)`` where ``k`` is the cycle
    length (0 if exhausted) and ``next_t`` is the smallest ``d(u) + w`` that
    failed the threshold test (inf if none).
    """
    inf = np.inf
    ntouch = 0
    d[s] = 0.0
    touched[ntouch] = s
    ntouch += 1
    heap = [(0.0, s)]
    visited = 0
    relaxed = 0
    tu = -1
    tv = -1
    next_t = inf
    while len(heap) > 0:
        du, u = heapq.heappop(heap)
        visited += 1
        pu = parent[u]
        for k in range(ptr[u], ptr[u + 1]):
            v = nbr[k]
            if v == pu:
                continue
            nd = du + wt[k]
            if nd > t:
                if nd < next_t:
                    next_t = nd
                break
            if d[v] != inf:
                tu = u
                tv = v
                break
            d[v] = nd
            parent[v] = u
            touched[ntouch] = v
            ntouch += 1
            relaxed += 1
            heapq.heappush(heap, (nd, v))
        if tu >= 0:
            break

    k = 0
    if tu >= 0:
        # tree path tu -> s, each vertex marked with its position + 1
        la = 0
        x = tu
        while x != -1:
            path[la] = x
            la += 1
            mark[x] = la
            x = parent[x]
        lb = 0
        x = tv
        while mark[x] == 0:
            lb += 1
            x = parent[x]
        ia = mark[x] - 1
        k = ia + 1 + lb
        for i in range(ia + 1):
            cyc[i] = path[i]
        x = tv
        for j in range(lb):
            cyc[k - 1 - j] = x
            x = parent[x]
        for i in range(la):
            mark[path[i]] = 0

    for i in range(ntouch):
        x = touched[i]
        d[x] = inf
        parent[x] = -1
    return k, visited, relaxed, tu, tv, next_t


@njit
def nearest_one(ptr, nbr, wt, v, r, settled, best, touched, mem, dist):
    """Truncated best-first search from ``v``.

    Settles at most ``r`` vertices and scans at most ``r`` entries of each
    settled vertex's weight-sorted list; ties go to the smaller id.  Writes
    members and distances into ``mem``/``dist``; ``settled`` and ``best``
    come back reset.  Returns ``(count, reads)``.
    """
    inf = np.inf
    best[v] = 0.0
    touched[0] = v
    nt = 1
    heap = [(0.0, v)]
    c = 0
    reads = 0
    while len(heap) > 0:
        dx, x = heapq.heappop(heap)
        if settled[x] == 1 or dx > best[x]:
            continue
        settled[x] = 1
        mem[c] = x
        dist[c] = dx
        c += 1
        if c == r:
            break
        lim = min(ptr[x] + r, ptr[x + 1])
        for k in range(ptr[x], lim):
            reads += 1
            y = nbr[k]
            if settled[y] == 1:
                continue
            nd = dx + wt[k]
            if nd < best[y]:
                if best[y] == inf:
                    touched[nt] = y
                    nt += 1
                best[y] = nd
                heapq.heappush(heap, (nd, y))
    for i in range(c):
        settled[mem[i]] = 0
    for i in range(nt):
        best[touched[i]] = inf
    return c, reads


@njit
def nearest_sets_kernel(ptr, nbr, wt, r):
    """:func:`nearest_one` from every vertex.

    Returns ``(members, dists, counts, reads)``; rows are padded with -1/inf.
    """
    n = len(ptr) - 1
    members = np.full((n, r), -1, np.int64)
    dists = np.full((n, r), np.inf)
    counts = np.zeros(n, np.int64)
    settled = np.zeros(n, np.uint8)
    best = np.full(n, np.inf)
    touched = np.empty(n, np.int64)
    reads = 0
    for v in range(n):
        c, rd = nearest_one(ptr, nbr, wt, v, r, settled, best, touched, members[v], dists[v])
        counts[v] = c
        reads += rd
    return members, dists, counts, reads


@njit
def forest_kernel(ptr, nbr, wt, sources):
    """Multi-source Dijkstra; ties by (distance, root id, parent id).

    Returns ``(dist, root, parent, depth)``; unreachable vertices keep
    root -1.
    """
    n = len(ptr) - 1
    inf = np.inf
    dist = np.full(n, inf)
    best = np.full(n, inf)
    root = np.full(n, -1, np.int64)
    parent = np.full(n, -1, np.int64)
    depth = np.zeros(n, np.int64)
    done = np.zeros(n, np.uint8)
    heap = [(0.0, sources[0], np.int64(-1), sources[0])]
    for i in range(1, len(sources)):
        heap.append((0.0, sources[i], np.int64(-1), sources[i]))
    heapq.heapify(heap)
    while len(heap) > 0:
        dx, rt, par, x = heapq.heappop(heap)
        if done[x] == 1:
            continue
        done[x] = 1
        dist[x] = dx
        root[x] = rt
        parent[x] = par
        if par >= 0:
            depth[x] = depth[par] + 1
        for k in range(ptr[x], ptr[x + 1]):
            y = nbr[k]
            if done[y] == 1:
                continue
            nd = dx + wt[k]
            if nd <= best[y]:
                best[y] = nd
                heapq.heappush(heap, (nd, rt, x, y))
    return dist, root, parent, depth


@njit
def prefix_kernel(ptr, nbr, wt, K):
    """K globally lightest edges by a lazy merge of the sorted lists.

    Each vertex keeps exactly one unread-frontier entry in the queue.  An
    edge seen from both ends is popped twice; the second copy is dropped.
    Returns ``(eu, ev, ew, reads)`` with edges in (weight, u, v) order.
    """
    n = len(ptr) - 1
    cursor = ptr[:-1].copy()
    eu = np.empty(K, np.int64)
    ev = np.empty(K, np.int64)
    ew = np.empty(K, np.float64)
    reads = 0
    heap = [(0.0, np.int64(0), np.int64(0), np.int64(0))]
    heap.pop()
    for x in range(n):
        k = cursor[x]
        if k < ptr[x + 1]:
            reads += 1
            y = nbr[k]
            heap.append((wt[k], min(x, y), max(x, y), np.int64(x)))
    heapq.heapify(heap)
    cnt = 0
    lw = -1.0
    la = -1
    lb = -1
    while len(heap) > 0 and cnt < K:
        w, a, b, x = heapq.heappop(heap)
        dup = cnt > 0 and (w < lw or (w == lw and (a < la or (a == la and b <= lb))))
        if not dup:
            eu[cnt] = a
            ev[cnt] = b
            ew[cnt] = w
            cnt += 1
            lw = w
            la = a
            lb = b
        cursor[x] += 1
        k = cursor[x]
        if cnt < K and k < ptr[x + 1]:
            reads += 1
            y = nbr[k]
            heapq.heappush(heap, (wt[k], min(x, y), max(x, y), x))
    return eu[:cnt], ev[:cnt], ew[:cnt], reads


def hbd_workspace(n):
    """Scratch buffers for :func:`hbd_kernel`, reusable across runs."""
    return (
        np.full(n, np.inf),
        np.full(n, -1, np.int64),
        np.zeros(n, np.int64),
        np.empty(n, np.int64),
        np.empty(n, np.int64),
        np.empty(n, np.int64),
    )
