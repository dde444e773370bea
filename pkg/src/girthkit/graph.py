"""Weighted undirected graphs, cycles, and the edge-list text format."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

INT_MODE = "int"
REAL_MODE = "real"

# integer weights travel through float64 kernels; sums stay exact below 2**53
_EXACT_LIMIT = 2 ** 53


class GraphError(ValueError):
    """Raised for malformed graph input."""


class WeightedGraph:
    """Immutable simple graph with two CSR adjacency views.

    Both views share ``ptr``.  The *sorted* view orders each vertex's entries
    by (weight, neighbor id); the *ordered* view by neighbor id, which makes
    edge lookup a binary search.  Edges are stored once with ``u < v`` in
    lexicographic order.
    """

    def __init__(self, n, eu, ev, ew, mode=REAL_MODE, M=None):
        self.n = int(n)
        self.mode = mode
        self.M = M
        self.eu = eu
        self.ev = ev
        self.ew = ew
        m = len(eu)
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        w = np.concatenate([ew, ew])
        eid = np.concatenate([np.arange(m), np.arange(m)])
        deg = np.bincount(src, minlength=self.n)
        self.ptr = np.zeros(self.n + 1, np.int64)
        np.cumsum(deg, out=self.ptr[1:])

        order = np.lexsort((dst, w, src))
        self.sorted_nbr = np.ascontiguousarray(dst[order])
        self.sorted_wt = np.ascontiguousarray(w[order])
        self.sorted_eid = eid[order]

        order = np.lexsort((dst, src))
        self.ordered_nbr = np.ascontiguousarray(dst[order])
        self.ordered_wt = np.ascontiguousarray(w[order])
        self.ordered_eid = eid[order]
        for arr in (self.eu, self.ev, self.ew, self.ptr, self.sorted_nbr, self.sorted_wt,
                    self.ordered_nbr, self.ordered_wt):
            arr.setflags(write=False)

    @property
    def m(self):
        return len(self.eu)

    @property
    def is_int(self):
        return self.mode == INT_MODE

    def __repr__(self):
        extra = f", M={self.M}" if self.is_int else ""
        return f"WeightedGraph(n={self.n}, m={self.m}, mode={self.mode!r}{extra})"

    def _w(self, x):
        return int(x) if self.is_int else float(x)

    @property
    def edges(self):
        """Edge list ``[(u, v, w)]`` with ``u < v``."""
        return [(int(u), int(v), self._w(w)) for u, v, w in zip(self.eu, self.ev, self.ew)]

    def degree(self, v):
        return int(self.ptr[v + 1] - self.ptr[v])

    def adjacency_sorted(self, v):
        a, b = self.ptr[v], self.ptr[v + 1]
        return [(int(x), self._w(w)) for x, w in zip(self.sorted_nbr[a:b], self.sorted_wt[a:b])]

    def adjacency_ordered(self, v):
        a, b = self.ptr[v], self.ptr[v + 1]
        return [(int(x), self._w(w)) for x, w in zip(self.ordered_nbr[a:b], self.ordered_wt[a:b])]

    def _find(self, u, v):
        a, b = self.ptr[u], self.ptr[u + 1]
        i = a + np.searchsorted(self.ordered_nbr[a:b], v)
        if i < b and self.ordered_nbr[i] == v:
            return i
        return -1

    def has_edge(self, u, v):
        if not (0 <= u < self.n and 0 <= v < self.n):
            return False
        return self._find(u, v) >= 0

    def weight(self, u, v):
        i = self._find(u, v) if 0 <= u < self.n else -1
        if i < 0:
            raise KeyError((u, v))
        return self._w(self.ordered_wt[i])

    def total_weight(self):
        return self._w(self.ew.sum())

    def has_zero_weights(self):
        return bool(self.m) and bool((self.ew == 0).any())

    def is_forest(self):
        return self.m == 0 or self.m <= self.n - component_count(self)


def component_count(g):
    from scipy.sparse.csgraph import connected_components

    return connected_components(_sparse_pattern(g), directed=False)[0]


def _sparse_pattern(g):
    import scipy.sparse as sp

    data = np.ones(g.m, np.int8)
    return sp.csr_matrix((data, (g.eu, g.ev)), shape=(g.n, g.n))


def build_graph(edge_list: Iterable, n: int | None = None, mode: str = REAL_MODE,
                M: int | None = None) -> WeightedGraph:
    """Validate an edge list and build both adjacency views.

    ``n`` defaults to one past the largest id.  In integer mode ``M`` defaults
    to the largest weight and every weight must be an integer in ``[1, M]``.
    """
    if mode not in (INT_MODE, REAL_MODE):
        raise GraphError(f"unknown weight mode {mode!r}")
    edge_list = list(edge_list)
    if n is None:
        n = 1 + max((max(int(u), int(v)) for u, v, _ in edge_list), default=-1)
    n = int(n)
    if n < 0:
        raise GraphError("vertex count must be non-negative")

    us, vs, ws = [], [], []
    for u, v, w in edge_list:
        e = (u, v, w)
        if int(u) != u or int(v) != v:
            raise GraphError(f"non-integer vertex id in edge {e}")
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex id out of range [0, {n}) in edge {e}")
        if u == v:
            raise GraphError(f"self-loop in edge {e}")
        wf = float(w)
        if math.isnan(wf) or math.isinf(wf):
            raise GraphError(f"non-finite weight in edge {e}")
        if wf < 0:
            raise GraphError(f"negative weight in edge {e}")
        if mode == INT_MODE:
            if wf != int(wf) or wf < 1:
                raise GraphError(f"integer mode needs a weight in {{1,...,M}}: edge {e}")
            if M is not None and wf > M:
                raise GraphError(f"weight exceeds M={M} in edge {e}")
        us.append(min(u, v))
        vs.append(max(u, v))
        ws.append(wf)

    eu = np.array(us, np.int64)
    ev = np.array(vs, np.int64)
    ew = np.array(ws, np.float64)
    if len(eu):
        key = eu * n + ev
        order = np.argsort(key, kind="stable")
        sk = key[order]
        dup = np.flatnonzero(sk[1:] == sk[:-1])
        if len(dup):
            bad = min(order[dup + 1])
            raise GraphError(f"duplicate edge {edge_list[bad]}")
        eu, ev, ew = eu[order], ev[order], ew[order]

    if mode == INT_MODE:
        wmax = int(ew.max()) if len(ew) else 1
        M = wmax if M is None else int(M)
        if M < 1:
            raise GraphError("M must be a positive integer")
        if M * max(n, 1) >= _EXACT_LIMIT:
            raise GraphError(f"M*n = {M * n} overflows exact integer range")
    else:
        M = None
    return WeightedGraph(n, eu, ev, ew, mode, M)


def induced_subgraph(g: WeightedGraph, U):
    """Subgraph induced by ``U`` plus the array mapping new ids to old ones.

    Each pair is resolved by binary search in the ordered adjacency lists.
    """
    U = np.unique(np.asarray(list(U) if not isinstance(U, np.ndarray) else U, np.int64))
    if len(U) and (U[0] < 0 or U[-1] >= g.n):
        raise GraphError("vertex id out of range in induced_subgraph")
    us, vs, ws = [], [], []
    for i, x in enumerate(U):
        a, b = g.ptr[x], g.ptr[x + 1]
        row = g.ordered_nbr[a:b]
        later = U[i + 1:]
        pos = np.searchsorted(row, later)
        hit = pos < len(row)
        hit[hit] = row[pos[hit]] == later[hit]
        js = np.flatnonzero(hit)
        us.append(np.full(len(js), i, np.int64))
        vs.append(js + i + 1)
        ws.append(g.ordered_wt[a + pos[js]])
    if us:
        eu, ev, ew = np.concatenate(us), np.concatenate(vs), np.concatenate(ws)
    else:
        eu, ev, ew = np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0)
    return WeightedGraph(len(U), eu, ev, ew, g.mode, g.M), U


def _sum_weights(ws, is_int):
    return int(sum(ws)) if is_int else math.fsum(ws)


@dataclass(frozen=True)
class Cycle:
    """Simple cycle ``v0 -> v1 -> ... -> v(k-1) -> v0``.

    ``edge_weights[i]`` is the weight of ``(v_i, v_{i+1 mod k})``.
    """

    vertices: tuple
    edge_weights: tuple
    total_weight: float

    @classmethod
    def from_vertices(cls, g: WeightedGraph, seq, canonical=True):
        seq = [int(x) for x in seq]
        k = len(seq)
        ws = tuple(g.weight(seq[i], seq[(i + 1) % k]) for i in range(k))
        c = cls(tuple(seq), ws, _sum_weights(ws, g.is_int))
        return c.canonical() if canonical else c

    def __len__(self):
        return len(self.vertices)

    def canonical(self):
        """Rotate to the smallest id and orient toward its smaller neighbor."""
        k = len(self.vertices)
        if k < 3:
            return self
        vs, ws = list(self.vertices), list(self.edge_weights)
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        ws = ws[i:] + ws[:i]
        if vs[-1] < vs[1]:
            vs = [vs[0]] + vs[:0:-1]
            ws = ws[::-1]
        if vs == list(self.vertices):
            return self
        return Cycle(tuple(vs), tuple(ws), self.total_weight)

    def relabel(self, mapping):
        """Same cycle with vertex ``x`` renamed ``mapping[x]``."""
        return Cycle(tuple(int(mapping[x]) for x in self.vertices), self.edge_weights,
                     self.total_weight).canonical()

    def sort_key(self):
        return (self.total_weight, self.vertices)


class CycleCheck(NamedTuple):
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def validate_cycle(g: WeightedGraph, c: Cycle, rel_tol: float = 1e-12) -> CycleCheck:
    """Check every cycle invariant against ``g``; falsy with reasons if any fail."""
    bad = []
    vs = list(c.vertices)
    k = len(vs)
    if k < 3:
        bad.append("k < 3")
    if len(set(vs)) != k:
        bad.append("repeated vertex")
    if len(c.edge_weights) != k:
        bad.append("edge_weights length != k")
    for i in range(k):
        a, b = vs[i], vs[(i + 1) % k]
        if not g.has_edge(a, b):
            bad.append(f"missing edge ({a},{b})")
        elif i < len(c.edge_weights) and g.weight(a, b) != c.edge_weights[i]:
            bad.append(f"weight mismatch on ({a},{b})")
    total = _sum_weights(c.edge_weights, g.is_int)
    if g.is_int:
        if total != c.total_weight:
            bad.append("total_weight != sum(edge_weights)")
    elif not math.isclose(total, c.total_weight, rel_tol=rel_tol, abs_tol=0.0):
        bad.append("total_weight != sum(edge_weights)")
    return CycleCheck(not bad, bad)


@dataclass
class GirthEstimate:
    """A cycle (or ``None`` for a forest) and the factor its producer guarantees.

    ``label`` names the branch or step that produced the winning cycle.
    """

    cycle: Cycle | None
    declared_factor: float
    label: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def acyclic(self):
        return self.cycle is None

    @property
    def weight(self):
        return math.inf if self.cycle is None else self.cycle.total_weight


def best_cycle(cands):
    """Lightest of ``(cycle, label)`` pairs; ties go to the smaller vertex tuple."""
    best = None
    for c, label in cands:
        if c is None:
            continue
        if best is None or c.sort_key() < best[0].sort_key():
            best = (c, label)
    return best if best is not None else (None, "")


def cycle_from_closed_walk(g: WeightedGraph, walk, anchor: int = 0) -> Cycle:
    """Extract a simple cycle from a closed walk without raising its weight.

    ``walk`` lists vertices with the closing edge implied.  The edge
    ``(walk[anchor], walk[anchor + 1])`` must be traversed exactly once; the
    rest of the walk is loop-erased into a path between its ends, which the
    anchor edge then closes.
    """
    L = len(walk)
    a, b = walk[anchor], walk[(anchor + 1) % L]
    rest = [walk[(anchor + 1 + i) % L] for i in range(L)]  # b ... a
    stack, pos = [], {}
    for x in rest:
        if x in pos:
            j = pos[x]
            for y in stack[j + 1:]:
                del pos[y]
            del stack[j + 1:]
        else:
            pos[x] = len(stack)
            stack.append(x)
    if stack[0] != b or stack[-1] != a or len(stack) < 3:
        raise ValueError("anchor edge is not traversed exactly once")
    return Cycle.from_vertices(g, stack)


def tree_path(parent, depth, a, b):
    """Vertex path ``a -> ... -> b`` through their lowest common ancestor."""
    left, right = [a], [b]
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return [int(x) for x in left + right[::-1]]


def read_edge_list(path_or_lines) -> WeightedGraph:
    """Parse the ``n m mode`` header format (``#`` starts a comment)."""
    if isinstance(path_or_lines, str):
        with open(path_or_lines) as fh:
            lines = fh.read().splitlines()
    else:
        lines = list(path_or_lines)
    rows = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphError("empty edge-list input")
    lineno, head = rows[0]
    if len(head) != 3 or head[2] not in (INT_MODE, REAL_MODE):
        raise GraphError(f"line {lineno}: header must be 'n m mode' with mode int|real")
    n, m, mode = int(head[0]), int(head[1]), head[2]
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, parts in body:
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'u v w'")
        try:
            w = int(parts[2]) if mode == INT_MODE else float(parts[2])
            edges.append((int(parts[0]), int(parts[1]), w))
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    return build_graph(edges, n=n, mode=mode)


def format_edge_list(g: WeightedGraph) -> str:
    out = [f"{g.n} {g.m} {g.mode}"]
    for u, v, w in g.edges:
        out.append(f"{u} {v} {w if g.is_int else repr(float(w))}")
    return "\n".join(out) + "\n"


def write_edge_list(g: WeightedGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g))
