"""Independent checkers: girth, maximum average degree, orientations, list coloring."""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from .structures import Graph, Hypergraph, ListAssignment, Orientation

__all__ = [
    "GirthResult",
    "girth",
    "hypergraph_girth",
    "DensestSubgraph",
    "densest_subgraph",
    "mad_exact",
    "OrientationReport",
    "check_orientation",
    "SAT",
    "UNSAT",
    "INCONCLUSIVE",
    "SearchResult",
    "list_color_search",
    "check_proper",
    "HeightBoundSeq",
    "height_bound_seq",
    "forced_cycle_girth_cap",
    "kq_reaches",
]


# ---------------------------------------------------------------- girth


@dataclass(frozen=True)
class GirthResult:
    length: float  # int, or math.inf for forests
    cycle: tuple[int, ...] | None = None


def _find_triangle(g: Graph) -> tuple[int, ...] | None:
    nb = [set(a) for a in g.adj]
    for u, v in g.edges:
        small, big = (nb[u], nb[v]) if len(nb[u]) < len(nb[v]) else (nb[v], nb[u])
        for w in small:
            if w in big:
                return (u, v, w)
    return None


def _find_c4(g: Graph) -> tuple[int, ...] | None:
    """A 4-cycle or None, scanning 2-paths between vertices of lower degree rank.

    Each 4-cycle is seen from its top-ranked vertex, so the work is
    bounded by arboricity times edge count.
    """
    adj = g.adj
    order = sorted(range(g.n), key=lambda v: -len(adj[v]))
    rank = [0] * g.n
    for i, v in enumerate(order):
        rank[v] = i
    mid = [-1] * g.n
    for u in order:
        ru = rank[u]
        touched = []
        for v in adj[u]:
            if rank[v] <= ru:
                continue
            for w in adj[v]:
                if w == u or rank[w] <= ru:
                    continue
                if mid[w] >= 0:
                    return (u, mid[w], w, v)
                mid[w] = v
                touched.append(w)
        for w in touched:
            mid[w] = -1
    return None


def girth(g: Graph) -> GirthResult:
    """Exact girth by breadth-first search from every vertex, with a shortest cycle.

    Cheap lower bounds (no triangle; no 4-cycle in a bipartite graph) let
    the sweep stop as soon as a cycle meeting the bound is seen.
    """
    tri = _find_triangle(g)
    if tri:
        return GirthResult(3, tri)
    c4 = _find_c4(g)
    if c4:
        return GirthResult(4, c4)
    lb = 6 if _two_colorable(g) else 5

    n = g.n
    adj = g.adj
    dist = [-1] * n
    par = [-1] * n
    best = math.inf
    best_cycle: tuple[int, ...] | None = None
    for s in range(n):
        if not adj[s]:
            continue
        seen = [s]
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    par[w] = u
                    seen.append(w)
                    queue.append(w)
                elif w != par[u] and dist[w] >= dist[u]:
                    length = dist[u] + dist[w] + 1
                    if length < best:
                        best = length
                        best_cycle = _tree_cycle(u, w, par, dist)
                        best = len(best_cycle)
        for v in seen:
            dist[v] = -1
            par[v] = -1
        if best <= lb:
            break
    return GirthResult(best, best_cycle)


def _tree_cycle(u: int, w: int, par: list[int], dist: list[int]) -> tuple[int, ...]:
    a, b = [u], [w]
    x, y = u, w
    while dist[x] > dist[y]:
        x = par[x]
        a.append(x)
    while dist[y] > dist[x]:
        y = par[y]
        b.append(y)
    while x != y:
        x, y = par[x], par[y]
        a.append(x)
        b.append(y)
    return tuple(a + b[-2::-1])


def _two_colorable(g: Graph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def hypergraph_girth(h: Hypergraph) -> float:
    """Shortest hypergraph cycle length, half the girth of the incidence graph."""
    res = girth(h.incidence_graph())
    return res.length if res.length == math.inf else res.length // 2


# ---------------------------------------------------------------- density


@dataclass(frozen=True)
class DensestSubgraph:
    mad: Fraction
    vertices: tuple[int, ...]


def _max_closure(n: int, edges: np.ndarray, p: int, q: int) -> np.ndarray:
    """Vertex set maximizing q*|E(S)| - p*|S| (the minimal maximizer).

    Closure network: source -> edge node (cap q), edge node -> both ends
    (cap q, enough to stand in for infinity), vertex -> sink (cap p).
    """
    m = len(edges)
    src, sink = 0, 1
    enode = 2 + np.arange(m)
    vnode = 2 + m + np.arange(n)
    rows = np.concatenate([np.full(m, src), enode, enode, vnode])
    cols = np.concatenate([enode, vnode[edges[:, 0]], vnode[edges[:, 1]], np.full(n, sink)])
    caps = np.concatenate([np.full(3 * m, q), np.full(n, p)]).astype(np.int32)
    size = 2 + m + n
    net = csr_matrix((caps, (rows, cols)), shape=(size, size))
    flow = maximum_flow(net, src, sink, method="dinic").flow
    # the flow matrix is skew-symmetric, so cap - flow covers reverse arcs too
    residual = (net - flow).tocsr()
    residual.data = np.where(residual.data > 0, 1, 0).astype(np.int32)
    residual.eliminate_zeros()
    reach = _reachable(residual, src)
    return np.flatnonzero(reach[2 + m :])


def _reachable(mat: csr_matrix, s: int) -> np.ndarray:
    order = breadth_first_order(mat, s, directed=True, return_predecessors=False)
    out = np.zeros(mat.shape[0], dtype=bool)
    out[order] = True
    return out


def densest_subgraph(g: Graph) -> DensestSubgraph:
    """Exact maximum average degree by Dinkelbach iteration over min cuts."""
    if g.n == 0:
        raise ValueError("graph has no vertices")
    if not g.edges:
        return DensestSubgraph(Fraction(0), (0,))
    edges = np.asarray(g.edges, dtype=np.int64)
    members = np.arange(g.n)
    num, den = len(edges), g.n
    while True:
        s = _max_closure(g.n, edges, num, den)
        if len(s) == 0:
            break
        inside = np.zeros(g.n, dtype=bool)
        inside[s] = True
        e_s = int(np.count_nonzero(inside[edges[:, 0]] & inside[edges[:, 1]]))
        if e_s * den <= num * len(s):
            break
        num, den = e_s, len(s)
        members = s
    return DensestSubgraph(2 * Fraction(num, den), tuple(int(v) for v in members))


def mad_exact(g: Graph) -> Fraction:
    return densest_subgraph(g).mad


# ---------------------------------------------------------------- orientation


@dataclass(frozen=True)
class OrientationReport:
    ok: bool
    message: str = "ok"
    vertex: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_orientation(g: Graph, o: Orientation, k: int) -> OrientationReport:
    """Outdegree k-1 everywhere but the root (outdegree k), all reachable from the root."""
    arcs = o.arcs
    if len(arcs) != len(g.edges):
        return OrientationReport(False, f"{len(arcs)} arcs for {len(g.edges)} edges")
    covered = set()
    for tail, head in arcs:
        e = (tail, head) if tail < head else (head, tail)
        if e not in g.edge_set:
            return OrientationReport(False, f"arc ({tail}, {head}) is not an edge", tail)
        if e in covered:
            return OrientationReport(False, f"edge {e} oriented twice", tail)
        covered.add(e)
    out = o.outdegrees(g.n)
    for v in range(g.n):
        want = k if v == o.root else k - 1
        if out[v] != want:
            return OrientationReport(False, f"vertex {v} has outdegree {out[v]}, expected {want}", v)
    succ: list[list[int]] = [[] for _ in range(g.n)]
    for tail, head in arcs:
        succ[tail].append(head)
    seen = [False] * g.n
    seen[o.root] = True
    stack = [o.root]
    while stack:
        u = stack.pop()
        for w in succ[u]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    for v in range(g.n):
        if not seen[v]:
            return OrientationReport(False, f"vertex {v} unreachable from root {o.root}", v)
    return OrientationReport(True)


# ---------------------------------------------------------------- list coloring

SAT = "SAT"
UNSAT = "UNSAT"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SearchResult:
    status: str
    coloring: tuple[int, ...] | None = None
    nodes: int = 0


def check_proper(g: Graph | Hypergraph, f: Sequence[int | None]):
    """First edge (or hyperedge) whose vertices all share a color, else None."""
    if len(f) != g.n or any(x is None for x in f):
        raise ValueError("coloring must assign a color to every vertex")
    if isinstance(g, Hypergraph):
        for e in g.edges:
            if len({f[x] for x in e}) == 1:
                return e
        return None
    for u, v in g.edges:
        if f[u] == f[v]:
            return (u, v)
    return None


def list_color_search(g: Graph, lists: ListAssignment, node_budget: int = 10**8) -> SearchResult:
    """Complete backtracking search for a proper coloring from the lists.

    Smallest remaining domain first, with colors removed from unassigned
    neighbors on every assignment.  UNSAT is returned only after the search
    space is exhausted; INCONCLUSIVE once ``node_budget`` assignments are tried.
    """
    n = g.n
    if len(lists) != n:
        raise ValueError(f"{len(lists)} lists for {n} vertices")
    adj = g.adj
    dom = [set(lists[v]) for v in range(n)]
    color = [None] * n
    heap = [(len(dom[v]), v) for v in range(n)]
    heapq.heapify(heap)
    trail: list[tuple[int, int]] = []
    # frame: [vertex, remaining candidates, trail mark]
    frames: list[list] = []
    nodes = 0

    def pick():
        while heap:
            size, v = heap[0]
            if color[v] is not None or size != len(dom[v]):
                heapq.heappop(heap)
                continue
            return v
        return None

    def undo(mark):
        while len(trail) > mark:
            u, c = trail.pop()
            dom[u].add(c)
            heapq.heappush(heap, (len(dom[u]), u))

    def assign(v, c) -> bool:
        color[v] = c
        for u in adj[v]:
            if color[u] is None and c in dom[u]:
                dom[u].discard(c)
                trail.append((u, c))
                heapq.heappush(heap, (len(dom[u]), u))
                if not dom[u]:
                    return False
        return True

    descend = True
    while True:
        if descend:
            v = pick()
            if v is None:
                f = tuple(color)
                if check_proper(g, f) is not None or any(f[x] not in lists[x] for x in range(n)):
                    raise AssertionError("search produced an invalid coloring")
                return SearchResult(SAT, f, nodes)
            frames.append([v, sorted(dom[v], reverse=True), len(trail)])
        if not frames:
            return SearchResult(UNSAT, None, nodes)
        frame = frames[-1]
        v, cands, mark = frame
        undo(mark)
        color[v] = None
        if not cands:
            frames.pop()
            heapq.heappush(heap, (len(dom[v]), v))
            descend = False
            continue
        if nodes >= node_budget:
            return SearchResult(INCONCLUSIVE, None, nodes)
        nodes += 1
        c = cands.pop()
        descend = assign(v, c)


# ---------------------------------------------------------------- height sequence


def _ceil_pow2_half(x: int) -> int:
    """Exact ceil(2 ** (x / 2)) for integer x >= 0."""
    if x % 2 == 0:
        return 1 << (x // 2)
    return math.isqrt(1 << x) + 1


@dataclass(frozen=True)
class HeightBoundSeq:
    g: int
    q: int
    k: tuple[int, ...]


def _check_cap_g(g: int) -> None:
    if g < 8 or g % 2:
        raise ValueError(f"g must be even and >= 8, got {g}")


def _q(g: int) -> int:
    return _ceil_pow2_half((g - 8) // 2)


def height_bound_seq(g: int, *, max_bits: int = 1 << 20) -> HeightBoundSeq:
    """k_0 = g-1, k_{i+1} = ceil(2^((k_i - g/2 + 4)/2)) + k_i for i < q."""
    _check_cap_g(g)
    q = _q(g)
    ks = [g - 1]
    for _ in range(q):
        x = ks[-1] - g // 2 + 4
        if x // 2 > max_bits:
            raise OverflowError(f"k sequence for g={g} exceeds {max_bits} bits")
        ks.append(_ceil_pow2_half(x) + ks[-1])
    return HeightBoundSeq(g, q, tuple(ks))


def kq_reaches(g: int, m: int) -> bool:
    """Whether k_q >= m for girth g, without materializing oversized terms."""
    _check_cap_g(g)
    bits = max(m.bit_length(), 1)
    return _kq_clipped(g, bits) >= m


@lru_cache(maxsize=None)
def _kq_clipped(g: int, bits: int) -> int:
    """min(k_q, 2**bits), stopping as soon as the sequence passes the clip."""
    clip = 1 << bits
    k = g - 1
    for _ in range(_q(g)):
        if k >= clip:
            return clip
        x = k - g // 2 + 4
        if x // 2 >= bits:
            return clip
        k += _ceil_pow2_half(x)
    return min(k, clip)


def forced_cycle_girth_cap(m: int) -> int:
    """Least even g >= 8 with k_q >= m: every 1-augmented binary tree of height m has a cycle this short."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    g = 8
    while not kq_reaches(g, m):
        g += 2
    return g
