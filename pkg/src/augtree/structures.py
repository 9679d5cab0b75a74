"""Core data model: augmented trees, graphs, hypergraphs, lists and orientations.

Vertices are dense integers.  Trees are numbered in breadth-first order with
the root at 0 and the children of every vertex listed by increasing edge
color, so two structurally equal trees always serialize identically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "AugmentedTree",
    "Graph",
    "Hypergraph",
    "ListAssignment",
    "Orientation",
    "NotBipartite",
    "validate_augmented_tree",
    "flatten",
    "bipartition",
    "is_bipartite",
    "tree_from_children",
]

TREE = "tree"
AUG = "aug"
GADGET = "gadget"


@dataclass(frozen=True, eq=True)
class AugmentedTree:
    """A rooted tree plus augmenting edges from leaves to ancestors.

    ``color[v]`` is the edge color of the tree edge from ``parent[v]`` to
    ``v`` (0 for the root).  On an unreduced tree this is the 1-based child
    index; a reduced tree keeps the colors of the tree it was cut from.
    """

    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    color: tuple[int, ...]
    level: tuple[int, ...]
    aug_edges: tuple[tuple[int, int], ...]
    d: int
    r: int
    girth_target: int
    reduced: bool = False

    @property
    def vertex_count(self) -> int:
        return len(self.parent)

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.d, self.r, self.girth_target)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v, ch in enumerate(self.children) if not ch)

    @cached_property
    def internal(self) -> tuple[int, ...]:
        return tuple(v for v, ch in enumerate(self.children) if ch)

    @property
    def height(self) -> int:
        return max(self.level)

    @cached_property
    def mates(self) -> dict[int, tuple[int, ...]]:
        """Leaf -> its aug-edge ancestors, ordered by increasing level."""
        out: dict[int, list[int]] = {v: [] for v in self.leaves}
        for leaf, anc in self.aug_edges:
            out.setdefault(leaf, []).append(anc)
        return {v: tuple(sorted(a, key=self.level.__getitem__)) for v, a in out.items()}

    def path_to(self, v: int) -> tuple[int, ...]:
        """Vertices of the tree path from the root down to ``v``."""
        path = [v]
        while v != 0:
            v = self.parent[v]
            path.append(v)
        return tuple(reversed(path))

    def is_ancestor(self, a: int, v: int) -> bool:
        """True iff ``a`` is a strict ancestor of ``v``."""
        if self.level[a] >= self.level[v]:
            return False
        while self.level[v] > self.level[a]:
            v = self.parent[v]
        return v == a

    def child_with_color(self, v: int, c: int) -> int | None:
        for w in self.children[v]:
            if self.color[w] == c:
                return w
        return None

    def tree_edges(self) -> Iterable[tuple[int, int]]:
        for v in range(1, self.vertex_count):
            yield self.parent[v], v


def tree_from_children(
    root,
    children: Mapping,
    aug: Iterable[tuple],
    *,
    d: int,
    r: int,
    girth_target: int,
    reduced: bool = False,
) -> AugmentedTree:
    """Renumber an arbitrary-id tree into canonical breadth-first form.

    ``children`` maps a vertex key to a sequence of ``(color, child_key)``;
    ``aug`` yields ``(leaf_key, ancestor_key)`` pairs.
    """
    ids = {root: 0}
    order = [root]
    parent = [0]
    color = [0]
    level = [0]
    kids: list[list[int]] = []
    queue = deque([root])
    while queue:
        key = queue.popleft()
        v = ids[key]
        out = []
        for c, ch in sorted(children.get(key, ()), key=lambda p: p[0]):
            w = len(order)
            ids[ch] = w
            order.append(ch)
            parent.append(v)
            color.append(c)
            level.append(level[v] + 1)
            out.append(w)
            queue.append(ch)
        kids.append(out)
    edges = sorted((ids[a], ids[b]) for a, b in aug)
    edges.sort(key=lambda e: (e[0], level[e[1]]))
    return AugmentedTree(
        parent=tuple(parent),
        children=tuple(tuple(k) for k in kids),
        color=tuple(color),
        level=tuple(level),
        aug_edges=tuple(edges),
        d=d,
        r=r,
        girth_target=girth_target,
        reduced=reduced,
    )


def validate_augmented_tree(t: AugmentedTree) -> list[str]:
    """Return every violated tree invariant as a message; empty means valid."""
    errs: list[str] = []
    n = t.vertex_count
    if not (len(t.children) == len(t.color) == len(t.level) == n) or n == 0:
        return ["field lengths disagree with vertex count"]
    if t.parent[0] != 0 or t.level[0] != 0:
        errs.append("root must be vertex 0 at level 0 and be its own parent")
    for v in range(1, n):
        p = t.parent[v]
        if not 0 <= p < v:
            errs.append(f"vertex {v}: parent {p} breaks breadth-first numbering")
            continue
        if v not in t.children[p]:
            errs.append(f"vertex {v}: missing from children of its parent {p}")
        if t.level[v] != t.level[p] + 1:
            errs.append(f"vertex {v}: level {t.level[v]} != parent level + 1")
        if not 1 <= t.color[v] <= t.d:
            errs.append(f"vertex {v}: edge color {t.color[v]} outside [1, {t.d}]")
    for v, ch in enumerate(t.children):
        cols = [t.color[w] for w in ch]
        if cols != sorted(set(cols)):
            errs.append(f"vertex {v}: child colors {cols} not strictly increasing")
        if any(t.parent[w] != v for w in ch if 0 < w < n):
            errs.append(f"vertex {v}: lists a child whose parent differs")
    if errs:
        return errs

    leaves = set(t.leaves)
    heights = {t.level[v] for v in leaves}
    if len(heights) > 1:
        errs.append(f"leaves at several levels {sorted(heights)}")
    for v in t.internal:
        k = len(t.children[v])
        if not t.reduced or v == 0:
            if k != t.d:
                errs.append(f"vertex {v} has {k} != d={t.d} children")
            elif not t.reduced and [t.color[w] for w in t.children[v]] != list(range(1, t.d + 1)):
                errs.append(f"vertex {v}: child colors are not 1..{t.d}")
        else:
            if k != t.d - 1:
                errs.append(f"vertex {v} has {k} != d-1={t.d - 1} children")
            if t.color[v] in (t.color[w] for w in t.children[v]):
                errs.append(f"vertex {v}: edge coloring not proper (repeats parent color {t.color[v]})")

    seen = set()
    count = dict.fromkeys(leaves, 0)
    for leaf, anc in t.aug_edges:
        if not (0 <= leaf < n and 0 <= anc < n):
            errs.append(f"aug edge ({leaf}, {anc}): endpoint out of range")
            continue
        if (leaf, anc) in seen:
            errs.append(f"aug edge ({leaf}, {anc}): parallel to another aug edge")
        seen.add((leaf, anc))
        if leaf not in leaves:
            errs.append(f"aug edge ({leaf}, {anc}): {leaf} is not a leaf")
            continue
        count[leaf] += 1
        if not t.is_ancestor(anc, leaf):
            errs.append(f"aug edge ({leaf}, {anc}): {anc} is not an ancestor of {leaf}")
        elif t.level[leaf] - t.level[anc] < 2:
            errs.append(f"aug edge ({leaf}, {anc}): ancestor at distance 1 < 2")
    for leaf in sorted(leaves):
        if count[leaf] != t.r:
            errs.append(f"leaf {leaf} has {count[leaf]} != r={t.r} aug edges")
    return errs


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on ``0..n-1`` with per-edge provenance tags."""

    n: int
    edges: tuple[tuple[int, int], ...]
    tags: tuple[str, ...] = ()
    classes: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self):
        norm = tuple((u, v) if u < v else (v, u) for u, v in self.edges)
        object.__setattr__(self, "edges", norm)
        if self.tags and len(self.tags) != len(norm):
            raise ValueError("one tag per edge required")
        seen = set()
        for u, v in norm:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u and v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range {self.n}")
            if (u, v) in seen:
                raise ValueError(f"parallel edge ({u}, {v})")
            seen.add((u, v))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(x) for x in nb)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def without_edge(self, e: tuple[int, int]) -> Graph:
        e = tuple(sorted(e))
        keep = [i for i, f in enumerate(self.edges) if f != e]
        return Graph(
            self.n,
            tuple(self.edges[i] for i in keep),
            tuple(self.tags[i] for i in keep) if self.tags else (),
        )


@dataclass(frozen=True)
class Hypergraph:
    """t-uniform hypergraph; edges may repeat but each has a distinct origin."""

    n: int
    edges: tuple[tuple[int, ...], ...]
    t: int
    provenance: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))
        for e in self.edges:
            if len(set(e)) != self.t:
                raise ValueError(f"edge {e} does not have {self.t} distinct vertices")
            if not all(0 <= x < self.n for x in e):
                raise ValueError(f"edge {e} outside vertex range {self.n}")
        if self.provenance:
            if len(self.provenance) != len(self.edges):
                raise ValueError("one provenance id per edge required")
            if len(set(self.provenance)) != len(self.provenance):
                raise ValueError("provenance ids must be pairwise distinct")

    def to_graph(self) -> Graph:
        """Underlying simple graph of a 2-uniform hypergraph (repeats merged)."""
        if self.t != 2:
            raise ValueError("only 2-uniform hypergraphs are graphs")
        return Graph(self.n, tuple(sorted(set(self.edges))))

    def incidence_graph(self) -> Graph:
        """Bipartite vertex/edge incidence graph; edge i becomes vertex n + i."""
        pairs = [(x, self.n + i) for i, e in enumerate(self.edges) for x in e]
        return Graph(self.n + len(self.edges), tuple(pairs))


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]
    allocator_next: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(frozenset(x) for x in self.lists))
        if any(not x for x in self.lists):
            raise ValueError("every list must be nonempty")
        top = max((max(x) for x in self.lists), default=0)
        if self.allocator_next <= top:
            object.__setattr__(self, "allocator_next", top + 1)

    @cached_property
    def universe(self) -> frozenset[int]:
        return frozenset().union(*self.lists)

    def __len__(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]


@dataclass(frozen=True)
class Orientation:
    """Direction of every edge as ``(tail, head)`` plus a designated root."""

    arcs: tuple[tuple[int, int], ...]
    root: int = 0

    def outdegrees(self, n: int) -> list[int]:
        out = [0] * n
        for tail, _ in self.arcs:
            out[tail] += 1
        return out


class NotBipartite(ValueError):
    """Raised by :func:`bipartition`; ``cycle`` is an odd cycle certificate."""

    def __init__(self, cycle: Sequence[int]):
        super().__init__(f"odd cycle of length {len(cycle)}: {list(cycle)}")
        self.cycle = tuple(cycle)


def flatten(t: AugmentedTree) -> Graph:
    """Tree edges followed by augmenting edges, each tagged by origin."""
    problems = validate_augmented_tree(t)
    if problems:
        raise ValueError(f"invalid augmented tree: {problems[0]}")
    edges = list(t.tree_edges())
    tags = [TREE] * len(edges)
    for leaf, anc in t.aug_edges:
        edges.append((anc, leaf))
        tags.append(AUG)
    return Graph(t.vertex_count, tuple(edges), tuple(tags))


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]]:
    """Two-color ``g`` by BFS; raise :class:`NotBipartite` with an odd cycle."""
    side = [-1] * g.n
    par = [-1] * g.n
    adj = g.adj
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    par[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    raise NotBipartite(_odd_cycle(u, w, par))
    return (
        frozenset(v for v in range(g.n) if side[v] == 0),
        frozenset(v for v in range(g.n) if side[v] == 1),
    )


def _odd_cycle(u: int, w: int, par: list[int]) -> list[int]:
    # u and w are adjacent with equal BFS parity; join their tree paths
    pu, pw = [u], [w]
    anc_u = {u: 0}
    x = u
    while par[x] >= 0:
        x = par[x]
        anc_u[x] = len(pu)
        pu.append(x)
    y = w
    while y not in anc_u:
        y = par[y]
        pw.append(y)
    return pu[: anc_u[y] + 1] + pw[-2::-1]


def is_bipartite(g: Graph) -> bool:
    try:
        bipartition(g)
    except NotBipartite:
        return False
    return True
