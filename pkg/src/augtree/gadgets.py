"""Gadgets grown on reduced augmented trees, and the witnesses that break their colorings.

Four recursive families share one shape: a reduced k-ary tree whose leaves
each host a copy of the (k-1)-level gadget, copy vertices inheriting one
augmenting edge apiece.

* ``jk``: not k-colorable, maximum average degree at most 2(k-1).
* ``gk``: bipartite, not k-choosable, one edge above that density.
* ``listcap``: the ``gk`` graph with lists meeting in exactly one color on every edge.
* ``hk``: lists drawn from only 2k-1 colors.

``build_hypergraph`` is the non-recursive t-uniform variant.  Every
witness function takes an attempted coloring and returns an edge it
violates, checked against the graph before being handed back.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .construct import (
    DEFAULT_NODE_BUDGET,
    BudgetExceeded,
    build_base,
    build_reduced_color_aligned,
)
from .paths import InfeasibleSplit, pigeonhole_select, select_mate_groups
from .structures import (
    AUG,
    GADGET,
    TREE,
    AugmentedTree,
    Graph,
    Hypergraph,
    ListAssignment,
    Orientation,
    bipartition,
    validate_augmented_tree,
)
from .verify import check_proper

__all__ = [
    "Copy",
    "GadgetBundle",
    "Witness",
    "WitnessError",
    "ColoringError",
    "build_hypergraph",
    "build_Jk",
    "build_Gk",
    "build_listcap",
    "build_Hk_smallunion",
    "build_G2",
    "hyper_witness",
    "Jk_witness",
    "Gk_witness",
    "witness",
    "random_attempt",
    "run_trials",
    "TrialReport",
]

Provider = Callable[[int, int, Sequence[tuple[int, int]]], AugmentedTree]


class WitnessError(AssertionError):
    """A witness came back that does not violate the coloring."""


class ColoringError(ValueError):
    """The attempted coloring breaks the witness precondition."""


@dataclass(frozen=True, eq=False)
class Copy:
    """One copy of the child gadget hanging at tree leaf ``leaf``.

    Index ``w`` runs over child-gadget vertices: ``vertices[w]`` is its id in
    the parent graph, ``anchors[w]`` its neighbor on the full path to the
    leaf, ``added[w]`` the color that neighbor is forced to carry along an
    f-path.  ``palette`` sends child colors to parent colors.
    """

    leaf: int
    vertices: tuple[int, ...]
    anchors: tuple[int, ...]
    added: tuple[int, ...]
    palette: Mapping[int, int]

    @cached_property
    def unpalette(self) -> dict[int, int]:
        return {v: k for k, v in self.palette.items()}


@dataclass(frozen=True, eq=False)
class GadgetBundle:
    kind: str  # "hypergraph" | "jk" | "gk" | "listcap" | "hk"
    k: int
    g: int
    graph: Graph | None = None
    hypergraph: Hypergraph | None = None
    lists: ListAssignment | None = None
    orientation: Orientation | None = None
    skeleton: AugmentedTree | None = None
    tree_count: int = 0  # graph vertices below this are skeleton vertices with the same id
    copies: tuple[Copy, ...] = ()
    child: "GadgetBundle | None" = None
    t: int | None = None
    edge_color: tuple[int, ...] = ()  # hypergraph: shared descending color of e_v

    @property
    def n(self) -> int:
        return self.hypergraph.n if self.hypergraph is not None else self.graph.n

    @property
    def depth(self) -> int:
        return 0 if self.child is None else 1 + self.child.depth

    @cached_property
    def first_leaf(self) -> int:
        return self.skeleton.leaves[0] if self.skeleton is not None else 0

    def copy_at(self, leaf: int) -> Copy:
        return self.copies[leaf - self.first_leaf]

    def origin(self, v: int) -> tuple:
        """Provenance of graph vertex ``v``: ``("tree", x)`` or ``("copy", leaf, w)``."""
        return self.origins[v]

    @cached_property
    def origins(self) -> tuple[tuple, ...]:
        out: list[tuple | None] = [None] * self.n
        if self.skeleton is None:
            return tuple(("base", v) for v in range(self.n))
        for v in range(self.tree_count):
            out[v] = ("tree", v)
        for cp in self.copies:
            for w, v in enumerate(cp.vertices):
                if self.kind != "jk" and w == 0:
                    continue  # the copy root is the tree leaf itself
                out[v] = ("copy", cp.leaf, w)
        if any(o is None for o in out):
            raise AssertionError("provenance does not cover every vertex")
        return tuple(out)

    @cached_property
    def list_matrix(self) -> np.ndarray:
        """Lists as an (n, k) array; bundles without lists use [k] everywhere."""
        if self.lists is None:
            return np.tile(np.arange(1, self.k + 1, dtype=np.int64), (self.n, 1))
        return np.array([sorted(x) for x in self.lists.lists], dtype=np.int64)

    @cached_property
    def tree_parent(self) -> np.ndarray:
        return np.asarray(self.skeleton.parent[: self.tree_count], dtype=np.int64)

    @cached_property
    def level_ranges(self) -> tuple[tuple[int, int], ...]:
        lv = self.skeleton.level
        out = []
        start = 0
        for v in range(1, self.tree_count + 1):
            if v == self.tree_count or lv[v] != lv[start]:
                out.append((start, v))
                start = v
        return tuple(out)


@dataclass(frozen=True)
class Witness:
    edge: tuple[int, ...]
    where: str  # "tree" | "aug" | "gadget" | "hyperedge"
    depth: int = 0  # recursion levels descended before it was found


# ---------------------------------------------------------------- hypergraph


def build_hypergraph(
    t: int,
    k: int,
    base: AugmentedTree | None = None,
    *,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> GadgetBundle:
    """t-uniform hypergraph on the internal tree vertices, one edge per leaf.

    The edge of leaf v collects t mates whose descending edges towards v
    share a color, so any [k]-coloring of the internal vertices makes the
    edge at the end of its f-path monochromatic.
    """
    if t < 2 or k < 2:
        raise ValueError(f"need t >= 2 and k >= 2, got t={t}, k={k}")
    r = (t - 1) * k + 1
    if base is None:
        base = build_base(k, r, node_budget=node_budget)
    if base.reduced:
        raise ValueError("hypergraph base must be unreduced")
    if base.d != k or base.r != r:
        raise ValueError(f"base must be a ({k}, {r}, g)-graph, got d={base.d}, r={base.r}")
    problems = validate_augmented_tree(base)
    if problems:
        raise ValueError(f"invalid base: {problems[0]}")
    nint = len(base.internal)
    edges, colors = [], []
    for leaf in base.leaves:
        c, group = pigeonhole_select(base, leaf, t)
        edges.append(group)
        colors.append(c)
    hyper = Hypergraph(nint, tuple(edges), t, tuple(base.leaves))
    return GadgetBundle(
        kind="hypergraph",
        k=k,
        g=base.girth_target,
        hypergraph=hyper,
        skeleton=base,
        tree_count=nint,
        t=t,
        edge_color=tuple(colors),
    )


def hyper_witness(bundle: GadgetBundle, f: Sequence[int]) -> Witness:
    """Follow the f-path of a [k]-coloring of the internal vertices to a monochromatic edge."""
    if bundle.kind != "hypergraph":
        raise ValueError(f"not a hypergraph bundle: {bundle.kind}")
    h, t = bundle.hypergraph, bundle.skeleton
    f = _as_coloring(f, h.n)
    if f.min() < 1 or f.max() > bundle.k:
        raise ColoringError(f"colors must lie in [1, {bundle.k}]")
    v = 0
    while t.children[v]:
        v = t.child_with_color(v, int(f[v]))
    e = h.edges[v - bundle.first_leaf]
    if len({int(f[x]) for x in e}) != 1:
        raise WitnessError(f"edge {e} of leaf {v} is not monochromatic")
    return Witness(e, "hyperedge")


# ---------------------------------------------------------------- shared assembly


def _as_coloring(f, n: int) -> np.ndarray:
    arr = np.asarray(f, dtype=np.int64)
    if arr.shape != (n,):
        raise ColoringError(f"coloring must assign all {n} vertices, got shape {arr.shape}")
    return arr


def _check_g(g: int) -> None:
    if g < 4 or g % 2:
        raise ValueError(f"g must be even and >= 4, got {g}")


def _check_base(base: AugmentedTree, k: int, r: int) -> None:
    if not base.reduced:
        raise ValueError("provider must supply a reduced tree")
    if base.d != k:
        raise ValueError(f"provider tree is {base.d}-ary, expected {k}")
    if base.r != r:
        raise ValueError(f"provider tree has r={base.r}, expected r={r}")
    problems = validate_augmented_tree(base)
    if problems:
        raise ValueError(f"provider tree invalid: {problems[0]}")


def _desc_colors(base: AugmentedTree, leaf: int) -> dict[int, int]:
    path = base.path_to(leaf)
    return {x: base.color[y] for x, y in zip(path, path[1:])}


def _g2_cycles(g: int) -> tuple[list[int], list[int]]:
    return list(range(1, g)), list(range(g, 2 * g - 1))


def build_G2(g: int, lists: str = "union") -> GadgetBundle:
    """Two g-cycles sharing the root 0, oriented around each cycle.

    ``lists="union"`` uses three colors in total; ``lists="rotate"`` gives
    adjacent lists exactly one common color (needs g = 4 mod 6).
    """
    _check_g(g)
    c1, c2 = _g2_cycles(g)
    edges, arcs = [], []
    for cyc in (c1, c2):
        ring = [0] + cyc
        for a, b in zip(ring, ring[1:] + [0]):
            edges.append((a, b))
            arcs.append((a, b))
    lst: list[set[int]] = [set() for _ in range(2 * g - 1)]
    lst[0] = {1, 2}
    if lists == "union":
        for cyc, (one, two) in ((c1, (1, 2)), (c2, (2, 1))):
            for x in cyc:
                lst[x] = {two, 3}
            lst[cyc[0]] = {one, 3}
            lst[cyc[-1]] = {one, two}
        kind = "gk"
    elif lists == "rotate":
        if g % 6 != 4:
            raise ValueError(f"rotating lists need g = 4 (mod 6), got g={g}")
        for cyc, one in ((c1, 1), (c2, 2)):
            rot = [{one, 3}, {3, 4}, {4, one}]
            for i, x in enumerate(cyc):
                lst[x] = rot[i % 3]
        kind = "listcap"
    else:
        raise ValueError(f"unknown list style {lists!r}")
    graph = Graph(2 * g - 1, tuple(edges), (GADGET,) * len(edges))
    return GadgetBundle(
        kind=kind,
        k=2,
        g=g,
        graph=graph,
        lists=ListAssignment(tuple(frozenset(x) for x in lst)),
        orientation=Orientation(tuple(arcs), 0),
    )


def _assemble(
    kind: str,
    k: int,
    g: int,
    base: AugmentedTree,
    child: GadgetBundle,
    slots: Callable[[int], list[tuple[int, int]]],
    keep_leaves: bool,
) -> tuple[Graph, Orientation | None, list, int]:
    """Glue one child copy per leaf onto the tree.

    ``slots(leaf)`` gives, for each child vertex w, ``(anchor, added)``.
    With ``keep_leaves`` the leaf itself is the copy of the child root.
    Returns the graph, orientation, per-leaf vertex maps and tree size.
    """
    tree_count = base.vertex_count if keep_leaves else len(base.internal)
    cg = child.graph
    nxt = tree_count
    edges, tags, arcs = [], [], []
    for v in range(1, tree_count):
        edges.append((base.parent[v], v))
        tags.append(TREE)
        arcs.append((base.parent[v], v))
    maps = []
    for leaf in base.leaves:
        slot = slots(leaf)
        if keep_leaves:
            vmap = [leaf] + list(range(nxt, nxt + cg.n - 1))
            nxt += cg.n - 1
        else:
            vmap = list(range(nxt, nxt + cg.n))
            nxt += cg.n
        for a, b in cg.edges:
            edges.append((vmap[a], vmap[b]))
            tags.append(GADGET)
        if child.orientation is not None:
            arcs.extend((vmap[a], vmap[b]) for a, b in child.orientation.arcs)
        for w, (anchor, _) in enumerate(slot):
            if keep_leaves and w == 0:
                continue  # joined to its parent by the tree edge
            edges.append((anchor, vmap[w]))
            tags.append(AUG)
            arcs.append((vmap[w], anchor))
        maps.append((leaf, vmap, slot))
    graph = Graph(nxt, tuple(edges), tuple(tags))
    orient = Orientation(tuple(arcs), 0) if child.orientation is not None else None
    return graph, orient, maps, tree_count


# ---------------------------------------------------------------- J_k


def build_Jk(
    k: int,
    g: int = 4,
    base_provider: Provider | None = None,
    *,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> GadgetBundle:
    """Sparse non-k-colorable graph: J_2 is the (g+1)-cycle, J_k hangs J_{k-1} copies off a tree.

    The provider receives ``(k, r, splits)`` and may return either a tree
    whose r mates per leaf already share a descending color, or one with
    (r-1)k+1 mates per leaf, from which an aligned r-subset is kept.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    _check_g(g)
    if k == 2:
        n = g + 1
        edges = tuple((i, (i + 1) % n) for i in range(n))
        return GadgetBundle(kind="jk", k=2, g=g, graph=Graph(n, edges, (GADGET,) * n))
    child = build_Jk(k - 1, g, base_provider, node_budget=node_budget)
    r = child.graph.n
    if base_provider is None:
        def base_provider(kk, rr, splits):
            return build_reduced_color_aligned(
                kk, rr, splits, aligned=True, bipartite=False, node_budget=node_budget
            )
    base = base_provider(k, r, [(r, 0)])
    if base.r == (r - 1) * k + 1 and base.r != r:
        _check_base(base, k, base.r)
        picks = {leaf: pigeonhole_select(base, leaf, r) for leaf in base.leaves}
    else:
        _check_base(base, k, r)
        picks = {}
        for leaf in base.leaves:
            desc = _desc_colors(base, leaf)
            cols = {desc[x] for x in base.mates[leaf]}
            if len(cols) != 1:
                raise ValueError(f"provider mismatch: mates of leaf {leaf} use colors {sorted(cols)}")
            picks[leaf] = (cols.pop(), base.mates[leaf])
    _budget(len(base.internal) + len(base.leaves) * r, node_budget)

    def slots(leaf):
        c, group = picks[leaf]
        return [(x, c) for x in group]

    graph, _, maps, tree_count = _assemble("jk", k, g, base, child, slots, keep_leaves=False)
    copies = []
    for leaf, vmap, slot in maps:
        c = slot[0][1]
        rest = [x for x in range(1, k + 1) if x != c]
        copies.append(
            Copy(leaf, tuple(vmap), tuple(a for a, _ in slot), tuple(s for _, s in slot),
                 {i + 1: col for i, col in enumerate(rest)})
        )
    return GadgetBundle(
        kind="jk", k=k, g=g, graph=graph, skeleton=base, tree_count=tree_count,
        copies=tuple(copies), child=child,
    )


def _budget(count: int, node_budget: int | None) -> None:
    if node_budget is not None and count > node_budget:
        raise BudgetExceeded(f"gadget needs {count} vertices, budget is {node_budget}")


# ---------------------------------------------------------------- G_k, listcap, H_k


def _split(child: GadgetBundle) -> tuple[list[int], list[int]]:
    """Non-root vertices on the root's side, and those opposite, by id."""
    side0, side1 = bipartition(child.graph)
    same = side0 if 0 in side0 else side1
    a_part = sorted(v for v in same if v != 0)
    b_part = sorted(v for v in range(child.graph.n) if v not in same)
    return a_part, b_part


def _groups(base, leaf, a, b, *, aligned, bipartite):
    try:
        return select_mate_groups(
            base, leaf, [(a, 0), (b, 1)], candidates=base.mates[leaf],
            aligned=aligned, bipartite=bipartite,
        )
    except InfeasibleSplit as exc:
        raise ValueError(f"provider mismatch: {exc}") from None


def _recursive_list_gadget(
    kind: str,
    k: int,
    g: int,
    base_provider: Provider | None,
    node_budget: int | None,
    *,
    aligned: bool,
    bipartite: bool,
) -> GadgetBundle:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    _check_g(g)
    if kind == "listcap" and g % 6 != 4:
        raise ValueError(f"intersection-one lists need g = 4 (mod 6), got g={g}")
    if k == 2:
        b2 = build_G2(g, "rotate" if kind == "listcap" else "union")
        return GadgetBundle(
            kind=kind, k=2, g=g, graph=b2.graph, lists=b2.lists, orientation=b2.orientation
        )
    child = _recursive_list_gadget(
        kind, k - 1, g, base_provider, node_budget, aligned=aligned, bipartite=bipartite
    )
    a_part, b_part = _split(child)
    a, b = len(a_part), len(b_part)
    r = a + b
    if base_provider is None:
        def base_provider(kk, rr, splits):
            return build_reduced_color_aligned(
                kk, rr, splits, aligned=aligned, bipartite=bipartite, node_budget=node_budget
            )
    base = base_provider(k, r, [(a, 0), (b, 1)])
    _check_base(base, k, r)
    _budget(base.vertex_count + len(base.leaves) * (child.graph.n - 1), node_budget)

    groups = {}
    for leaf in base.leaves:
        (ca, ga), (cb, gb) = _groups(base, leaf, a, b, aligned=aligned, bipartite=bipartite)
        groups[leaf] = (ca, ga, cb, gb)

    def anchors(leaf) -> list[int]:
        _, ga, _, gb = groups[leaf]
        out = [0] * child.graph.n
        out[0] = base.parent[leaf]
        for w, x in zip(a_part, ga):
            out[w] = x
        for w, x in zip(b_part, gb):
            out[w] = x
        return out

    def added_colors(leaf, anc) -> list[int]:
        if kind == "listcap":
            # edge ids: the tree edge into vertex y is color y
            path = base.path_to(leaf)
            nxt = {x: y for x, y in zip(path, path[1:])}
            return [nxt[x] for x in anc]
        desc = _desc_colors(base, leaf)
        return [desc[x] for x in anc]

    def slots(leaf):
        anc = anchors(leaf)
        return list(zip(anc, added_colors(leaf, anc)))

    graph, orient, maps, tree_count = _assemble(kind, k, g, base, child, slots, keep_leaves=True)

    lists: list[frozenset[int]] = [frozenset()] * graph.n
    if kind == "listcap":
        for x in base.internal:
            lists[x] = frozenset(([x] if x else []) + list(base.children[x]))
        fresh = base.vertex_count
    else:
        for x in base.internal:
            lists[x] = frozenset(range(1, k + 1))
        fresh = k + 1
    child_universe = sorted(child.lists.universe)
    copies = []
    for leaf, vmap, slot in maps:
        added = [s for _, s in slot]
        if kind == "hk":
            palette = _hk_palette(k, groups[leaf][0], groups[leaf][2], base.color[leaf],
                                  child_universe, child.lists[0])
        else:
            palette = {c: fresh + i for i, c in enumerate(child_universe)}
            fresh += len(child_universe)
        for w, v in enumerate(vmap):
            lists[v] = frozenset(palette[c] for c in child.lists[w]) | {added[w]}
        copies.append(Copy(leaf, tuple(vmap), tuple(a for a, _ in slot), tuple(added), palette))
    return GadgetBundle(
        kind=kind, k=k, g=g, graph=graph, lists=ListAssignment(tuple(lists)),
        orientation=orient, skeleton=base, tree_count=tree_count,
        copies=tuple(copies), child=child,
    )


def _hk_palette(k, c, c2, cv, universe, root_list) -> dict[int, int]:
    """Order-preserving map of the child's 2k-3 colors into [2k-1] minus {c, c'}.

    Afterwards ``cv`` is swapped out of the image of the root list.
    """
    pool = [x for x in range(1, 2 * k) if x not in (c, c2)]
    if c == c2:
        pool.remove(min(x for x in pool if x <= k))
    if len(pool) != len(universe):
        raise AssertionError(f"child uses {len(universe)} colors, pool has {len(pool)}")
    pal = dict(zip(universe, pool))
    image = {pal[x] for x in root_list}
    if cv in image:
        spare = min(x for x in pool if x not in image)
        inv = {v: key for key, v in pal.items()}
        pal[inv[cv]], pal[inv[spare]] = spare, cv
    return pal


def build_Gk(
    k: int,
    g: int = 4,
    base_provider: Provider | None = None,
    *,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> GadgetBundle:
    """Bipartite non-k-choosable graph with (k-1)|V|+1 edges, its lists and orientation.

    Default bases put the a root-side mates at odd and the b opposite-side
    mates at even distance from each leaf, which keeps the graph bipartite.
    """
    return _recursive_list_gadget("gk", k, g, base_provider, node_budget,
                                  aligned=False, bipartite=True)


def build_listcap(
    k: int,
    g: int = 4,
    base_provider: Provider | None = None,
    *,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> GadgetBundle:
    """The G_k graph with k-lists that share exactly one color across every edge."""
    return _recursive_list_gadget("listcap", k, g, base_provider, node_budget,
                                  aligned=False, bipartite=True)


def build_Hk_smallunion(
    k: int,
    g: int = 4,
    base_provider: Provider | None = None,
    *,
    bipartite: bool = False,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> GadgetBundle:
    """Non-L-colorable gadget whose k-lists all come from [2k-1].

    Mates of each leaf form two color-aligned groups.  With ``bipartite``
    the groups also respect distance parity, at a much taller base tree.
    """
    return _recursive_list_gadget("hk", k, g, base_provider, node_budget,
                                  aligned=True, bipartite=bipartite)


# ---------------------------------------------------------------- witnesses


def _check_in_lists(bundle: GadgetBundle, f: np.ndarray) -> None:
    ok = (bundle.list_matrix == f[:, None]).any(axis=1)
    if not ok.all():
        v = int(np.flatnonzero(~ok)[0])
        raise ColoringError(f"vertex {v} colored {int(f[v])} outside its list")


def _verified(bundle: GadgetBundle, f: np.ndarray, w: Witness) -> Witness:
    u, v = w.edge
    if not bundle.graph.has_edge(u, v) or f[u] != f[v]:
        raise WitnessError(f"{w.where} edge {w.edge} is not violated")
    return w


def _scan(bundle: GadgetBundle, f: np.ndarray) -> Witness | None:
    bad = np.flatnonzero(f[1 : bundle.tree_count] == f[bundle.tree_parent[1:]])
    if len(bad):
        v = int(bad[0]) + 1
        return Witness((int(bundle.tree_parent[v]), v), TREE)
    return None


def _descend(bundle: GadgetBundle, f: np.ndarray) -> int:
    """Leaf reached by the f-path; assumes f proper on the tree."""
    t = bundle.skeleton
    v = 0
    while t.children[v]:
        c = int(f[v])
        if bundle.kind == "listcap":
            w = c if 0 < c < t.vertex_count and t.parent[c] == v else None
        else:
            w = t.child_with_color(v, c)
        if w is None:
            raise WitnessError(f"f-path stuck at tree vertex {v}")
        v = w
    return v


def witness(bundle: GadgetBundle, f: Sequence[int]) -> Witness:
    """Return a verified edge that the attempted coloring ``f`` makes monochromatic."""
    if bundle.kind == "hypergraph":
        return hyper_witness(bundle, f)
    arr = _as_coloring(f, bundle.n)
    if bundle.kind == "jk":
        if arr.min() < 1 or arr.max() > bundle.k:
            raise ColoringError(f"colors must lie in [1, {bundle.k}]")
    else:
        _check_in_lists(bundle, arr)
    return _verified(bundle, arr, _witness(bundle, arr))


def _witness(bundle: GadgetBundle, f: np.ndarray) -> Witness:
    if bundle.child is None:
        bad = check_proper(bundle.graph, f.tolist())
        if bad is None:
            raise WitnessError(f"{bundle.kind} base gadget admits the coloring")
        return Witness(bad, GADGET)
    hit = _scan(bundle, f)
    if hit is not None:
        return hit
    cp = bundle.copy_at(_descend(bundle, f))
    for w, v in enumerate(cp.vertices):
        if f[v] == cp.added[w]:
            return Witness((cp.anchors[w], v), AUG)
    sub = np.array([cp.unpalette[int(f[v])] for v in cp.vertices], dtype=np.int64)
    inner = _witness(bundle.child, sub)
    a, b = inner.edge
    return Witness((cp.vertices[a], cp.vertices[b]), inner.where, inner.depth + 1)


def Jk_witness(bundle: GadgetBundle, f: Sequence[int]) -> Witness:
    if bundle.kind != "jk":
        raise ValueError(f"not a J_k bundle: {bundle.kind}")
    return witness(bundle, f)


def Gk_witness(bundle: GadgetBundle, f: Sequence[int]) -> Witness:
    if bundle.kind not in ("gk", "listcap", "hk"):
        raise ValueError(f"not a list gadget bundle: {bundle.kind}")
    return witness(bundle, f)


# ---------------------------------------------------------------- random trials

MODES = ("uniform", "tree", "adversarial")


def _pick(rng, rows: np.ndarray, banned: np.ndarray | None = None) -> np.ndarray:
    keys = rng.random(rows.shape)
    if banned is not None:
        keys[rows == banned[:, None]] = 2.0
    return rows[np.arange(len(rows)), keys.argmin(axis=1)]


def random_attempt(bundle: GadgetBundle, rng: np.random.Generator, mode: str = "uniform") -> np.ndarray:
    """One random coloring attempt drawn from the bundle's lists.

    ``tree`` makes the tree part proper top-down; ``adversarial``
    additionally colors the copy reached by the f-path while avoiding every
    color that would expose an augmenting edge, pushing the witness into
    the recursion.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if bundle.kind == "hypergraph":
        return rng.integers(1, bundle.k + 1, bundle.n)
    lm = bundle.list_matrix
    f = _pick(rng, lm)
    if mode == "uniform" or bundle.child is None:
        return f
    for lo, hi in bundle.level_ranges[1:]:
        f[lo:hi] = _pick(rng, lm[lo:hi], f[bundle.tree_parent[lo:hi]])
    if mode == "adversarial":
        cp = bundle.copy_at(_descend(bundle, f))
        idx = np.asarray(cp.vertices)
        f[idx] = _pick(rng, lm[idx], np.asarray(cp.added))
    return f


@dataclass(frozen=True)
class TrialReport:
    trials: int
    failures: int
    sample: Witness | None
    by_where: dict


def run_trials(bundle: GadgetBundle, trials: int, seed: int = 0) -> TrialReport:
    """Feed ``trials`` seeded random attempts to the witness, cycling through the modes."""
    rng = np.random.default_rng(seed)
    failures = 0
    sample = None
    by_where: dict[str, int] = {}
    for i in range(trials):
        f = random_attempt(bundle, rng, MODES[i % len(MODES)])
        try:
            w = witness(bundle, f)
        except (WitnessError, ColoringError):
            failures += 1
            continue
        by_where[w.where] = by_where.get(w.where, 0) + 1
        if sample is None:
            sample = w
    return TrialReport(trials, failures, sample, by_where)
