"""Positive list-coloring results and the dense sharpness example."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .structures import Graph, ListAssignment, bipartition
from .verify import check_proper

__all__ = ["two_common_color", "smallcup_bound", "smallcup_color", "smallcup_sharp"]


def two_common_color(g: Graph, lists: ListAssignment) -> tuple[int, ...]:
    """Proper coloring of a bipartite graph whose adjacent lists share two colors.

    The class holding vertex 0 takes the largest color of each list, the
    other class the smallest.
    """
    if len(lists) != g.n:
        raise ValueError(f"{len(lists)} lists for {g.n} vertices")
    for v in range(g.n):
        if len(lists[v]) < 2:
            raise ValueError(f"list of vertex {v} has fewer than 2 colors")
    for u, v in g.edges:
        if len(lists[u] & lists[v]) < 2:
            raise ValueError(f"edge ({u}, {v}): lists share fewer than 2 colors")
    x_side, _ = bipartition(g)
    f = tuple(max(lists[v]) if v in x_side else min(lists[v]) for v in range(g.n))
    if check_proper(g, f) is not None:
        raise AssertionError("two-common coloring is not proper")
    return f


def smallcup_bound(j: int, k: int) -> int:
    """Largest union size that still guarantees colorability: floor(j(k-1)/(j-1))."""
    if not 2 <= j <= k:
        raise ValueError(f"need 2 <= j <= k, got j={j}, k={k}")
    return j * (k - 1) // (j - 1)


def smallcup_color(
    g: Graph, f: Sequence[int], lists: ListAssignment, j: int | None = None
) -> tuple[int, ...]:
    """Color from the lists using a proper j-coloring ``f`` and a small color union.

    The union is cut into j nearly equal consecutive blocks, one per color
    class of ``f``; every k-list meets every block, so each vertex takes
    the least color of its list inside its class's block.
    """
    if len(f) != g.n or len(lists) != g.n:
        raise ValueError("coloring and lists must cover every vertex")
    if check_proper(g, f) is not None:
        raise ValueError("reference coloring f is not proper")
    classes = sorted(set(f))
    j = len(classes) if j is None else j
    if len(classes) > j:
        raise ValueError(f"f uses {len(classes)} colors, more than j={j}")
    k = min(len(x) for x in lists.lists)
    universe = sorted(lists.universe)
    if j >= 2:
        bound = smallcup_bound(j, k)
        if len(universe) > bound:
            raise ValueError(f"union has {len(universe)} colors, bound is {bound}")
    size, extra = divmod(len(universe), j)
    blocks = []
    start = 0
    for i in range(j):
        end = start + size + (1 if i >= j - extra else 0)
        blocks.append(set(universe[start:end]))
        start = end
    index = {c: i for i, c in enumerate(classes)}
    out = []
    for v in range(g.n):
        choice = lists[v] & blocks[index[f[v]]]
        if not choice:
            raise AssertionError(f"vertex {v}: list misses its block")
        out.append(min(choice))
    out = tuple(out)
    if check_proper(g, out) is not None:
        raise AssertionError("block coloring is not proper")
    return out


def smallcup_sharp(j: int, k: int) -> tuple[Graph, ListAssignment]:
    """Complete j-partite graph, every part listing each k-subset of a union one larger than the bound."""
    size = smallcup_bound(j, k) + 1
    subsets = list(combinations(range(1, size + 1), k))
    per = len(subsets)
    edges = [
        (p * per + a, q * per + b)
        for p in range(j)
        for q in range(p + 1, j)
        for a in range(per)
        for b in range(per)
    ]
    lists = [frozenset(s) for _ in range(j) for s in subsets]
    return Graph(j * per, tuple(edges)), ListAssignment(tuple(lists))
