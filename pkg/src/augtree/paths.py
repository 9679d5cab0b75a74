"""Edge coloring phi, f-path descent and pigeonhole selection of mates."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .structures import AugmentedTree

__all__ = [
    "FullPath",
    "MissingBranch",
    "InfeasibleSplit",
    "phi",
    "full_path",
    "f_path",
    "descending_color",
    "pigeonhole_select",
    "select_mate_groups",
    "group_pool",
    "assign_groups",
]


class MissingBranch(ValueError):
    """Descent got stuck: no child edge carries the vertex's color."""

    def __init__(self, vertex: int, color: int):
        super().__init__(f"no descending edge of color {color} at vertex {vertex}")
        self.vertex = vertex
        self.color = color


class InfeasibleSplit(ValueError):
    pass


@dataclass(frozen=True)
class FullPath:
    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    @property
    def leaf(self) -> int:
        return self.vertices[-1]


def phi(t: AugmentedTree, parent: int, child: int) -> int:
    if child == 0 or not 0 < child < t.vertex_count or t.parent[child] != parent:
        raise ValueError(f"({parent}, {child}) is not a tree edge")
    return t.color[child]


def full_path(t: AugmentedTree, leaf: int) -> FullPath:
    vs = t.path_to(leaf)
    return FullPath(vs, tuple(t.color[v] for v in vs[1:]))


def f_path(t: AugmentedTree, f: Sequence[int]) -> FullPath:
    """Follow, from the root, the child edge whose color equals f at each vertex.

    Only non-leaf colors are read.  On a reduced tree an f that is improper on
    the tree edges can reach a vertex missing that color, which raises
    :class:`MissingBranch`.
    """
    v = 0
    vs = [0]
    while t.children[v]:
        w = t.child_with_color(v, f[v])
        if w is None:
            raise MissingBranch(v, f[v])
        vs.append(w)
        v = w
    return FullPath(tuple(vs), tuple(t.color[x] for x in vs[1:]))


def descending_color(t: AugmentedTree, x: int, leaf: int) -> int:
    """Color of the edge leaving ancestor ``x`` along the path to ``leaf``."""
    v = leaf
    while t.parent[v] != x:
        v = t.parent[v]
        if v == 0:
            raise ValueError(f"{x} is not a strict ancestor of {leaf}")
    return t.color[v]


def pigeonhole_select(t: AugmentedTree, leaf: int, group_size: int) -> tuple[int, tuple[int, ...]]:
    """Smallest color shared by ``group_size`` mates' descending edges.

    Returns that color with the ``group_size`` lowest-level such mates.
    """
    path = t.path_to(leaf)
    desc = {x: t.color[y] for x, y in zip(path, path[1:])}
    by_color: dict[int, list[int]] = {}
    for x in t.mates.get(leaf, ()):
        by_color.setdefault(desc[x], []).append(x)
    for c in sorted(by_color):
        if len(by_color[c]) >= group_size:
            return c, tuple(by_color[c][:group_size])
    raise InfeasibleSplit(
        f"leaf {leaf}: no color class of {group_size} among {len(t.mates.get(leaf, ()))} mates"
    )


def group_pool(distance: int, offset: int, bipartite: bool) -> bool:
    """Whether an ancestor at ``distance`` may serve a group with ``offset``.

    Offset 0 asks for odd distance >= 3, offset 1 for even distance >= 2
    (an odd-distance mate moved one step towards the leaf).  Without the
    parity requirement every ancestor at distance >= 2 qualifies.
    """
    if distance < 2:
        return False
    if not bipartite:
        return True
    if offset == 0:
        return distance % 2 == 1 and distance >= 3
    return distance % 2 == 0


def select_mate_groups(
    t: AugmentedTree,
    leaf: int,
    groups: Sequence[tuple[int, int]],
    *,
    candidates: Iterable[int] | None = None,
    aligned: bool = True,
    bipartite: bool = True,
) -> list[tuple[int | None, tuple[int, ...]]]:
    """Choose disjoint mate groups for ``leaf``.

    ``groups`` holds ``(count, offset)`` pairs.  Candidates default to all
    ancestors of the leaf.  With ``aligned`` every group is monochromatic in
    descending color; color tuples are tried in lexicographic order and each
    group takes the lowest-level free candidates.  Returns ``(color, mates)``
    per group, color being None when unaligned.
    """
    path = t.path_to(leaf)
    desc = {x: t.color[y] for x, y in zip(path, path[1:])}
    if candidates is None:
        candidates = path[:-1]
    h = t.level[leaf]
    cands = sorted(set(candidates), key=t.level.__getitem__)
    if any(x not in desc for x in cands):
        raise ValueError(f"candidates must be strict ancestors of leaf {leaf}")
    found = assign_groups(
        [(x, h - t.level[x], desc[x]) for x in cands], groups, t.d,
        aligned=aligned, bipartite=bipartite,
    )
    if found is not None:
        return found
    raise InfeasibleSplit(f"leaf {leaf}: cannot place mate groups {list(groups)}")


def assign_groups(
    cands: Sequence[tuple[int, int, int]],
    groups: Sequence[tuple[int, int]],
    d: int,
    *,
    aligned: bool = True,
    bipartite: bool = True,
) -> list[tuple[int | None, tuple[int, ...]]] | None:
    """Core of :func:`select_mate_groups` over ``(vertex, distance, color)`` triples.

    ``cands`` must be ordered by increasing level.  Returns None if no
    placement exists.
    """
    pools = [[(x, c) for x, dist, c in cands if group_pool(dist, off, bipartite)] for _, off in groups]
    combos = product(range(1, d + 1), repeat=len(groups)) if aligned else [(None,) * len(groups)]
    for combo in combos:
        used: set[int] = set()
        out = []
        for (count, _), pool, want in zip(groups, pools, combo):
            avail = [x for x, c in pool if x not in used and (want is None or c == want)]
            if len(avail) < count:
                break
            chosen = tuple(avail[:count])
            used.update(chosen)
            out.append((want, chosen))
        else:
            return out
    return None
