"""Girth-constrained augmented trees: base trees, girth expansion, composition.

Heights follow three recurrences (g even, g >= 4)::

    m(d, r, 4)     = 2r + 1
    m(d, 1, g + 2) <= 2 + m(d, d*d, g)
    m(d, r + 1, g) <= m1 + m(d**m1, r, g) - 1,   m1 = 2*floor(m(d, 1, g)/2) + 1

:func:`height_bound` composes them with g as the outer induction and r as
the inner one; :func:`plan_and_build` materializes the same recursion when
it fits a vertex budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .paths import InfeasibleSplit, assign_groups, group_pool, select_mate_groups
from .structures import AugmentedTree, tree_from_children, validate_augmented_tree

__all__ = [
    "BudgetExceeded",
    "BoundTooLarge",
    "ConstructionPlan",
    "PlanStep",
    "PlanOnly",
    "DEFAULT_NODE_BUDGET",
    "height_bound",
    "complete_tree_size",
    "reduced_tree_size",
    "build_base",
    "expand_girth",
    "compose",
    "pad_with_root",
    "plan_and_build",
    "reduce",
    "aligned_height",
    "build_reduced_color_aligned",
]

DEFAULT_NODE_BUDGET = 5_000_000
# exact integers are refused beyond this many bits
MAX_BITS = 1 << 24


class BudgetExceeded(ValueError):
    pass


class BoundTooLarge(OverflowError):
    pass


def _check_g(g: int) -> None:
    if g < 4 or g % 2:
        raise ValueError(f"girth target g must be even and >= 4, got {g}")


def _check_dr(d: int, r: int) -> None:
    if d < 2:
        raise ValueError(f"branching d must be >= 2, got {d}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")


def _pow(base: int, exp: int, max_bits: int) -> int:
    if exp * max(base.bit_length() - 1, 1) > max_bits:
        raise BoundTooLarge(f"{base}**{exp} exceeds {max_bits} bits")
    return base**exp


def height_bound(d: int, r: int, g: int, *, max_bits: int = MAX_BITS) -> int:
    """Upper bound on the least height of a (d, r, g)-graph, exact integer."""
    _check_dr(d, r)
    _check_g(g)
    return _height_bound(d, r, g, max_bits)


@lru_cache(maxsize=None)
def _height_bound(d: int, r: int, g: int, max_bits: int) -> int:
    if g == 4:
        return 2 * r + 1
    if r == 1:
        return 2 + _height_bound(d, d * d, g - 2, max_bits)
    m1 = _odd_ceiling(_height_bound(d, 1, g, max_bits))
    return m1 + _height_bound(_pow(d, m1, max_bits), r - 1, g, max_bits) - 1


def _odd_ceiling(m: int) -> int:
    return 2 * (m // 2) + 1


def complete_tree_size(d: int, h: int) -> int:
    return (d ** (h + 1) - 1) // (d - 1)


def reduced_tree_size(d: int, h: int) -> int:
    """Vertex count of the reduced complete d-ary tree of height ``h``."""
    if h == 0:
        return 1
    if d == 2:
        return 1 + 2 * h
    return 1 + d * ((d - 1) ** h - 1) // (d - 2)


def _budget(count: int, node_budget: int | None, what: str) -> None:
    if node_budget is not None and count > node_budget:
        raise BudgetExceeded(f"{what} needs {count} vertices, budget is {node_budget}")


def _require_valid(t: AugmentedTree) -> None:
    problems = validate_augmented_tree(t)
    if problems:
        raise ValueError(f"invalid input tree: {problems[0]}")


def build_base(d: int, r: int, *, node_budget: int | None = DEFAULT_NODE_BUDGET) -> AugmentedTree:
    """Complete d-ary tree of height 2r+1, leaves joined to ancestors at distance 3, 5, ..., 2r+1."""
    _check_dr(d, r)
    h = 2 * r + 1
    n = complete_tree_size(d, h)
    _budget(n, node_budget, f"base tree ({d}, {r})")
    parent = [0] * n
    color = [0] * n
    level = [0] * n
    children = []
    for v in range(n):
        first = d * v + 1
        if first < n:
            children.append(tuple(range(first, first + d)))
            for i in range(d):
                w = first + i
                parent[w] = v
                color[w] = i + 1
                level[w] = level[v] + 1
        else:
            children.append(())
    aug = []
    first_leaf = complete_tree_size(d, h - 1)
    for leaf in range(first_leaf, n):
        anc = leaf
        found = []
        for dist in range(1, h + 1):
            anc = parent[anc]
            if dist % 2 == 1 and dist >= 3:
                found.append(anc)
        aug.extend((leaf, a) for a in reversed(found))
    return AugmentedTree(
        parent=tuple(parent),
        children=tuple(children),
        color=tuple(color),
        level=tuple(level),
        aug_edges=tuple(aug),
        d=d,
        r=r,
        girth_target=4,
    )


def expand_girth(G: AugmentedTree, *, node_budget: int | None = DEFAULT_NODE_BUDGET) -> AugmentedTree:
    """Turn a (d, d^2, g)-graph into a (d, 1, g+2)-graph.

    Every leaf v grows a complete d-ary tree of height 2 and its d^2 aug
    edges move down, one per new leaf: the i-th new leaf (in phi order)
    takes the i-th aug edge of v (by ancestor level).
    """
    if G.reduced:
        raise ValueError("expand_girth needs an unreduced tree")
    d = G.d
    if G.r != d * d:
        raise ValueError(f"r must equal d² = {d * d}, got r={G.r}")
    _require_valid(G)
    _budget(complete_tree_size(d, G.height + 2), node_budget, "girth expansion")
    kids: dict = {}
    for v in G.internal:
        kids[v] = [(G.color[w], w) for w in G.children[v]]
    aug = []
    for v in G.leaves:
        kids[v] = [(i, ("x", v, i)) for i in range(1, d + 1)]
        new_leaves = []
        for i in range(1, d + 1):
            kids[("x", v, i)] = [(j, ("x", v, i, j)) for j in range(1, d + 1)]
            new_leaves.extend(("x", v, i, j) for j in range(1, d + 1))
        aug.extend(zip(new_leaves, G.mates[v]))
    return tree_from_children(0, kids, aug, d=d, r=1, girth_target=G.girth_target + 2)


def compose(G1: AugmentedTree, G2: AugmentedTree, *, node_budget: int | None = DEFAULT_NODE_BUDGET) -> AugmentedTree:
    """Combine a (d, 1, g)-graph of odd height m1 with a (d^m1, r, g)-graph.

    G2 is pruned to its first d children per vertex above the last internal
    level; each remaining star at that level is replaced by a copy of G1
    whose i-th leaf inherits the aug edges of the star's i-th leaf.  The
    result is a (d, r+1, g)-graph of height m1 + m2 - 1.
    """
    if G1.reduced or G2.reduced:
        raise ValueError("compose needs unreduced trees")
    if G1.r != 1:
        raise ValueError(f"G1 must be 1-augmented, got r={G1.r}")
    m1, m2 = G1.height, G2.height
    if m1 % 2 == 0:
        raise ValueError(f"G1 height must be odd, got {m1}")
    d = G1.d
    if G2.d != d**m1:
        raise ValueError(f"G2 branching must be d^m1 = {d**m1}, got {G2.d}")
    _require_valid(G1)
    _require_valid(G2)
    _budget(complete_tree_size(d, m1 + m2 - 1), node_budget, "composition")

    kids: dict = {}
    stars = []
    stack = [0]
    while stack:
        v = stack.pop()
        if G2.level[v] == m2 - 1:
            stars.append(v)
            continue
        chosen = G2.children[v][:d]
        kids[v] = [(G2.color[w], w) for w in chosen]
        stack.extend(chosen)

    g1_leaves = G1.leaves
    aug = []
    for u in stars:
        def key(w, u=u):
            return u if w == 0 else ("c", u, w)

        for w in G1.internal:
            kids[key(w)] = [(G1.color[c], key(c)) for c in G1.children[w]]
        for leaf1, leaf2 in zip(g1_leaves, G2.children[u]):
            aug.extend((key(leaf1), a) for a in G2.mates[leaf2])
        aug.extend((key(l), key(a)) for l, a in G1.aug_edges)
    g = min(G1.girth_target, G2.girth_target)
    return tree_from_children(0, kids, aug, d=d, r=G2.r + 1, girth_target=g)


def pad_with_root(copies: int, G: AugmentedTree, *, node_budget: int | None = DEFAULT_NODE_BUDGET) -> AugmentedTree:
    """Hang ``copies`` disjoint copies of G under a fresh root (height + 1)."""
    if copies != G.d:
        raise ValueError(f"need exactly d={G.d} copies to stay d-ary, got {copies}")
    _require_valid(G)
    _budget(copies * G.vertex_count + 1, node_budget, "padding")
    kids: dict = {"root": [(i, ("p", i, 0)) for i in range(1, copies + 1)]}
    aug = []
    for i in range(1, copies + 1):
        for w in G.internal:
            kids[("p", i, w)] = [(G.color[c], ("p", i, c)) for c in G.children[w]]
        aug.extend((("p", i, l), ("p", i, a)) for l, a in G.aug_edges)
    return tree_from_children(
        "root", kids, aug, d=G.d, r=G.r, girth_target=G.girth_target, reduced=G.reduced
    )


def reduce(G: AugmentedTree) -> AugmentedTree:
    """Delete, below each non-root internal vertex, the child whose edge repeats the parent edge color."""
    if G.reduced:
        raise ValueError("tree is already reduced")
    _require_valid(G)
    kids: dict = {}
    aug = []
    stack = [0]
    while stack:
        v = stack.pop()
        if not G.children[v]:
            aug.extend((v, a) for a in G.mates[v])
            continue
        chosen = [w for w in G.children[v] if v == 0 or G.color[w] != G.color[v]]
        kids[v] = [(G.color[w], w) for w in chosen]
        stack.extend(chosen)
    return tree_from_children(0, kids, aug, d=G.d, r=G.r, girth_target=G.girth_target, reduced=True)


@dataclass(frozen=True)
class PlanStep:
    kind: str  # "base" | "girth" | "aug" | "pad"
    d: int
    r: int
    g: int
    height: int
    nodes: int | None  # vertex count of this step's tree; None if beyond MAX_BITS
    inputs: tuple["PlanStep", ...] = ()
    m1: int | None = None
    m2: int | None = None


@dataclass(frozen=True)
class ConstructionPlan:
    target: tuple[int, int, int]
    steps: tuple[PlanStep, ...]  # post-order, last step is the target
    height_bound: int | None
    node_bound: int | None  # vertices of the target tree, None if beyond MAX_BITS
    work_bound: int | None  # vertices materialized over all steps

    @property
    def root(self) -> PlanStep | None:
        return self.steps[-1] if self.steps else None


@dataclass(frozen=True)
class PlanOnly:
    """Outcome of :func:`plan_and_build` when the plan does not fit the budget."""

    plan: ConstructionPlan


def _tree_nodes(d: int, h: int) -> int | None:
    if (h + 1) * (d - 1).bit_length() > MAX_BITS:
        return None
    return complete_tree_size(d, h)


def _plan_step(d: int, r: int, g: int) -> PlanStep:
    if g == 4:
        h = 2 * r + 1
        return PlanStep("base", d, r, g, h, _tree_nodes(d, h))
    if r == 1:
        inner = _plan_step(d, d * d, g - 2)
        h = inner.height + 2
        return PlanStep("girth", d, 1, g, h, _tree_nodes(d, h), (inner,))
    g1 = _plan_step(d, 1, g)
    if g1.height % 2 == 0:
        g1 = PlanStep("pad", d, 1, g, g1.height + 1, _tree_nodes(d, g1.height + 1), (g1,))
    m1 = g1.height
    g2 = _plan_step(_pow(d, m1, MAX_BITS), r - 1, g)
    h = m1 + g2.height - 1
    return PlanStep("aug", d, r, g, h, _tree_nodes(d, h), (g1, g2), m1=m1, m2=g2.height)


def _postorder(step: PlanStep, out: list) -> list:
    for s in step.inputs:
        _postorder(s, out)
    out.append(step)
    return out


def _execute(step: PlanStep, budget: int | None) -> AugmentedTree:
    if step.kind == "base":
        return build_base(step.d, step.r, node_budget=budget)
    if step.kind == "girth":
        return expand_girth(_execute(step.inputs[0], budget), node_budget=budget)
    if step.kind == "pad":
        return pad_with_root(step.d, _execute(step.inputs[0], budget), node_budget=budget)
    g1 = _execute(step.inputs[0], budget)
    g2 = _execute(step.inputs[1], budget)
    return compose(g1, g2, node_budget=budget)


def plan_and_build(
    d: int, r: int, g: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> tuple[ConstructionPlan, AugmentedTree] | PlanOnly:
    """Plan the recursive construction of a (d, r, g)-graph and build it if affordable.

    The tree is materialized only when every step together stays within
    ``node_budget`` vertices; otherwise the plan comes back as :class:`PlanOnly`.
    """
    _check_dr(d, r)
    _check_g(g)
    try:
        top = _plan_step(d, r, g)
    except BoundTooLarge:
        try:
            hb = height_bound(d, r, g)
        except BoundTooLarge:
            hb = None
        nodes = None if hb is None else _tree_nodes(d, hb)
        return PlanOnly(ConstructionPlan((d, r, g), (), hb, nodes, None))
    steps = tuple(_postorder(top, []))
    sizes = [s.nodes for s in steps]
    work = None if None in sizes else sum(sizes)
    plan = ConstructionPlan((d, r, g), steps, top.height, top.nodes, work)
    if work is None or work > node_budget:
        return PlanOnly(plan)
    return plan, _execute(top, None)


def _profiles(n: int, d: int, cap: int):
    """All color-count vectors of length d summing to n with entries <= cap."""
    if d == 1:
        if n <= cap:
            yield (n,)
        return
    for first in range(min(n, cap) + 1):
        for rest in _profiles(n - first, d - 1, cap):
            yield (first,) + rest


def _profile_fits(profile: Sequence[int], sizes: Sequence[int]) -> bool:
    for combo in product(range(len(profile)), repeat=len(sizes)):
        need = [0] * len(profile)
        for c, s in zip(combo, sizes):
            need[c] += s
        if all(x <= y for x, y in zip(need, profile)):
            return True
    return False


# exact height search enumerates at most this many root-to-leaf color sequences
EXACT_SEQUENCE_LIMIT = 200_000


def _profile_height(d, splits, aligned, bipartite, max_height) -> int:
    """Height that works for every color-count profile of each candidate pool.

    Pools of one parity class carry arbitrary profiles; the parity-free pool
    is a run of consecutive path edges, so no color fills more than half of
    it.  This over-approximates the sequences a reduced tree can realize.
    """
    for h in range(2, max_height + 1):
        sizes_by_pool: dict[object, list[int]] = {}
        pool_len: dict[object, int] = {}
        for count, off in splits:
            key = off if bipartite else None
            pool_len[key] = sum(1 for dist in range(2, h + 1) if group_pool(dist, off, bipartite))
            sizes_by_pool.setdefault(key, []).append(count)
        ok = True
        for key, sizes in sizes_by_pool.items():
            n = pool_len[key]
            if sum(sizes) > n:
                ok = False
                break
            if not aligned:
                continue
            cap = n if bipartite else (n + 1) // 2
            if not all(_profile_fits(p, sizes) for p in _profiles(n, d, cap)):
                ok = False
                break
        if ok:
            return h
    raise InfeasibleSplit(f"no height <= {max_height} hosts splits {list(splits)} for d={d}")


def _every_path_fits(d, h, splits, aligned, bipartite) -> bool:
    """Try the splits against every proper color sequence of length h."""
    seq = [0] * h

    def fits() -> bool:
        # ancestor at level i has distance h - i and descends with color seq[i]
        cands = [(i, h - i, seq[i]) for i in range(h)]
        return assign_groups(cands, splits, d, aligned=aligned, bipartite=bipartite) is not None

    def rec(i: int) -> bool:
        if i == h:
            return fits()
        for c in range(1, d + 1):
            if i and c == seq[i - 1]:
                continue
            seq[i] = c
            if not rec(i + 1):
                return False
        return True

    return rec(0)


def aligned_height(
    d: int,
    splits: Sequence[tuple[int, int]],
    *,
    aligned: bool = True,
    bipartite: bool = True,
    max_height: int = 64,
) -> int:
    """Least height at which every leaf of a reduced d-ary tree can host ``splits``.

    Heights are tried exactly by enumerating color sequences while their
    number stays below ``EXACT_SEQUENCE_LIMIT``; past that the answer is a
    profile-counting bound that is always sufficient but may overshoot.
    """
    upper = _profile_height(d, splits, aligned, bipartite, max_height)
    low = sum(c for c, _ in splits) + 1
    for h in range(low, upper):
        if d * (d - 1) ** (h - 1) > EXACT_SEQUENCE_LIMIT:
            break
        if _every_path_fits(d, h, splits, aligned, bipartite):
            return h
    return upper


def build_reduced_color_aligned(
    d: int,
    r: int,
    splits: Sequence[tuple[int, int]],
    *,
    height: int | None = None,
    aligned: bool = True,
    bipartite: bool = True,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> AugmentedTree:
    """Reduced d-ary tree whose leaves carry aug edges in prescribed mate groups.

    Each ``(count, offset)`` split is a group of mates chosen among the
    ancestors of every leaf (see :func:`select_mate_groups`).  With
    ``aligned`` the mates of a group share their descending color along the
    leaf's full path.  With ``bipartite`` offset-0 groups sit at odd and
    offset-1 groups at even distance; otherwise any distance >= 2 is used.
    ``height`` defaults to the least height that works for every leaf.
    """
    if d < 2:
        raise ValueError(f"branching d must be >= 2, got {d}")
    splits = [(int(c), int(o)) for c, o in splits]
    if sum(c for c, _ in splits) != r:
        raise ValueError(f"split counts {splits} do not sum to r={r}")
    if any(c < 1 or o not in (0, 1) for c, o in splits):
        raise ValueError("split counts must be positive and offsets 0 or 1")
    if height is None:
        height = aligned_height(d, splits, aligned=aligned, bipartite=bipartite)
    _budget(reduced_tree_size(d, height), node_budget, "reduced aligned tree")

    parent, color, level = [0], [0], [0]
    children: list[tuple[int, ...]] = []
    v = 0
    while v < len(parent):
        if level[v] < height:
            kids = []
            for c in range(1, d + 1):
                if v != 0 and c == color[v]:
                    continue
                kids.append(len(parent))
                parent.append(v)
                color.append(c)
                level.append(level[v] + 1)
            children.append(tuple(kids))
        else:
            children.append(())
        v += 1
    skeleton = AugmentedTree(
        parent=tuple(parent),
        children=tuple(children),
        color=tuple(color),
        level=tuple(level),
        aug_edges=(),
        d=d,
        r=r,
        girth_target=4,
        reduced=True,
    )
    girth_target = 4 if bipartite and all(o == 0 for _, o in splits) else 3
    aug = []
    for leaf in skeleton.leaves:
        groups = select_mate_groups(skeleton, leaf, splits, aligned=aligned, bipartite=bipartite)
        mates = sorted((x for _, grp in groups for x in grp), key=level.__getitem__)
        aug.extend((leaf, x) for x in mates)
    return AugmentedTree(
        parent=skeleton.parent,
        children=skeleton.children,
        color=skeleton.color,
        level=skeleton.level,
        aug_edges=tuple(aug),
        d=d,
        r=r,
        girth_target=girth_target,
        reduced=True,
    )
