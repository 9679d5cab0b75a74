import itertools
import random

import numpy as np
import pytest

from augtree.coloring import smallcup_bound, smallcup_color, smallcup_sharp, two_common_color
from augtree.construct import build_base, build_reduced_color_aligned
from augtree.gadgets import (
    ColoringError,
    Gk_witness,
    Jk_witness,
    build_Gk,
    build_Hk_smallunion,
    build_hypergraph,
    build_Jk,
    build_listcap,
    hyper_witness,
    random_attempt,
    run_trials,
    witness,
)
from augtree.structures import Graph, ListAssignment, NotBipartite, bipartition, is_bipartite
from augtree.verify import UNSAT, check_orientation, check_proper, girth, list_color_search, mad_exact


def _edges_ok(bundle):
    return len(bundle.graph.edges) == (bundle.k - 1) * bundle.n + 1


# ---- hypergraph -------------------------------------------------------------------

def test_hypergraph_t2_counts_and_odd_cycle(hyper22):
    h = hyper22.hypergraph
    assert (h.n, len(h.edges)) == (127, 128)
    assert len(h.edges) == (hyper22.k - 1) * h.n + 1
    with pytest.raises(NotBipartite) as info:
        bipartition(h.to_graph())
    cyc = info.value.cycle
    assert len(cyc) % 2 == 1
    assert all(h.to_graph().has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def test_hypergraph_t3_counts(hyper32):
    h = hyper32.hypergraph
    assert (h.n, len(h.edges), h.t) == (2047, 2048, 3)
    assert all(len(set(e)) == 3 for e in h.edges)


def test_hypergraph_edges_monochromatic_on_path(hyper32):
    t = hyper32.skeleton
    for leaf, e, c in zip(t.leaves, hyper32.hypergraph.edges, hyper32.edge_color):
        path = t.path_to(leaf)
        desc = {x: t.color[y] for x, y in zip(path, path[1:])}
        assert {desc[x] for x in e} == {c}


def test_hyper_witness_constant_coloring(hyper32):
    f = [1] * hyper32.n
    w = hyper_witness(hyper32, f)
    assert w.edge == hyper32.hypergraph.edges[0]


def test_hyper_witness_random(hyper32):
    rep = run_trials(hyper32, 300, seed=1)
    assert rep.failures == 0 and rep.trials == 300


def test_hyper_witness_rejects_bad_colors(hyper22):
    with pytest.raises(ColoringError):
        hyper_witness(hyper22, [3] * hyper22.n)
    with pytest.raises(ColoringError):
        hyper_witness(hyper22, [1] * (hyper22.n - 1))


def test_hypergraph_wrong_r():
    with pytest.raises(ValueError):
        build_hypergraph(2, 2, build_base(2, 2))


# ---- J_k ------------------------------------------------------------------------

def test_j2_is_five_cycle():
    b = build_Jk(2, 4)
    assert b.n == 5 and mad_exact(b.graph) == 2
    assert not is_bipartite(b.graph)
    for f in itertools.product((1, 2), repeat=5):
        w = Jk_witness(b, f)
        assert f[w.edge[0]] == f[w.edge[1]]


def test_j3_structure(jk3):
    assert jk3.depth == 1
    assert mad_exact(jk3.graph) <= 4
    assert girth(jk3.graph).length >= 4


def test_j3_constant_coloring_hits_tree_edge(jk3):
    w = Jk_witness(jk3, [1] * jk3.n)
    assert w.where == "tree" and w.edge == (0, 1)


def test_j3_witness_trials(jk3):
    rep = run_trials(jk3, 300, seed=4)
    assert rep.failures == 0
    assert rep.by_where.get("gadget", 0) > 0  # recursion into copies exercised


def test_jk_provider_with_pigeonhole_mates():
    # (r-1)k+1 = 13 unaligned mates per leaf; an aligned 5-subset is picked inside
    def provider(k, r, splits):
        big = (r - 1) * k + 1
        return build_reduced_color_aligned(k, big, [(big, 0)], aligned=False, bipartite=False)

    b = build_Jk(3, 4, provider)
    assert b.skeleton.r == 13
    assert all(len(cp.anchors) == 5 for cp in b.copies)
    assert mad_exact(b.graph) <= 4
    assert run_trials(b, 60, seed=0).failures == 0


def test_jk_provider_mismatch():
    def short(k, r, splits):
        return build_reduced_color_aligned(k, r - 1, [(r - 1, 0)], bipartite=False)

    with pytest.raises(ValueError, match="provider"):
        build_Jk(3, 4, short)


def test_jk_rejects_bad_args():
    with pytest.raises(ValueError):
        build_Jk(1, 4)
    with pytest.raises(ValueError):
        build_Jk(2, 5)


def test_jk_witness_rejects_out_of_range(jk3):
    with pytest.raises(ColoringError):
        Jk_witness(jk3, [4] * jk3.n)


# ---- G_k -----------------------------------------------------------------------

def test_g2_shape():
    b = build_Gk(2, 4)
    assert (b.n, len(b.graph.edges)) == (7, 8)
    assert girth(b.graph).length == 4
    assert is_bipartite(b.graph)
    assert check_orientation(b.graph, b.orientation, 2).ok
    out = b.orientation.outdegrees(b.n)
    assert out[0] == 2 and all(x == 1 for x in out[1:])


def test_g2_every_choice_function_violated():
    b = build_Gk(2, 4)
    count = 0
    for f in itertools.product(*[sorted(x) for x in b.lists.lists]):
        w = Gk_witness(b, f)
        assert f[w.edge[0]] == f[w.edge[1]]
        count += 1
    assert count == 2**7
    assert list_color_search(b.graph, b.lists).status == UNSAT


@pytest.mark.parametrize("g", [4, 6, 8])
def test_g2_unsat_for_several_girths(g):
    b = build_Gk(2, g)
    assert girth(b.graph).length == g
    assert list_color_search(b.graph, b.lists).status == UNSAT


def test_g2_single_edge_deletions_sparse():
    b = build_Gk(2, 4)
    for e in b.graph.edges:
        assert mad_exact(b.graph.without_edge(e)) <= 2


def test_g3_structure(gk3):
    assert is_bipartite(gk3.graph)
    assert _edges_ok(gk3)
    assert check_orientation(gk3.graph, gk3.orientation, 3).ok
    assert all(len(x) == 3 for x in gk3.lists.lists)
    assert girth(gk3.graph).length >= 4


def test_g3_witness_trials(gk3):
    rep = run_trials(gk3, 300, seed=2)
    assert rep.failures == 0
    assert rep.by_where.get("gadget", 0) > 0


def test_gk_witness_rejects_color_outside_list(gk3):
    f = random_attempt(gk3, np.random.default_rng(0))
    f[0] = 999
    with pytest.raises(ColoringError):
        Gk_witness(gk3, f)


def _private_colors_stay_inside(bundle):
    """Colors owned by a copy's palette appear on no vertex outside that copy."""
    owner = {}
    for cp in bundle.copies:
        for c in cp.palette.values():
            owner.setdefault(c, set()).update(cp.vertices)
    for v, lst in enumerate(bundle.lists.lists):
        for c in lst:
            if c in owner and v not in owner[c]:
                return False
    return True


def test_fresh_colors_stay_in_their_copy(gk3, listcap3):
    assert _private_colors_stay_inside(gk3)
    assert _private_colors_stay_inside(listcap3)


# ---- listcap -------------------------------------------------------------------

def _intersections(bundle):
    L = bundle.lists.lists
    return {len(L[u] & L[v]) for u, v in bundle.graph.edges}


def test_listcap_k2():
    b = build_listcap(2, 4)
    assert _intersections(b) == {1}
    assert list_color_search(b.graph, b.lists).status == UNSAT
    assert b.lists[0] == {1, 2}


def test_listcap_k3(listcap3):
    assert _intersections(listcap3) == {1}
    assert all(len(x) == 3 for x in listcap3.lists.lists)
    rep = run_trials(listcap3, 300, seed=3)
    assert rep.failures == 0


def test_listcap_needs_g_4_mod_6():
    with pytest.raises(ValueError, match="4 \\(mod 6\\)"):
        build_listcap(2, 6)
    b = build_listcap(2, 10)
    assert _intersections(b) == {1}
    assert list_color_search(b.graph, b.lists).status == UNSAT


# ---- H_k -----------------------------------------------------------------------

def test_h2_union_three():
    b = build_Hk_smallunion(2, 4)
    assert b.lists.universe == {1, 2, 3}
    assert list_color_search(b.graph, b.lists).status == UNSAT
    assert is_bipartite(b.graph)


def test_h3_union_five(hk3):
    assert hk3.lists.universe == set(range(1, 6))
    assert all(len(x) == 3 for x in hk3.lists.lists)
    assert _edges_ok(hk3)
    assert check_orientation(hk3.graph, hk3.orientation, 3).ok


def test_h3_witness_trials(hk3):
    rep = run_trials(hk3, 300, seed=5)
    assert rep.failures == 0


def test_h3_copy_never_offers_leaf_its_parent_color(hk3):
    # the leaf doubles as the copy root; its palette-mapped list must avoid
    # the color of the leaf's own tree edge
    t = hk3.skeleton
    for cp in hk3.copies[:200]:
        image = {cp.palette[c] for c in hk3.child.lists[0]}
        assert t.color[cp.leaf] not in image


# ---- random attempts -------------------------------------------------------------

def test_random_attempt_modes_stay_in_lists(gk3):
    rng = np.random.default_rng(0)
    L = gk3.lists.lists
    for mode in ("uniform", "tree", "adversarial"):
        f = random_attempt(gk3, rng, mode)
        assert all(int(f[v]) in L[v] for v in range(gk3.n))
        if mode != "uniform":
            t = gk3.skeleton
            assert all(f[v] != f[t.parent[v]] for v in range(1, gk3.tree_count))
    with pytest.raises(ValueError):
        random_attempt(gk3, rng, "bogus")


def test_trials_deterministic(gk3):
    a = run_trials(gk3, 30, seed=8)
    b = run_trials(gk3, 30, seed=8)
    assert a == b


def test_witness_generic_dispatch(hyper22):
    w = witness(hyper22, [2] * hyper22.n)
    assert w.where == "hyperedge"


# ---- positive coloring results ---------------------------------------------------

def test_two_common_single_edge():
    g = Graph(2, ((0, 1),))
    la = ListAssignment((frozenset({1, 2}), frozenset({1, 2})))
    assert two_common_color(g, la) == (2, 1)


def _random_bipartite(rng, n, p):
    left = set(rng.sample(range(n), n // 2))
    edges = tuple(
        (u, v) for u, v in itertools.combinations(range(n), 2)
        if (u in left) != (v in left) and rng.random() < p
    )
    return Graph(n, edges)


def test_two_common_random():
    rng = random.Random(17)
    for _ in range(1000):
        g = _random_bipartite(rng, 20, 0.3)
        core = [frozenset(rng.sample(range(1, 6), 2)) for _ in range(1)]
        lists = [core[0] | frozenset(rng.sample(range(1, 9), rng.randint(0, 3))) for _ in range(g.n)]
        f = two_common_color(g, ListAssignment(tuple(lists)))
        assert check_proper(g, f) is None
        assert all(f[v] in lists[v] for v in range(g.n))


def test_two_common_rejects_single_shared_color():
    g = Graph(2, ((0, 1),))
    la = ListAssignment((frozenset({1, 2}), frozenset({2, 3})))
    with pytest.raises(ValueError, match="share fewer than 2"):
        two_common_color(g, la)


def test_smallcup_bound_values():
    assert smallcup_bound(2, 3) == 4
    assert smallcup_bound(2, 2) == 2
    assert smallcup_bound(3, 3) == 3
    with pytest.raises(ValueError):
        smallcup_bound(4, 3)


def test_smallcup_random_j2_k3():
    rng = random.Random(23)
    for _ in range(1000):
        g = _random_bipartite(rng, rng.randint(2, 14), rng.random())
        a, _ = bipartition(g)
        f = [1 if v in a else 2 for v in range(g.n)]
        lists = [frozenset(rng.sample(range(1, 5), 3)) for _ in range(g.n)]
        out = smallcup_color(g, f, ListAssignment(tuple(lists)), j=2)
        assert check_proper(g, out) is None
        assert all(out[v] in lists[v] for v in range(g.n))


def test_smallcup_j_equals_k_uses_f():
    g = Graph(3, ((0, 1), (1, 2), (0, 2)))
    lists = ListAssignment(tuple(frozenset({4, 5, 6}) for _ in range(3)))
    assert smallcup_color(g, [1, 2, 3], lists) == (4, 5, 6)


def test_smallcup_rejects_large_union_and_improper_f():
    g = Graph(2, ((0, 1),))
    big = ListAssignment((frozenset({1, 2, 3}), frozenset({3, 4, 5})))
    with pytest.raises(ValueError, match="bound"):
        smallcup_color(g, [1, 2], big, j=2)
    ok = ListAssignment((frozenset({1, 2, 3}), frozenset({2, 3, 4})))
    with pytest.raises(ValueError, match="not proper"):
        smallcup_color(g, [1, 1], ok, j=2)


def test_smallcup_sharp_2_2_exhaustive():
    g, la = smallcup_sharp(2, 2)
    assert g.n == 6 and len(g.edges) == 9
    colorable = any(
        check_proper(g, f) is None
        for f in itertools.product(*[sorted(x) for x in la.lists])
    )
    assert not colorable
    assert list_color_search(g, la).status == UNSAT


def test_smallcup_sharp_2_3_unsat():
    g, la = smallcup_sharp(2, 3)
    assert g.n == 20 and la.universe == set(range(1, 6))
    assert list_color_search(g, la).status == UNSAT


def test_smallcup_sharp_every_color_in_every_part():
    g, la = smallcup_sharp(3, 3)
    per = g.n // 3
    for p in range(3):
        part = set().union(*la.lists[p * per:(p + 1) * per])
        assert part == la.universe
