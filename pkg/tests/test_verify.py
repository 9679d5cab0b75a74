import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from oracles import brute_colorable, brute_girth, brute_hypergraph_girth, brute_mad, random_graph

from augtree.construct import build_base, plan_and_build
from augtree.gadgets import build_G2
from augtree.structures import Graph, Hypergraph, ListAssignment, Orientation, flatten
from augtree.verify import (
    INCONCLUSIVE,
    SAT,
    UNSAT,
    check_orientation,
    check_proper,
    densest_subgraph,
    forced_cycle_girth_cap,
    girth,
    height_bound_seq,
    hypergraph_girth,
    kq_reaches,
    list_color_search,
    mad_exact,
)


def cycle(n, offset=0):
    return [(offset + i, offset + (i + 1) % n) for i in range(n)]


def two_c4_sharing_vertex():
    # vertex 0 shared; 0-1-2-3-0 and 0-4-5-6-0
    return Graph(7, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (4, 5), (5, 6), (0, 6)))


def _valid_cycle(g, cyc):
    k = len(cyc)
    return len(set(cyc)) == k and all(g.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k))


# ---- girth ------------------------------------------------------------------

def test_girth_of_tree_is_infinite():
    r = girth(Graph(4, ((0, 1), (1, 2), (1, 3))))
    assert r.length == math.inf and r.cycle is None


def test_girth_two_squares():
    r = girth(two_c4_sharing_vertex())
    assert r.length == 4 and _valid_cycle(two_c4_sharing_vertex(), r.cycle)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 9])
def test_girth_of_cycle(n):
    g = Graph(n, tuple((min(u, v), max(u, v)) for u, v in cycle(n)))
    r = girth(g)
    assert r.length == n and _valid_cycle(g, r.cycle)


def test_girth_matches_enumeration():
    rng = random.Random(11)
    for _ in range(200):
        n, edges = random_graph(rng, 8)
        g = Graph(n, tuple(edges))
        r = girth(g)
        assert r.length == brute_girth(n, edges)
        if r.cycle is not None:
            assert len(r.cycle) == r.length and _valid_cycle(g, r.cycle)


def test_girth_on_expanded_tree():
    _, t = plan_and_build(2, 1, 6)
    assert girth(flatten(t)).length >= 6


def test_girth_petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in outer + spokes + inner))
    assert girth(Graph(10, edges)).length == 5


# ---- hypergraph girth -----------------------------------------------------------

def test_hypergraph_girth_small_cases():
    assert hypergraph_girth(Hypergraph(4, ((0, 1, 2), (1, 2, 3)), 3)) == 2
    assert hypergraph_girth(Hypergraph(6, ((0, 1, 2), (3, 4, 5)), 3)) == math.inf
    tri = Hypergraph(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0)), 3)
    assert hypergraph_girth(tri) == 3


def test_hypergraph_girth_matches_enumeration():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(3, 7)
        m = rng.randint(1, 5)
        hedges = tuple(tuple(sorted(rng.sample(range(n), 3))) for _ in range(m))
        h = Hypergraph(n, hedges, 3)
        assert hypergraph_girth(h) == brute_hypergraph_girth(n, hedges)


def test_hypergraph_girth_half_incidence(hyper22):
    h = hyper22.hypergraph
    inc = girth(h.incidence_graph()).length
    assert hypergraph_girth(h) == inc / 2 >= 2


# ---- mad -------------------------------------------------------------------------

def test_mad_examples():
    assert mad_exact(Graph(5, tuple(sorted((min(u, v), max(u, v)) for u, v in cycle(5))))) == 2
    assert mad_exact(two_c4_sharing_vertex()) == Fraction(16, 7)
    assert mad_exact(Graph(4, tuple(combinations(range(4), 2)))) == 3
    assert mad_exact(Graph(3, ())) == 0


def test_mad_matches_subset_enumeration():
    rng = random.Random(7)
    for _ in range(200):
        n, edges = random_graph(rng, 8)
        assert mad_exact(Graph(n, tuple(edges))) == brute_mad(n, edges)


def test_densest_subgraph_attains_mad():
    rng = random.Random(9)
    for _ in range(50):
        n, edges = random_graph(rng, 8)
        res = densest_subgraph(Graph(n, tuple(edges)))
        inside = set(res.vertices)
        e = sum(1 for u, v in edges if u in inside and v in inside)
        assert inside and Fraction(2 * e, len(inside)) == res.mad


def test_mad_is_rational():
    assert isinstance(mad_exact(two_c4_sharing_vertex()), Fraction)


# ---- orientation ---------------------------------------------------------------

def test_orientation_g2_ok_and_wrong_k():
    b = build_G2(4)
    assert check_orientation(b.graph, b.orientation, 2).ok
    rep = check_orientation(b.graph, b.orientation, 3)
    assert not rep.ok and rep.vertex == b.orientation.root


def test_orientation_flip_detected():
    b = build_G2(4)
    arcs = list(b.orientation.arcs)
    u, v = arcs[0]
    arcs[0] = (v, u)
    rep = check_orientation(b.graph, Orientation(tuple(arcs), b.orientation.root), 2)
    assert not rep.ok and rep.vertex is not None


def test_orientation_unreachable_detected():
    # two disjoint directed triangles, outdegree 1 everywhere but root
    g = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    o = Orientation(((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)), 0)
    rep = check_orientation(g, o, 1)
    assert not rep.ok


# ---- list coloring -----------------------------------------------------------------

def test_even_cycle_two_lists_sat():
    g = Graph(6, tuple(sorted((min(u, v), max(u, v)) for u, v in cycle(6))))
    la = ListAssignment(tuple(frozenset({1, 2}) for _ in range(6)))
    res = list_color_search(g, la)
    assert res.status == SAT and check_proper(g, res.coloring) is None


def test_odd_cycle_two_lists_unsat():
    g = Graph(5, tuple(sorted((min(u, v), max(u, v)) for u, v in cycle(5))))
    la = ListAssignment(tuple(frozenset({1, 2}) for _ in range(5)))
    assert list_color_search(g, la).status == UNSAT


def test_g2_lists_unsat():
    b = build_G2(4)
    assert list_color_search(b.graph, b.lists).status == UNSAT


def test_search_budget_gives_inconclusive():
    g = Graph(4, tuple(combinations(range(4), 2)))
    la = ListAssignment(tuple(frozenset({1, 2, 3}) for _ in range(4)))
    assert list_color_search(g, la, node_budget=5).status == INCONCLUSIVE
    assert list_color_search(g, la).status == UNSAT


def test_search_matches_enumeration():
    rng = random.Random(13)
    for _ in range(150):
        n, edges = random_graph(rng, 7)
        lists = [frozenset(rng.sample(range(1, 5), rng.randint(1, 3))) for _ in range(n)]
        res = list_color_search(Graph(n, tuple(edges)), ListAssignment(tuple(lists)))
        assert (res.status == SAT) == brute_colorable(n, edges, lists)
        if res.status == SAT:
            assert all(res.coloring[v] in lists[v] for v in range(n))


def test_check_proper():
    g = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
    assert check_proper(g, [1, 2, 1, 2]) is None
    assert check_proper(g, [5, 5, 5, 5]) == (0, 1)
    h = Hypergraph(4, ((0, 1, 2), (1, 2, 3)), 3)
    assert check_proper(h, [1, 1, 2, 2]) is None
    assert check_proper(h, [1, 2, 2, 2]) == (1, 2, 3)
    with pytest.raises(ValueError):
        check_proper(g, [1, None, 1, 2])
    with pytest.raises(ValueError):
        check_proper(g, [1, 2])


# ---- height sequence and cap ------------------------------------------------------

def test_sequence_g8():
    s = height_bound_seq(8)
    assert (s.q, s.k) == (1, (7, 19))


def test_sequence_g12():
    s = height_bound_seq(12)
    # k0 = 11, k1 = 2^((11-6+4)/2) rounded up + 11 = 23 + 11 = 34
    assert s.q == 2
    assert s.k[:2] == (11, 34)
    assert s.k[2] == 34 + 2 ** 16


def test_sequence_increasing_and_length():
    for g in (8, 10, 12):
        s = height_bound_seq(g)
        assert len(s.k) == s.q + 1
        assert all(a < b for a, b in zip(s.k, s.k[1:]))


def test_sequence_overflow_guard():
    # g=14: the third term already needs about 2^16 * 2^15 bits
    with pytest.raises(OverflowError):
        height_bound_seq(14)
    assert kq_reaches(14, 10**100)


def test_sequence_domain():
    for g in (4, 6, 9):
        with pytest.raises(ValueError):
            height_bound_seq(g)


def test_cap_examples():
    assert forced_cycle_girth_cap(1) == 8
    assert forced_cycle_girth_cap(19) == 8
    assert forced_cycle_girth_cap(20) == 10
    with pytest.raises(ValueError):
        forced_cycle_girth_cap(0)


def test_kq_reaches_agrees_with_sequence():
    for g in (8, 10, 12):
        kq = height_bound_seq(g).k[-1]
        assert kq_reaches(g, kq) and not kq_reaches(g, kq + 1)


def test_cap_monotone_sampled():
    prev = 0
    for m in list(range(1, 5000)) + [10**5, 10**6, 10**9, 10**30]:
        cap = forced_cycle_girth_cap(m)
        assert cap >= prev
        prev = cap


def test_constructed_trees_do_not_contradict_cap():
    trees = [build_base(2, 1)]
    trees.append(plan_and_build(2, 1, 6)[1])
    for t in trees:
        measured = girth(flatten(t)).length
        assert measured <= max(t.girth_target, forced_cycle_girth_cap(t.height))
