"""``augtree`` command line: construct, verify and witness instance files.

Exit codes: 0 success, 1 a check or trial failed, 2 bad parameters or
unreadable input, 3 plan computed but too large to build.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import construct as C
from . import gadgets as G
from .coloring import smallcup_bound, smallcup_sharp
from .instance import (
    Instance,
    InstanceError,
    export_dimacs,
    export_edgelist,
    from_bundle,
    from_graph,
    from_tree,
    parse,
    serialize,
)
from .structures import NotBipartite, bipartition
from .verify import (
    INCONCLUSIVE,
    SAT,
    UNSAT,
    check_orientation,
    densest_subgraph,
    girth,
    hypergraph_girth,
    list_color_search,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PLAN_ONLY = 0, 1, 2, 3
CHECKS = ("girth", "bipartite", "mad", "orientation", "lists-unsat", "lists-cap", "union-size", "edge-count")
GADGET_KINDS = ("hypergraph", "jk", "gk", "listcap", "hk")
BIG_BITS = 4096  # larger integers go into metadata as a bit length only


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- construct


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for '{args.what}'")


def _parse_splits(text: str) -> list[tuple[int, int]]:
    try:
        return [tuple(int(x) for x in part.split(":")) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"--splits wants 'count:offset,...', got {text!r}") from None


def _tree_meta(t, expect_bipartite: bool | None, girth_min: int) -> dict:
    expect = {"girth_min": girth_min, "edge_count": t.vertex_count - 1 + len(t.aug_edges)}
    if expect_bipartite is not None:
        expect["bipartite"] = expect_bipartite
    return {
        "height": t.height,
        "vertices": t.vertex_count,
        "leaves": len(t.leaves),
        "aug_edges": len(t.aug_edges),
        "reduced": t.reduced,
        "d": t.d,
        "r": t.r,
        "girth_target": t.girth_target,
        "expect": expect,
    }


def _big(value: int | None, key: str, meta: dict) -> None:
    if value is None:
        return
    if value.bit_length() <= BIG_BITS:
        meta[key] = str(value)
    else:
        meta[key + "_bits"] = value.bit_length()


def build_gadget(kind: str, params: dict, budget: int | None) -> G.GadgetBundle:
    """Rebuild a gadget bundle from its recorded parameters."""
    k, g = params.get("k"), params.get("g", 4)
    if kind == "hypergraph":
        return G.build_hypergraph(params["t"], k, node_budget=budget)
    if kind == "jk":
        return G.build_Jk(k, g, node_budget=budget)
    if kind == "gk":
        return G.build_Gk(k, g, node_budget=budget)
    if kind == "listcap":
        return G.build_listcap(k, g, node_budget=budget)
    if kind == "hk":
        return G.build_Hk_smallunion(k, g, node_budget=budget)
    raise UsageError(f"unknown gadget kind {kind!r}")


def gadget_meta(b: G.GadgetBundle) -> dict:
    k = b.k
    meta = {"k": k, "g": b.g, "depth": b.depth, "vertices": b.n}
    if b.skeleton is not None:
        meta["tree_height"] = b.skeleton.height
        meta["copies"] = len(b.copies)
    expect: dict = {}
    if b.kind == "hypergraph":
        h = b.hypergraph
        meta.update(t=b.t, edges=len(h.edges))
        expect["edge_count"] = (k - 1) * h.n + 1
        expect["girth_min"] = 2
        if b.t == 2:
            expect["bipartite"] = False
    else:
        meta["edges"] = len(b.graph.edges)
        expect["girth_min"] = b.g
    if b.kind == "jk":
        expect["mad_max"] = str(2 * (k - 1))
        expect["bipartite"] = False
        expect["edge_count"] = len(b.graph.edges)
    if b.kind in ("gk", "listcap", "hk"):
        expect["edge_count"] = (k - 1) * b.n + 1
        expect["mad_proper_max"] = str(2 * (k - 1))
        expect["orientation_k"] = k
        expect["lists_unsat"] = True
        if b.kind != "hk" or k == 2:
            expect["bipartite"] = True
    if b.kind == "listcap":
        expect["lists_cap"] = 1
    if b.kind == "hk":
        expect["union_size"] = 2 * k - 1
    meta["expect"] = expect
    return meta


def cmd_construct(args) -> int:
    what = args.what
    budget = args.budget
    seed = args.seed
    if what == "plan":
        _need(args, "d", "r", "g")
        res = C.plan_and_build(args.d, args.r, args.g, budget)
        plan = res.plan if isinstance(res, C.PlanOnly) else res[0]
        meta = {
            "steps": [s.kind for s in plan.steps],
            "built": not isinstance(res, C.PlanOnly),
        }
        _big(plan.height_bound, "height_bound", meta)
        _big(plan.node_bound, "node_bound", meta)
        _big(plan.work_bound, "work_bound", meta)
        params = {"d": args.d, "r": args.r, "g": args.g, "budget": budget}
        if isinstance(res, C.PlanOnly):
            _emit(args, Instance("plan", params, seed, meta, 0))
            return EXIT_PLAN_ONLY
        tree = res[1]
        meta.update(_tree_meta(tree, True, args.g))
        _emit(args, from_tree(tree, "plan", params, seed=seed, meta=meta))
        return EXIT_OK
    if what in ("base", "reduce"):
        _need(args, "d", "r")
        t = C.build_base(args.d, args.r, node_budget=budget)
        if what == "reduce":
            t = C.reduce(t)
        meta = _tree_meta(t, True, 4)
        meta["height_bound"] = str(C.height_bound(args.d, args.r, 4))
        return _emit(args, from_tree(t, what, {"d": args.d, "r": args.r}, seed=seed, meta=meta))
    if what == "expand":
        _need(args, "d")
        t = C.expand_girth(C.build_base(args.d, args.d**2, node_budget=budget), node_budget=budget)
        meta = _tree_meta(t, True, 6)
        meta["height_bound"] = str(C.height_bound(args.d, 1, 6))
        return _emit(args, from_tree(t, what, {"d": args.d}, seed=seed, meta=meta))
    if what == "compose":
        _need(args, "d", "r")
        g1 = C.build_base(args.d, 1, node_budget=budget)
        g2 = C.build_base(args.d ** g1.height, args.r, node_budget=budget)
        t = C.compose(g1, g2, node_budget=budget)
        meta = _tree_meta(t, True, 4)
        return _emit(args, from_tree(t, what, {"d": args.d, "r": args.r}, seed=seed, meta=meta))
    if what == "aligned":
        _need(args, "d", "r", "splits")
        splits = _parse_splits(args.splits)
        bip = not args.nonbipartite
        t = C.build_reduced_color_aligned(
            args.d, args.r, splits, height=args.height, aligned=not args.unaligned,
            bipartite=bip, node_budget=budget,
        )
        odd_only = bip and all(o == 0 for _, o in splits)
        meta = _tree_meta(t, odd_only, t.girth_target)
        params = {"d": args.d, "r": args.r, "splits": args.splits,
                  "aligned": not args.unaligned, "bipartite": bip}
        return _emit(args, from_tree(t, what, params, seed=seed, meta=meta))
    if what == "smallcup-sharp":
        _need(args, "j", "k")
        graph, lists = smallcup_sharp(args.j, args.k)
        meta = {"vertices": graph.n, "edges": len(graph.edges),
                "expect": {"lists_unsat": True, "union_size": smallcup_bound(args.j, args.k) + 1,
                           "edge_count": len(graph.edges)}}
        inst = from_graph(graph, lists, what, {"j": args.j, "k": args.k}, seed=seed, meta=meta)
        return _emit(args, inst)
    # gadgets
    if what == "hypergraph":
        _need(args, "t", "k")
        params = {"t": args.t, "k": args.k}
    else:
        _need(args, "k")
        params = {"k": args.k, "g": args.g if args.g is not None else 4}
    b = build_gadget(what, params, budget)
    return _emit(args, from_bundle(b, what, params, seed=seed, meta=gadget_meta(b)))


def _emit(args, inst: Instance) -> int:
    if args.export == "edgelist":
        text = export_edgelist(inst)
    elif args.export == "dimacs":
        text = export_dimacs(inst)
    else:
        text = serialize(inst)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- verify


def _load(path: str) -> Instance:
    try:
        with open(path) as fh:
            return parse(fh.read())
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from None


def _mad_proper(graph, k: int) -> tuple[str, str]:
    """Largest average degree over proper subgraphs, against 2(k-1)."""
    limit = Fraction(2 * (k - 1))
    n, m = graph.n, len(graph.edges)
    dense = densest_subgraph(graph)
    whole = Fraction(2 * m, n)
    if dense.mad > whole:
        return "FAIL", f"proper subgraph with average degree {dense.mad} > {whole}"
    if m == (k - 1) * n + 1:
        # G itself is densest, so removing anything leaves at most (k-1)|V(H)| edges
        return "PASS", f"mad {dense.mad} attained by the whole graph, proper subgraphs <= {limit}"
    if m <= 200:
        worst = max(densest_subgraph(graph.without_edge(e)).mad for e in graph.edges)
        return ("PASS" if worst <= limit else "FAIL"), f"max over single-edge deletions {worst} vs <= {limit}"
    return INCONCLUSIVE, "graph too large for per-edge deletion"


def run_check(name: str, inst: Instance, budget: int) -> tuple[str, str]:
    expect = inst.meta.get("expect", {})
    hyper = inst.is_hypergraph
    if name == "girth":
        if "girth_min" not in expect:
            return "SKIP", "no expectation"
        val = hypergraph_girth(inst.hypergraph()) if hyper else girth(inst.graph()).length
        return ("PASS" if val >= expect["girth_min"] else "FAIL"), f"girth {val} vs >= {expect['girth_min']}"
    if name == "bipartite":
        if "bipartite" not in expect:
            return "SKIP", "no expectation"
        try:
            bipartition(inst.graph())
            val, note = True, ""
        except NotBipartite as exc:
            val, note = False, f" (odd cycle of length {len(exc.cycle)})"
        return ("PASS" if val == expect["bipartite"] else "FAIL"), f"bipartite {val}{note} vs {expect['bipartite']}"
    if name == "edge-count":
        if "edge_count" not in expect:
            return "SKIP", "no expectation"
        m = len(inst.hyperedges) if hyper else len(inst.graph().edges)
        return ("PASS" if m == expect["edge_count"] else "FAIL"), f"edges {m} vs {expect['edge_count']}"
    if name == "mad":
        graph = inst.graph()
        if "mad_max" in expect:
            val = densest_subgraph(graph).mad
            lim = Fraction(expect["mad_max"])
            return ("PASS" if val <= lim else "FAIL"), f"mad {val} vs <= {lim}"
        if "mad_proper_max" in expect:
            k = int(Fraction(expect["mad_proper_max"])) // 2 + 1
            return _mad_proper(graph, k)
        return "SKIP", "no expectation"
    if name == "orientation":
        if "orientation_k" not in expect or inst.root is None:
            return "SKIP", "no orientation expected"
        rep = check_orientation(inst.graph(), inst.orientation(), expect["orientation_k"])
        return ("PASS" if rep.ok else "FAIL"), rep.message
    lists = inst.list_assignment()
    if name == "lists-unsat":
        if not expect.get("lists_unsat") or lists is None:
            return "SKIP", "no lists to refute"
        res = list_color_search(inst.graph(), lists, budget)
        status = {UNSAT: "PASS", SAT: "FAIL", INCONCLUSIVE: INCONCLUSIVE}[res.status]
        return status, f"search {res.status} after {res.nodes} nodes"
    if name == "lists-cap":
        if "lists_cap" not in expect or lists is None:
            return "SKIP", "no expectation"
        sizes = {len(lists[u] & lists[v]) for u, v in inst.graph().edges}
        ok = sizes == {expect["lists_cap"]}
        return ("PASS" if ok else "FAIL"), f"adjacent intersections {sorted(sizes)} vs {expect['lists_cap']}"
    if name == "union-size":
        if "union_size" not in expect or lists is None:
            return "SKIP", "no expectation"
        u = len(lists.universe)
        return ("PASS" if u == expect["union_size"] else "FAIL"), f"union {u} vs {expect['union_size']}"
    raise UsageError(f"unknown check {name!r}")


def cmd_verify(args) -> int:
    inst = _load(args.file)
    if args.checks:
        names = [c for part in args.checks for c in part.split(",") if c]
        bad = [c for c in names if c not in CHECKS]
        if bad:
            raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    else:
        names = [c for c in CHECKS if run_check_applicable(c, inst)]
    all_pass = True
    for name in names:
        status, detail = run_check(name, inst, args.budget)
        print(f"{name:<12} {status:<12} {detail}")
        all_pass &= status == "PASS"
    return EXIT_OK if all_pass else EXIT_FAIL


def run_check_applicable(name: str, inst: Instance) -> bool:
    expect = inst.meta.get("expect", {})
    key = {
        "girth": "girth_min",
        "bipartite": "bipartite",
        "orientation": "orientation_k",
        "lists-unsat": "lists_unsat",
        "lists-cap": "lists_cap",
        "union-size": "union_size",
        "edge-count": "edge_count",
    }.get(name)
    if name == "mad":
        return "mad_max" in expect or "mad_proper_max" in expect
    return key in expect


# ---------------------------------------------------------------- witness


def cmd_witness(args) -> int:
    inst = _load(args.file)
    if not inst.provenance:
        print("instance has no provenance section; witnesses need the construction skeleton", file=sys.stderr)
        return EXIT_USAGE
    if inst.construction not in GADGET_KINDS:
        print(f"no witness for construction {inst.construction!r}", file=sys.stderr)
        return EXIT_USAGE
    bundle = build_gadget(inst.construction, inst.params, args.budget)
    rebuilt = from_bundle(bundle, inst.construction, inst.params, seed=inst.seed, meta=inst.meta)
    if rebuilt != inst:
        print("file does not match the construction its header names", file=sys.stderr)
        return EXIT_USAGE
    report = G.run_trials(bundle, args.trials, args.seed)
    print(f"trials {report.trials}")
    print(f"failures {report.failures}")
    if report.sample is not None:
        w = report.sample
        print(f"sample {w.where} edge {' '.join(map(str, w.edge))} depth {w.depth}")
    if report.by_where:
        print("found " + " ".join(f"{k}={v}" for k, v in sorted(report.by_where.items())))
    return EXIT_OK if report.failures == 0 else EXIT_FAIL


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="augtree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an instance and write it out")
    c.add_argument("what", choices=["base", "expand", "compose", "plan", "reduce", "aligned",
                                     "hypergraph", "jk", "gk", "listcap", "hk", "smallcup-sharp"])
    for flag in ("d", "r", "g", "k", "t", "j", "height"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--splits", help="aligned groups as count:offset pairs, e.g. 2:0,4:1")
    c.add_argument("--unaligned", action="store_true", help="aligned: skip color alignment")
    c.add_argument("--nonbipartite", action="store_true", help="aligned: ignore distance parity")
    c.add_argument("--budget", type=int, default=C.DEFAULT_NODE_BUDGET)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--output")
    c.add_argument("--export", choices=["instance", "edgelist", "dimacs"], default="instance")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the properties an instance claims")
    v.add_argument("file")
    v.add_argument("--checks", nargs="*", help=f"subset of: {', '.join(CHECKS)}")
    v.add_argument("--budget", type=int, default=10**6, help="list-coloring search nodes")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="run seeded random colorings through the violation witness")
    w.add_argument("file")
    w.add_argument("--trials", type=int, default=1000)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--budget", type=int, default=C.DEFAULT_NODE_BUDGET)
    w.set_defaults(func=cmd_witness)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
