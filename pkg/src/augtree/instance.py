"""Line-based instance files: a header, optional sections, canonical order.

::

    augtree-instance 1
    construction gk
    params {"g": 4, "k": 2}
    seed 0
    meta {...}
    vertices 7
    section edges
    0 1 gadget
    ...
    end

Sections (each optional): ``tree`` (parent child color), ``aug`` (leaf
ancestor), ``edges`` (u v tag), ``lists`` (v: c1 c2 ...), ``orientation``
(``root r`` then tail head), ``hyperedges`` (leaf: x1 ... xt) and
``provenance`` (v tree x | v copy leaf w).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .gadgets import GadgetBundle
from .structures import (
    AugmentedTree,
    Graph,
    Hypergraph,
    ListAssignment,
    Orientation,
    flatten,
)

__all__ = [
    "FORMAT_VERSION",
    "Instance",
    "InstanceError",
    "from_tree",
    "from_bundle",
    "from_graph",
    "serialize",
    "parse",
    "export_edgelist",
    "export_dimacs",
]

FORMAT_VERSION = 1
MAGIC = "augtree-instance"
SECTIONS = ("tree", "aug", "edges", "lists", "orientation", "hyperedges", "provenance")


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    construction: str
    params: dict
    seed: int
    meta: dict
    n: int
    tree: tuple[tuple[int, int, int], ...] = ()
    aug: tuple[tuple[int, int], ...] = ()
    edges: tuple[tuple[int, int, str], ...] = ()
    lists: tuple[tuple[int, ...], ...] = ()
    root: int | None = None
    arcs: tuple[tuple[int, int], ...] = ()
    hyperedges: tuple[tuple[int, tuple[int, ...]], ...] = ()
    provenance: tuple[tuple, ...] = ()

    @property
    def is_hypergraph(self) -> bool:
        return bool(self.hyperedges)

    def graph(self) -> Graph:
        """The simple graph (for hypergraphs: the 2-uniform underlying graph)."""
        if self.edges:
            return Graph(self.n, tuple((u, v) for u, v, _ in self.edges),
                         tuple(t for _, _, t in self.edges))
        if self.tree or self.aug:
            pairs = [(p, c) for p, c, _ in self.tree] + [(a, l) for l, a in self.aug]
            return Graph(self.n, tuple(pairs))
        if self.hyperedges:
            return self.hypergraph().to_graph()
        return Graph(self.n, ())

    def hypergraph(self) -> Hypergraph:
        if not self.hyperedges:
            raise InstanceError("instance has no hyperedges")
        t = len(self.hyperedges[0][1])
        return Hypergraph(self.n, tuple(e for _, e in self.hyperedges), t,
                          tuple(leaf for leaf, _ in self.hyperedges))

    def list_assignment(self) -> ListAssignment | None:
        return ListAssignment(tuple(frozenset(x) for x in self.lists)) if self.lists else None

    def orientation(self) -> Orientation | None:
        return Orientation(self.arcs, self.root) if self.root is not None else None


def _canon_edges(g: Graph) -> tuple[tuple[int, int, str], ...]:
    tags = g.tags or ("",) * len(g.edges)
    return tuple(sorted((u, v, t) for (u, v), t in zip(g.edges, tags)))


def from_tree(t: AugmentedTree, construction: str, params: dict, *, seed: int = 0, meta: dict | None = None) -> Instance:
    flatten(t)  # validates
    return Instance(
        construction=construction,
        params=dict(params),
        seed=seed,
        meta=dict(meta or {}),
        n=t.vertex_count,
        tree=tuple((t.parent[v], v, t.color[v]) for v in range(1, t.vertex_count)),
        aug=tuple(sorted(t.aug_edges)),
    )


def from_graph(g: Graph, lists: ListAssignment | None, construction: str, params: dict,
               *, seed: int = 0, meta: dict | None = None) -> Instance:
    return Instance(
        construction=construction,
        params=dict(params),
        seed=seed,
        meta=dict(meta or {}),
        n=g.n,
        edges=_canon_edges(g),
        lists=tuple(tuple(sorted(x)) for x in lists.lists) if lists else (),
    )


def from_bundle(b: GadgetBundle, construction: str, params: dict, *, seed: int = 0, meta: dict | None = None) -> Instance:
    prov = tuple((v,) + o for v, o in enumerate(b.origins))
    if b.hypergraph is not None:
        h = b.hypergraph
        return Instance(
            construction=construction, params=dict(params), seed=seed, meta=dict(meta or {}),
            n=h.n,
            hyperedges=tuple(sorted(zip(h.provenance, h.edges))),
            provenance=prov,
        )
    o = b.orientation
    return Instance(
        construction=construction,
        params=dict(params),
        seed=seed,
        meta=dict(meta or {}),
        n=b.graph.n,
        edges=_canon_edges(b.graph),
        lists=tuple(tuple(sorted(x)) for x in b.lists.lists) if b.lists else (),
        root=o.root if o else None,
        arcs=tuple(sorted(o.arcs)) if o else (),
        provenance=prov,
    )


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def serialize(x: Instance) -> str:
    out = [
        f"{MAGIC} {FORMAT_VERSION}",
        f"construction {x.construction}",
        f"params {_dumps(x.params)}",
        f"seed {x.seed}",
        f"meta {_dumps(x.meta)}",
        f"vertices {x.n}",
    ]
    if x.tree:
        out.append("section tree")
        out.extend(f"{p} {c} {col}" for p, c, col in x.tree)
    if x.aug:
        out.append("section aug")
        out.extend(f"{l} {a}" for l, a in x.aug)
    if x.edges:
        out.append("section edges")
        out.extend(f"{u} {v} {t}".rstrip() for u, v, t in x.edges)
    if x.lists:
        out.append("section lists")
        out.extend(f"{v}: " + " ".join(map(str, cs)) for v, cs in enumerate(x.lists))
    if x.root is not None:
        out.append("section orientation")
        out.append(f"root {x.root}")
        out.extend(f"{a} {b}" for a, b in x.arcs)
    if x.hyperedges:
        out.append("section hyperedges")
        out.extend(f"{leaf}: " + " ".join(map(str, e)) for leaf, e in x.hyperedges)
    if x.provenance:
        out.append("section provenance")
        out.extend(" ".join(map(str, p)) for p in x.provenance)
    out.append("end")
    return "\n".join(out) + "\n"


def _ints(parts: list[str], lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise InstanceError(f"line {lineno}: expected integers, got {' '.join(parts)!r}") from None


def parse(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or lines[0].split() != [MAGIC, str(FORMAT_VERSION)]:
        raise InstanceError(f"line 1: expected '{MAGIC} {FORMAT_VERSION}'")
    header = {}
    i = 1
    for key in ("construction", "params", "seed", "meta", "vertices"):
        if i >= len(lines):
            raise InstanceError(f"missing header line '{key}'")
        word, _, rest = lines[i].partition(" ")
        if word != key:
            raise InstanceError(f"line {i + 1}: expected '{key}', got {word!r}")
        header[key] = rest
        i += 1
    try:
        params = json.loads(header["params"])
        meta = json.loads(header["meta"])
        seed = int(header["seed"])
        n = int(header["vertices"])
    except (ValueError, json.JSONDecodeError) as exc:
        raise InstanceError(f"bad header: {exc}") from None
    body: dict[str, list] = {s: [] for s in SECTIONS}
    root = None
    current = None
    ended = False
    for j in range(i, len(lines)):
        line = lines[j].strip()
        lineno = j + 1
        if not line:
            continue
        if ended:
            raise InstanceError(f"line {lineno}: content after 'end'")
        if line == "end":
            ended = True
            continue
        if line.startswith("section "):
            current = line.split(None, 1)[1]
            if current not in SECTIONS:
                raise InstanceError(f"line {lineno}: unknown section {current!r}")
            continue
        if current is None:
            raise InstanceError(f"line {lineno}: data outside a section")
        parts = line.split()
        if current in ("tree", "aug", "edges") or (current == "orientation" and parts[0] != "root"):
            want = {"tree": 3, "aug": 2, "orientation": 2}.get(current)
            if current == "edges":
                if len(parts) not in (2, 3):
                    raise InstanceError(f"line {lineno}: edge needs 'u v [tag]'")
                u, v = _ints(parts[:2], lineno)
                body["edges"].append((u, v, parts[2] if len(parts) == 3 else ""))
                continue
            if len(parts) != want:
                raise InstanceError(f"line {lineno}: {current} line needs {want} integers")
            body[current].append(_ints(parts, lineno))
        elif current == "orientation":
            if len(parts) != 2:
                raise InstanceError(f"line {lineno}: expected 'root r'")
            root = _ints(parts[1:], lineno)[0]
        elif current in ("lists", "hyperedges"):
            head, sep, rest = line.partition(":")
            if not sep:
                raise InstanceError(f"line {lineno}: expected 'id: values'")
            key = _ints([head], lineno)[0]
            vals = _ints(rest.split(), lineno)
            if current == "lists":
                if key != len(body["lists"]):
                    raise InstanceError(f"line {lineno}: lists must be listed in vertex order")
                body["lists"].append(vals)
            else:
                body["hyperedges"].append((key, vals))
        else:  # provenance
            if len(parts) < 2:
                raise InstanceError(f"line {lineno}: bad provenance line")
            v = _ints(parts[:1], lineno)[0]
            body["provenance"].append((v, parts[1]) + _ints(parts[2:], lineno))
    if not ended:
        raise InstanceError("missing 'end' line")
    for p, c, *_ in body["tree"]:
        _range(n, p, c)
    for u, v, _ in body["edges"]:
        _range(n, u, v)
    for a, b in body["aug"] + body["orientation"]:
        _range(n, a, b)
    for _, e in body["hyperedges"]:
        _range(n, *e)
    if body["lists"] and len(body["lists"]) != n:
        raise InstanceError(f"{len(body['lists'])} lists for {n} vertices")
    return Instance(
        construction=header["construction"],
        params=params,
        seed=seed,
        meta=meta,
        n=n,
        tree=tuple(body["tree"]),
        aug=tuple(body["aug"]),
        edges=tuple(body["edges"]),
        lists=tuple(body["lists"]),
        root=root,
        arcs=tuple(body["orientation"]),
        hyperedges=tuple(body["hyperedges"]),
        provenance=tuple(body["provenance"]),
    )


def _range(n: int, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < n:
            raise InstanceError(f"vertex {v} outside range 0..{n - 1}")


def export_edgelist(x: Instance) -> str:
    if x.is_hypergraph:
        rows = [" ".join(map(str, e)) for _, e in x.hyperedges]
        return f"# {x.n} {len(rows)}\n" + "".join(r + "\n" for r in rows)
    g = x.graph()
    return f"# {g.n} {len(g.edges)}\n" + "".join(f"{u} {v}\n" for u, v in g.edges)


def export_dimacs(x: Instance) -> str:
    """DIMACS edge format (1-based); lists ride along as ``l v c1 c2 ...`` lines."""
    if x.is_hypergraph:
        rows = [" ".join(str(v + 1) for v in e) for _, e in x.hyperedges]
        out = [f"p hyperedge {x.n} {len(rows)}"] + [f"h {r}" for r in rows]
    else:
        g = x.graph()
        out = [f"p edge {g.n} {len(g.edges)}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
    out.extend(f"l {v + 1} " + " ".join(map(str, cs)) for v, cs in enumerate(x.lists))
    return "\n".join(out) + "\n"
