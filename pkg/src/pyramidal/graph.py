"""Undirected simple graphs at desk scale.

Vertices are any hashable, orderable identifiers (strings or ints in
practice).  Edges are canonical 2-tuples ``(u, v)`` with ``u`` before ``v``
under :func:`vkey`, so they can be used directly as dictionary keys.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple

Vertex = Hashable
Edge = tuple


class GraphError(ValueError):
    """A structural precondition on a graph was violated."""


def vkey(v):
    # total order across mixed id types; ints and strs never compare directly
    return (type(v).__name__, v)


def edge(u, v) -> Edge:
    if u == v:
        raise GraphError(f"loop at {u!r}")
    return (u, v) if vkey(u) <= vkey(v) else (v, u)


def ekey(e: Edge):
    return (vkey(e[0]), vkey(e[1]))


def sort_vertices(vs: Iterable) -> list:
    return sorted(vs, key=vkey)


def sort_edges(es: Iterable[Edge]) -> list:
    return sorted(es, key=ekey)


def path_edges(path) -> list[Edge]:
    return [edge(a, b) for a, b in zip(path, path[1:])]


@dataclass(frozen=True)
class Graph:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        for e in self.edges:
            u, v = e
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge {e!r} has an endpoint outside the vertex set")
            if edge(u, v) != e:
                raise GraphError(f"edge {e!r} is not in canonical order")

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> "Graph":
        es = set()
        for u, v in edges:
            e = edge(u, v)
            if e in es:
                raise GraphError(f"parallel edge {e!r}")
            es.add(e)
        vs = set(vertices)
        for u, v in es:
            vs.update((u, v))
        return cls(frozenset(vs), frozenset(es))

    @classmethod
    def cycle(cls, vertices: Iterable) -> "Graph":
        vs = list(vertices)
        return cls.from_edges(zip(vs, vs[1:] + vs[:1]))

    @classmethod
    def path(cls, vertices: Iterable) -> "Graph":
        vs = list(vertices)
        return cls.from_edges(zip(vs, vs[1:]), vs)

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, edges={self.edge_list!r})"

    @cached_property
    def order(self) -> tuple:
        return tuple(sort_vertices(self.vertices))

    @cached_property
    def edge_list(self) -> tuple:
        return tuple(sort_edges(self.edges))

    @cached_property
    def adj(self) -> dict:
        nb = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return {v: tuple(sort_vertices(ns)) for v, ns in nb.items()}

    def neighbors(self, v) -> tuple:
        return self.adj[v]

    def degree(self, v) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adj.values()), default=0)

    def has_edge(self, u, v) -> bool:
        return u != v and edge(u, v) in self.edges

    def incident(self, v) -> list[Edge]:
        return [edge(v, w) for w in self.adj[v]]

    def components(self) -> list[frozenset]:
        seen, comps = set(), []
        for s in self.order:
            if s in seen:
                continue
            comp, stack = {s}, [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.vertices) - 1

    def without_edges(self, es: Iterable[Edge]) -> "Graph":
        return Graph(self.vertices, self.edges - frozenset(es))

    def without_vertices(self, vs: Iterable) -> "Graph":
        drop = frozenset(vs)
        return Graph(self.vertices - drop,
                     frozenset(e for e in self.edges if e[0] not in drop and e[1] not in drop))

    def edge_subgraph(self, es: Iterable[Edge]) -> "Graph":
        es = frozenset(es)
        missing = es - self.edges
        if missing:
            raise GraphError(f"edges not in graph: {sort_edges(missing)!r}")
        return Graph(frozenset(x for e in es for x in e), es)

    def induced(self, vs: Iterable) -> "Graph":
        keep = frozenset(vs)
        return Graph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def relabel(self, mapping: dict) -> "Graph":
        f = lambda x: mapping.get(x, x)
        return Graph.from_edges(((f(u), f(v)) for u, v in self.edges),
                                (f(v) for v in self.vertices))


def tree_path(tree_edges: Iterable[Edge], s, t) -> list | None:
    """Vertex sequence of the unique s-t path in a forest, or None."""
    nb: dict = {}
    for u, v in tree_edges:
        nb.setdefault(u, []).append(v)
        nb.setdefault(v, []).append(u)
    if s == t:
        return [s]
    parent = {s: None}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in nb.get(x, ()):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    if t not in parent:
        return None
    out = [t]
    while out[-1] != s:
        out.append(parent[out[-1]])
    return out[::-1]


# ---------------------------------------------------------------- blocks

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple
    cut_vertices: frozenset
    membership: dict = field(compare=False)

    def block_of(self, e: Edge) -> "Graph":
        return self.blocks[self.membership[e]]

    def rooted(self, root) -> list[tuple["Graph", Vertex]]:
        """Blocks in BFS order from ``root``, each with its attachment vertex.

        The attachment vertex of a block is its vertex nearest the root: the
        root itself, or the cut vertex through which every root path enters.
        """
        holders: dict = {}
        for i, b in enumerate(self.blocks):
            for v in b.vertices:
                holders.setdefault(v, []).append(i)
        out, seen_blocks, frontier = [], set(), [root]
        while frontier:
            nxt = []
            for v in frontier:
                for i in holders.get(v, ()):
                    if i in seen_blocks:
                        continue
                    seen_blocks.add(i)
                    out.append((self.blocks[i], v))
                    nxt.extend(w for w in sort_vertices(self.blocks[i].vertices) if w != v)
            frontier = nxt
        return out


def blocks(g: Graph) -> BlockDecomposition:
    """Blocks (2-connected components and bridges) and cut vertices."""
    if not g.is_connected():
        raise GraphError("block decomposition needs a connected, nonempty graph")
    disc: dict = {}
    low: dict = {}
    cuts: set = set()
    found: list[frozenset] = []
    stack: list[Edge] = []
    counter = itertools.count()

    def dfs(v, parent):
        disc[v] = low[v] = next(counter)
        children = 0
        for w in g.adj[v]:
            if w not in disc:
                children += 1
                stack.append(edge(v, w))
                dfs(w, v)
                low[v] = min(low[v], low[w])
                if low[w] >= disc[v]:
                    if parent is not None:
                        cuts.add(v)
                    comp = set()
                    while True:
                        e = stack.pop()
                        comp.add(e)
                        if e == edge(v, w):
                            break
                    found.append(frozenset(comp))
            elif w != parent and disc[w] < disc[v]:
                stack.append(edge(v, w))
                low[v] = min(low[v], disc[w])
        if parent is None and children > 1:
            cuts.add(v)

    dfs(g.order[0], None)
    found.sort(key=lambda es: ekey(min(es, key=ekey)))
    bl = tuple(g.edge_subgraph(es) for es in found)
    if not bl:  # single vertex
        bl = (g,)
    membership = {e: i for i, b in enumerate(bl) for e in b.edges}
    return BlockDecomposition(bl, frozenset(cuts), membership)


def is_two_connected(g: Graph) -> bool:
    return len(g.vertices) >= 3 and g.is_connected() and len(blocks(g).blocks) == 1


# ---------------------------------------------------------------- paths

class PathEnumeration(NamedTuple):
    paths: list
    truncated: bool


def enumerate_simple_paths(g: Graph, s, t, cap: int | None = None) -> PathEnumeration:
    """All simple s-t paths, lexicographic by vertex sequence.

    Neighbours are explored in sorted order, so DFS emission order is the
    lexicographic order.  Stops after ``cap`` paths and flags truncation.
    """
    if s not in g.vertices or t not in g.vertices:
        raise GraphError(f"unknown endpoint in {s!r}-{t!r}")
    if s == t:
        return PathEnumeration([(s,)], False)
    out: list = []
    path, on_path = [s], {s}

    def dfs(x):
        for y in g.adj[x]:
            if y in on_path:
                continue
            if cap is not None and len(out) >= cap:
                return True
            if y == t:
                out.append(tuple(path) + (t,))
                continue
            path.append(y)
            on_path.add(y)
            stop = dfs(y)
            path.pop()
            on_path.discard(y)
            if stop:
                return True
        return False

    truncated = dfs(s)
    return PathEnumeration(out, truncated)


# ---------------------------------------------------------------- minors

@dataclass(frozen=True)
class MinorOp:
    """One deletion or contraction with its edge correspondence.

    ``edge_map`` sends every edge of the resulting graph to a distinct edge
    of the original one.  For a contraction of ``e = (s, t)`` into
    ``merged_vertex``, an edge ``w-merged`` with ``w`` a common neighbour of
    ``s`` and ``t`` maps to ``w-s``; the parallel ``w-t`` lands in
    ``discarded``.
    """
    kind: str
    edge: Edge
    merged_vertex: Vertex = None
    edge_map: dict = field(default_factory=dict, compare=False)
    discarded: tuple = ()

    @property
    def s(self):
        return self.edge[0]

    @property
    def t(self):
        return self.edge[1]

    def vertex_image(self, v):
        if self.kind == "contract" and v in self.edge:
            return self.merged_vertex
        return v


def apply_minor_op(g: Graph, kind: str, e: Edge, merged=None) -> tuple[Graph, MinorOp]:
    e = edge(*e)
    if e not in g.edges:
        raise GraphError(f"edge {e!r} not in graph")
    if kind == "delete":
        h = g.without_edges([e])
        return h, MinorOp("delete", e, None, {f: f for f in h.edges}, (e,))
    if kind != "contract":
        raise ValueError(f"unknown minor operation {kind!r}")
    s, t = e
    u = s if merged is None else merged
    if u in g.vertices and u not in e:
        raise GraphError(f"merged vertex name {u!r} already in use")
    common = set(g.adj[s]) & set(g.adj[t])
    img = lambda x: u if x in e else x
    emap, dropped = {}, [e]
    for f in g.edge_list:
        if f == e:
            continue
        a, b = f
        if t in f and (b if a == t else a) in common:
            dropped.append(f)
            continue
        emap[edge(img(a), img(b))] = f
    vs = (g.vertices - {s, t}) | {u}
    return Graph(frozenset(vs), frozenset(emap)), MinorOp("contract", e, u, emap, tuple(dropped))


def connected_subsets(g: Graph) -> list[frozenset]:
    out = set()
    frontier = {frozenset([v]) for v in g.vertices}
    while frontier:
        out |= frontier
        nxt = set()
        for S in frontier:
            for x in S:
                for y in g.adj[x]:
                    if y not in S:
                        nxt.add(S | {y})
        frontier = nxt - out
    return sorted(out, key=lambda S: (len(S), [vkey(v) for v in sort_vertices(S)]))


def has_minor(g: Graph, h: Graph) -> bool:
    """Exhaustive branch-set search for an ``h`` minor in ``g``.

    Exponential; intended as an oracle for graphs with at most ~8 vertices.
    """
    if len(h.vertices) > len(g.vertices) or len(h.edges) > len(g.edges):
        return False
    subsets = connected_subsets(g)
    hv = list(h.order)

    def touches(A, B):
        return any(y in B for x in A for y in g.adj[x])

    def place(i, chosen, used):
        if i == len(hv):
            return True
        for S in subsets:
            if S & used:
                continue
            if all(touches(S, chosen[j]) for j in range(i) if h.has_edge(hv[i], hv[j])):
                chosen.append(S)
                if place(i + 1, chosen, used | S):
                    return True
                chosen.pop()
        return False

    return place(0, [], frozenset())


K4 = Graph.from_edges(itertools.combinations(range(4), 2))
K23 = Graph.from_edges((a, b) for a in (0, 1) for b in (2, 3, 4))


def has_forbidden_outerplanar_minor(g: Graph) -> bool:
    return has_minor(g, K4) or has_minor(g, K23)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Brute-force isomorphism test (desk scale)."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return False
    if sorted(map(g.degree, g.vertices)) != sorted(map(h.degree, h.vertices)):
        return False
    gv, hv = list(g.order), list(h.order)
    for perm in itertools.permutations(hv):
        m = dict(zip(gv, perm))
        if all(h.has_edge(m[a], m[b]) for a, b in g.edges):
            return True
    return False
