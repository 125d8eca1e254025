"""Outerplanar structure: outer cycles, faces, ladders, ladder embeddings.

A 2-connected outerplanar graph has a unique Hamiltonian cycle (the outer
face boundary); every other edge is a chord and no two chords cross.  The
interior faces form a tree under chord adjacency (the weak dual).
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import (Graph, GraphError, MinorOp, apply_minor_op, blocks, edge,
                    is_two_connected, sort_edges, sort_vertices, vkey)


def hamiltonian_cycles(g: Graph):
    """Yield Hamiltonian cycles once each, starting at the smallest vertex."""
    order = g.order
    n = len(order)
    if n < 3:
        return
    start = order[0]
    path, on = [start], {start}

    def dfs():
        x = path[-1]
        if len(path) == n:
            if g.has_edge(x, start) and vkey(path[1]) < vkey(path[-1]):
                yield list(path)
            return
        for y in g.adj[x]:
            if y not in on:
                path.append(y)
                on.add(y)
                yield from dfs()
                path.pop()
                on.discard(y)

    yield from dfs()


def _chords_cross(pos, c, d) -> bool:
    a, b = sorted((pos[c[0]], pos[c[1]]))
    x, y = sorted((pos[d[0]], pos[d[1]]))
    return a < x < b < y or x < a < y < b


def outer_cycle(g: Graph) -> list | None:
    """The outer face boundary of a 2-connected outerplanar graph, else None."""
    for cyc in hamiltonian_cycles(g):
        pos = {v: i for i, v in enumerate(cyc)}
        ring = {edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1])}
        chords = [e for e in g.edge_list if e not in ring]
        if not any(_chords_cross(pos, c, d)
                   for i, c in enumerate(chords) for d in chords[i + 1:]):
            return cyc
    return None


def is_outerplanar(g: Graph) -> bool:
    if not g.is_connected():
        return all(is_outerplanar(g.induced(c)) for c in g.components())
    return all(len(b.vertices) < 3 or outer_cycle(b) is not None for b in blocks(g).blocks)


def faces(g: Graph, cyc: list | None = None) -> list[list]:
    """Interior faces of a 2-connected outerplanar graph as vertex cycles."""
    cyc = cyc or outer_cycle(g)
    if cyc is None:
        raise GraphError("graph is not 2-connected outerplanar")
    todo, out = [cyc], []
    while todo:
        poly = todo.pop()
        split = None
        for i, a in enumerate(poly):
            for j in range(i + 2, len(poly)):
                if (i, j) == (0, len(poly) - 1):
                    continue
                if g.has_edge(a, poly[j]):
                    split = (i, j)
                    break
            if split:
                break
        if split is None:
            out.append(poly)
            continue
        i, j = split
        todo.append(poly[i:j + 1])
        todo.append(poly[j:] + poly[:i + 1])
    return sorted(out, key=lambda f: [vkey(v) for v in sort_vertices(f)])


def face_edges(face: list) -> list:
    return [edge(a, b) for a, b in zip(face, face[1:] + face[:1])]


# ---------------------------------------------------------------- ladders

@dataclass(frozen=True)
class LadderModel:
    """A 2-connected outerplanar graph of maximum degree at most 3.

    ``rungs`` are the chords in weak-dual order; when the weak dual is a path
    the two outer end rungs are added and ``rails`` holds the two boundary
    paths joining consecutive rung ends.  When the dual branches, ``rails``
    is None.  ``lowest_cycle`` is a leaf face whose private vertices avoid
    the root, and ``top_edge`` its unique chord (None for a bare cycle).
    """
    graph: Graph
    outer: tuple
    faces: tuple
    rungs: tuple
    rails: tuple | None
    lowest_cycle: tuple
    top_edge: tuple | None

    def lower_part(self) -> list:
        """Vertices of the lowest cycle other than the top edge's ends, in
        boundary order starting next to ``top_edge[0]``."""
        face = list(self.lowest_cycle)
        if self.top_edge is None:
            return face
        u, v = self.top_edge
        i = face.index(u)
        face = face[i:] + face[:i]
        if face[1] == v:
            face = [face[0]] + face[1:][::-1]
        return face[1:-1]


def _dual(g: Graph, fs: list) -> dict:
    sets = [set(face_edges(f)) for f in fs]
    adj = {i: [] for i in range(len(fs))}
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if sets[i] & sets[j]:
                adj[i].append(j)
                adj[j].append(i)
    return adj


def ladder_model(g: Graph, root=None) -> LadderModel | None:
    """Build the ladder structure, or None if ``g`` is not a ladder/cycle."""
    if not is_two_connected(g) or g.max_degree() > 3:
        return None
    cyc = outer_cycle(g)
    if cyc is None:
        return None
    fs = faces(g, cyc)
    ring = {edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1])}
    chords = [e for e in g.edge_list if e not in ring]
    if not chords:
        return LadderModel(g, tuple(cyc), (tuple(cyc),), (), None, tuple(cyc), None)
    dual = _dual(g, fs)
    leaves = [i for i in dual if len(dual[i]) == 1]
    top_of = {}
    for i in leaves:
        top_of[i] = next(e for e in face_edges(fs[i]) if e in chords)

    def private(i):
        return set(fs[i]) - set(top_of[i])

    choice = [i for i in leaves if root is None or root not in private(i)]
    low = min(choice, key=lambda i: sort_edges([top_of[i]]) + [sort_vertices(fs[i])])
    rungs, rails = _rungs_and_rails(g, fs, dual, leaves, top_of, chords)
    return LadderModel(g, tuple(cyc), tuple(tuple(f) for f in fs), rungs, rails,
                       tuple(fs[low]), top_of[low])


def _rungs_and_rails(g, fs, dual, leaves, top_of, chords):
    if any(len(nb) > 2 for nb in dual.values()):
        return tuple(sort_edges(chords)), None
    # walk the dual path from its lexicographically smaller end
    order_options = []
    for start in leaves:
        seq, prev = [start], None
        while True:
            nxt = [j for j in dual[seq[-1]] if j != prev]
            if not nxt:
                break
            prev = seq[-1]
            seq.append(nxt[0])
        inner = []
        for a, b in zip(seq, seq[1:]):
            shared = set(face_edges(fs[a])) & set(face_edges(fs[b]))
            inner.append(shared.pop())
        ends = []
        for leaf in (seq[0], seq[-1]):
            cand = [e for e in face_edges(fs[leaf])
                    if not set(e) & set(top_of[leaf])]
            ends.append(min(cand, key=lambda e: (vkey(e[0]), vkey(e[1]))) if cand else None)
        if None in ends:
            continue
        order_options.append(tuple([ends[0]] + inner + [ends[1]]))
    if not order_options:
        return tuple(sort_edges(chords)), None
    rungs = min(order_options, key=lambda rs: [(vkey(a), vkey(b)) for a, b in rs])
    rails = _rails(g, rungs)
    return rungs, rails


def _rails(g: Graph, rungs) -> tuple | None:
    # orient each rung so its first end continues the same rail as the previous
    rung_edges = set(rungs)
    rest = g.without_edges(rung_edges)
    first = list(rungs[0])
    sides = [[first[0]], [first[1]]]
    for side in sides:
        prev = None
        while True:
            x = side[-1]
            nxt = [y for y in rest.adj[x] if y != prev]
            if not nxt:
                break
            prev = x
            side.append(nxt[0])
    for side in sides:
        if len(set(side)) != len(side):
            return None
    return tuple(tuple(s) for s in sides)


def classify(g: Graph) -> str:
    """One of 'cycle', 'ladder', 'outerplanar-other', 'non-outerplanar'."""
    if not g.is_connected():
        raise GraphError("classify needs a connected graph")
    if not is_outerplanar(g):
        return "non-outerplanar"
    if is_two_connected(g):
        if all(g.degree(v) == 2 for v in g.vertices):
            return "cycle"
        if g.max_degree() <= 3:
            return "ladder"
    return "outerplanar-other"


# ---------------------------------------------------------------- embedding

def _fresh(g_vertices, base, i):
    name = f"{base}.{i}"
    while name in g_vertices:
        name += "'"
    return name


def embed_in_ladder(g: Graph, root=None) -> tuple[LadderModel, list[MinorOp]]:
    """Split every vertex of degree > 3 along the outer cycle.

    Returns a ladder ``L`` and contractions that turn ``L`` back into ``g``
    (vertex names included).  A vertex ``x`` of degree d becomes the outer
    path ``x, x.2, ..., x.(d-2)``, each piece carrying one chord.
    """
    if not is_two_connected(g):
        raise GraphError("embed_in_ladder needs a 2-connected graph")
    cyc = outer_cycle(g)
    if cyc is None:
        raise GraphError("graph is not outerplanar")
    if g.max_degree() <= 3:
        return ladder_model(g, root), []
    ring = [v for v in cyc]
    chords = [e for e in g.edge_list
              if not any(edge(a, b) == e for a, b in zip(cyc, cyc[1:] + cyc[:1]))]
    # attach[x] = ordered list of pieces; chord ends get rewritten to pieces
    pieces: dict = {}
    used = set(g.vertices)
    chord_end: dict = {}  # (chord, endpoint) -> piece name
    for x in cyc:
        d = g.degree(x)
        if d <= 3:
            pieces[x] = [x]
            for c in chords:
                if x in c:
                    chord_end[(c, x)] = x
            continue
        pos = {v: i for i, v in enumerate(ring)}
        n = len(ring)
        mine = [c for c in chords if x in c]
        # angular order: by distance along the ring from x's successor
        mine.sort(key=lambda c: (pos[c[0] if c[1] == x else c[1]] - pos[x]) % n)
        names = [x]
        for i in range(2, len(mine) + 1):
            nm = _fresh(used, x, i)
            used.add(nm)
            names.append(nm)
        pieces[x] = names
        for c, nm in zip(mine, names):
            chord_end[(c, x)] = nm
    new_edges = []
    n = len(cyc)
    for i, x in enumerate(cyc):
        y = cyc[(i + 1) % n]
        # successor side of x is its first piece, predecessor side its last
        new_edges.append((pieces[x][0], pieces[y][-1]))
        new_edges.extend(zip(pieces[x], pieces[x][1:]))
    for c in chords:
        a, b = c
        new_edges.append((chord_end[(c, a)], chord_end[(c, b)]))
    L = Graph.from_edges(new_edges)
    model = ladder_model(L, root)
    if model is None:
        raise GraphError("vertex splitting did not produce a ladder")
    ops, cur = [], L
    for x in cyc:
        for nm in pieces[x][1:]:
            cur, op = apply_minor_op(cur, "contract", edge(x, nm), merged=x)
            ops.append(op)
    if cur != g:
        raise GraphError("ladder contractions do not reproduce the input graph")
    return model, ops
