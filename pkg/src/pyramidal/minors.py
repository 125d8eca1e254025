"""Moving instances, routings and certificates across a minor operation.

For a contraction of ``e = (s, t)`` into ``u_e``, an instance on ``G' = G/e``
lifts to ``G`` by putting the root at ``s`` when it was ``u_e`` and moving
the demand of ``u_e`` to ``s``.  Every path of a routing in ``G'`` lifts to a
path of ``G`` that enters and leaves ``{s, t}`` through the preimages of its
``u_e``-edges, so each edge ``f'`` of ``G'`` is used exactly as often as its
preimage ``f``.
"""
from __future__ import annotations

from fractions import Fraction

from .graph import MinorOp, edge, path_edges
from .lp import guided_convex_domination, pair_domination
from .routing import (Certificate, Instance, Routing, ValidationError, combine, is_tree_routing,
                      pyramidal, routing_violations, tree_routing, verify_certificate, y_vector)

F = Fraction


def lift_instance(inst2: Instance, g, op: MinorOp) -> Instance:
    """The instance on ``g`` (before ``op``) matching ``inst2`` (after it)."""
    if op.kind == "delete":
        costs = {e: inst2.costs[e] for e in inst2.graph.edges}
        return Instance(g, inst2.root, inst2.demands, costs)
    s, t, u = op.s, op.t, op.merged_vertex
    root = s if inst2.root == u else inst2.root
    dem = {v: b for v, b in inst2.demands.items() if v != u}
    dem[s], dem[t] = inst2.demands[u], 0
    costs = {op.edge_map[f2]: c for f2, c in inst2.costs.items()}
    return Instance(g, root, dem, costs)


def _other(f, x):
    return f[1] if f[0] == x else f[0]


def lift_path(path, op: MinorOp) -> tuple:
    if op.kind == "delete":
        return tuple(path)
    s, t, u = op.s, op.t, op.merged_vertex
    path = tuple(path)
    if u not in path:
        return path
    i = path.index(u)
    # the copies of u_e this path needs, in order
    if i > 0:
        f = op.edge_map[edge(path[i - 1], u)]
        enter = s if s in f else t
    else:
        enter = s  # the root moved to s
    if i + 1 < len(path):
        f = op.edge_map[edge(u, path[i + 1])]
        leave = s if s in f else t
    else:
        leave = s  # terminals of u_e sit at s
    mid = (enter,) if enter == leave else (enter, leave)
    return path[:i] + mid + path[i + 1:]


def lift_routing(rt, op: MinorOp) -> Routing:
    return Routing(lift_path(p, op) for p in rt)


def contract_walk(path, op: MinorOp) -> tuple:
    """Image of a path of ``G`` in ``G/e``; may revisit ``u_e`` (a walk)."""
    if op.kind == "delete":
        if op.edge in path_edges(path):
            raise ValidationError("path uses the deleted edge")
        return tuple(path)
    img = [op.merged_vertex if x in op.edge else x for x in path]
    out = [img[0]]
    for x in img[1:]:
        if x != out[-1]:
            out.append(x)
    return tuple(out)


def walk_n_vector(graph, walks) -> dict:
    n = dict.fromkeys(graph.edges, 0)
    for w in walks:
        for e in path_edges(w):
            n[e] += 1
    return n


def transferred_y(inst2: Instance, inst: Instance, y: dict, op: MinorOp) -> dict:
    """``y'_{f'} = y_f`` along the edge map."""
    return {f2: y[f] for f2, f in op.edge_map.items()}


def _loop_trees(inst2: Instance, walks) -> list[Routing]:
    """Tree routings inside the support of the walks (a tree plus one edge)."""
    from .graph import Graph
    sup = sorted({e for w in walks for e in path_edges(w)}, key=lambda e: (str(e[0]), str(e[1])))
    h = Graph.from_edges(sup)
    out = []
    for f in sup:
        rest = h.without_edges([f])
        if rest.is_connected() and rest.is_tree():
            out.append(tree_routing(inst2, rest.edges))
    return out


def dominate_walks(inst2: Instance, walks, pool: Instance | None = None) -> tuple[Certificate, str]:
    """Trees whose y-combination is at most ``p(n(walks))`` on every edge.

    The walks come from contracting a tree routing that avoids the
    contracted edge; their support is a tree plus one edge, and the trees of
    that support are tried first (single tree, pair, then exact LP).  The
    tree family of ``pool`` (default: the minor itself) is the last resort.
    """
    from .solvers import tree_routings

    k = inst2.k
    es = inst2.graph.edge_list
    n = walk_n_vector(inst2.graph, walks)
    target = [pyramidal(n[e], k) for e in es]
    for route, trees in (("local", _loop_trees(inst2, walks)), ("global", None)):
        if trees is None:
            trees = tree_routings(pool or inst2)
        pts = [[y_vector(inst2, t, validate=False)[e] for e in es] for t in trees]
        for t, p in zip(trees, pts):
            if all(a <= b for a, b in zip(p, target)):
                return Certificate(((t, F(1)),)), route
        hit = pair_domination(pts, target)
        if hit is not None:
            i, j, lam = hit
            return Certificate(((trees[i], lam), (trees[j], 1 - lam))).normalized(), route
        lam = guided_convex_domination(pts, target)
        if lam is not None:
            return Certificate(tuple((t, w) for t, w in zip(trees, lam) if w > 0)).normalized(), route
    raise AssertionError("no tree combination dominates the contracted walks")


def restrict_to_support(inst: Instance, rt) -> Instance:
    """The instance on the subgraph formed by the edges ``rt`` uses."""
    from .graph import Graph
    es = {e for p in rt for e in path_edges(p)}
    g = Graph.from_edges(es, [inst.root])
    return inst.with_graph(g)


def project_certificate_through_minor(cert: Certificate, op: MinorOp, inst2: Instance,
                                      target2, dominate_fn=None, log=None) -> Certificate:
    """Carry a certificate for the lifted routing on ``G`` down to ``G' = G/e``.

    Each tree routing is contracted.  A contracted tree whose walks are
    simple and whose support is a tree is kept.  A simple contracted routing
    whose support is a tree plus an edge goes through ``dominate_fn`` (block
    decomposition and the cycle dominator).  When a root path of the tree
    visits both ends of ``e`` without using ``e``, its image revisits the
    merged vertex; removing that loop would raise y, so instead
    ``p(n(walks))``, which equals the transferred y-vector of the tree, is
    dominated by trees of the walks' support.  Trees that use an edge
    discarded by the contraction have no image and are refused.
    """
    from .dominate import dominate as default_dominate

    dominate_fn = dominate_fn or default_dominate
    dropped = set(op.discarded[1:]) if op.kind == "contract" else set(op.discarded)
    parts = []
    for tree, lam in cert.entries:
        if any(e in dropped for p in tree for e in path_edges(p)):
            raise AssertionError("certificate tree uses an edge removed by the minor operation")
        walks = [contract_walk(p, op) for p in tree]
        if all(len(set(w)) == len(w) for w in walks):
            simple = Routing(walks)
            if routing_violations(inst2, simple):
                raise AssertionError("contracted tree is not a routing of the minor")
            if is_tree_routing(inst2, simple):
                parts.append((lam, Certificate(((simple, F(1)),), simple)))
                route = "kept"
            else:
                parts.append((lam, dominate_fn(inst2, simple)))
                route = "dominated"
        else:
            sub, route = dominate_walks(inst2, walks, restrict_to_support(inst2, target2))
            parts.append((lam, sub))
            route = "walk-" + route
        if log is not None:
            log[route] = log.get(route, 0) + 1
    out = combine(parts, target2)
    bad = verify_certificate(inst2, target2, out)
    if bad:
        raise AssertionError(f"projected certificate fails: {bad[0]}")
    return out
