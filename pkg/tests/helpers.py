"""Small instances shared by the tests."""
from hypothesis import strategies as st

from pyramidal.graph import Graph, enumerate_simple_paths
from pyramidal.routing import Instance, Routing
from pyramidal.solvers import outerplanar_family


def c4_instance(costs=None) -> Instance:
    return Instance(Graph.cycle(["r", "a", "b", "c"]), "r", dict.fromkeys("rabc", 1), costs)


CLOCKWISE = Routing([("r",), ("r", "a"), ("r", "a", "b"), ("r", "a", "b", "c")])
ALL_EDGES = Routing([("r",), ("r", "c", "b", "a"), ("r", "a", "b"), ("r", "a", "b", "c")])
MIXED = Routing([("r",), ("r", "a"), ("r", "a", "b"), ("r", "c")])


def ladder_c6() -> Graph:
    """C6 a1 a2 a3 b3 b2 b1 with the chord a2 b2."""
    return Graph.from_edges([("a1", "a2"), ("a2", "a3"), ("a3", "b3"), ("b3", "b2"),
                             ("b2", "b1"), ("b1", "a1"), ("a2", "b2")])


# ---------------------------------------------------------------- hypothesis strategies

_FAMILY = {n: list(outerplanar_family(n)) for n in range(3, 7)}


@st.composite
def outerplanar_graphs(draw, max_n=6, blocks=True):
    """A 2-connected outerplanar graph, optionally with pendant trees or a second block."""
    n = draw(st.integers(3, max_n))
    g = draw(st.sampled_from(_FAMILY[n]))
    if blocks and draw(st.booleans()):
        edges = set(g.edges)
        nxt = n
        for _ in range(draw(st.integers(1, 2))):
            at = draw(st.integers(0, nxt - 1))
            if draw(st.booleans()):
                edges.add((at, nxt))
                nxt += 1
            else:
                edges |= {(at, nxt), (nxt, nxt + 1), (at, nxt + 1)}
                nxt += 2
        g = Graph.from_edges(edges)
    return g


@st.composite
def instances(draw, max_n=6, demand_max=2, k_max=6, blocks=True):
    g = draw(outerplanar_graphs(max_n, blocks))
    root = draw(st.sampled_from(g.order))
    dem = {v: draw(st.integers(0, demand_max)) for v in g.order}
    dem[root] = max(dem[root], 1)
    while sum(dem.values()) > k_max:
        v = draw(st.sampled_from([v for v in g.order if dem[v] > (1 if v == root else 0)]))
        dem[v] -= 1
    costs = {e: draw(st.integers(0, 10)) for e in g.edge_list}
    return Instance(g, root, dem, costs)


@st.composite
def routings(draw, inst):
    paths = []
    for v in inst.graph.order:
        options = enumerate_simple_paths(inst.graph, inst.root, v).paths
        paths += [draw(st.sampled_from(options)) for _ in range(inst.demands[v])]
    return Routing(paths)


@st.composite
def instance_routings(draw, **kw):
    inst = draw(instances(**kw))
    return inst, draw(routings(inst))


def ladder(rungs: int) -> Graph:
    """Rails a1..an and b1..bn joined by every rung ai bi."""
    a = [f"a{i}" for i in range(1, rungs + 1)]
    b = [f"b{i}" for i in range(1, rungs + 1)]
    es = list(zip(a, a[1:])) + list(zip(b, b[1:])) + list(zip(a, b))
    return Graph.from_edges(es)


# ---------------------------------------------------------------- exact splits for concavity tests

def random_split(rt: Routing, rng, depth: int = 3) -> list:
    """Weighted routings ``(lam, P_i)`` whose lam-weighted n-vectors sum to ``n(rt)``.

    Three moves, nested at random: keep ``rt`` with a random rational
    weight, exchange the halves of two paths through a shared vertex (the
    two outcomes average to ``rt``), or send every unit of one terminal
    along one of its paths in turn.
    """
    from fractions import Fraction

    rt = Routing(rt)
    if depth == 0:
        return [(Fraction(1), rt)]
    moves = []
    swaps = []
    for i, p1 in enumerate(rt):
        for p2 in rt[i + 1:]:
            for v in set(p1[1:]) & set(p2[1:]):
                h1, t1 = p1[:p1.index(v) + 1], p1[p1.index(v):]
                h2, t2 = p2[:p2.index(v) + 1], p2[p2.index(v):]
                if h1 != h2 and set(h1) & set(t2) == {v} and set(h2) & set(t1) == {v}:
                    swaps.append((p1, p2, h1 + t2[1:], h2 + t1[1:]))
    if swaps:
        p1, p2, p3, p4 = rng.choice(swaps)
        moves.append([(Fraction(1, 2), rt.replace(p1, p4)), (Fraction(1, 2), rt.replace(p2, p3))])
    ends: dict = {}
    for p in rt:
        ends.setdefault(p[-1], []).append(p)
    multi = [ps for ps in ends.values() if len(set(ps)) > 1]
    if multi:
        ps = rng.choice(multi)
        parts = []
        for q in ps:
            parts.append((Fraction(1, len(ps)), Routing([q if p[-1] == ps[0][-1] else p for p in rt])))
        moves.append(parts)
    if not moves:
        return [(Fraction(1), rt)]
    keep = Fraction(rng.randint(0, 4), rng.randint(5, 9))
    out = [(keep, rt)] if keep else []
    for w, r in rng.choice(moves):
        out += [((1 - keep) * w * lam, q) for lam, q in random_split(r, rng, depth - 1)]
    return out
