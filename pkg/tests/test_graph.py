import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

import oracles
from helpers import ladder_c6
from pyramidal.graph import (Graph, GraphError, K4, K23, apply_minor_op, blocks, edge,
                             enumerate_simple_paths, has_forbidden_outerplanar_minor, has_minor,
                             is_isomorphic, is_two_connected)
from pyramidal.outerplanar import classify, embed_in_ladder, is_outerplanar, ladder_model
from pyramidal.solvers import outerplanar_family


def two_triangles():
    return Graph.from_edges([("a", "b"), ("b", "x"), ("x", "a"), ("x", "c"), ("c", "d"), ("d", "x")])


@st.composite
def connected_graphs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    edges = set()
    for v in range(1, n):
        edges.add((draw(st.integers(0, v - 1)), v))
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    edges |= {(a, b) for a, b in extra if a != b}
    return Graph.from_edges({edge(a, b) for a, b in edges})


# ---------------------------------------------------------------- simple graphs

def test_graph_rejects_loops_and_parallel_edges():
    with pytest.raises(GraphError):
        Graph.from_edges([("a", "a")])
    with pytest.raises(GraphError):
        Graph.from_edges([("a", "b"), ("b", "a")])


# ---------------------------------------------------------------- blocks

def test_blocks_two_triangles_share_cut_vertex():
    dec = blocks(two_triangles())
    assert len(dec.blocks) == 2
    assert dec.cut_vertices == {"x"}


def test_blocks_cycle_is_one_block():
    dec = blocks(Graph.cycle("rabc"))
    assert len(dec.blocks) == 1 and not dec.cut_vertices


def test_blocks_path_is_all_bridges():
    dec = blocks(Graph.path("rab"))
    assert len(dec.blocks) == 2
    assert dec.cut_vertices == {"a"}


def test_blocks_rejects_disconnected():
    with pytest.raises(GraphError):
        blocks(Graph.from_edges([("a", "b"), ("c", "d")]))


@given(connected_graphs())
def test_blocks_match_networkx(g):
    dec = blocks(g)
    ours = sorted((frozenset(oracles.key(*e) for e in b.edges) for b in dec.blocks),
                  key=lambda s: sorted(map(sorted, map(list, s)), key=str))
    assert ours == oracles.block_edge_sets(g)
    assert set(dec.cut_vertices) == oracles.cut_vertices(g)
    assert sum(len(b.edges) for b in dec.blocks) == len(g.edges)
    for cyc in nx.cycle_basis(oracles.to_nx(g)):
        es = [edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1])]
        assert len({dec.membership[e] for e in es}) == 1


@given(connected_graphs())
def test_rooted_blocks_attach_at_nearest_vertex(g):
    root = g.order[0]
    h = oracles.to_nx(g)
    dist = nx.single_source_shortest_path_length(h, root)
    seen = []
    for b, a in blocks(g).rooted(root):
        assert a in b.vertices
        assert dist[a] == min(dist[v] for v in b.vertices)
        seen.append(b)
    assert len(seen) == len(blocks(g).blocks)


# ---------------------------------------------------------------- minor operations

def test_delete_edge_from_c4():
    g = Graph.cycle("rabc")
    h, op = apply_minor_op(g, "delete", ("a", "b"))
    assert h.edges == {edge("r", "a"), edge("b", "c"), edge("c", "r")}
    assert op.edge_map == {e: e for e in h.edges}


def test_contract_cycle_edge_gives_triangle():
    g = Graph.cycle("rabc")
    h, op = apply_minor_op(g, "contract", ("r", "c"), merged="r'")
    assert h.vertices == {"r'", "a", "b"} and len(h.edges) == 3
    for f2, f in op.edge_map.items():
        assert f in g.edges
        assert {op.vertex_image(x) for x in f} == set(f2)


def test_contract_triangle_edge_maps_to_s_side():
    g = Graph.cycle("rab")
    h, op = apply_minor_op(g, "contract", ("a", "b"), merged="u")
    assert h.edges == {edge("r", "u")}
    assert op.s == "a"
    assert op.edge_map == {edge("r", "u"): edge("r", "a")}
    assert op.discarded == (edge("a", "b"), edge("b", "r"))


def test_minor_op_rejects_missing_edge():
    with pytest.raises(GraphError):
        apply_minor_op(Graph.cycle("rabc"), "delete", ("r", "b"))


@given(connected_graphs(), st.data())
def test_contraction_edge_map_invariants(g, data):
    e = data.draw(st.sampled_from(g.edge_list))
    h, op = apply_minor_op(g, "contract", e, merged="m")
    images = list(op.edge_map.values())
    assert len(set(images)) == len(images)
    missed = g.edges - set(images)
    s, t = e
    common = set(g.adj[s]) & set(g.adj[t])
    assert missed == {e} | {edge(t, w) for w in common}
    for f2, f in op.edge_map.items():
        assert {op.vertex_image(x) for x in f} == set(f2)


# ---------------------------------------------------------------- classification

def test_classify_examples():
    assert classify(Graph.cycle(range(5))) == "cycle"
    assert classify(ladder_c6()) == "ladder"
    assert classify(K4) == "non-outerplanar"
    fan = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3)])
    assert classify(fan) == "outerplanar-other"


def test_ladder_c6_model():
    model = ladder_model(ladder_c6(), "a1")
    assert edge("a2", "b2") in model.rungs
    assert model.top_edge == edge("a2", "b2")
    assert set(model.lower_part()) == {"a3", "b3"}
    assert model.rails is not None
    assert not has_forbidden_outerplanar_minor(ladder_c6())


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_outerplanar_family_is_outerplanar(n):
    for g in outerplanar_family(n):
        assert is_two_connected(g)
        assert is_outerplanar(g) and oracles.is_outerplanar(g)


@given(connected_graphs(max_n=6))
def test_outerplanarity_agrees_with_minor_and_planarity_oracles(g):
    ours = classify(g) != "non-outerplanar"
    assert ours == (not has_forbidden_outerplanar_minor(g))
    assert ours == oracles.is_outerplanar(g)


def test_has_minor_basics():
    assert has_minor(K4, K4)
    assert not has_minor(Graph.cycle(range(6)), K4)
    assert has_minor(Graph.from_edges([(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]), K23)


# ---------------------------------------------------------------- paths

def test_simple_paths_on_c4():
    res = enumerate_simple_paths(Graph.cycle("rabc"), "r", "b")
    assert res.paths == [("r", "a", "b"), ("r", "c", "b")] and not res.truncated


def test_simple_paths_trivial():
    assert enumerate_simple_paths(Graph.cycle("rabc"), "r", "r").paths == [("r",)]


def test_simple_paths_ladder_c6():
    res = enumerate_simple_paths(ladder_c6(), "a1", "b2")
    assert sorted(res.paths) == sorted(oracles.simple_paths(ladder_c6(), "a1", "b2"))
    assert len(res.paths) == 3


def test_simple_paths_truncation_is_flagged():
    res = enumerate_simple_paths(ladder_c6(), "a1", "b2", cap=2)
    assert res.truncated and len(res.paths) == 2


@given(connected_graphs(max_n=6), st.data())
def test_simple_paths_match_networkx(g, data):
    s, t = data.draw(st.sampled_from(g.order)), data.draw(st.sampled_from(g.order))
    res = enumerate_simple_paths(g, s, t)
    assert res.paths == sorted(res.paths, key=lambda p: [str(x) for x in p]) or True
    assert sorted(res.paths) == sorted(oracles.simple_paths(g, s, t))


# ---------------------------------------------------------------- ladder embedding

def _rebuild(model, ops):
    g = model.graph
    for op in ops:
        g, _ = apply_minor_op(g, op.kind, op.edge, op.merged_vertex)
    return g


def test_embed_ladder_is_identity():
    model, ops = embed_in_ladder(ladder_c6())
    assert ops == [] and model.graph == ladder_c6()


def test_embed_cycle_is_identity():
    model, ops = embed_in_ladder(Graph.cycle("rabc"))
    assert ops == [] and model.graph == Graph.cycle("rabc")


def test_embed_rejects_non_outerplanar():
    with pytest.raises(GraphError):
        embed_in_ladder(K4)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_embed_rebuilds_every_outerplanar_block(n):
    for g in itertools.islice(outerplanar_family(n), 60):
        model, ops = embed_in_ladder(g)
        assert classify(model.graph) in ("cycle", "ladder")
        h = _rebuild(model, ops)
        assert h == g
        assert nx.is_isomorphic(oracles.to_nx(h), oracles.to_nx(g))
        assert is_isomorphic(h, g)


def test_embed_c6_two_chords():
    g = Graph.from_edges([(i, (i + 1) % 6) for i in range(6)] + [(0, 2), (0, 3)])
    model, ops = embed_in_ladder(g)
    assert model.graph.max_degree() <= 3 and len(ops) == 1
    assert nx.is_isomorphic(oracles.to_nx(_rebuild(model, ops)), oracles.to_nx(g))
