import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from helpers import ladder, ladder_c6
from pyramidal.dominate import Dominator, DominationError, dominate_on_ladder
from pyramidal.graph import Graph, GraphError, edge, enumerate_simple_paths
from pyramidal.ladder import (ArcFamily, LowestCycleFrame, PATTERNS, census, classify_pattern, collapse,
                              hang_lower_part, local_step, omits_edge, portion, terminal_split, thru_split,
                              uniform_prefix_split)
from pyramidal.routing import (Certificate, Instance, Routing, dominates, is_tree_routing, n_vector, routing_cost,
                               verify_certificate, y_vector)
from pyramidal.solvers import enumerate_routings, optimal_routing, optimal_tree_routing


def c6_instance(root="a1", demands=None, costs=None):
    g = ladder_c6()
    return Instance(g, root, demands or dict.fromkeys(g.vertices, 1), costs)


FRAME = LowestCycleFrame(edge("a2", "b2"), "a2", "b2", ("a3", "b3"))


# ---------------------------------------------------------------- frame and patterns

def test_frame_of_c6_chord():
    assert LowestCycleFrame.of(ladder_c6(), "a1") == FRAME
    assert FRAME.line == ("a2", "a3", "b3", "b2")
    assert FRAME.arc("a2", "b3", around=True) == ("a2", "a3", "b3")
    assert FRAME.arc("a2", "b3", around=False) == ("a2", "b2", "b3")


def test_frame_needs_a_chord():
    with pytest.raises(GraphError):
        LowestCycleFrame.of(Graph.cycle("rabc"), "r")


def test_classify_pattern_examples():
    assert classify_pattern(FRAME, ("a1", "a2", "a3")) == "rut"
    assert classify_pattern(FRAME, ("a1", "b1", "b2", "a2", "a3")) == "rvut"
    assert classify_pattern(FRAME, ("a1", "b1", "b2", "b3")) == "rvt"
    assert classify_pattern(FRAME, ("a1", "a2", "b2", "b3")) == "ruvt"
    assert classify_pattern(FRAME, ("a1", "a2", "a3", "b3", "b2", "b1")) == "thru"
    assert classify_pattern(FRAME, ("a1", "a2", "b2", "b1")) == "thru"
    assert classify_pattern(FRAME, ("a1", "b1")) == "outside"
    assert set(PATTERNS) >= {"thru", "rut", "rvut", "rvt", "ruvt", "outside"}


def test_portion_of_thru_path():
    pt = portion(FRAME, ("a1", "a2", "a3", "b3", "b2", "b1"))
    assert (pt.entry, pt.goal, pt.uses_top) == ("a2", "b2", False)


def test_census_cases():
    rt = Routing([("a1",), ("a1", "a2"), ("a1", "a2", "a3"), ("a1", "b1", "b2", "b3"), ("a1", "b1"), ("a1", "b1", "b2")])
    c = census(FRAME, rt)
    assert c.case == "A" and c.q == 0
    rt2 = Routing([("a1",), ("a1", "a2"), ("a1", "b1", "b2", "a2", "a3"), ("a1", "a2", "b2", "b3"),
                   ("a1", "b1"), ("a1", "b1", "b2")])
    assert census(FRAME, rt2).case == "A'"
    rt3 = Routing([("a1",), ("a1", "a2"), ("a1", "a2", "a3"), ("a1", "a2", "b2", "b3"), ("a1", "b1"), ("a1", "b1", "b2")])
    assert census(FRAME, rt3).case == "B"


# ---------------------------------------------------------------- splits

ALL_C6 = enumerate_routings(c6_instance(demands={"a1": 1, "a2": 0, "a3": 2, "b3": 1, "b2": 1, "b1": 1})).routings


def _check_split(inst, rt, parts):
    assert sum(w for w, _ in parts) == 1 and all(w > 0 for w, _ in parts)
    n = n_vector(inst, rt)
    avg = {e: sum(w * n_vector(inst, r)[e] for w, r in parts) for e in n}
    assert avg == n
    y = y_vector(inst, rt)
    assert all(sum(w * y_vector(inst, r)[e] for w, r in parts) <= y[e] for e in y)


@pytest.mark.parametrize("split", [terminal_split, uniform_prefix_split, thru_split])
def test_splits_average_to_the_n_vector(split):
    inst = c6_instance(demands={"a1": 1, "a2": 0, "a3": 2, "b3": 1, "b2": 1, "b1": 1})
    hits = 0
    for rt in ALL_C6:
        parts = split(FRAME, rt)
        if parts is not None:
            hits += 1
            _check_split(inst, rt, parts)
    assert hits > 0


def test_terminal_split_unifies_paths():
    inst = c6_instance(demands={"a1": 1, "a2": 0, "a3": 2, "b3": 0, "b2": 0, "b1": 0})
    rt = Routing([("a1",), ("a1", "a2", "a3"), ("a1", "b1", "b2", "b3", "a3")])
    parts = terminal_split(FRAME, rt)
    assert [w for w, _ in parts] == [F(1, 2), F(1, 2)]
    for _, r in parts:
        assert len({p for p in r if p[-1] == "a3"}) == 1
    _check_split(inst, rt, parts)


# ---------------------------------------------------------------- arc family and collapse

def test_arc_family_keeps_counts_and_saves_top_edge():
    inst = c6_instance(demands={"a1": 1, "a2": 0, "a3": 2, "b3": 1, "b2": 1, "b1": 1})
    for rt in ALL_C6:
        fam = ArcFamily.of(FRAME, rt)
        thru = [not pt.uses_top for _, pt in fam.thru]
        again = fam.realize(fam.counts_of(fam.word()), thru)
        n, n2 = n_vector(inst, rt), n_vector(inst, again)
        assert all(n[e] == n2[e] for e in n if e != FRAME.top_edge)
        assert n2[FRAME.top_edge] <= n[FRAME.top_edge]


def test_collapse_when_all_thru_paths_use_the_top_edge():
    inst = c6_instance()
    rt = Routing([("a1",), ("a1", "a2"), ("a1", "a2", "a3"), ("a1", "b1", "b2", "b3"),
                  ("a1", "b1"), ("a1", "a2", "b2")])
    col = collapse(inst, FRAME, rt)
    assert col is not None
    assert set(col.instance.graph.vertices) == {"a1", "a2", "b1", "b2"}
    assert col.instance.demands["a2"] == 2 and col.instance.demands["b2"] == 2
    assert col.instance.k == inst.k
    sub = Dominator().dominate(col.instance, col.routing)
    lifted = [(hang_lower_part(inst, FRAME, t, col.cut), lam) for t, lam in sub.entries]
    assert verify_certificate(inst, rt, Certificate(tuple(lifted), rt)) == []


def test_collapse_declines_thru_around():
    inst = c6_instance()
    rt = Routing([("a1",), ("a1", "a2"), ("a1", "a2", "a3"), ("a1", "b1", "b2", "b3"),
                  ("a1", "b1"), ("a1", "a2", "a3", "b3", "b2")])
    assert collapse(inst, FRAME, rt) is None


def test_local_step_parts_omit_an_edge_and_dominate():
    inst = c6_instance()
    seen = 0
    for rt in enumerate_routings(inst).routings:
        if is_tree_routing(inst, rt) or not all(n_vector(inst, rt).values()):
            continue
        step = local_step(inst, FRAME, rt)
        if step is None:
            continue
        seen += 1
        assert sum(w for w, _ in step.parts) == 1
        assert all(omits_edge(inst, r) for _, r in step.parts)
        y = y_vector(inst, rt)
        assert all(sum(w * y_vector(inst, r)[e] for w, r in step.parts) <= y[e] for e in y)
    assert seen > 0


# ---------------------------------------------------------------- dominator on ladders

@pytest.mark.parametrize("root", ["a1", "a2", "a3", "b3"])
def test_dominate_on_ladder_c6_every_routing(root):
    inst = c6_instance(root)
    dom = Dominator()
    for rt in enumerate_routings(inst).routings:
        cert = dominate_on_ladder(inst, rt, dom)
        assert verify_certificate(inst, rt, cert) == []
    assert dom.log["global-lp"] == 0


def test_dominate_on_ladder_best_tree_matches_optimum():
    for seed in range(5):
        rng = random.Random(seed)
        inst = c6_instance(costs={e: rng.randint(0, 10) for e in ladder_c6().edge_list})
        opt = optimal_routing(inst)
        cert = dominate_on_ladder(inst, opt.routing)
        best = min(routing_cost(inst, t) for t in cert.trees)
        assert best == opt.cost == optimal_tree_routing(inst).cost


def test_dominate_on_ladder_cycle_base_case():
    inst = Instance(Graph.cycle("rabc"), "r", dict.fromkeys("rabc", 1))
    rt = Routing([("r",), ("r", "c", "b", "a"), ("r", "a", "b"), ("r", "a", "b", "c")])
    dom = Dominator()
    assert verify_certificate(inst, rt, dominate_on_ladder(inst, rt, dom)) == []
    assert dom.log["cycle-designated"] == 1


def test_dominate_on_ladder_rejects_other_graphs():
    fan = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4), (4, 0)])
    inst = Instance(fan, 0, {0: 1})
    with pytest.raises(DominationError):
        dominate_on_ladder(inst, [(0,)])


@given(st.data())
@settings(max_examples=40)
def test_dominate_on_four_rung_ladder(data):
    g = ladder(4)
    root = data.draw(st.sampled_from(g.order))
    dem = {v: data.draw(st.integers(0, 1)) for v in g.order}
    dem[root] = 1
    inst = Instance(g, root, dem)
    paths = []
    for v in g.order:
        if dem[v]:
            paths.append(data.draw(st.sampled_from(enumerate_simple_paths(g, root, v).paths)))
    cert = dominate_on_ladder(inst, paths)
    assert verify_certificate(inst, paths, cert) == []
    assert dominates(cert.combined_y(inst), y_vector(inst, paths))


@pytest.mark.parametrize("g, roots", [(ladder_c6(), ("a1", "a2", "a3")), (ladder(4), ("a1", "a2"))],
                         ids=["c6-chord", "ladder4"])
def test_q1_reflects_the_line_function_in_case_a_prime(g, roots):
    seen = 0
    for root in roots:
        try:
            frame = LowestCycleFrame.of(g, root)
        except GraphError:
            continue
        inst = Instance(g, root, dict.fromkeys(g.vertices, 1))
        for rt in enumerate_routings(inst, cap=4000).routings:
            c = census(frame, rt)
            fam = ArcFamily.of(frame, rt)
            if (c.case != "A'" or any(pt.uses_top for _, pt in fam.thru)
                    or terminal_split(frame, rt) or uniform_prefix_split(frame, rt)):
                continue
            q1 = fam.flipped(fam.word())
            n, n1 = n_vector(inst, rt), n_vector(inst, q1)
            h = F(c.r_u + c.r_v, 2) + c.q
            assert n1[frame.top_edge] == 0
            assert all(n1[e] == 2 * h - n[e] for e in frame.line_edges)
            seen += 1
    assert seen > 0
