from fractions import Fraction as F

import pytest
from hypothesis import given

import oracles
from helpers import ALL_EDGES, CLOCKWISE, MIXED, c4_instance, instance_routings
from pyramidal.graph import Graph, edge
from pyramidal.routing import (Certificate, Instance, Routing, ValidationError, combine, is_tree_routing,
                               n_vector, pyramidal, routing_cost, routing_violations, tree_routing,
                               validate_routing, verify_certificate, y_vector)

E = {"ra": edge("r", "a"), "ab": edge("a", "b"), "bc": edge("b", "c"), "cr": edge("c", "r")}


def named(vec):
    return {name: vec[e] for name, e in E.items()}


def omit(name):
    inst = c4_instance()
    return tree_routing(inst, [e for n, e in E.items() if n != name])


def test_pyramidal_examples():
    assert pyramidal(0, 4) == 0
    assert pyramidal(3, 4) == 1
    assert pyramidal(2, 4) == 2
    with pytest.raises(ValueError):
        pyramidal(5, 4)


def test_instance_total_demand():
    assert c4_instance().k == 4


def test_instance_requires_root_terminal():
    with pytest.raises(ValueError):
        Instance(Graph.path("ra"), "r", {"r": 0, "a": 1})


def test_n_vector_examples():
    inst = c4_instance()
    assert named(n_vector(inst, CLOCKWISE)) == {"ra": 3, "ab": 2, "bc": 1, "cr": 0}
    assert named(n_vector(inst, MIXED)) == {"ra": 2, "ab": 1, "bc": 0, "cr": 1}
    trivial = Instance(Graph.cycle("rabc"), "r", {"r": 3})
    assert set(n_vector(trivial, [("r",)] * 3).values()) == {0}
    assert set(y_vector(trivial, [("r",)] * 3).values()) == {0}


def test_y_vector_examples():
    inst = c4_instance()
    assert named(y_vector(inst, CLOCKWISE)) == {"ra": 1, "ab": 2, "bc": 1, "cr": 0}
    assert named(n_vector(inst, ALL_EDGES)) == {"ra": 2, "ab": 3, "bc": 2, "cr": 1}
    assert named(y_vector(inst, ALL_EDGES)) == {"ra": 2, "ab": 1, "bc": 2, "cr": 1}


def test_routing_cost_examples():
    assert routing_cost(c4_instance(), CLOCKWISE) == 4
    assert routing_cost(c4_instance(dict.fromkeys(E.values(), 0)), CLOCKWISE) == 0
    costs = {E["ra"]: 1, E["ab"]: 2, E["bc"]: 1, E["cr"]: 5}
    assert routing_cost(c4_instance(costs), CLOCKWISE) == 6


def test_validate_examples():
    inst = c4_instance()
    assert validate_routing(inst, CLOCKWISE) == []
    inst2 = Instance(inst.graph, "r", {**inst.demands, "b": 2})
    assert validate_routing(inst2, CLOCKWISE) == ["terminal b expects 2 paths, found 1"]
    assert any("not simple" in m for m in routing_violations(inst, [("r", "a", "r")]))
    with pytest.raises(ValidationError):
        n_vector(inst2, CLOCKWISE)


def test_is_tree_routing_examples():
    inst = c4_instance()
    assert is_tree_routing(inst, CLOCKWISE)
    assert is_tree_routing(inst, MIXED)
    assert not is_tree_routing(inst, ALL_EDGES)


def test_tree_routing_follows_tree_paths():
    inst = c4_instance()
    assert omit("cr") == CLOCKWISE
    assert named(y_vector(inst, omit("ab"))) == {"ra": 1, "ab": 0, "bc": 1, "cr": 2}


def test_certificate_fails_at_cr():
    inst = c4_instance()
    cert = Certificate(((omit("ab"), F(1, 2)), (omit("ra"), F(1, 2))))
    assert named(cert.combined_y(inst)) == {"ra": F(1, 2), "ab": F(1, 2), "bc": F(3, 2), "cr": F(3, 2)}
    assert verify_certificate(inst, ALL_EDGES, cert) == ["edge c-r: combination 3/2 exceeds target 1"]


def test_certificate_passes_with_omit_ab_and_cr():
    inst = c4_instance()
    cert = Certificate(((omit("ab"), F(1, 2)), (omit("cr"), F(1, 2))))
    assert verify_certificate(inst, ALL_EDGES, cert) == []


def test_certificate_reflexive_on_tree_routing():
    assert verify_certificate(c4_instance(), CLOCKWISE, Certificate(((CLOCKWISE, 1),))) == []


def test_certificate_coefficient_sum():
    cert = Certificate(((omit("ab"), F(1, 3)), (omit("cr"), F(1, 3))))
    assert verify_certificate(c4_instance(), ALL_EDGES, cert) == ["coefficients sum to 2/3"]


def test_certificate_rejects_non_tree_entry():
    cert = Certificate(((ALL_EDGES, 1),))
    assert verify_certificate(c4_instance(), ALL_EDGES, cert) == ["tree 0 is not a tree routing"]


def test_combine_and_normalize():
    a = Certificate(((omit("ab"), 1),))
    b = Certificate(((omit("cr"), F(1, 2)), (omit("ab"), F(1, 2))))
    c = combine([(F(1, 2), a), (F(1, 2), b)])
    assert dict(c.entries) == {omit("ab"): F(3, 4), omit("cr"): F(1, 4)}


def test_routing_is_canonical_multiset():
    assert Routing([("r", "a"), ("r",)]) == Routing([("r",), ("r", "a")])
    assert Routing([("r", "a")]).replace(("r", "a"), ("r", "c", "b", "a")) == Routing([("r", "c", "b", "a")])


# ---------------------------------------------------------------- invariants



@given(instance_routings())
def test_vectors_match_oracle(data):
    inst, rt = data
    n, y = n_vector(inst, rt), y_vector(inst, rt)
    ref = oracles.y_counts(rt, inst.graph.edges, inst.k)
    cnt = oracles.n_counts(rt)
    for e in inst.graph.edges:
        assert n[e] == cnt[oracles.key(*e)]
        assert y[e] == ref[oracles.key(*e)]
        assert 0 <= y[e] <= inst.k // 2 and y[e] <= n[e]


@given(instance_routings())
def test_root_edges_carry_all_non_root_demand(data):
    inst, rt = data
    n = n_vector(inst, rt)
    assert sum(n[e] for e in inst.graph.incident(inst.root)) == inst.k - inst.demands[inst.root]
    assert len(rt) == inst.k
    assert sum(1 for p in rt if len(p) == 1) == inst.demands[inst.root]
