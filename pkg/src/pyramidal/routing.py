"""Pyramidal routing instances, routings, n-/y-vectors and certificates.

All arithmetic is exact: demands and path counts are ints, costs and
convex coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .graph import Edge, Graph, GraphError, edge, path_edges, tree_path, vkey


class ValidationError(ValueError):
    """A routing or certificate does not satisfy its definition."""


def pyramidal(x, k):
    """min(x, k - x); accepts rationals, range-checked against [0, k]."""
    if not 0 <= x <= k:
        raise ValueError(f"pyramidal argument {x} outside [0, {k}]")
    return min(x, k - x)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    root: object
    demands: Mapping = field(hash=False)
    costs: Mapping = field(default=None, hash=False, compare=False)

    def __post_init__(self):
        g = self.graph
        if self.root not in g.vertices:
            raise GraphError(f"root {self.root!r} not in graph")
        dem = {v: 0 for v in g.vertices}
        for v, b in self.demands.items():
            if v not in g.vertices:
                raise GraphError(f"demand on unknown vertex {v!r}")
            if int(b) != b or b < 0:
                raise ValueError(f"demand of {v!r} must be a nonnegative integer, got {b}")
            dem[v] = int(b)
        if dem[self.root] < 1:
            raise ValueError("root must be a terminal (demand >= 1)")
        object.__setattr__(self, "demands", dem)
        costs = {e: Fraction(1) for e in g.edges}
        for e, c in (self.costs or {}).items():
            e = edge(*e)
            if e not in g.edges:
                raise GraphError(f"cost on unknown edge {e!r}")
            c = Fraction(c)
            if c < 0:
                raise ValueError(f"negative cost on {e!r}")
            costs[e] = c
        object.__setattr__(self, "costs", costs)

    @property
    def k(self) -> int:
        return sum(self.demands.values())

    total_demand = k

    @property
    def terminals(self) -> list:
        return [v for v in self.graph.order if self.demands[v] > 0]

    def with_costs(self, costs: Mapping) -> "Instance":
        return Instance(self.graph, self.root, self.demands, costs)

    def with_graph(self, g: Graph) -> "Instance":
        keep = {e: c for e, c in self.costs.items() if e in g.edges}
        return Instance(g, self.root, {v: b for v, b in self.demands.items() if v in g.vertices}, keep)


class Routing(tuple):
    """Multiset of root paths in canonical (sorted) order."""

    def __new__(cls, paths: Iterable = ()):
        ps = [tuple(p) for p in paths]
        ps.sort(key=lambda p: [vkey(v) for v in p])
        return super().__new__(cls, ps)

    def __repr__(self):
        return f"Routing({list(self)!r})"

    def replace(self, old, new) -> "Routing":
        ps = list(self)
        ps.remove(tuple(old))
        ps.append(tuple(new))
        return Routing(ps)

    def paths_to(self, v) -> list:
        return [p for p in self if p[-1] == v]


def routing_violations(inst: Instance, rt: Iterable) -> list[str]:
    """All violated routing clauses, in a fixed order; empty means valid."""
    g, out = inst.graph, []
    ends: Counter = Counter()
    for p in rt:
        p = tuple(p)
        if not p:
            out.append("empty path")
            continue
        if p[0] != inst.root:
            out.append(f"path {list(p)} does not start at root {inst.root}")
        if len(set(p)) != len(p):
            out.append(f"path {list(p)} not simple")
        for a, b in zip(p, p[1:]):
            if a not in g.vertices or b not in g.vertices or not g.has_edge(a, b):
                out.append(f"path {list(p)} uses non-edge {a}-{b}")
                break
        ends[p[-1]] += 1
    for v in g.order:
        want, got = inst.demands[v], ends.get(v, 0)
        if want != got:
            out.append(f"terminal {v} expects {want} paths, found {got}")
    for v in ends:
        if v not in g.vertices:
            out.append(f"path ends at unknown vertex {v}")
    return out


def validate_routing(inst: Instance, rt) -> list[str]:
    """Report of the first violated clause (empty list when valid)."""
    return routing_violations(inst, rt)[:1]


def check_routing(inst: Instance, rt) -> None:
    bad = routing_violations(inst, rt)
    if bad:
        raise ValidationError(bad[0])


def n_vector(inst: Instance, rt, validate: bool = True) -> dict:
    if validate:
        check_routing(inst, rt)
    n = dict.fromkeys(inst.graph.edges, 0)
    for p in rt:
        for e in path_edges(p):
            n[e] += 1
    return n


def y_vector(inst: Instance, rt, validate: bool = True) -> dict:
    k = inst.k
    return {e: pyramidal(x, k) for e, x in n_vector(inst, rt, validate).items()}


def y_from_n(n: Mapping, k: int) -> dict:
    return {e: pyramidal(x, k) for e, x in n.items()}


def routing_cost(inst: Instance, rt, costs: Mapping | None = None) -> Fraction:
    c = inst.costs if costs is None else costs
    return sum((Fraction(c[e]) * y for e, y in y_vector(inst, rt).items()), Fraction(0))


def support(inst: Instance, rt) -> list[Edge]:
    n = n_vector(inst, rt, validate=False)
    return [e for e in inst.graph.edge_list if n[e] > 0]


def is_tree_routing(inst: Instance, rt) -> bool:
    """Support edges form a tree touching every terminal."""
    sup = support(inst, rt)
    if not sup:
        return all(v == inst.root for v in inst.terminals)
    sub = inst.graph.edge_subgraph(sup)
    return sub.is_tree() and all(v in sub.vertices for v in inst.terminals)


def tree_routing(inst: Instance, tree_edges: Iterable[Edge]) -> Routing:
    """The routing sending each demand unit along the tree's unique root path."""
    tree_edges = list(tree_edges)
    paths = []
    for v in inst.graph.order:
        b = inst.demands[v]
        if not b:
            continue
        p = tree_path(tree_edges, inst.root, v)
        if p is None:
            raise ValidationError(f"tree does not reach terminal {v}")
        paths.extend([tuple(p)] * b)
    return Routing(paths)


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class Certificate:
    entries: tuple  # ((Routing, Fraction), ...)
    target: object = None

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           tuple((Routing(t), Fraction(lam)) for t, lam in self.entries))

    @property
    def trees(self) -> list:
        return [t for t, _ in self.entries]

    @property
    def coefficients(self) -> list:
        return [lam for _, lam in self.entries]

    def __len__(self):
        return len(self.entries)

    def combined_y(self, inst: Instance) -> dict:
        out = dict.fromkeys(inst.graph.edges, Fraction(0))
        for t, lam in self.entries:
            for e, y in y_vector(inst, t, validate=False).items():
                out[e] += lam * y
        return out

    def normalized(self) -> "Certificate":
        """Merge duplicate trees, drop zero weights, canonical order."""
        acc: dict = {}
        for t, lam in self.entries:
            acc[t] = acc.get(t, Fraction(0)) + lam
        items = sorted(((t, lam) for t, lam in acc.items() if lam != 0),
                       key=lambda it: [[vkey(v) for v in p] for p in it[0]])
        return Certificate(tuple(items), self.target)


def combine(parts: Iterable[tuple[Fraction, Certificate]], target=None) -> Certificate:
    """Convex combination of certificates (weights need not be normalized here)."""
    entries = []
    for w, cert in parts:
        w = Fraction(w)
        if w == 0:
            continue
        entries.extend((t, w * lam) for t, lam in cert.entries)
    return Certificate(tuple(entries), target).normalized()


def certificate_violations(inst: Instance, target, cert: Certificate) -> list[str]:
    """Exact checks in a fixed order; the first entry is the first failure."""
    out = []
    lams = cert.coefficients
    if not lams:
        return ["certificate is empty"]
    for i, lam in enumerate(lams):
        if lam <= 0:
            out.append(f"coefficient {i} is {lam}, not positive")
    total = sum(lams, Fraction(0))
    if total != 1:
        out.append(f"coefficients sum to {total}")
    for i, t in enumerate(cert.trees):
        bad = routing_violations(inst, t)
        if bad:
            out.append(f"tree {i}: {bad[0]}")
        elif not is_tree_routing(inst, t):
            out.append(f"tree {i} is not a tree routing")
    if out:
        return out
    tgt_bad = routing_violations(inst, target)
    if tgt_bad:
        return [f"target: {tgt_bad[0]}"]
    y = y_vector(inst, target)
    comb = cert.combined_y(inst)
    for e in inst.graph.edge_list:
        if comb[e] > y[e]:
            out.append(f"edge {e[0]}-{e[1]}: combination {comb[e]} exceeds target {y[e]}")
    return out


def verify_certificate(inst: Instance, target, cert: Certificate) -> list[str]:
    """First failing clause as a one-element list; empty list when verified."""
    return certificate_violations(inst, target, cert)[:1]


def dominates(y_small: Mapping, y_big: Mapping) -> bool:
    return all(y_small[e] <= y_big[e] for e in y_big)
