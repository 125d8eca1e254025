"""Reference solvers by exhaustive enumeration, plus polyhedral oracles."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .graph import Graph, enumerate_simple_paths, path_edges
from .lp import convex_domination, guided_convex_domination, pair_domination
from .outerplanar import is_outerplanar
from .routing import (Certificate, Instance, Routing, routing_cost,
                      tree_routing, verify_certificate, y_vector)

DEFAULT_CAP = 200_000


class RoutingEnumeration(NamedTuple):
    routings: list
    truncated: bool


class Optimum(NamedTuple):
    routing: Routing
    cost: Fraction
    truncated: bool = False


def terminal_paths(inst: Instance, cap: int | None = None) -> dict:
    """Simple root paths per non-root terminal, lexicographic."""
    out = {}
    for v in inst.terminals:
        if v == inst.root:
            continue
        res = enumerate_simple_paths(inst.graph, inst.root, v, cap)
        if res.truncated:
            raise RuntimeError(f"path enumeration to {v} exceeded cap {cap}")
        out[v] = res.paths
    return out


def count_routings(inst: Instance) -> int:
    total = 1
    for v, ps in terminal_paths(inst).items():
        total *= math.comb(len(ps) + inst.demands[v] - 1, inst.demands[v])
    return total


def enumerate_routings(inst: Instance, cap: int | None = DEFAULT_CAP) -> RoutingEnumeration:
    """Every routing once: per terminal, a multiset of b_v root paths."""
    per = terminal_paths(inst)
    trivial = [(inst.root,)] * inst.demands[inst.root]
    choices = [list(itertools.combinations_with_replacement(ps, inst.demands[v]))
               for v, ps in per.items()]
    out = []
    for combo in itertools.product(*choices):
        if cap is not None and len(out) >= cap:
            return RoutingEnumeration(out, True)
        out.append(Routing(trivial + [p for group in combo for p in group]))
    return RoutingEnumeration(out, False)


def optimal_routing(inst: Instance, cap: int | None = DEFAULT_CAP) -> Optimum:
    """Minimum-cost routing; first in enumeration order among ties."""
    rts, truncated = enumerate_routings(inst, cap)
    best = None
    for rt in rts:
        c = routing_cost(inst, rt)
        if best is None or c < best[1]:
            best = (rt, c)
    return Optimum(best[0], best[1], truncated)


# ---------------------------------------------------------------- trees

def spanning_trees(g: Graph):
    """Edge sets of all spanning trees (brute force over edge subsets)."""
    vs = g.order
    need = len(vs) - 1
    if need == 0:
        yield ()
        return
    for combo in itertools.combinations(g.edge_list, need):
        parent = {v: v for v in vs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for a, b in combo:
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        if ok:
            yield combo


def prune_to_terminals(tree_edges, keep) -> frozenset:
    """Repeatedly strip leaves that are not in ``keep``."""
    es = set(tree_edges)
    while True:
        deg: dict = {}
        for a, b in es:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        drop = {e for e in es if any(deg[x] == 1 and x not in keep for x in e)}
        if not drop:
            return frozenset(es)
        es -= drop


def tree_supports(inst: Instance) -> list[frozenset]:
    """Supports of all tree routings: subtrees whose leaves are terminals."""
    keep = set(inst.terminals)
    seen = set()
    for st in spanning_trees(inst.graph):
        seen.add(prune_to_terminals(st, keep))
    return sorted(seen, key=lambda s: sorted(map(_ekey_str, s)))


def _ekey_str(e):
    return (str(e[0]), str(e[1]))


def tree_routings(inst: Instance) -> list[Routing]:
    return [tree_routing(inst, s) for s in tree_supports(inst)]


def optimal_tree_routing(inst: Instance) -> Optimum:
    best = None
    for rt in tree_routings(inst):
        c = routing_cost(inst, rt)
        if best is None or c < best[1]:
            best = (rt, c)
    return Optimum(best[0], best[1], False)


# ---------------------------------------------------------------- domination LP

def find_dominating_combination(inst: Instance, target, trees: Sequence) -> Certificate | None:
    """Exact LP: convex weights on ``trees`` whose y-combination is <= y(target)."""
    if not trees:
        raise ValueError("need at least one candidate tree routing")
    edges = inst.graph.edge_list
    y = y_vector(inst, target)
    ys = [y_vector(inst, t) for t in trees]
    lam = convex_domination([[yt[e] for e in edges] for yt in ys], [y[e] for e in edges])
    if lam is None:
        return None
    cert = Certificate(tuple((t, l) for t, l in zip(trees, lam) if l > 0), target).normalized()
    bad = verify_certificate(inst, target, cert)
    if bad:
        raise AssertionError(f"LP certificate failed verification: {bad[0]}")
    return cert


# ---------------------------------------------------------------- polyhedron

@dataclass(frozen=True)
class PRPolyhedronModel:
    """Distinct y-vectors of all routings (rows follow ``edges``)."""
    edges: tuple
    sample: tuple
    truncated: bool = False

    @classmethod
    def from_instance(cls, inst: Instance, cap: int | None = DEFAULT_CAP) -> "PRPolyhedronModel":
        table = distinct_n_vectors(inst, cap)
        ys = np.unique(np.minimum(table.n, inst.k - table.n), axis=0)
        return cls(table.edges, tuple(tuple(int(x) for x in row) for row in ys), table.truncated)

    def minimal_points(self) -> list[tuple]:
        return pareto_minimal(self.sample)


def pareto_minimal(points) -> list[tuple]:
    """Points not dominated componentwise by a different point."""
    pts = sorted(set(map(tuple, points)), key=lambda p: (sum(p), p))
    if not pts:
        return []
    Y = np.asarray(pts, dtype=np.int64)
    keep = []
    for i, row in enumerate(Y):
        below = (Y[:i] <= row).all(axis=1)
        if not below.any():
            keep.append(pts[i])
    return keep


def _dominated(q, y) -> bool:
    return all(a <= b for a, b in zip(q, y))


def is_extremal_point(y: tuple, points: Sequence[tuple], hints: Sequence[tuple] = (),
                      minimal: Sequence[tuple] | None = None) -> bool:
    """Is ``y`` a vertex of conv(points) + nonnegative orthant?

    Only Pareto-minimal points matter.  ``hints`` is a subset of the points
    tried first: a feasible convex combination over any subset of the other
    points already refutes extremality, so hints only save time.
    """
    y = tuple(y)
    mins = [p for p in (pareto_minimal(points) if minimal is None else minimal) if p != y]
    if any(_dominated(q, y) for q in mins):
        return False
    hint = [p for p in hints if p != y]
    if hint and pair_domination(hint, y) is not None:
        return False
    for cand in (hint, mins):
        if cand and guided_convex_domination(cand, y) is not None:
            return False
    return True


def is_extremal(inst: Instance, rt, model: PRPolyhedronModel) -> bool:
    if model.truncated:
        raise RuntimeError("extremality needs an untruncated polyhedron model")
    y = y_vector(inst, rt)
    return is_extremal_point(tuple(y[e] for e in model.edges), model.sample)


# ---------------------------------------------------------------- vectorised enumeration

class NTable(NamedTuple):
    edges: tuple
    n: np.ndarray
    truncated: bool


def distinct_n_vectors(inst: Instance, cap: int | None = DEFAULT_CAP) -> NTable:
    """All distinct n-vectors, by Minkowski sums of path incidence rows."""
    edges = inst.graph.edge_list
    idx = {e: i for i, e in enumerate(edges)}
    acc = np.zeros((1, len(edges)), dtype=np.int64)
    truncated = False
    for v, ps in terminal_paths(inst).items():
        inc = np.zeros((len(ps), len(edges)), dtype=np.int64)
        for i, p in enumerate(ps):
            for e in path_edges(p):
                inc[i, idx[e]] = 1
        for _ in range(inst.demands[v]):
            acc = np.unique((acc[:, None, :] + inc[None, :, :]).reshape(-1, len(edges)), axis=0)
            if cap is not None and len(acc) > cap:
                acc, truncated = acc[:cap], True
    return NTable(edges, acc, truncated)


def tree_y_table(inst: Instance, edges: tuple) -> np.ndarray:
    rows = []
    for rt in tree_routings(inst):
        y = y_vector(inst, rt, validate=False)
        rows.append([y[e] for e in edges])
    return np.unique(np.array(rows, dtype=np.int64).reshape(-1, len(edges)), axis=0)


# ---------------------------------------------------------------- conjecture harness

@dataclass
class SearchReport:
    instances_checked: int = 0
    violations: list = field(default_factory=list)
    seed: int | None = None
    caps: dict = field(default_factory=dict)
    truncated: bool = False
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def outerplanar_family(n: int):
    """Cycle 0..n-1 plus every set of pairwise non-crossing chords."""
    ring = [(i, (i + 1) % n) for i in range(n)]
    diag = [(i, j) for i in range(n) for j in range(i + 2, n) if not (i == 0 and j == n - 1)]

    def cross(c, d):
        (a, b), (x, y) = c, d
        return a < x < b < y or x < a < y < b

    def rec(i, chosen):
        if i == len(diag):
            yield list(chosen)
            return
        yield from rec(i + 1, chosen)
        d = diag[i]
        if all(not cross(d, c) for c in chosen):
            chosen.append(d)
            yield from rec(i + 1, chosen)
            chosen.pop()

    for chords in rec(0, []):
        yield Graph.from_edges(ring + chords)


def demand_vectors(n: int, demand_max: int, k_max: int | None, root=0):
    others = [v for v in range(n) if v != root]
    for br in range(1, demand_max + 1):
        for rest in itertools.product(range(demand_max + 1), repeat=len(others)):
            k = br + sum(rest)
            if k_max is not None and k > k_max:
                continue
            d = dict(zip(others, rest))
            d[root] = br
            yield d


def random_costs(edges, rng: random.Random, lo=0, hi=10) -> dict:
    return {e: rng.randint(lo, hi) for e in edges}


def compare_on_instance(inst: Instance, cost_vectors: Sequence[dict], check_extremal: bool,
                        cap: int | None = DEFAULT_CAP) -> tuple[list, bool]:
    """Violations (as strings) of cost equality / extremality on one instance."""
    out = []
    table = distinct_n_vectors(inst, cap)
    edges = table.edges
    ys = np.unique(np.minimum(table.n, inst.k - table.n), axis=0)
    ty = tree_y_table(inst, edges)
    C = np.array([[c[e] for e in edges] for c in cost_vectors], dtype=np.int64).T
    if C.size:
        best_all = (ys @ C).min(axis=0)
        best_tree = (ty @ C).min(axis=0)
        for i, (a, b) in enumerate(zip(best_all, best_tree)):
            if a != b:
                out.append(f"cost vector {i}: optimum {a} but best tree {b}")
    if check_extremal and not table.truncated:
        tree_set = {tuple(map(int, r)) for r in ty}
        points = [tuple(map(int, r)) for r in ys]
        mins = pareto_minimal(points)
        tree_pts = [p for p in mins if p in tree_set]
        for p in mins:
            if p in tree_set:
                continue
            if is_extremal_point(p, points, hints=tree_pts, minimal=mins):
                out.append(f"extremal y-vector {p} is not a tree routing's")
    return out, table.truncated


def check_conjecture(max_vertices: int = 5, demand_max: int = 1, costs: int = 5, seed: int = 0,
                     k_max: int | None = None, min_vertices: int = 3,
                     allow_non_outerplanar: bool = False, check_extremal: bool = True,
                     cap: int | None = DEFAULT_CAP, graphs=None) -> SearchReport:
    """Sweep instances comparing optimal routing and optimal tree routing costs."""
    rng = random.Random(seed)
    report = SearchReport(seed=seed, caps=dict(max_vertices=max_vertices, demand_max=demand_max,
                                               costs=costs, k_max=k_max, cap=cap))
    if graphs is None:
        graphs = [g for n in range(min_vertices, max_vertices + 1) for g in outerplanar_family(n)]
        if allow_non_outerplanar:
            graphs += [g for g in _small_non_outerplanar() if len(g.vertices) <= max_vertices]
    for g in graphs:
        outer = is_outerplanar(g)
        n = len(g.vertices)
        root = g.order[0]
        for dem in demand_vectors(n, demand_max, k_max, root=root):
            inst = Instance(g, root, dem)
            cvs = [random_costs(g.edge_list, rng) for _ in range(costs)]
            bad, trunc = compare_on_instance(inst, cvs, check_extremal and outer, cap)
            report.instances_checked += 1
            report.truncated |= trunc
            for b in bad:
                if outer:
                    report.violations.append((g.edge_list, dem, b))
                else:
                    report.notes.append((g.edge_list, dem, b))
    return report


def _small_non_outerplanar():
    k4 = Graph.from_edges(itertools.combinations(range(4), 2))
    k23 = Graph.from_edges([(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    wheel = Graph.from_edges([(0, i) for i in range(1, 5)] + [(1, 2), (2, 3), (3, 4), (4, 1)])
    return [k4, k23, wheel]
