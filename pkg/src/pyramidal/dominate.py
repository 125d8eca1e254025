"""Top-level dominator for outerplanar instances.

``dominate`` first drops the edges a routing does not use, then splits the
remaining support into blocks.  Each block gets its own instance, rooted at
its vertex nearest the root, with the demand of everything hanging below a
cut vertex collected at that vertex.  Blocks are dominated independently
(cycle, ladder, or a ladder minor), and one tree per block glues into a
tree of the whole support.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .cycle import dominate_on_cycle, is_cycle
from .graph import Graph, apply_minor_op, blocks, is_two_connected, path_edges, vkey
from .ladder import (LowestCycleFrame, collapse, hang_lower_part, local_step, terminal_split,
                     thru_split, uniform_prefix_split)
from .minors import lift_instance, lift_routing, project_certificate_through_minor, restrict_to_support
from .outerplanar import embed_in_ladder, is_outerplanar
from .routing import (Certificate, Instance, Routing, check_routing, combine, is_tree_routing,
                      tree_routing, verify_certificate)

F = Fraction


class DominationError(ValueError):
    """Input outside the scope of the constructive dominators."""


def _inst_key(inst: Instance) -> tuple:
    return (inst.graph, inst.root, tuple(sorted(inst.demands.items(), key=lambda kv: vkey(kv[0]))))


@dataclass
class Dominator:
    """Dominator with a memo and a count of the routes taken.

    ``log`` counts, per route name, how often that route produced a
    certificate.  ``global_lp`` routes solve an LP over every tree routing of
    the instance instead of following the construction; they are counted
    separately so that sweeps can report them.
    """
    memo_limit: int = 200_000
    log: Counter = field(default_factory=Counter)
    memo: dict = field(default_factory=dict)

    # ------------------------------------------------------------ entry points

    def dominate(self, inst: Instance, rt) -> Certificate:
        rt = Routing(rt)
        check_routing(inst, rt)
        if not inst.graph.is_connected():
            raise DominationError("graph must be connected")
        for b in blocks(inst.graph).blocks:
            if len(b.edges) > 1 and not is_outerplanar(b):
                raise DominationError("graph is not outerplanar")
        return self._dominate(inst, rt)

    def on_ladder(self, inst: Instance, rt) -> Certificate:
        rt = Routing(rt)
        check_routing(inst, rt)
        g = inst.graph
        if g.max_degree() > 3 or not is_two_connected(g) or not is_outerplanar(g):
            raise DominationError("graph is not a ladder")
        return self._ladder(inst, rt)

    # ------------------------------------------------------------ dispatch

    def _dominate(self, inst: Instance, rt: Routing) -> Certificate:
        key = (_inst_key(inst), rt)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        cert = self._dispatch(inst, rt)
        bad = verify_certificate(inst, rt, cert)
        if bad:
            raise AssertionError(f"dominator produced a failing certificate: {bad[0]}")
        if len(self.memo) >= self.memo_limit:
            self.memo.clear()
        self.memo[key] = cert
        return cert

    def _dispatch(self, inst: Instance, rt: Routing) -> Certificate:
        if is_tree_routing(inst, rt):
            self.log["tree"] += 1
            return Certificate(((rt, F(1)),), rt)
        used = {e for p in rt for e in path_edges(p)}
        if used != set(inst.graph.edges):
            self.log["restrict"] += 1
            sub = restrict_to_support(inst, rt)
            return Certificate(self._dominate(sub, rt).entries, rt)
        dec = blocks(inst.graph)
        if len(dec.blocks) > 1:
            self.log["blocks"] += 1
            return self._by_blocks(inst, rt, dec)
        if is_cycle(inst.graph):
            cert, diag = dominate_on_cycle(inst, rt)
            self.log["cycle-" + diag.route] += 1
            return Certificate(cert.entries, rt)
        if inst.graph.max_degree() <= 3:
            return self._ladder(inst, rt)
        return self._via_ladder(inst, rt)

    # ------------------------------------------------------------ blocks

    def _by_blocks(self, inst: Instance, rt: Routing, dec) -> Certificate:
        parts = []
        for b, a in dec.rooted(inst.root):
            binst, brt = block_instance(inst, rt, b, a)
            parts.append(self._dominate(binst, brt))
        entries = []
        for lam, choice in staircase([c.entries for c in parts]):
            tree = set()
            for t in choice:
                tree |= {e for p in t for e in path_edges(p)}
            entries.append((tree_routing(inst, tree), lam))
        return Certificate(tuple(entries), rt).normalized()

    # ------------------------------------------------------------ ladders

    def _ladder(self, inst: Instance, rt: Routing) -> Certificate:
        if is_cycle(inst.graph):
            cert, diag = dominate_on_cycle(inst, rt)
            self.log["cycle-" + diag.route] += 1
            return Certificate(cert.entries, rt)
        if is_tree_routing(inst, rt):
            self.log["tree"] += 1
            return Certificate(((rt, F(1)),), rt)
        frame = LowestCycleFrame.of(inst.graph, inst.root)
        splits = (("terminal-split", terminal_split), ("prefix-split", uniform_prefix_split),
                  ("thru-split", thru_split))
        for name, split in splits:
            parts = split(frame, rt)
            if parts is not None:
                self.log[name] += 1
                return self._mixture(inst, rt, parts)
        col = collapse(inst, frame, rt)
        if col is not None:
            self.log["remove-U"] += 1
            sub = self._dominate(col.instance, col.routing)
            entries = tuple((hang_lower_part(inst, frame, t, col.cut), lam) for t, lam in sub.entries)
            return Certificate(entries, rt).normalized()
        step = local_step(inst, frame, rt)
        if step is not None:
            self.log["ladder-" + step.route] += 1
            return self._mixture(inst, rt, step.parts)
        self.log["global-lp"] += 1
        return global_lp(inst, rt)

    def _mixture(self, inst: Instance, rt: Routing, parts) -> Certificate:
        subs = [(w, self._dominate(inst, r)) for w, r in parts]
        return combine(subs, rt)

    # ------------------------------------------------------------ minors

    def _via_ladder(self, inst: Instance, rt: Routing) -> Certificate:
        """Lift to a ladder whose contractions give the block, then project back."""
        model, ops = embed_in_ladder(inst.graph, inst.root)
        graphs = [None] * (len(ops) + 1)
        g = graphs[0] = model.graph
        for i, op in enumerate(ops):
            g, _ = apply_minor_op(g, op.kind, op.edge, op.merged_vertex)
            graphs[i + 1] = g
        if graphs[-1] != inst.graph:
            raise AssertionError("contraction sequence does not rebuild the block")
        insts, rts = [None] * len(graphs), [None] * len(graphs)
        insts[-1], rts[-1] = inst, rt
        for i in range(len(ops) - 1, -1, -1):
            insts[i] = lift_instance(insts[i + 1], graphs[i], ops[i])
            rts[i] = lift_routing(rts[i + 1], ops[i])
            check_routing(insts[i], rts[i])
        self.log["lift"] += 1
        cert = self._dominate(insts[0], rts[0])
        for i, op in enumerate(ops):
            cert = project_certificate_through_minor(cert, op, insts[i + 1], rts[i + 1],
                                                     dominate_fn=self._dominate, log=self.log)
        return Certificate(cert.entries, rt)


def block_instance(inst: Instance, rt: Routing, b: Graph, a) -> tuple[Instance, Routing]:
    """Instance and routing on block ``b`` with root ``a``.

    Each path contributes its stretch inside ``b``, which starts at ``a``;
    paths that never use an edge of ``b`` contribute the trivial path
    ``(a,)``.  The root demand is what is left of ``k``.
    """
    paths = []
    for p in rt:
        idx = [i for i, e in enumerate(path_edges(p)) if e in b.edges]
        if not idx:
            paths.append((a,))
            continue
        stretch = tuple(p[idx[0]:idx[-1] + 2])
        if stretch[0] != a:
            raise AssertionError("path enters a block away from its attachment vertex")
        paths.append(stretch)
    dem = Counter(q[-1] for q in paths)
    costs = {e: inst.costs[e] for e in b.edges}
    return Instance(b, a, dict(dem), costs), Routing(paths)


def staircase(dists):
    """Couple discrete distributions along their cumulative weights.

    Yields ``(weight, (item_1, ..., item_m))`` so that the marginal of the
    i-th coordinate is ``dists[i]``.
    """
    cuts = set()
    for d in dists:
        acc = F(0)
        for _, w in d:
            acc += w
            cuts.add(acc)
    cuts = sorted(cuts)
    prev = F(0)
    pos = [0] * len(dists)
    acc = [d[0][1] for d in dists]
    for c in cuts:
        if c == prev:
            continue
        yield c - prev, tuple(d[i][0] for d, i in zip(dists, pos))
        for j, d in enumerate(dists):
            while pos[j] < len(d) - 1 and acc[j] <= c:
                pos[j] += 1
                acc[j] += d[pos[j]][1]
        prev = c


def global_lp(inst: Instance, rt: Routing) -> Certificate:
    from .solvers import find_dominating_combination, tree_routings

    cert = find_dominating_combination(inst, rt, tree_routings(inst))
    if cert is None:
        raise AssertionError("no convex combination of tree routings dominates the routing")
    return cert


_DEFAULT = Dominator()


def dominate(inst: Instance, rt, dominator: Dominator | None = None) -> Certificate:
    """Certificate of tree routings whose y-combination is at most ``y(rt)``."""
    return (dominator or _DEFAULT).dominate(inst, rt)


def dominate_on_ladder(inst: Instance, rt, dominator: Dominator | None = None) -> Certificate:
    return (dominator or _DEFAULT).on_ladder(inst, rt)


def route_log() -> Counter:
    return Counter(_DEFAULT.log)
