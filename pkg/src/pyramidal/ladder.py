"""The induction step on the lowest cycle of a ladder.

Notation: ``uv`` is the top edge of the lowest cycle, ``U`` the private
vertices of that face (a path ``w_1 .. w_{m-1}`` from the ``u`` side to
the ``v`` side, root not in ``U``), and ``Ubar`` the cycle ``u, U, v``.
In a ladder with at least two interior faces, ``u`` and ``v`` have degree
three and every vertex of ``U`` has degree two, so a path uses the edges of
``Ubar`` in one contiguous stretch: it enters at a port ``x`` in
``{u, v}`` and runs along one of the two arcs of ``Ubar`` to its goal,
either a terminal in ``U`` or the other port.

Every routing considered here keeps the parts of the paths outside
``Ubar`` fixed and only chooses arcs.  Such routings agree with ``P`` on
every edge outside ``Ubar``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cycle import PiecewiseLinearFn, _reduction
from .graph import Graph, GraphError, edge, path_edges
from .lp import guided_convex_domination, two_point_domination
from .outerplanar import ladder_model
from .routing import Instance, Routing, dominates, n_vector, tree_routing, y_vector

F = Fraction

PATTERNS = ("thru", "rut", "rvut", "rvt", "ruvt", "outside")


@dataclass(frozen=True)
class LowestCycleFrame:
    top_edge: tuple
    u: object
    v: object
    U: tuple          # in order from the u side to the v side

    @property
    def U_bar(self) -> tuple:
        return (self.u,) + self.U + (self.v,)

    @property
    def line(self) -> tuple:
        """Vertices ``w_0 = u, w_1, ..., w_m = v``."""
        return self.U_bar

    @property
    def line_edges(self) -> tuple:
        w = self.line
        return tuple(edge(a, b) for a, b in zip(w, w[1:]))

    @property
    def edges(self) -> frozenset:
        return frozenset(self.line_edges) | {self.top_edge}

    @classmethod
    def of(cls, g: Graph, root) -> "LowestCycleFrame":
        model = ladder_model(g, root)
        if model is None or model.top_edge is None:
            raise GraphError("no lowest cycle: graph is not a ladder with a chord")
        u, v = model.top_edge
        frame = cls(model.top_edge, u, v, tuple(model.lower_part()))
        if root in frame.U:
            raise GraphError("root lies in the lower part")
        if g.degree(u) > 3 or g.degree(v) > 3:
            raise GraphError("top edge ends must have degree at most three")
        return frame

    def arc(self, x, z, around: bool) -> tuple:
        """Path on Ubar from port x to z; ``around`` avoids the top edge."""
        w = self.line
        i, j = w.index(x), w.index(z)
        if around:
            return w[i:j + 1] if i <= j else w[j:i + 1][::-1]
        # through the top edge: x -> other port -> along the line to z
        y = self.v if x == self.u else self.u
        iy = w.index(y)
        return (x,) + (w[iy:j + 1] if iy <= j else w[j:iy + 1][::-1])


# ---------------------------------------------------------------- census

@dataclass(frozen=True)
class Portion:
    """Where a path meets Ubar: ``path[start..end]`` is its stretch on Ubar."""
    start: int
    end: int
    entry: object
    goal: object
    uses_top: bool


def portion(frame: LowestCycleFrame, path) -> Portion | None:
    es = frame.edges
    idx = [i for i, e in enumerate(path_edges(path)) if e in es]
    if not idx:
        return None
    a, b = idx[0], idx[-1] + 1
    stretch = path[a:b + 1]
    return Portion(a, b, path[a], path[b], frame.top_edge in path_edges(stretch))


def classify_pattern(frame: LowestCycleFrame, path) -> str:
    path = tuple(path)
    if path[-1] in frame.U:
        order = [x for x in path if x in (frame.u, frame.v)]
        return "r" + "".join("u" if x == frame.u else "v" for x in order) + "t"
    if portion(frame, path) is None:
        return "outside"
    return "thru"


@dataclass(frozen=True)
class PatternCensus:
    q: int
    r_u: int          # ruvt paths
    r_v: int          # rvut paths
    labels: tuple     # one per path of the routing, same order
    counts: dict

    @property
    def case(self) -> str:
        """Cell of the rut/rvut x rvt/ruvt table, or '-' when a side is empty."""
        c = self.counts
        left = "rut" if c.get("rut") else ("rvut" if c.get("rvut") else None)
        right = "rvt" if c.get("rvt") else ("ruvt" if c.get("ruvt") else None)
        if c.get("rut") and c.get("rvut") or c.get("rvt") and c.get("ruvt"):
            return "untamed"
        if left is None or right is None:
            return "-"
        return {("rut", "rvt"): "A", ("rvut", "ruvt"): "A'"}.get((left, right), "B")


def census(frame: LowestCycleFrame, rt) -> PatternCensus:
    labels = tuple(classify_pattern(frame, p) for p in rt)
    c = Counter(labels)
    return PatternCensus(c["thru"], c["ruvt"], c["rvut"], labels, dict(c))


# ---------------------------------------------------------------- exact splits

def uniform_prefix_split(frame: LowestCycleFrame, rt) -> list[tuple[Fraction, Routing]] | None:
    """Make all U-terminal paths that enter U at the same port share one prefix.

    For the M such paths at a port, routing ``R_j`` gives every one of them
    the j-th prefix.  Prefixes live outside U and suffixes inside U, so each
    ``R_j`` is a routing, and ``n(P)`` is the average of the ``n(R_j)``.
    Returns None when the prefixes already coincide at both ports.
    """
    rt = Routing(rt)
    for port in (frame.u, frame.v):
        idx = []
        for i, p in enumerate(rt):
            if p[-1] in frame.U:
                k = p.index(port) if port in p else None
                # the last port before entering U
                if k is not None and p[k + 1] in frame.U:
                    idx.append((i, k))
        prefixes = [rt[i][:k + 1] for i, k in idx]
        if len(set(prefixes)) <= 1:
            continue
        out: dict = {}
        M = len(idx)
        for pre in prefixes:
            paths = list(rt)
            for i, k in idx:
                paths[i] = pre + rt[i][k + 1:]
            r = Routing(paths)
            out[r] = out.get(r, 0) + F(1, M)
        return sorted(((w, r) for r, w in out.items()), key=lambda wr: _rkey(wr[1]))
    return None


def terminal_split(frame: LowestCycleFrame, rt) -> list[tuple[Fraction, Routing]] | None:
    """Send all units of a U-terminal along one of its paths.

    For a terminal ``w`` in U reached by paths ``p_1 .. p_b`` that are not
    all equal, routing ``R_j`` sends every unit of ``w`` along ``p_j``;
    ``n(P)`` is the average of the ``n(R_j)``.  Returns None when every
    terminal of U already has a single path.
    """
    rt = Routing(rt)
    for w in frame.U:
        idx = [i for i, p in enumerate(rt) if p[-1] == w]
        mine = [rt[i] for i in idx]
        if len(set(mine)) <= 1:
            continue
        out: dict = {}
        for q in mine:
            paths = list(rt)
            for i in idx:
                paths[i] = q
            r = Routing(paths)
            out[r] = out.get(r, 0) + F(1, len(mine))
        return sorted(((wt, r) for r, wt in out.items()), key=lambda wr: _rkey(wr[1]))
    return None


def _rkey(rt):
    from .graph import vkey
    return [[vkey(x) for x in p] for p in rt]


def thru_split(frame: LowestCycleFrame, rt) -> list[tuple[Fraction, Routing]] | None:
    """Split by the share of thru paths going around U instead of over uv."""
    rt = Routing(rt)
    thru = []
    for i, p in enumerate(rt):
        if p[-1] in frame.U:
            continue
        pt = portion(frame, p)
        if pt is not None and {pt.entry, pt.goal} == {frame.u, frame.v}:
            thru.append((i, pt))
    q = len(thru)
    around = sum(1 for _, pt in thru if not pt.uses_top)
    if q == 0 or around in (0, q):
        return None
    parts = []
    for w, go_around in ((F(around, q), True), (F(q - around, q), False)):
        paths = list(rt)
        for i, pt in thru:
            p = rt[i]
            paths[i] = p[:pt.start] + frame.arc(pt.entry, pt.goal, go_around) + p[pt.end + 1:]
        parts.append((w, Routing(paths)))
    return parts


# ---------------------------------------------------------------- arc family

@dataclass(frozen=True)
class ArcFamily:
    """Routings that differ from ``rt`` only in the arcs chosen on Ubar."""
    frame: LowestCycleFrame
    rt: Routing
    units: tuple      # (path index, U-index i, entry) per U-terminal path
    thru: tuple       # (path index, Portion) per thru path
    demand: tuple     # units per U-vertex w_1..w_{m-1}

    @classmethod
    def of(cls, frame: LowestCycleFrame, rt) -> "ArcFamily":
        rt = Routing(rt)
        pos = {w: i for i, w in enumerate(frame.line)}
        units, thru = [], []
        for idx, p in enumerate(rt):
            pt = portion(frame, p)
            if pt is None:
                continue
            if p[-1] in frame.U:
                units.append((idx, pos[p[-1]], pt.entry, pt))
            else:
                thru.append((idx, pt))
        units.sort(key=lambda u: (u[1], u[2] != frame.u, u[0]))
        dem = [0] * (len(frame.line) - 2)
        for _, i, _, _ in units:
            dem[i - 1] += 1
        return cls(frame, rt, tuple(units), tuple(thru), tuple(dem))

    @property
    def breakpoints(self) -> list:
        out = [0]
        for b in self.demand:
            out.append(out[-1] + b)
        return out

    def sides(self) -> list:
        """-1 when the unit arrives from the u side, +1 from the v side."""
        out = []
        line = self.frame.line
        for idx, i, _, pt in self.units:
            p = self.rt[idx]
            out.append(-1 if p[pt.end - 1] == line[i - 1] else 1)
        return out

    def around_count(self) -> int:
        return sum(1 for _, pt in self.thru if not pt.uses_top)

    def realize(self, counts: Sequence[int], thru_around) -> Routing:
        """Routing with ``counts[i]`` u-side arrivals at ``w_{i+1}``.

        The prefixes (root to entry port) of the U-terminal paths form a
        pool per port; a u-side arrival takes a prefix entering at u when
        one is left and otherwise a prefix entering at v followed by the
        top edge (or cut at u when it already passes u).  Reassigning
        prefixes between terminals leaves every edge outside Ubar as it
        is, and uv is used as little as the counts allow.  ``thru_around``
        is a bool for all thru paths at once or a per-path sequence.
        """
        fr = self.frame
        paths = list(self.rt)
        pool = {fr.u: [], fr.v: []}
        for idx, _, entry, pt in self.units:
            pool[entry].append(self.rt[idx][:pt.start + 1])
        given = Counter()
        for idx, i, _, _ in self.units:
            from_u = given[i] < counts[i - 1]
            given[i] += 1
            side = fr.u if from_u else fr.v
            other = fr.v if from_u else fr.u
            target = fr.line[i]
            if pool[side]:
                paths[idx] = pool[side].pop(0)[:-1] + fr.arc(side, target, True)
                continue
            pre = pool[other].pop(0)
            if side in pre:
                paths[idx] = pre[:pre.index(side)] + fr.arc(side, target, True)
            else:
                paths[idx] = pre[:-1] + fr.arc(other, target, False)
        if isinstance(thru_around, bool):
            thru_around = [thru_around] * len(self.thru)
        for (idx, pt), around in zip(self.thru, thru_around):
            p = self.rt[idx]
            paths[idx] = p[:pt.start] + fr.arc(pt.entry, pt.goal, around) + p[pt.end + 1:]
        return Routing(paths)

    def word(self) -> list:
        """Unit slopes along w_1 .. w_{m-1}, u-side arrivals first per vertex."""
        s = self.sides()
        out, pos = [], 0
        for b in self.demand:
            block = s[pos:pos + b]
            out += [-1] * block.count(-1) + [1] * block.count(1)
            pos += b
        return out

    def offset(self) -> int:
        return self.around_count()

    def counts_of(self, word) -> list:
        out, pos = [], 0
        for b in self.demand:
            out.append(sum(1 for a in word[pos:pos + b] if a < 0))
            pos += b
        return out

    def fn(self, word) -> PiecewiseLinearFn:
        vals = [self.offset() + sum(1 for a in word if a < 0)]
        for a in word:
            vals.append(vals[-1] + a)
        return PiecewiseLinearFn.from_values(vals)

    def values(self, word) -> list:
        vals = [self.offset() + sum(1 for a in word if a < 0)]
        for a in word:
            vals.append(vals[-1] + a)
        return vals

    def tree_at(self, t: int) -> Routing:
        """Units left of t from the u side, the rest from the v side, thru over uv."""
        word = [-1] * t + [1] * (len(self.word()) - t)
        return self.realize(self.counts_of(word), False)

    def top_free(self) -> Routing:
        """Every unit from its own entry side, thru paths around U."""
        fr = self.frame
        counts = [0] * len(self.demand)
        for _, i, entry, _ in self.units:
            if entry == fr.u:
                counts[i - 1] += 1
        return self.realize(counts, True)

    def flipped(self, word) -> Routing:
        """Arrival side of every unit reversed (thru paths unchanged)."""
        counts = [b - c for b, c in zip(self.demand, self.counts_of(word))]
        return self.realize(counts, [not pt.uses_top for _, pt in self.thru])


def smooth_on_line(inst: Instance, fam: ArcFamily) -> tuple[list, Routing, int]:
    """Reflect the unit word on the line while the full y-vector does not grow."""
    word = fam.word()
    thru = [not pt.uses_top for _, pt in fam.thru]
    cur = fam.rt
    y = y_vector(inst, cur)
    steps = 0
    while True:
        vals = fam.values(word)
        move = _reduction(vals, inst.k)
        if move is None:
            return word, cur, steps
        t1, t2 = move
        nxt = list(word)
        nxt[t1:t2] = [-a for a in nxt[t1:t2]]
        cand = fam.realize(fam.counts_of(nxt), thru)
        yc = y_vector(inst, cand)
        if not dominates(yc, y) or yc == y:
            return word, cur, steps
        word, cur, y, steps = nxt, cand, yc, steps + 1


@dataclass(frozen=True)
class LadderStep:
    """Routings omitting an edge, with weights, dominating the step's input."""
    parts: tuple      # ((weight, Routing), ...)
    route: str
    case: str
    alpha_beta: tuple = ()


def omits_edge(inst: Instance, rt) -> bool:
    n = n_vector(inst, rt, validate=False)
    return any(x == 0 for x in n.values())


def local_step(inst: Instance, frame: LowestCycleFrame, rt) -> LadderStep | None:
    """Dominate ``y(rt)`` by routings of the arc family that omit an edge.

    Candidates: ``Q1`` (every arrival side reversed), the routing keeping
    every unit on its entry side with thru paths around U (omits uv), for
    each breakpoint ``s_j`` of the line the routing omitting ``e_j``, and
    the sorted arrival words with thru paths around U.  Only candidates
    that omit some edge are kept.
    The designated pair is ``Q1`` with the tree at the peak of the smoothed
    n-function; then every pair is tried, then all candidates at once.
    """
    rt = Routing(rt)
    es = inst.graph.edge_list
    y = y_vector(inst, rt)
    fam = ArcFamily.of(frame, rt)
    word, smoothed, _ = smooth_on_line(inst, fam)
    ys = y_vector(inst, smoothed)
    if not dominates(ys, y):
        raise AssertionError("smoothing on the lowest cycle increased y")
    sfam = ArcFamily.of(frame, smoothed)
    cands: dict = {}

    def add(name, r):
        if r not in {c for c in cands.values()} and omits_edge(inst, r):
            cands[name] = r

    add("Q1", sfam.flipped(word))
    fn = sfam.fn(word)
    peaks = [int(p) for p, _ in fn.peaks()]
    bps = sfam.breakpoints
    order = sorted(set(bps), key=lambda t: (min(abs(t - p) for p in peaks) if peaks else 0, t))
    for t in order:
        add(f"T{t}", sfam.tree_at(t))
    add("top-free", sfam.top_free())
    total = len(word)
    for a in range(total + 1):
        add(f"S{a}", sfam.realize(sfam.counts_of([-1] * a + [1] * (total - a)), True))
    names = list(cands)
    vec = {nm: [y_vector(inst, cands[nm])[e] for e in es] for nm in names}
    target = [y[e] for e in es]
    for nm in names:
        if all(a <= b for a, b in zip(vec[nm], target)):
            return LadderStep(((F(1), cands[nm]),), "local-single", census(frame, rt).case)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            lam = two_point_domination(vec[a], vec[b], target)
            if lam is not None:
                route = "designated" if a == "Q1" and i == 0 and b == names[1] else "local-pair"
                return LadderStep(((lam, cands[a]), (1 - lam, cands[b])), route,
                                  census(frame, rt).case)
    if names:
        lam = guided_convex_domination([vec[nm] for nm in names], target)
        if lam is not None:
            parts = tuple((l, cands[nm]) for nm, l in zip(names, lam) if l > 0)
            return LadderStep(parts, "local-lp", census(frame, rt).case)
    return None


# ---------------------------------------------------------------- removing U

@dataclass(frozen=True)
class Collapse:
    """``rt`` cut at the arrival ports, on the graph without U."""
    instance: Instance
    routing: Routing
    from_u: int       # units arriving from the u side
    cut: int          # line edge index omitted by the lifted trees


def collapse(inst: Instance, frame: LowestCycleFrame, rt) -> Collapse | None:
    """Remove U when no thru path goes around it.

    Every U-terminal path is cut where it arrives at U's port, and the
    demand of U moves to u and v accordingly; every edge left keeps its
    count.  Returns None when a thru path avoids uv, when the u-side
    count is not a breakpoint, or when hanging U back from u and v with
    the line edge at that breakpoint removed would raise y on the line.
    """
    rt = Routing(rt)
    fam = ArcFamily.of(frame, rt)
    if any(not pt.uses_top for _, pt in fam.thru):
        return None
    sides = fam.sides()
    A = sides.count(-1)
    bps = fam.breakpoints
    if A not in bps:
        return None
    j = bps.index(A)
    y = y_vector(inst, rt)
    k = inst.k
    for i, e in enumerate(frame.line_edges):
        x = abs(bps[i] - A) if i < len(bps) else abs(bps[-1] - A)
        if min(x, k - x) > y[e]:
            return None
    paths = list(rt)
    for (idx, i, _, pt), side in zip(fam.units, sides):
        p = rt[idx]
        port = frame.u if side < 0 else frame.v
        # walk back from the terminal to the port where the path arrived
        cut = len(p) - 1
        while p[cut] != port:
            cut -= 1
        paths[idx] = p[:cut + 1]
    g2 = inst.graph.without_vertices(frame.U)
    dem = {v: b for v, b in inst.demands.items() if v not in frame.U}
    dem[frame.u] += A
    dem[frame.v] += len(sides) - A
    costs = {e: c for e, c in inst.costs.items() if e in g2.edges}
    return Collapse(Instance(g2, inst.root, dem, costs), Routing(paths), A, j)


def hang_lower_part(inst: Instance, frame: LowestCycleFrame, tree: Routing, cut: int) -> Routing:
    """Tree routing on the full graph: ``tree`` plus the line without edge ``cut``."""
    es = {e for p in tree for e in path_edges(p)}
    es |= {e for i, e in enumerate(frame.line_edges) if i != cut}
    return tree_routing(inst, es)
