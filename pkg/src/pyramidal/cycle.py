"""n-functions on cycle coordinates, reflection, smoothing, and the cycle dominator.

Coordinates: walk the cycle as ``w_0 = r, e_0, w_1, ..., w_m, e_m`` and put
``s_i = b(w_1) + ... + b(w_i)``.  Each unit of demand at ``w_i`` occupies the
unit interval just left of ``s_i``.  A unit reached clockwise (through
``e_0``) contributes slope -1 there, a unit reached the other way slope +1,
and the value at 0 is the number of clockwise units.  Evaluated at ``s_i``
this interpolation is exactly ``n(e_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import Graph, GraphError, edge
from .lp import pair_domination, two_point_domination
from .routing import (Certificate, Instance, Routing, ValidationError, dominates, is_tree_routing,
                      n_vector, pyramidal, tree_routing, y_vector)
from .taming import canonicalize

F = Fraction


# ---------------------------------------------------------------- functions

@dataclass(frozen=True)
class PiecewiseLinearFn:
    """Continuous piecewise-linear function given by its breakpoints."""
    breakpoints: tuple  # ((t, value), ...) with strictly increasing t

    def __post_init__(self):
        pts = tuple((F(t), F(v)) for t, v in self.breakpoints)
        if not pts:
            raise ValueError("a function needs at least one breakpoint")
        if any(a[0] >= b[0] for a, b in zip(pts, pts[1:])):
            raise ValueError("breakpoints must have increasing abscissae")
        object.__setattr__(self, "breakpoints", pts)

    @classmethod
    def from_values(cls, values: Sequence) -> "PiecewiseLinearFn":
        """Breakpoints at 0, 1, ..., len(values) - 1."""
        return cls(tuple(enumerate(values)))

    @property
    def domain(self) -> tuple:
        return self.breakpoints[0][0], self.breakpoints[-1][0]

    def __call__(self, t) -> Fraction:
        t = F(t)
        pts = self.breakpoints
        if not pts[0][0] <= t <= pts[-1][0]:
            raise ValueError(f"{t} outside the domain")
        for (a, fa), (b, fb) in zip(pts, pts[1:]):
            if a <= t <= b:
                return fa + (fb - fa) * (t - a) / (b - a)
        return pts[0][1]

    def slopes(self) -> list:
        pts = self.breakpoints
        return [(fb - fa) / (b - a) for (a, fa), (b, fb) in zip(pts, pts[1:])]

    def refine(self, ts) -> "PiecewiseLinearFn":
        ts = set(map(F, ts)) | {t for t, _ in self.breakpoints}
        lo, hi = self.domain
        return PiecewiseLinearFn(tuple((t, self(t)) for t in sorted(ts) if lo <= t <= hi))

    def simplified(self) -> "PiecewiseLinearFn":
        """Drop breakpoints where the slope does not change."""
        pts = list(self.breakpoints)
        out = [pts[0]]
        for i in range(1, len(pts) - 1):
            (a, fa), (b, fb), (c, fc) = out[-1], pts[i], pts[i + 1]
            if (fb - fa) * (c - b) != (fc - fb) * (b - a):
                out.append(pts[i])
        if len(pts) > 1:
            out.append(pts[-1])
        return PiecewiseLinearFn(tuple(out))

    def pyramidal(self, k) -> "PiecewiseLinearFn":
        """``t -> min(f(t), k - f(t))``, with the kinks at the k/2-line inserted."""
        half = F(k, 2)
        extra = [t for t, _ in self._level_hits(half)]
        g = self.refine(extra)
        return PiecewiseLinearFn(tuple((t, min(v, k - v)) for t, v in g.breakpoints))

    def _level_hits(self, level):
        """Points where a segment passes strictly through ``level``."""
        out = []
        for (a, fa), (b, fb) in zip(self.breakpoints, self.breakpoints[1:]):
            if (fa - level) * (fb - level) < 0:
                out.append((a + (level - fa) * (b - a) / (fb - fa), (fb - fa) / (b - a)))
        return out

    def crossings(self, level) -> list:
        """Transversal passages through ``level`` inside the open domain."""
        level = F(level)
        g = self.simplified()
        pts, sl = g.breakpoints, g.slopes()
        out = [t for t, _ in g._level_hits(level)]
        for i in range(1, len(pts) - 1):
            t, v = pts[i]
            if v == level and sl[i - 1] * sl[i] > 0:
                out.append(t)
        return sorted(out)

    def _extrema(self, sign: int) -> list:
        # sign +1: local maxima, -1: local minima; a plateau counts once
        g = self.simplified()
        pts, sl = g.breakpoints, g.slopes()
        out, i = [], 0
        while i < len(sl) - 1:
            if sign * sl[i] > 0:
                j = i + 1
                while j < len(sl) and sl[j] == 0:
                    j += 1
                if j < len(sl) and sign * sl[j] < 0:
                    out.append(pts[i + 1])
                i = j
            else:
                i += 1
        return out

    def peaks(self) -> list:
        return self._extrema(+1)

    def valleys(self) -> list:
        return self._extrema(-1)


def reflect_segment(fn: PiecewiseLinearFn, t1, t2) -> PiecewiseLinearFn:
    """Reflect the graph on ``[t1, t2]`` at the horizontal line through ``fn(t1)``."""
    t1, t2 = F(t1), F(t2)
    lo, hi = fn.domain
    if not (lo <= t1 < t2 <= hi):
        raise ValueError(f"need {lo} <= t1 < t2 <= {hi}")
    h = fn(t1)
    if fn(t2) != h:
        raise ValueError(f"f({t1}) = {h} differs from f({t2}) = {fn(t2)}")
    g = fn.refine([t1, t2])
    return PiecewiseLinearFn(tuple((t, 2 * h - v if t1 <= t <= t2 else v)
                                   for t, v in g.breakpoints)).simplified()


@dataclass(frozen=True)
class Shape:
    crossings: tuple
    peaks: tuple
    valleys: tuple

    def is_smooth(self, k) -> bool:
        half = F(k, 2)
        return (len(self.crossings) <= 1 and len(self.peaks) <= 1 and len(self.valleys) <= 1
                and all(v > half for _, v in self.peaks)
                and all(v < half for _, v in self.valleys))


def shape(fn: PiecewiseLinearFn, k) -> Shape:
    return Shape(tuple(fn.crossings(F(k, 2))), tuple(fn.peaks()), tuple(fn.valleys()))


# ---------------------------------------------------------------- coordinates

@dataclass(frozen=True)
class CycleCoordinates:
    vertex_order: tuple   # w_0 .. w_m
    demands: tuple        # b(w_0) .. b(w_m)

    @property
    def m(self) -> int:
        return len(self.vertex_order) - 1

    @property
    def edge_order(self) -> tuple:
        w = self.vertex_order
        return tuple(edge(w[i], w[(i + 1) % len(w)]) for i in range(len(w)))

    @property
    def breakpoints(self) -> tuple:
        s, out = 0, [0]
        for b in self.demands[1:]:
            s += b
            out.append(s)
        return tuple(out)

    @property
    def length(self) -> int:
        return self.breakpoints[-1]

    @property
    def dissolved(self) -> tuple:
        """Non-root vertices of zero demand; their breakpoint merges with the previous one."""
        return tuple(w for w, b in zip(self.vertex_order[1:], self.demands[1:]) if b == 0)

    def owner(self, unit: int) -> int:
        """Index i of the vertex whose demand unit occupies ``(unit-1, unit]``."""
        s = self.breakpoints
        for i in range(1, len(s)):
            if s[i - 1] < unit <= s[i]:
                return i
        raise ValueError(f"unit {unit} outside (0, {s[-1]}]")

    def edge_at(self, t) -> int | None:
        """Smallest i with ``s_i == t`` (the edge omitted by a tree valley at t)."""
        for i, s in enumerate(self.breakpoints):
            if s == t:
                return i
        return None

    @classmethod
    def from_instance(cls, inst: Instance) -> "CycleCoordinates":
        g, r = inst.graph, inst.root
        if not is_cycle(g):
            raise GraphError("cycle coordinates need a cycle")
        order = [r, g.adj[r][0]]
        while len(order) < len(g.vertices):
            order.append(next(x for x in g.adj[order[-1]] if x != order[-2]))
        return cls(tuple(order), tuple(inst.demands[w] for w in order))


def is_cycle(g: Graph) -> bool:
    return (len(g.vertices) >= 3 and g.is_connected()
            and all(len(ns) == 2 for ns in g.adj.values()))


def n_function(coords: CycleCoordinates, n: dict) -> PiecewiseLinearFn:
    """Interpolate ``n(e_i)`` at ``s_i``; at coinciding ``s_i`` the later value wins."""
    pts: dict = {}
    for s, e in zip(coords.breakpoints, coords.edge_order):
        pts[s] = n[e]
    return PiecewiseLinearFn(tuple(sorted(pts.items())))


def routing_n_function(inst: Instance, coords: CycleCoordinates, rt) -> PiecewiseLinearFn:
    return n_function(coords, n_vector(inst, rt))


# ---------------------------------------------------------------- unit words

def _arc(coords: CycleCoordinates, i: int, clockwise: bool) -> tuple:
    w = coords.vertex_order
    if clockwise:
        return tuple(w[:i + 1])
    return (w[0],) + tuple(reversed(w[i:]))


def clockwise_counts(coords: CycleCoordinates, rt) -> list:
    """x_i = number of paths reaching w_i through e_0 (index 0 unused)."""
    x = [0] * (coords.m + 1)
    w = coords.vertex_order
    pos = {v: i for i, v in enumerate(w)}
    for p in rt:
        if len(p) > 1:
            i = pos[p[-1]]
            if p == _arc(coords, i, True):
                x[i] += 1
            elif p != _arc(coords, i, False):
                raise ValidationError(f"path {list(p)} is not an arc from the root")
    return x


@dataclass(frozen=True)
class UnitRouting:
    """A routing on cycle coordinates as a +-1 slope per demand unit.

    Inside the block of ``w_i`` the clockwise units come first; any word
    obtained by reflection is kept as is, since only the counts per block
    matter for the routing.
    """
    coords: CycleCoordinates
    word: tuple

    @classmethod
    def from_routing(cls, coords: CycleCoordinates, rt) -> "UnitRouting":
        x = clockwise_counts(coords, rt)
        word = []
        for i in range(1, coords.m + 1):
            b = coords.demands[i]
            word.extend([-1] * x[i] + [1] * (b - x[i]))
        return cls(coords, tuple(word))

    @property
    def f0(self) -> int:
        return sum(1 for a in self.word if a < 0)

    def values(self) -> list:
        out = [self.f0]
        for a in self.word:
            out.append(out[-1] + a)
        return out

    @property
    def fn(self) -> PiecewiseLinearFn:
        return PiecewiseLinearFn.from_values(self.values())

    def counts(self) -> list:
        x = [0] * (self.coords.m + 1)
        s = self.coords.breakpoints
        for i in range(1, len(s)):
            x[i] = sum(1 for a in self.word[s[i - 1]:s[i]] if a < 0)
        return x

    def routing(self) -> Routing:
        c = self.coords
        x = self.counts()
        paths = [(c.vertex_order[0],)] * c.demands[0]
        for i in range(1, c.m + 1):
            paths += [_arc(c, i, True)] * x[i] + [_arc(c, i, False)] * (c.demands[i] - x[i])
        return Routing(paths)

    def reflect(self, t1: int, t2: int) -> "UnitRouting":
        vals = self.values()
        if vals[t1] != vals[t2]:
            raise ValueError(f"f({t1}) = {vals[t1]} differs from f({t2}) = {vals[t2]}")
        w = list(self.word)
        w[t1:t2] = [-a for a in w[t1:t2]]
        return UnitRouting(self.coords, tuple(w))


def is_canonical(coords: CycleCoordinates, rt) -> bool:
    """Every terminal is reached from one side only (all slopes are +-1)."""
    x = clockwise_counts(coords, rt)
    return all(x[i] in (0, coords.demands[i]) for i in range(1, coords.m + 1))


# ---------------------------------------------------------------- smoothing

def _reduction(vals: list, k: int):
    """One y-decreasing reflection ``(t1, t2)``, or None when smooth.

    Every move reflects an excursion that heads toward the k/2-line at a
    level strictly on the near side, so the sum of y over integer points
    drops strictly.
    """
    n = len(vals) - 1
    twice = [2 * v for v in vals]

    def span(t0, level, up):
        # nearest points around t0 where the excursion returns to level
        a = t0
        while vals[a] != level:
            a -= 1
        b = t0
        while vals[b] != level:
            b += 1
        return a, b

    for t in range(1, n):
        lo, hi = vals[t - 1], vals[t + 1]
        if vals[t] < lo and vals[t] < hi and twice[t] >= k:        # valley not below k/2
            left = t
            while left > 0 and vals[left - 1] > vals[left]:
                left -= 1
            right = t
            while right < n and vals[right + 1] > vals[right]:
                right += 1
            level = min(vals[left], vals[right])
            return span(t, level, False)
        if vals[t] > lo and vals[t] > hi and twice[t] <= k:        # peak not above k/2
            left = t
            while left > 0 and vals[left - 1] < vals[left]:
                left -= 1
            right = t
            while right < n and vals[right + 1] < vals[right]:
                right += 1
            level = max(vals[left], vals[right])
            return span(t, level, True)
    cross = []
    for t in range(n):
        a, b = twice[t] - k, twice[t + 1] - k
        if a * b < 0:
            cross.append(F(2 * t + 1, 2))
        elif a == 0 and 0 < t and (twice[t - 1] - k) * b < 0:
            cross.append(F(t))
    if len(cross) >= 2:
        c1, c2 = cross[0], cross[1]
        t1 = (c1.numerator + c1.denominator - 1) // c1.denominator - 1
        t2 = c2.numerator // c2.denominator + 1
        return t1, t2
    return None


def smooth_unit(inst: Instance, coords: CycleCoordinates, rt,
                allow_mixed: bool = False) -> tuple[UnitRouting, int]:
    """Smooth a routing in unit coordinates; returns the unit routing and the step count.

    A terminal reached from both sides is a block with both slopes, which
    is only a valid starting point in unit coordinates, hence ``allow_mixed``.
    """
    if not allow_mixed and not is_canonical(coords, rt):
        raise ValidationError("smoothing needs every terminal reached from one side")
    k = inst.k
    cur = UnitRouting.from_routing(coords, rt)
    steps = 0
    while True:
        vals = cur.values()
        move = _reduction(vals, k)
        if move is None:
            return cur, steps
        nxt = cur.reflect(*move)
        before = [pyramidal(v, k) for v in vals]
        after = [pyramidal(v, k) for v in nxt.values()]
        if any(a > b for a, b in zip(after, before)) or sum(after) >= sum(before):
            raise AssertionError(f"reflection {move} does not decrease the y-function")
        cur, steps = nxt, steps + 1


def smooth(inst: Instance, coords: CycleCoordinates, rt) -> Routing:
    out = smooth_unit(inst, coords, rt)[0].routing()
    if not dominates(y_vector(inst, out), y_vector(inst, rt)):
        raise AssertionError("smoothing increased the y-vector")
    return out


# ---------------------------------------------------------------- dominator

@dataclass(frozen=True)
class DominationDiagnostics:
    alpha_1: Fraction | None = None
    beta_1: Fraction | None = None
    alpha_2: Fraction | None = None
    beta_2: Fraction | None = None
    lambda_1: Fraction | None = None
    lambda_2: Fraction | None = None
    route: str = ""   # which branch produced the certificate


def _single_edge_tree(inst: Instance, coords: CycleCoordinates, i: int) -> Routing:
    g = inst.graph
    return tree_routing(inst, g.without_edges([coords.edge_order[i]]).edges)


def _ab(y, y1, y2, e):
    # lam*y1 + (1-lam)*y2 = y on e gives lam = alpha/(alpha+beta)
    return F(y[e] - y2[e]), F(y1[e] - y[e])


def _near(coords: CycleCoordinates, t) -> list:
    """Edge indices at the breakpoints just below and just above t."""
    s = coords.breakpoints
    lo = max((x for x in s if x <= t), default=None)
    hi = min((x for x in s if x >= t), default=None)
    out = []
    for x in (lo, hi):
        if x is not None and coords.edge_at(x) not in out:
            out.append(coords.edge_at(x))
    return out


def designated_edges(coords: CycleCoordinates, unit: UnitRouting) -> list[tuple]:
    """Candidate pairs of omitted edges, in order of preference.

    First the pair at the peak ``s_j`` and at ``s_j + f(0)``; then pairs of
    breakpoints adjacent to the features of the smoothed n-function (peak,
    valley, ``peak + f(0)``, both ends).  A feature strictly inside the
    block of one terminal is rounded to the block's two ends.
    """
    fn = unit.fn
    S = coords.length
    peaks = [p for p, _ in fn.peaks()]
    feats = peaks + [p + unit.f0 for p in peaks] + [v for v, _ in fn.valleys()] + [F(0), F(S)]
    cand = []
    for t in feats:
        if 0 <= t <= S:
            for i in _near(coords, t):
                if i not in cand:
                    cand.append(i)
    pairs = []
    if peaks:
        p = peaks[0]
        for i in _near(coords, p):
            for j in _near(coords, min(p + unit.f0, S)):
                if i != j:
                    pairs.append((i, j))
    for a in range(len(cand)):
        for b in range(a + 1, len(cand)):
            if (cand[a], cand[b]) not in pairs:
                pairs.append((cand[a], cand[b]))
    return pairs


def dominate_on_cycle(inst: Instance, rt, fallback: bool = True
                      ) -> tuple[Certificate, DominationDiagnostics]:
    """At most two tree routings dominating ``rt`` on a cycle.

    Tame, smooth in unit coordinates, then price the candidate pairs of
    single-edge-omitting trees from :func:`designated_edges` with the exact
    two-point LP.  If none works (or ``fallback`` is off, in which case an
    error is raised), every pair of tree routings is searched.
    """
    if not is_cycle(inst.graph):
        raise GraphError("dominate_on_cycle needs a cycle")
    rt = Routing(rt)
    y = y_vector(inst, rt)
    if is_tree_routing(inst, rt):
        return Certificate(((rt, F(1)),), rt), DominationDiagnostics(route="tree")
    coords = CycleCoordinates.from_instance(inst)
    tamed = canonicalize(inst, rt)
    unit, _ = smooth_unit(inst, coords, tamed, allow_mixed=True)
    smoothed = unit.routing()
    ys = y_vector(inst, smoothed)
    if not dominates(ys, y):
        raise AssertionError("taming and smoothing increased the y-vector")
    if is_tree_routing(inst, smoothed):
        return Certificate(((smoothed, F(1)),), rt), DominationDiagnostics(route="smoothed-tree")
    es = inst.graph.edge_list
    target = [ys[e] for e in es]
    trees: dict = {}
    for j, j2 in designated_edges(coords, unit):
        for i in (j, j2):
            if i not in trees:
                t = _single_edge_tree(inst, coords, i)
                trees[i] = (t, y_vector(inst, t))
        (t1, y1), (t2, y2) = trees[j], trees[j2]
        lam = two_point_domination([y1[e] for e in es], [y2[e] for e in es], target)
        if lam is None:
            continue
        if lam == 1 or lam == 0:
            t = t1 if lam == 1 else t2
            return Certificate(((t, F(1)),), rt), DominationDiagnostics(route="designated")
        # alpha_1, beta_1 at an edge where the combination is tight, preferring e_j
        ej, ej2 = coords.edge_order[j], coords.edge_order[j2]
        tight = [e for e in (ej, ej2, *es) if y1[e] != y2[e] and lam * y1[e] + (1 - lam) * y2[e] == ys[e]]
        a1, b1 = _ab(ys, y1, y2, tight[0])
        if a1 < 0:
            a1, b1 = -a1, -b1
        a2, b2 = _ab(ys, y1, y2, ej2 if tight[0] != ej2 else ej)
        if a2 != 0 and a1 != 0:
            # (alpha_2, beta_2) matter up to a common factor; scale to alpha_2 = alpha_1
            a2, b2 = a1, b2 * a1 / a2
        diag = DominationDiagnostics(a1, b1, a2, b2, lam, 1 - lam, "designated")
        return _pair_certificate(rt, t1, t2, lam), diag
    if not fallback:
        raise AssertionError("designated construction does not apply")
    return pair_search(inst, rt)


def _pair_certificate(rt, t1, t2, lam) -> Certificate:
    entries = [(t, w) for t, w in ((t1, lam), (t2, 1 - lam)) if w > 0]
    return Certificate(tuple(entries), rt).normalized()


def pair_search(inst: Instance, rt) -> tuple[Certificate, DominationDiagnostics]:
    """Exhaustive two-tree search over the tree routings of a cycle."""
    from .solvers import find_dominating_combination, tree_routings

    rt = Routing(rt)
    y = y_vector(inst, rt)
    es = inst.graph.edge_list
    trees = tree_routings(inst)
    ys = [y_vector(inst, t) for t in trees]
    pts = [[yt[e] for e in es] for yt in ys]
    target = [y[e] for e in es]
    for t, yt in zip(trees, ys):
        if dominates(yt, y):
            return Certificate(((t, F(1)),), rt), DominationDiagnostics(route="pair-search")
    hit = pair_domination(pts, target)
    if hit is not None:
        i, j, lam = hit
        return (_pair_certificate(rt, trees[i], trees[j], lam),
                DominationDiagnostics(lambda_1=lam, lambda_2=1 - lam, route="pair-search"))
    cert = find_dominating_combination(inst, rt, trees)
    if cert is None:
        raise AssertionError("no convex combination of trees dominates the routing")
    return cert, DominationDiagnostics(route="tree-lp")
