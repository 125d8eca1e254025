"""Taming: exchanging the root-side and terminal-side halves of two paths.

For paths P1, P2 through a common vertex v, let
``P3 = P1[r..v] + P2[v..]`` and ``P4 = P2[r..v] + P1[v..]``.  The two
routings ``A = R - P1 + P4`` and ``B = R - P2 + P3`` use every edge exactly
as often in total as two copies of ``R`` do, so ``n(A) + n(B) = 2 n(R)`` and
concavity of the pyramidal function gives ``y(A)/2 + y(B)/2 <= y(R)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .graph import path_edges, vkey
from .routing import Instance, Routing, dominates, y_vector


class TamingError(ValueError):
    """Preconditions of a taming step do not hold."""


def split_at(path, v) -> tuple[tuple, tuple]:
    """``(path[r..v], path[v..])``; both halves contain ``v``."""
    path = tuple(path)
    i = path.index(v)
    return path[:i + 1], path[i:]


def taming_conflict(p1, p2, v) -> tuple | None:
    """The first offending half-pair, or None when ``(p1, p2, v)`` can be tamed.

    The halves that get glued together must meet only in ``v``.
    """
    if v not in p1 or v not in p2:
        return ("missing", v)
    h1, t1 = split_at(p1, v)
    h2, t2 = split_at(p2, v)
    if set(h1) & set(t2) != {v}:
        return ("P1[r..v]", "P2[v..]")
    if set(h2) & set(t1) != {v}:
        return ("P2[r..v]", "P1[v..]")
    return None


def tame(inst: Instance, rt, p1, p2, v, check: bool = True) -> tuple[Routing, Routing]:
    rt = Routing(rt)
    p1, p2 = tuple(p1), tuple(p2)
    if p1 not in rt or p2 not in rt:
        raise TamingError("both paths must belong to the routing")
    if p1 == p2:
        return rt, rt
    bad = taming_conflict(p1, p2, v)
    if bad is not None:
        raise TamingError(f"halves {bad[0]} and {bad[1]} meet outside {v!r}")
    h1, t1 = split_at(p1, v)
    h2, t2 = split_at(p2, v)
    p3, p4 = h1 + t2[1:], h2 + t1[1:]
    a, b = rt.replace(p1, p4), rt.replace(p2, p3)
    if check:
        ya, yb, y = y_vector(inst, a), y_vector(inst, b), y_vector(inst, rt)
        for e in inst.graph.edges:
            if Fraction(ya[e] + yb[e], 2) > y[e]:
                raise AssertionError(f"taming inequality fails on {e}")
    return a, b


def tamable_triples(rt):
    """All ``(P1, P2, v)`` with distinct paths, ``v`` shared, halves compatible
    and the two prefixes to ``v`` different (otherwise taming is a no-op)."""
    paths = sorted(set(Routing(rt)), key=lambda p: [vkey(x) for x in p])
    for p1, p2 in combinations(paths, 2):
        for v in p1:
            if v not in p2:
                continue
            if split_at(p1, v)[0] == split_at(p2, v)[0]:
                continue
            if taming_conflict(p1, p2, v) is None:
                yield p1, p2, v


def _potential(rt) -> tuple:
    es = [frozenset(path_edges(p)) for p in rt]
    spread = sum(len(a ^ b) for a, b in combinations(es, 2))
    return spread, tuple(tuple(vkey(x) for x in p) for p in rt)


def is_coincident(rt) -> bool:
    """Paths to a common terminal are equal and prefixes to shared vertices agree."""
    paths = list(set(Routing(rt)))
    for p1, p2 in combinations(paths, 2):
        for v in set(p1) & set(p2):
            if split_at(p1, v)[0] != split_at(p2, v)[0]:
                return False
    return True


def canonicalize(inst: Instance, rt) -> Routing:
    """Greedy taming: keep an outcome whose y-vector is no larger.

    A step is taken only when it lowers ``_potential`` (total pairwise
    symmetric difference, then the sorted path list), which bounds the
    number of steps.  The result has ``y <= y(rt)``; it is coincident
    whenever every remaining conflict admits a non-increasing side.
    """
    cur = Routing(rt)
    y = y_vector(inst, cur)
    while True:
        pot = _potential(cur)
        for p1, p2, v in tamable_triples(cur):
            a, b = tame(inst, cur, p1, p2, v, check=False)
            moved = False
            for cand in (a, b):
                yc = y_vector(inst, cand)
                if dominates(yc, y) and _potential(cand) < pot:
                    cur, y, moved = cand, yc, True
                    break
            if moved:
                break
        else:
            return cur
