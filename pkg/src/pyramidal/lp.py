"""Exact rational phase-one simplex (Bland's rule).

Only feasibility is needed here: find x >= 0 with ``A_eq x = b_eq`` and
``A_ub x <= b_ub``.  Everything is :class:`fractions.Fraction`, so a
returned point satisfies the constraints with zero tolerance.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

F0, F1 = Fraction(0), Fraction(1)


def feasible_point(A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                   A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                   n: int | None = None) -> list[Fraction] | None:
    """A basic feasible point, or None when the system is infeasible."""
    rows_eq = [[Fraction(a) for a in r] for r in A_eq]
    rows_ub = [[Fraction(a) for a in r] for r in A_ub]
    if n is None:
        n = len((rows_eq or rows_ub or [[]])[0])
    m_ub, m_eq = len(rows_ub), len(rows_eq)
    m = m_ub + m_eq
    # columns: x (n) | slacks (m_ub) | artificials (as needed)
    tab, rhs, basis, art_cols = [], [], [], []
    n_art_base = n + m_ub
    art_rows = []
    for i, (r, b) in enumerate(zip(rows_ub, b_ub)):
        b = Fraction(b)
        row = r + [F0] * m_ub
        row[n + i] = F1
        if b < 0:
            row = [-a for a in row]
            b = -b
            art_rows.append(len(tab))
        tab.append(row)
        rhs.append(b)
    for r, b in zip(rows_eq, b_eq):
        b = Fraction(b)
        row = r + [F0] * m_ub
        if b < 0:
            row, b = [-a for a in row], -b
        art_rows.append(len(tab))
        tab.append(row)
        rhs.append(b)
    n_art = len(art_rows)
    width = n_art_base + n_art
    for row in tab:
        row.extend([F0] * n_art)
    basis = [None] * m
    for j, i in enumerate(art_rows):
        tab[i][n_art_base + j] = F1
        basis[i] = n_art_base + j
    for i in range(m):
        if basis[i] is None:
            basis[i] = n + i  # its own slack, coefficient +1, rhs >= 0
    art_cols = set(range(n_art_base, width))
    # reduced costs of phase one: minimise the sum of artificials
    cost = [F0] * width
    for j in art_cols:
        cost[j] = F1
    red = cost[:]
    for i in range(m):
        cb = cost[basis[i]]
        if cb:
            for j in range(width):
                red[j] -= cb * tab[i][j]
    while True:
        enter = next((j for j in range(width) if red[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded direction; cannot happen in phase one
            break
        _pivot(tab, rhs, red, basis, best[1], enter)
    if any(rhs[i] != 0 for i in range(m) if basis[i] in art_cols):
        return None
    x = [F0] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rhs[i]
    return x


def _pivot(tab, rhs, red, basis, r, c):
    piv = tab[r][c]
    row = tab[r]
    if piv != 1:
        tab[r] = row = [a / piv for a in row]
        rhs[r] /= piv
    nz = [j for j, a in enumerate(row) if a]
    for i in range(len(tab)):
        if i != r:
            f = tab[i][c]
            if f:
                ti = tab[i]
                for j in nz:
                    ti[j] -= f * row[j]
                rhs[i] -= f * rhs[r]
    f = red[c]
    if f:
        for j in nz:
            red[j] -= f * row[j]
    basis[r] = c


def convex_domination(points: Sequence[Sequence], bound: Sequence) -> list[Fraction] | None:
    """Weights lam >= 0, sum lam = 1, with sum_i lam_i * points[i] <= bound."""
    if not points:
        return None
    n, d = len(points), len(bound)
    A_ub = [[points[i][e] for i in range(n)] for e in range(d)]
    return feasible_point([[1] * n], [1], A_ub, list(bound), n=n)


def guided_convex_domination(points: Sequence[Sequence], bound: Sequence) -> list[Fraction] | None:
    """:func:`convex_domination` with a floating-point column preselection.

    HiGHS proposes a support; the exact solver then runs on those columns
    only.  A float verdict is never trusted on its own: when the restricted
    exact problem fails, the full exact problem is solved.
    """
    support = _float_support(points, bound)
    if support is not None:
        lam = convex_domination([points[i] for i in support], bound)
        if lam is not None:
            out = [F0] * len(points)
            for i, l in zip(support, lam):
                out[i] = l
            return out
    return convex_domination(points, bound)


def _float_support(points, bound) -> list[int] | None:
    import numpy as np
    from scipy.optimize import linprog

    P = np.asarray(points, dtype=float)
    n = len(P)
    res = linprog(np.zeros(n), A_ub=P.T, b_ub=np.asarray(bound, dtype=float),
                  A_eq=np.ones((1, n)), b_eq=[1.0], bounds=(0, None), method="highs")
    if res.status != 0:
        return None
    return [i for i in range(n) if res.x[i] > 1e-9]


def two_point_domination(p, q, bound) -> Fraction | None:
    """Largest lam in [0, 1] with lam*p + (1-lam)*q <= bound, or None.

    The 1-variable case solved in closed form: each coordinate cuts the
    unit interval to one side of a rational threshold.
    """
    lo, hi = F0, F1
    for a, b, c in zip(p, q, bound):
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        # lam*(a - b) <= c - b
        slope, room = a - b, c - b
        if slope == 0:
            if room < 0:
                return None
        elif slope > 0:
            hi = min(hi, room / slope)
        else:
            lo = max(lo, room / slope)
        if lo > hi:
            return None
    return hi


def pair_domination(points: Sequence[Sequence], bound: Sequence):
    """Search all pairs for a two-point convex combination below ``bound``.

    Pairs are screened in floating point and the winner is re-derived with
    :func:`two_point_domination`, so the result is exact.  Returns
    ``(i, j, lam)`` meaning ``lam*points[i] + (1-lam)*points[j] <= bound``,
    or None.
    """
    import numpy as np

    P = np.asarray(points, dtype=float)
    y = np.asarray(bound, dtype=float)
    if len(P) == 0:
        return None
    slope = P[:, None, :] - P[None, :, :]
    room = (y - P)[None, :, :].repeat(len(P), axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = room / slope
    hi = np.where(slope > 0, ratio, np.inf).min(axis=2)
    lo = np.where(slope < 0, ratio, -np.inf).max(axis=2)
    flat_ok = np.where(slope == 0, room >= 0, True).all(axis=2)
    ok = flat_ok & (np.maximum(lo, 0) <= np.minimum(hi, 1) + 1e-9)
    for i, j in zip(*np.nonzero(ok)):
        lam = two_point_domination(points[i], points[j], bound)
        if lam is not None:
            return int(i), int(j), lam
    return None
