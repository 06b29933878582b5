"""Exact facet enumeration by the double description method.

Given points in R^D that affinely span R^D, the facets of their convex hull
are the extreme rays of the dual cone ``{y : y0 + y·x >= 0 for all points}``.
Those rays are found incrementally (Motzkin's double description) with the
combinatorial adjacency test.  Everything runs on Python integers.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DomainError


def _primitive(v: list) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    return tuple(v)


def _integer_row(p: Sequence) -> list:
    fr = [Fraction(1)] + [Fraction(x) for x in p]
    m = 1
    for x in fr:
        m = lcm(m, x.denominator)
    return [int(x * m) for x in fr]


def _independent_rows(rows: list, dim: int) -> list:
    """Indices of ``dim`` linearly independent rows (greedy, in order)."""
    basis = []   # reduced rows with their pivot column
    chosen = []
    for idx, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        for piv, b in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            continue
        basis.append((piv, v))
        chosen.append(idx)
        if len(chosen) == dim:
            break
    return chosen


def _inverse_columns(a: list) -> list:
    """Columns of ``a^{-1}`` for a square integer matrix, as integer rays."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    cols = []
    for j in range(n):
        col = [m[i][n + j] for i in range(n)]
        den = 1
        for x in col:
            den = lcm(den, x.denominator)
        cols.append(_primitive([int(x * den) for x in col]))
    return cols


def facets_of_points(points: Sequence[Sequence]) -> list:
    """Facets ``(a, b)`` meaning ``a·x <= b`` of ``conv(points)``.

    ``a`` is a primitive integer tuple and ``b`` a Fraction; the list is
    sorted for determinism.  Raises :class:`DomainError` if the points do
    not affinely span their ambient space.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise DomainError("no points")
    dim = len(pts[0]) + 1
    rows = []
    seen = set()
    for p in pts:
        r = tuple(_integer_row(p))
        if r not in seen:
            seen.add(r)
            rows.append(r)
    init = _independent_rows(rows, dim)
    if len(init) < dim:
        raise DomainError("points are not full-dimensional")
    rays = _inverse_columns([rows[i] for i in init])
    # tight[k] = bitmask over processed constraint positions
    order = init + [i for i in range(len(rows)) if i not in set(init)]
    tight = []
    for k, ray in enumerate(rays):
        mask = 0
        for pos in range(dim):
            if pos != k:
                mask |= 1 << pos
        tight.append(mask)

    for pos in range(dim, len(order)):
        a = rows[order[pos]]
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        plus = [i for i, s in enumerate(vals) if s > 0]
        minus = [i for i, s in enumerate(vals) if s < 0]
        zero = [i for i, s in enumerate(vals) if s == 0]
        bit = 1 << pos
        new_rays, new_tight = [], []
        if minus:
            for i in plus:
                ti = tight[i]
                for j in minus:
                    common = ti & tight[j]
                    if common.bit_count() < dim - 2:
                        continue
                    adjacent = True
                    for k in range(len(rays)):
                        if k != i and k != j and (tight[k] & common) == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    si, sj = vals[i], vals[j]
                    ray = [si * y - sj * x for x, y in zip(rays[i], rays[j])]
                    new_rays.append(_primitive(ray))
                    new_tight.append(common | bit)
        keep = plus + zero
        rays = [rays[i] for i in keep] + new_rays
        tight = [tight[i] | (bit if vals[i] == 0 else 0) for i in keep] + new_tight

    out = []
    for y in rays:
        b = Fraction(y[0])
        a = [-x for x in y[1:]]
        g = 0
        for x in a:
            g = gcd(g, x)
        if g == 0:
            continue  # the trivial row 1 >= 0 cannot occur for a polytope, guard anyway
        out.append((tuple(x // g for x in a), b / g))
    return sorted(set(out))
