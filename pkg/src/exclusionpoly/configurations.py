"""N-fermion configurations, the dominance order and realizable lineups.

Configurations are 1-based strictly increasing tuples of orbital indices.
For every non-decreasing one-particle spectrum ``h`` the configurations
are linearly ordered by their energy ``Σ_{i∈c} h_i``; a *lineup* is a
sequence of ``r`` configurations that can be the strictly lowest ``r``
under some such ``h``.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import DomainError, StructuralError
from .lp import LinearProgram, lp_maximize
from .rational import vec

ZERO = Fraction(0)


def enumerate_configurations(n: int, d: int) -> list:
    if n < 1 or d < n:
        raise DomainError(f"need 1 <= N <= d, got N={n}, d={d}")
    return [tuple(c) for c in combinations(range(1, d + 1), n)]


def dominance_leq(a: Sequence, b: Sequence) -> bool:
    """``a <= b`` in the dominance order: below ``b`` for every ordered ``h``."""
    if len(a) != len(b):
        raise StructuralError("configurations must have the same particle number")
    return all(x <= y for x, y in zip(a, b))


def config_energy(c: Sequence, h: Sequence) -> Fraction:
    return sum((h[i - 1] for i in c), ZERO)


def occupation_vector(c: Sequence, d: int) -> tuple:
    occ = set(c)
    if any(i < 1 or i > d for i in occ):
        raise StructuralError(f"configuration {tuple(c)} does not fit in d={d}")
    return tuple(1 if i in occ else 0 for i in range(1, d + 1))


def lower_covers(c: tuple) -> list:
    out = []
    for k, i in enumerate(c):
        lo = c[k - 1] if k else 0
        if i - 1 > lo:
            out.append(c[:k] + (i - 1,) + c[k + 1:])
    return out


def upper_covers(c: tuple, d: int) -> list:
    out = []
    n = len(c)
    for k, i in enumerate(c):
        hi = c[k + 1] if k + 1 < n else d + 1
        if i + 1 < hi:
            out.append(c[:k] + (i + 1,) + c[k + 1:])
    return out


def minimal_outside(prefix: Sequence, d: int) -> list:
    """Dominance-minimal configurations not in the down-set ``prefix``."""
    inside = set(prefix)
    seen = set()
    out = []
    for c in prefix:
        for u in upper_covers(c, d):
            if u in inside or u in seen:
                continue
            seen.add(u)
            if all(lc in inside for lc in lower_covers(u)):
                out.append(u)
    return sorted(out)


@dataclass(frozen=True)
class Lineup:
    sequence: tuple   # tuple of configurations
    witness_h: tuple  # non-decreasing levels realizing it strictly

    @property
    def r(self) -> int:
        return len(self.sequence)


def default_sizes(r: int) -> tuple:
    """Smallest (N, d) with N >= r-1 and d-N >= r-1 (and N, d-N >= 1)."""
    n = max(1, r - 1)
    return n, n + max(1, r - 1)


def is_generic_size(n: int, d: int, r: int) -> bool:
    return n >= r - 1 and d - n >= r - 1


def _energy_row(c: tuple, d: int) -> list:
    # energy in terms of the level gaps g_k = h_{k+1} - h_k (h_1 = 0)
    row = [0] * (d - 1)
    for i in c:
        for k in range(i - 1):
            row[k] += 1
    return row


def realizing_slack(sequence: Sequence, d: int):
    """Maximize ε so that ``sequence`` is the strict energy-ordered bottom.

    Variables are the gaps ``g_k = h_{k+1} - h_k >= 0`` and ε >= 0, with
    ``Σ g_k <= 1`` (i.e. ``h_d - h_1 <= 1``).  Returns ``(ε*, h)``.
    Only dominance-minimal excluded configurations are constrained; the
    dominance order takes care of the rest.
    """
    seq = [tuple(c) for c in sequence]
    nv = d  # d-1 gaps + ε
    rows = {c: _energy_row(c, d) for c in seq}
    leq = [([1] * (d - 1) + [0], 1)]

    def below(a, b):
        # E(a) + ε <= E(b)
        ra, rb = rows.setdefault(a, _energy_row(a, d)), rows.setdefault(b, _energy_row(b, d))
        return ([x - y for x, y in zip(ra, rb)] + [1], 0)

    for a, b in zip(seq, seq[1:]):
        leq.append(below(a, b))
    last = seq[-1]
    for j in minimal_outside(seq, d):
        leq.append(below(last, j))
    obj = [0] * (d - 1) + [1]
    lp = LinearProgram(nv, objective=obj, leq=leq, nonneg=True)
    eps, x = lp_maximize(lp)
    h = [ZERO]
    for g in x[:-1]:
        h.append(h[-1] + g)
    return eps, tuple(h)


def _extend(args):
    prefix, d = args
    out = []
    for c in minimal_outside(prefix, d):
        seq = tuple(prefix) + (c,)
        eps, h = realizing_slack(seq, d)
        if eps > 0:
            out.append(Lineup(seq, h))
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("EXCLUSIONPOLY_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_lineups(n: int, d: int, r: int, workers: int | None = None) -> list:
    """All realizable lineups of length ``r``, each with a witness ``h``.

    Depth-first over prefixes: a configuration can only be appended once all
    its dominance predecessors are present, and every candidate prefix is
    kept only if the slack LP of :func:`realizing_slack` has ``ε* > 0``.
    Output is sorted lexicographically by configuration sequence.
    """
    if r < 1:
        raise DomainError("r must be at least 1")
    total = comb(d, n) if 1 <= n <= d else 0
    if n < 1 or d < n:
        raise DomainError(f"need 1 <= N <= d, got N={n}, d={d}")
    if r > total:
        raise DomainError(f"r={r} exceeds the {total} configurations of (N={n}, d={d})")
    ground = tuple(range(1, n + 1))
    if d == n:
        return [Lineup((ground,), tuple([ZERO] * d))]
    _, h = realizing_slack((ground,), d)
    level = [Lineup((ground,), h)]
    workers = workers or _threads()
    for _ in range(r - 1):
        jobs = [(lu.sequence, d) for lu in level]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(_extend, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
        else:
            parts = [_extend(j) for j in jobs]
        level = sorted((lu for part in parts for lu in part), key=lambda lu: lu.sequence)
    return level


def witness_order(h: Sequence, n: int, d: int) -> list:
    """All configurations sorted by energy under ``h`` (ties lexicographic)."""
    h = vec(h)
    return sorted(enumerate_configurations(n, d), key=lambda c: (config_energy(c, h), c))


def check_witness(lineup: Lineup, n: int, d: int) -> bool:
    """Whether the witness reproduces the lineup as the strict bottom ``r``."""
    h = lineup.witness_h
    if any(a > b for a, b in zip(h, h[1:])):
        return False
    order = witness_order(h, n, d)
    r = lineup.r
    if tuple(order[:r]) != lineup.sequence:
        return False
    energies = [config_energy(c, h) for c in order[: r + 1]]
    return all(a < b for a, b in zip(energies, energies[1:]))
