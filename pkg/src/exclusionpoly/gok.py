"""Non-interacting weighted-ensemble energies and their derived quantities.

For a one-particle spectrum ``h`` the N-fermion eigenenergies are the
configuration energies.  The weighted energy ``Σ_j w_j Ẽ_j`` (energies
ascending) equals the minimum of ``⟨h, λ⟩`` over Σ(w); this module computes
it directly from the configurations so it can serve as an independent
oracle for the polytope side.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .configurations import config_energy, occupation_vector, upper_covers
from .errors import DomainError, StructuralError
from .polytope import as_weights, generating_vertices, membership, prime_weights
from .rational import vec

ZERO = Fraction(0)
FULL_ENUMERATION_CAP = 10**6


def lowest_configurations(h: Sequence, n: int, k: int) -> list:
    """The ``k`` lowest configurations as ``(energy, config)``, ties lexicographic.

    Best-first search over the dominance order: every configuration is
    reached from ``(1..N)`` through upper covers, none of which lowers the
    energy, so popping in ``(energy, config)`` order yields the global sort.
    """
    h = vec(h)
    d = len(h)
    start = tuple(range(1, n + 1))
    heap = [(config_energy(start, h), start)]
    seen = {start}
    out = []
    while heap and len(out) < k:
        e, c = heapq.heappop(heap)
        out.append((e, c))
        for u in upper_covers(c, d):
            if u not in seen:
                seen.add(u)
                heapq.heappush(heap, (config_energy(u, h), u))
    return out


def sorted_config_energies(h: Sequence, n: int, k: Optional[int] = None) -> list:
    h = vec(h)
    d = len(h)
    total = comb(d, n)
    k = total if k is None else min(k, total)
    if total <= FULL_ENUMERATION_CAP and k == total:
        pairs = [(config_energy(c, h), c) for c in combinations(range(1, d + 1), n)]
        pairs.sort()
        return pairs
    return lowest_configurations(h, n, k)


@dataclass(frozen=True)
class WeightedEnergyResult:
    value: Fraction
    sorted_config_energies: tuple   # ((config, energy), ...) for the weighted part
    minimizer_occupation: tuple
    tie: bool                       # ordering among the first r (+1) energies not strict

    @property
    def unique_minimizer(self) -> bool:
        return not self.tie


def _check_h(h: Sequence, n: int) -> tuple:
    h = vec(h)
    if any(a > b for a, b in zip(h, h[1:])):
        raise DomainError("h must be non-decreasing")
    if n < 1 or n > len(h):
        raise DomainError(f"need 1 <= N <= d, got N={n}, d={len(h)}")
    return h


def weighted_energy(h: Sequence, w, n: int) -> WeightedEnergyResult:
    """``Σ_j w_j Ẽ_j`` with ``Ẽ`` the ascending configuration energies."""
    h = _check_h(h, n)
    w = as_weights(w)
    d = len(h)
    r = w.r
    if r > comb(d, n):
        raise DomainError(f"{r} nonzero weights but only {comb(d, n)} configurations")
    pairs = sorted_config_energies(h, n, r + 1)
    head = pairs[:r]
    value = sum((wj * e for wj, (e, _) in zip(w.nonzero, head)), ZERO)
    occ = [ZERO] * d
    for wj, (_, c) in zip(w.nonzero, head):
        for i, bit in enumerate(occupation_vector(c, d)):
            if bit:
                occ[i] += wj
    energies = [e for e, _ in pairs[: r + 1]]
    tie = any(a == b for a, b in zip(energies, energies[1:]))
    return WeightedEnergyResult(value, tuple((c, e) for e, c in head), tuple(occ), tie)


@dataclass(frozen=True)
class GapResult:
    gaps: tuple            # Ẽ_j - Ẽ_1 for j = 2..r, from sorted energies
    derivative_gaps: tuple  # same, as exact finite differences of the weighted energy
    one_sided: tuple        # per j: True when the shift had to go downwards
    tie: bool

    @property
    def consistent(self) -> bool:
        return self.gaps == self.derivative_gaps


def excitation_gaps(h: Sequence, n: int, r: int, w=None) -> GapResult:
    """Excitation gaps two ways: directly, and as weight derivatives.

    The derivative route shifts ``w_j -> w_j + δ``, ``w_1 -> w_1 - δ`` on a
    generic base weight vector, halving δ until the weights stay ordered; if
    ``w_j`` cannot move up at all the shift is taken downwards instead.
    """
    if r < 2:
        raise DomainError("gaps need r >= 2")
    h = _check_h(h, n)
    base = as_weights(w) if w is not None else prime_weights(r)
    if base.r != r:
        raise DomainError(f"base weights have {base.r} nonzero entries, expected {r}")
    pairs = sorted_config_energies(h, n, r + 1)
    e1 = pairs[0][0]
    direct = tuple(e - e1 for e, _ in pairs[1:r])
    ref = weighted_energy(h, base, n).value
    wv = list(base.nonzero)
    deriv, sided = [], []
    for j in range(1, r):
        delta, sign = _shift(wv, j)
        shifted = list(wv)
        shifted[j] += sign * delta
        shifted[0] -= sign * delta
        val = weighted_energy(h, shifted, n).value
        deriv.append((val - ref) / (sign * delta))
        sided.append(sign < 0)
    energies = [e for e, _ in pairs[: r + 1]]
    tie = any(a == b for a, b in zip(energies, energies[1:]))
    return GapResult(direct, tuple(deriv), tuple(sided), tie)


def _ordered_positive(w: list) -> bool:
    return all(a >= b for a, b in zip(w, w[1:])) and w[-1] > 0


def _shift(w: list, j: int) -> tuple:
    for sign in (1, -1):
        delta = Fraction(1, 8) * min(w)
        for _ in range(64):
            trial = list(w)
            trial[j] += sign * delta
            trial[0] -= sign * delta
            if _ordered_positive(trial):
                return delta, sign
            delta /= 2
    raise DomainError(f"weight w_{j + 1} cannot be shifted in either direction")


def dft_domain_membership(occupations: Sequence, w, n: int, d: int) -> bool:
    """Whether lattice occupations lie in the domain of the ensemble density functional.

    By Schur–Horn the diagonal is majorized by the spectrum, and the set is
    closed under ``≺``, so this is membership of ``sort_desc(n)`` in Σ(w).
    """
    occ = vec(occupations)
    if len(occ) != d:
        raise StructuralError(f"occupation vector has length {len(occ)}, expected {d}")
    if sum(occ) != n:
        raise DomainError(f"occupations sum to {sum(occ)}, expected N={n}")
    return membership(occ, generating_vertices(n, d, w)).inside
