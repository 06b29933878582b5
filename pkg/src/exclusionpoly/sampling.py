"""Seeded exact-rational samplers used by ``verify`` and the test suites."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .majorization import sort_desc
from .polytope import VertexSet, WeightVector, block_averages

ZERO = Fraction(0)


def random_weights(rng: random.Random, r: int, scale: int = 97, generic: bool = True) -> WeightVector:
    """Sorted positive weights summing to one with exactly ``r`` nonzero entries."""
    while True:
        raw = sorted((rng.randint(1, scale) for _ in range(r)), reverse=True)
        if generic and len(set(raw)) != r:
            continue
        total = sum(raw)
        return WeightVector(tuple(Fraction(x, total) for x in raw))


def random_levels(rng: random.Random, d: int, spread: int = 50) -> tuple:
    """Non-decreasing rational levels, distinct with high probability."""
    vals = sorted(Fraction(rng.randint(0, spread * 7), rng.randint(1, 7)) for _ in range(d))
    return tuple(vals)


def random_occupation_point(rng: random.Random, n: int, d: int, terms: int = 4, den: int = 12) -> tuple:
    """Sorted point of the Pauli simplex with Σ = n (mixture of Slater occupations)."""
    weights = [rng.randint(1, den) for _ in range(terms)]
    total = sum(weights)
    out = [ZERO] * d
    for wt in weights:
        occ = rng.sample(range(d), n)
        for i in occ:
            out[i] += Fraction(wt, total)
    return sort_desc(out)


def random_composition(rng: random.Random, n: int, d: int, den: int = 10) -> tuple:
    """Sorted non-negative vector with Σ = n; entries may exceed 1."""
    raw = [rng.randint(0, den) for _ in range(d)]
    if not any(raw):
        raw[0] = 1
    total = sum(raw)
    return sort_desc(Fraction(n * x, total) for x in raw)


def random_sigma_point(rng: random.Random, vs: VertexSet, terms: int = 3) -> tuple:
    """A sorted point of Σ(w): convex mixture of permuted generating vertices."""
    weights = [rng.randint(1, 9) for _ in range(terms)]
    total = sum(weights)
    out = [ZERO] * vs.d
    for wt in weights:
        v = list(rng.choice(vs.vertices))
        rng.shuffle(v)
        for i, x in enumerate(v):
            out[i] += Fraction(wt, total) * x
    return sort_desc(out)


def random_boundary_point(rng: random.Random, vs: VertexSet) -> tuple:
    """A vertex of Σ↓(w) (block average of a generating vertex); on the boundary."""
    v = rng.choice(vs.vertices)
    pts = sorted(block_averages(v))
    return rng.choice(pts)


def random_spectrum(rng: random.Random, vs: VertexSet) -> tuple:
    """Mixed-strategy sample in the sorted Pauli simplex.

    Half the draws are Σ(w) points or exact boundary points.  The rest lie
    on segments from such a point toward a Slater mixture or an arbitrary
    non-negative vector, cut at rational parameters, so both verdicts occur
    often.  Every sample is sorted and non-negative with Σ = N.
    """
    kind = rng.randrange(4)
    if kind == 0:
        return random_sigma_point(rng, vs)
    if kind == 1:
        return random_boundary_point(rng, vs)
    inner = random_sigma_point(rng, vs) if kind == 2 else random_boundary_point(rng, vs)
    if rng.random() < 0.25:
        outer = random_composition(rng, vs.n, vs.d)
    else:
        outer = random_occupation_point(rng, vs.n, vs.d, terms=rng.randint(1, 3))
    t = Fraction(rng.randint(0, 8), 8) ** 2
    pt = tuple(a + t * (b - a) for a, b in zip(inner, outer))
    return sort_desc(pt)


def majorized_by(rng: random.Random, w: Sequence, terms: int = 3) -> tuple:
    """A random ``v`` with ``v ≺ w``: mixture of random permutations of ``w``."""
    w = list(w)
    weights = [rng.randint(1, 9) for _ in range(terms)]
    total = sum(weights)
    out = [ZERO] * len(w)
    for wt in weights:
        perm = w[:]
        rng.shuffle(perm)
        for i, x in enumerate(perm):
            out[i] += Fraction(wt, total) * x
    return tuple(out)


def pythagorean_rotation(rng: random.Random) -> tuple:
    """Rational (cos, sin) from a random Pythagorean parameter."""
    t = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    den = 1 + t * t
    return (1 - t * t) / den, 2 * t / den


def rotated_diagonal(rng: random.Random, lam: Sequence) -> tuple:
    """Diagonal of ``R diag(λ) Rᵀ`` for a random planar rotation R (exact)."""
    lam = list(lam)
    d = len(lam)
    i, j = rng.sample(range(d), 2)
    c, s = pythagorean_rotation(rng)
    out = list(lam)
    out[i] = c * c * lam[i] + s * s * lam[j]
    out[j] = s * s * lam[i] + c * c * lam[j]
    return tuple(out)

