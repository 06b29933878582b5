"""Spectral polytopes Σ(w) and Σ↓(w) = Σ(w) ∩ Δ.

Σ(w) is the convex hull of all permutations of the generating vertices,
one per realizable lineup.  Membership of a spectrum is decided with the
generalized Rado criterion: ``λ ∈ Σ(w)`` iff ``λ ≺ Σ_j p_j v^(j)`` for some
convex weights ``p``, a small exact LP because convex combinations of
decreasing vectors stay decreasing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, gcd, lcm
from typing import Optional, Sequence

from .configurations import Lineup, enumerate_lineups, is_generic_size, occupation_vector
from .errors import DomainError, ExclusionPolyError, GenericityError, StructuralError
from .hull import facets_of_points
from .lp import LinearProgram, lp_feasible, lp_minimize
from .majorization import majorizes, sort_desc
from .rational import prefix_sums, vec

ZERO = Fraction(0)
ONE = Fraction(1)


class PropertyViolation(ExclusionPolyError):
    """A proven identity failed to hold; always indicates a bug."""


@dataclass(frozen=True)
class WeightVector:
    weights: tuple

    def __post_init__(self):
        w = vec(self.weights)
        if not w:
            raise DomainError("empty weight vector")
        if any(x < 0 for x in w):
            raise DomainError("weights must be non-negative")
        if any(a < b for a, b in zip(w, w[1:])):
            raise DomainError("weights must be non-increasing")
        if sum(w) != 1:
            raise DomainError(f"weights must sum to 1, got {sum(w)}")
        object.__setattr__(self, "weights", w)

    @property
    def r(self) -> int:
        return sum(1 for x in self.weights if x)

    @property
    def nonzero(self) -> tuple:
        return self.weights[: self.r]

    def padded(self, k: int) -> tuple:
        w = self.nonzero
        if k < len(w):
            raise DomainError(f"cannot fit {len(w)} nonzero weights into length {k}")
        return w + (ZERO,) * (k - len(w))

    def is_generic(self) -> bool:
        w = self.nonzero
        return len(set(w)) == len(w)

    def __getitem__(self, j):
        return self.weights[j]


def as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(tuple(w))


def prime_weights(r: int) -> WeightVector:
    """Generic default: ``w_j`` proportional to the ``(r+1-j)``-th prime."""
    primes = []
    k = 2
    while len(primes) < r:
        if all(k % p for p in primes):
            primes.append(k)
        k += 1
    total = sum(primes)
    return WeightVector(tuple(Fraction(p, total) for p in reversed(primes)))


@lru_cache(maxsize=256)
def _lineups(n: int, d: int, r: int) -> tuple:
    return tuple(enumerate_lineups(n, d, r))


@dataclass(frozen=True)
class VertexSet:
    n: int
    d: int
    weight: WeightVector
    vertices: tuple        # decreasing rational vectors, deduplicated
    provenance: tuple      # first lineup producing each vertex
    lineup_count: int = 0

    @property
    def merged(self) -> bool:
        """True when distinct lineups produced identical vertices."""
        return self.lineup_count != len(self.vertices)


def lineup_vertex(lineup: Lineup, w: WeightVector, d: int) -> tuple:
    out = [ZERO] * d
    for wj, c in zip(w.nonzero, lineup.sequence):
        for i, bit in enumerate(occupation_vector(c, d)):
            if bit:
                out[i] += wj
    return tuple(out)


def generating_vertices(n: int, d: int, w) -> VertexSet:
    w = as_weights(w)
    r = w.r
    if r > comb(d, n):
        raise DomainError(f"{r} nonzero weights but only {comb(d, n)} configurations")
    vertices, prov, index = [], [], {}
    lineups = _lineups(n, d, r)
    for lu in lineups:
        v = lineup_vertex(lu, w, d)
        if v not in index:
            index[v] = len(vertices)
            vertices.append(v)
            prov.append(lu)
    return VertexSet(n, d, w, tuple(vertices), tuple(prov), len(lineups))


# -- membership ---------------------------------------------------------------

@dataclass(frozen=True)
class MembershipCertificate:
    inside: bool
    simplex_coefficients: Optional[tuple] = None
    violated_prefix: Optional[int] = None
    separating_weights: Optional[tuple] = None   # y_k >= 0 over prefixes 1..d-1
    margin: Optional[Fraction] = None            # optimal separation value (< 0)

    def __bool__(self):
        return self.inside


def _check_spectrum(lam: Sequence, vs: VertexSet) -> tuple:
    lam = vec(lam)
    if len(lam) != vs.d:
        raise DomainError(f"spectrum has length {len(lam)}, expected d={vs.d}")
    if sum(lam) != vs.n:
        raise DomainError(f"spectrum sums to {sum(lam)}, expected N={vs.n}")
    return lam


def membership(lam: Sequence, vs: VertexSet, certify: bool = True) -> MembershipCertificate:
    """Exact generalized-Rado membership test of ``λ`` in Σ(w).

    Feasibility of ``{p in simplex : Σ_{i<=k} λ↓_i <= Σ_j p_j Σ_{i<=k} v^(j)_i}``.
    Prefix rows met by every vertex are dropped before solving, and a row no
    vertex meets settles infeasibility outright.  With ``certify`` an
    outside verdict also carries a separating prefix combination.
    """
    lam = _check_spectrum(lam, vs)
    lp_ = prefix_sums(sort_desc(lam))
    vps = [prefix_sums(v) for v in vs.vertices]
    d, R = vs.d, len(vs.vertices)
    leq = []
    blocked = False
    for k in range(d - 1):
        col = [vp[k] for vp in vps]
        if lp_[k] <= min(col):
            continue
        if lp_[k] > max(col):
            blocked = True
            break
        leq.append((tuple(-x for x in col), -lp_[k]))
    if not blocked:
        if not leq:
            return MembershipCertificate(True, simplex_coefficients=(ONE,) + (ZERO,) * (R - 1))
        res = lp_feasible(LinearProgram(R, eq=[((1,) * R, 1)], leq=leq, nonneg=True))
        if res.feasible:
            return MembershipCertificate(True, simplex_coefficients=res.witness)
    if not certify:
        return MembershipCertificate(False)
    y, t = _separation(lp_, vps, d)
    top = max(y)
    k = next(i for i, x in enumerate(y) if x == top) + 1
    return MembershipCertificate(False, violated_prefix=k, separating_weights=y, margin=t)


def _separation(lp_: list, vps: list, d: int) -> tuple:
    """min t s.t. Σ_k y_k (U_j[k] - L_k) <= t for all j, y in the simplex.

    A negative optimum certifies infeasibility: the inequality
    ``Σ_k y_k Σ_{i<=k} λ_i <= max_j Σ_k y_k U_j[k]`` separates λ.
    """
    m = d - 1
    nv = m + 1  # y_1..y_m, t
    leq = []
    for vp in vps:
        leq.append((tuple(vp[k] - lp_[k] for k in range(m)) + (-1,), 0))
    for k in range(m):
        row = [0] * nv
        row[k] = -1
        leq.append((tuple(row), 0))
    eq = [((1,) * m + (0,), 1)]
    obj = (0,) * m + (1,)
    t, x = lp_minimize(LinearProgram(nv, objective=obj, eq=eq, leq=leq))
    return tuple(x[:m]), t


def verify_certificate(lam: Sequence, vs: VertexSet, cert: MembershipCertificate) -> bool:
    """Independent exact re-check of a membership certificate."""
    lam = _check_spectrum(lam, vs)
    if cert.inside:
        p = cert.simplex_coefficients
        if p is None or len(p) != len(vs.vertices) or any(x < 0 for x in p) or sum(p) != 1:
            return False
        u = [sum((pj * v[i] for pj, v in zip(p, vs.vertices)), ZERO) for i in range(vs.d)]
        return majorizes(lam, u)
    y = cert.separating_weights
    if y is None or any(x < 0 for x in y) or sum(y) != 1:
        return False
    L = prefix_sums(sort_desc(lam))
    lhs = sum((yk * L[k] for k, yk in enumerate(y)), ZERO)
    rhs = max(sum((yk * prefix_sums(v)[k] for k, yk in enumerate(y)), ZERO) for v in vs.vertices)
    return lhs > rhs


def support_minimum(h: Sequence, vs: VertexSet) -> tuple:
    """``min ⟨h, λ⟩`` over Σ(w) and a minimizing permuted vertex.

    By rearrangement each vertex is best paired with ``h`` ascending against
    its entries descending, so only ``R`` inner products are needed.
    """
    h = vec(h)
    if len(h) != vs.d:
        raise StructuralError(f"h has length {len(h)}, expected d={vs.d}")
    order = sorted(range(vs.d), key=lambda i: (h[i], i))
    best, arg = None, None
    for v in vs.vertices:
        val = sum((h[i] * v[k] for k, i in enumerate(order)), ZERO)
        if best is None or val < best:
            best = val
            placed = [ZERO] * vs.d
            for k, i in enumerate(order):
                placed[i] = v[k]
            arg = tuple(placed)
    return best, arg


# -- inner / outer permutohedra -----------------------------------------------

@dataclass(frozen=True)
class ApproximationPair:
    v_minus: tuple
    v_plus: tuple


def _from_prefix(ps: list) -> tuple:
    out, prev = [], ZERO
    for s in ps:
        out.append(s - prev)
        prev = s
    return tuple(out)


def v_plus_closed_form(n: int, d: int, w: WeightVector) -> tuple:
    w1 = w.weights[0]
    v = [ONE] * (n - 1) + [w1, ONE - w1] + [ZERO] * (d - n - 1)
    return tuple(v)


def inner_outer(vs: VertexSet) -> ApproximationPair:
    if not vs.vertices:
        raise DomainError("empty vertex set")
    vps = [prefix_sums(v) for v in vs.vertices]
    hi = [max(col) for col in zip(*vps)]
    lo = [min(col) for col in zip(*vps)]
    pair = ApproximationPair(_from_prefix(lo), _from_prefix(hi))
    if is_generic_size(vs.n, vs.d, vs.weight.r) and vs.d > vs.n:
        expected = v_plus_closed_form(vs.n, vs.d, vs.weight)
        if pair.v_plus != expected:
            raise PropertyViolation(f"v_plus {pair.v_plus} differs from closed form {expected}")
    return pair


# -- facets -------------------------------------------------------------------

@dataclass(frozen=True)
class HalfspaceSystem:
    """Inequalities ``coeffs · λ↓ <= bound`` (with Σλ = N understood)."""

    inequalities: tuple          # ((coeff tuple of ints, bound Fraction), ...)
    includes_ordering: bool = False
    ordering: tuple = ()         # ordering facets found by the hull, same format
    n: int = 0
    d: int = 0


MAX_HULL_DIM = 9


def canonical(coeffs: Sequence, bound, n: int) -> tuple:
    """Normal form of ``coeffs·λ <= bound`` modulo ``Σλ = n``.

    The last coefficient is shifted to zero using the normalization, then the
    coefficients are scaled to coprime integers by a positive factor.
    """
    a = vec(coeffs)
    b = Fraction(bound)
    shift = a[-1]
    a = [x - shift for x in a]
    b = b - shift * n
    m = 1
    for x in a:
        m = lcm(m, x.denominator)
    ai = [int(x * m) for x in a]
    b = b * m
    g = 0
    for x in ai:
        g = gcd(g, x)
    if g == 0:
        return tuple(ai), b
    return tuple(x // g for x in ai), b / g


def ordering_halfspaces(n: int, d: int) -> list:
    """Δ as ``λ_k - λ_{k+1} >= 0`` and ``λ_d >= 0``, canonicalized."""
    out = []
    for k in range(d - 1):
        a = [0] * d
        a[k], a[k + 1] = -1, 1
        out.append(canonical(a, 0, n))
    a = [0] * d
    a[-1] = -1
    out.append(canonical(a, 0, n))
    return out


def block_averages(v: Sequence) -> set:
    """Vertices of P_v ∩ {decreasing}: averages of ``v`` over consecutive blocks."""
    d = len(v)
    out = set()
    for cuts in product((False, True), repeat=d - 1):
        res, start = [], 0
        for i in range(d):
            if i == d - 1 or cuts[i]:
                block = v[start : i + 1]
                avg = sum(block, ZERO) / len(block)
                res.extend([avg] * len(block))
                start = i + 1
        out.add(tuple(res))
    return out


def sorted_region_points(vs: VertexSet) -> list:
    pts = set()
    for v in vs.vertices:
        pts |= block_averages(v)
    return sorted(pts, reverse=True)


def facets(vs: VertexSet, max_dim: int = MAX_HULL_DIM) -> HalfspaceSystem:
    """Exclusion facets of Σ↓(w) by exact double description.

    Σ↓(w) is the hull of the block averages of all generating vertices.
    Facets equal to an ordering constraint of Δ are split off; the remaining
    exclusion facets are returned in :func:`canonical` form.
    """
    if not vs.weight.is_generic():
        raise GenericityError("facet enumeration needs pairwise distinct nonzero weights")
    if vs.d - 1 > max_dim:
        raise DomainError(f"hull dimension {vs.d - 1} exceeds the limit {max_dim}")
    if vs.d <= vs.n:
        raise DomainError("Σ↓ is a single point when d = N")
    pts = [p[:-1] for p in sorted_region_points(vs)]
    raw = facets_of_points(pts)
    order = set(ordering_halfspaces(vs.n, vs.d))
    excl, ordf = [], []
    for a, b in raw:
        c = canonical(tuple(a) + (0,), b, vs.n)
        (ordf if c in order else excl).append(c)
    excl.sort(key=lambda ab: (tuple(-x for x in ab[0]), ab[1]))
    return HalfspaceSystem(tuple(excl), False, tuple(sorted(ordf)), vs.n, vs.d)


def polytope_inclusion(w_small, w_big, n: int, d: int) -> bool:
    """Σ(w_small) ⊆ Σ(w_big), checked on the vertices of Σ(w_small).

    The answer must coincide with ``w_small ≺ w_big``; a disagreement raises
    :class:`PropertyViolation`.
    """
    ws, wb = as_weights(w_small), as_weights(w_big)
    small = generating_vertices(n, d, ws)
    big = generating_vertices(n, d, wb)
    inside = all(membership(v, big).inside for v in small.vertices)
    k = max(len(ws.weights), len(wb.weights))
    expected = majorizes(ws.padded(k), wb.padded(k))
    if inside != expected:
        raise PropertyViolation(
            f"inclusion {inside} disagrees with majorization {expected} for {ws.weights} vs {wb.weights}"
        )
    return inside
