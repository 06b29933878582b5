"""Vector majorization and its constructive companions.

``majorizes(v, w)`` answers ``v ≺ w``.  ``hlp_transfer`` produces a doubly
stochastic matrix mapping ``w`` to ``v`` as a chain of T-transforms, and
``birkhoff_decompose`` splits any doubly stochastic matrix into a convex
combination of permutation matrices.  Composing the two writes ``v`` as an
explicit convex combination of permutations of ``w``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import MajorizationError, StructuralError
from .rational import as_rational, vec

ZERO = Fraction(0)
ONE = Fraction(1)


def sort_desc(v: Sequence) -> tuple:
    return tuple(sorted(vec(v), reverse=True))


def majorizes(v: Sequence, w: Sequence) -> bool:
    """True iff ``v ≺ w`` (non-strict partial sums, equal totals)."""
    if len(v) != len(w):
        raise StructuralError(f"length mismatch: {len(v)} vs {len(w)}")
    sv, sw = sort_desc(v), sort_desc(w)
    pv = pw = ZERO
    for a, b in zip(sv, sw):
        pv += a
        pw += b
        if pv > pw:
            return False
    return pv == pw


def schur_horn_check(diag: Sequence, spectrum: Sequence) -> bool:
    """Whether ``diag`` can be the diagonal of a Hermitian matrix with ``spectrum``."""
    return majorizes(diag, spectrum)


@dataclass(frozen=True)
class DoublyStochasticMatrix:
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        rows = tuple(tuple(as_rational(x) for x in r) for r in self.entries)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise StructuralError("doubly stochastic matrix must be square and non-empty")
        for r in rows:
            if any(x < 0 or x > 1 for x in r):
                raise StructuralError("entries must lie in [0, 1]")
            if sum(r) != 1:
                raise StructuralError("every row must sum to 1")
        for j in range(d):
            if sum(r[j] for r in rows) != 1:
                raise StructuralError("every column must sum to 1")
        object.__setattr__(self, "entries", rows)

    @property
    def d(self) -> int:
        return len(self.entries)

    def apply(self, x: Sequence) -> tuple:
        x = vec(x)
        return tuple(sum((a * b for a, b in zip(row, x)), ZERO) for row in self.entries)

    @classmethod
    def identity(cls, d: int) -> "DoublyStochasticMatrix":
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d)))


@dataclass(frozen=True)
class PermutationCombination:
    """``Σ weight · P(perm)`` where ``P(perm)[i][perm[i]] = 1`` (0-based)."""

    terms: tuple  # ((weight, perm tuple), ...)

    def __post_init__(self):
        terms = tuple((as_rational(w), tuple(p)) for w, p in self.terms)
        if not terms:
            raise StructuralError("empty combination")
        if any(not (0 < w <= 1) for w, _ in terms):
            raise StructuralError("weights must lie in (0, 1]")
        if sum(w for w, _ in terms) != 1:
            raise StructuralError("weights must sum to 1")
        perms = [p for _, p in terms]
        if len(set(perms)) != len(perms):
            raise StructuralError("permutations must be pairwise distinct")
        object.__setattr__(self, "terms", terms)

    def matrix(self) -> tuple:
        d = len(self.terms[0][1])
        m = [[ZERO] * d for _ in range(d)]
        for w, p in self.terms:
            for i, j in enumerate(p):
                m[i][j] += w
        return tuple(tuple(r) for r in m)

    def apply(self, x: Sequence) -> tuple:
        """``Σ weight · P x``; entry ``i`` of ``P x`` is ``x[perm[i]]``."""
        x = vec(x)
        out = [ZERO] * len(x)
        for w, p in self.terms:
            for i, j in enumerate(p):
                out[i] += w * x[j]
        return tuple(out)


def _t_transform(d: int, j: int, k: int, lam: Fraction) -> list:
    """``lam·I + (1-lam)·Q`` with Q swapping coordinates j and k."""
    m = [[ONE if a == b else ZERO for b in range(d)] for a in range(d)]
    m[j][j] = m[k][k] = lam
    m[j][k] = m[k][j] = ONE - lam
    return m


def _matmul(a: list, b: list) -> list:
    d = len(a)
    return [[sum((a[i][t] * b[t][j] for t in range(d) if a[i][t]), ZERO) for j in range(d)] for i in range(d)]


def hlp_transfer(v: Sequence, w: Sequence) -> DoublyStochasticMatrix:
    """Doubly stochastic ``M`` with ``M · sort_desc(w) == sort_desc(v)``.

    Built from at most ``d - 1`` Robin Hood transfers.  Each step takes the
    first coordinate ``k`` where the running vector falls short of the
    target and the last coordinate ``j < k`` still in excess, and moves
    ``min(excess, deficit)`` from ``j`` to ``k``; the running vector stays
    sorted and one more coordinate is fixed every step.
    """
    if len(v) != len(w):
        raise StructuralError(f"length mismatch: {len(v)} vs {len(w)}")
    if not majorizes(v, w):
        raise MajorizationError("hlp_transfer requires v ≺ w")
    target, x = list(sort_desc(v)), list(sort_desc(w))
    d = len(x)
    m = [[ONE if a == b else ZERO for b in range(d)] for a in range(d)]
    while x != target:
        k = next(i for i in range(d) if x[i] < target[i])
        j = max(i for i in range(k) if x[i] > target[i])
        delta = min(x[j] - target[j], target[k] - x[k])
        lam = ONE - delta / (x[j] - x[k])
        t = _t_transform(d, j, k, lam)
        x[j], x[k] = x[j] - delta, x[k] + delta
        m = _matmul(t, m)
    return DoublyStochasticMatrix(tuple(tuple(r) for r in m))


def _smallest_matching(support: list) -> tuple:
    """Lexicographically smallest perfect matching (row -> column), DFS."""
    d = len(support)
    perm = [-1] * d
    used = [False] * d

    def go(i):
        if i == d:
            return True
        for j in support[i]:
            if not used[j]:
                used[j] = True
                perm[i] = j
                if go(i + 1):
                    return True
                used[j] = False
        return False

    if not go(0):
        raise StructuralError("support has no perfect matching; matrix is not doubly stochastic")
    return tuple(perm)


def _reduce_terms(terms: list, d: int) -> list:
    """Carathéodory reduction to at most (d-1)^2 + 1 permutations."""
    bound = (d - 1) ** 2 + 1
    while len(terms) > bound:
        # affine dependence among the permutation matrices: Σ c_t P_t = 0, Σ c_t = 0
        vecs = []
        for _, p in terms:
            col = [ZERO] * (d * d) + [ONE]
            for i, j in enumerate(p):
                col[i * d + j] = ONE
            vecs.append(col)
        c = _null_vector(vecs)
        # move along c until a weight hits zero
        ratio = None
        for (w, _), ct in zip(terms, c):
            if ct > 0:
                r = w / ct
                if ratio is None or r < ratio:
                    ratio = r
        terms = [(w - ratio * ct, p) for (w, p), ct in zip(terms, c)]
        terms = [(w, p) for w, p in terms if w != 0]
    return terms


def _null_vector(columns: list) -> list:
    """A nonzero vector c with Σ c_t columns[t] = 0 (exists when len > rank)."""
    n = len(columns)
    m = len(columns[0])
    a = [[columns[t][i] for t in range(n)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = next(c for c in range(n) if c not in pivots)
    sol = [ZERO] * n
    sol[free] = ONE
    for row, pc in enumerate(pivots):
        sol[pc] = -a[row][free]
    return sol


def birkhoff_decompose(m) -> PermutationCombination:
    """Greedy Birkhoff–von Neumann decomposition with exact weights."""
    if not isinstance(m, DoublyStochasticMatrix):
        m = DoublyStochasticMatrix(m)
    d = m.d
    rest = [list(r) for r in m.entries]
    remaining = ONE
    terms = []
    while remaining > 0:
        support = [[j for j in range(d) if rest[i][j] > 0] for i in range(d)]
        perm = _smallest_matching(support)
        theta = min(rest[i][perm[i]] for i in range(d))
        for i in range(d):
            rest[i][perm[i]] -= theta
        remaining -= theta
        terms.append((theta, perm))
    terms = _reduce_terms(terms, d)
    return PermutationCombination(tuple(terms))


def transfer_combination(v: Sequence, w: Sequence) -> PermutationCombination:
    """Write ``sort_desc(v)`` as a convex combination of permutations of ``sort_desc(w)``."""
    return birkhoff_decompose(hlp_transfer(v, w))
