"""Closed-form generalized exclusion constraints for up to four weights.

Each constraint is stored symbolically in the particle number ``N``:
coefficient blocks over index ranges whose endpoints are affine in ``N``,
integer coefficients on ``w_1..w_4`` and a bound constant ``a·N + b``.
The hierarchy is cumulative: the list for ``r`` extends the list for
``r - 1``.  The normalization ``Σλ = N`` is kept separate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError
from .lp import LinearProgram, lp_maximize
from .rational import vec

ZERO = Fraction(0)
MAX_R = 4


@dataclass(frozen=True)
class Affine:
    """``a·N + b``."""

    a: int
    b: int

    def at(self, n: int) -> int:
        return self.a * n + self.b

    def to_dict(self) -> dict:
        return {"N": self.a, "const": self.b}

    @classmethod
    def from_dict(cls, data: dict) -> "Affine":
        return cls(int(data["N"]), int(data["const"]))


@dataclass(frozen=True)
class Block:
    coeff: int
    first: Affine
    last: Affine


@dataclass(frozen=True)
class SymbolicInequality:
    """``Σ blocks·λ↓ <= constant(N) + Σ_j weight_coeffs[j]·w_{j+1}``."""

    blocks: tuple
    weight_coeffs: tuple
    constant: Affine
    introduced_at: int
    label: str = ""

    def lambda_coeffs(self, n: int, d: int) -> Optional[tuple]:
        """Integer coefficients on λ↓_1..λ↓_d, or None if the pattern needs λ_0.

        Indices beyond ``d`` are dropped (those occupations vanish).
        """
        out = [0] * d
        for blk in self.blocks:
            lo, hi = blk.first.at(n), blk.last.at(n)
            if lo > hi:
                continue
            if lo < 1:
                return None
            for i in range(lo, min(hi, d) + 1):
                out[i - 1] += blk.coeff
        return tuple(out)

    def bound(self, n: int, w: Sequence) -> Fraction:
        w = vec(w)
        extra = sum((c * (w[j] if j < len(w) else ZERO) for j, c in enumerate(self.weight_coeffs)), ZERO)
        return self.constant.at(n) + extra

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "introduced_at": self.introduced_at,
            "lambda_blocks": [
                {"coeff": b.coeff, "first": b.first.to_dict(), "last": b.last.to_dict()} for b in self.blocks
            ],
            "weight_coeffs": list(self.weight_coeffs),
            "constant": self.constant.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SymbolicInequality":
        blocks = tuple(
            Block(int(b["coeff"]), Affine.from_dict(b["first"]), Affine.from_dict(b["last"]))
            for b in data["lambda_blocks"]
        )
        return cls(
            blocks,
            tuple(int(c) for c in data["weight_coeffs"]),
            Affine.from_dict(data["constant"]),
            int(data["introduced_at"]),
            data.get("label", ""),
        )


def _blk(coeff, first, last):
    return Block(coeff, Affine(*first), Affine(*last))


# Index endpoints as (coefficient of N, constant).
FAMILY = (
    SymbolicInequality(
        (_blk(1, (0, 1), (0, 1)),), (), Affine(0, 1), 1,
        "λ1 <= 1",
    ),
    SymbolicInequality(
        (_blk(1, (0, 1), (1, 0)),), (1,), Affine(1, -1), 2,
        "λ1+…+λN <= N-1+w1",
    ),
    SymbolicInequality(
        (_blk(2, (0, 1), (1, -1)), _blk(1, (1, 0), (1, 1))), (1, 1), Affine(2, -2), 3,
        "2(λ1+…+λ[N-1]) + λN + λ[N+1] <= 2(N-1)+w1+w2",
    ),
    SymbolicInequality(
        (_blk(2, (0, 1), (1, -2)), _blk(1, (1, -1), (1, 1))), (1, 1, 1), Affine(2, -3), 4,
        "2(λ1+…+λ[N-2]) + λ[N-1] + λN + λ[N+1] <= 2(N-2)+1+w1+w2+w3",
    ),
    SymbolicInequality(
        (_blk(2, (0, 1), (1, -1)), _blk(1, (1, 0), (1, 2))), (1, 1, 1), Affine(2, -2), 4,
        "2(λ1+…+λ[N-1]) + λN + λ[N+1] + λ[N+2] <= 2(N-1)+w1+w2+w3",
    ),
)


def symbolic_constraints(r: int) -> list:
    if r < 1:
        raise DomainError("r must be at least 1")
    if r > MAX_R:
        raise DomainError(f"closed forms exist only for r <= {MAX_R}; use facet enumeration for numeric w")
    return [c for c in FAMILY if c.introduced_at <= r]


def constraints_for_r(r: int, n: int, d: int) -> list:
    """The constraints of setting ``r`` that make sense at ``(N, d)``.

    Patterns that would reference ``λ_0`` (only possible for ``N = 1`` at
    ``r = 4``) are left out; everything else is kept even when redundant.
    """
    if n < 1 or d < n:
        raise DomainError(f"need 1 <= N <= d, got N={n}, d={d}")
    return [c for c in symbolic_constraints(r) if c.lambda_coeffs(n, d) is not None]


def hierarchy_delta(r: int) -> list:
    """Constraints new in setting ``r`` compared with ``r - 1``."""
    return [c for c in symbolic_constraints(r) if c.introduced_at == r]


def evaluate(ineq: SymbolicInequality, lam: Sequence, w: Sequence, n: Optional[int] = None) -> tuple:
    """``(satisfied, slack)`` with ``slack = bound - lhs`` computed exactly.

    ``λ`` must already be sorted non-increasingly; ``N`` defaults to ``Σλ``.
    """
    lam = vec(lam)
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise DomainError("λ must be sorted non-increasingly before evaluation")
    if n is None:
        total = sum(lam, ZERO)
        if total.denominator != 1:
            raise DomainError(f"Σλ = {total} is not an integer particle number")
        n = int(total)
    coeffs = ineq.lambda_coeffs(n, len(lam))
    if coeffs is None:
        raise DomainError(f"constraint '{ineq.label}' is undefined at N={n}")
    lhs = sum((c * x for c, x in zip(coeffs, lam)), ZERO)
    slack = ineq.bound(n, w) - lhs
    return slack >= 0, slack


def instantiate(ineqs: Sequence, n: int, d: int, w: Sequence) -> list:
    """Concrete ``(coeffs, bound)`` pairs at numeric ``w``."""
    out = []
    for c in ineqs:
        a = c.lambda_coeffs(n, d)
        if a is not None:
            out.append((a, c.bound(n, w)))
    return out


def in_pauli_simplex(lam: Sequence) -> bool:
    lam = vec(lam)
    return all(a >= b for a, b in zip(lam, lam[1:])) and lam[-1] >= 0


def satisfies_all(lam: Sequence, w: Sequence, r: int, n: Optional[int] = None) -> tuple:
    """Closed-form membership of a sorted spectrum in Σ↓(w).

    Returns ``(inside, slacks)``; ``inside`` also requires ``λ_d >= 0``.
    """
    lam = vec(lam)
    n = n if n is not None else int(sum(lam))
    slacks = []
    ok = lam[-1] >= 0
    for c in constraints_for_r(r, n, len(lam)):
        good, s = evaluate(c, lam, w, n)
        slacks.append((c, s))
        ok = ok and good
    return ok, slacks


def prune_redundant(concrete: Sequence, n: int, d: int) -> list:
    """Drop inequalities implied by the others together with Δ and Σλ = N.

    Each candidate is maximized over the rest by an exact LP; it is kept only
    if the maximum exceeds its bound.  Processes in order, so of two
    identical inequalities the first survives.
    """
    kept = list(concrete)
    ordering = []
    for k in range(d - 1):
        row = [0] * d
        row[k], row[k + 1] = -1, 1
        ordering.append((tuple(row), 0))
    last = [0] * d
    last[-1] = -1
    ordering.append((tuple(last), 0))
    i = 0
    while i < len(kept):
        a, b = kept[i]
        others = kept[:i] + kept[i + 1:]
        lp = LinearProgram(d, objective=a, eq=[((1,) * d, n)], leq=ordering + list(others))
        best, _ = lp_maximize(lp)
        if best <= b:
            del kept[i]
        else:
            i += 1
    return kept
