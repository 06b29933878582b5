"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` using
Bland's rule, so it always terminates and is fully deterministic.  It is
meant for the small systems that show up in this package (tens of
variables and constraints); it makes no attempt to be fast at scale.

Variables are free unless ``nonneg=True``.  Strict inequalities are not
supported: callers maximize a slack variable instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InfeasibleError, StructuralError, UnboundedError
from .rational import as_rational

ZERO = Fraction(0)
ONE = Fraction(1)


def _row(row, n):
    r = tuple(as_rational(x) for x in row)
    if len(r) != n:
        raise StructuralError(f"constraint row has length {len(r)}, expected {n}")
    return r


@dataclass(frozen=True)
class LinearProgram:
    """``minimize objective·x`` s.t. ``a·x = b`` (eq) and ``a·x <= b`` (leq)."""

    n_vars: int
    objective: Optional[tuple] = None
    eq: tuple = ()
    leq: tuple = ()
    nonneg: bool = False

    def __post_init__(self):
        if self.n_vars < 1:
            raise StructuralError("a linear program needs at least one variable")
        n = self.n_vars
        if self.objective is not None:
            object.__setattr__(self, "objective", _row(self.objective, n))
        object.__setattr__(self, "eq", tuple((_row(a, n), as_rational(b)) for a, b in self.eq))
        object.__setattr__(self, "leq", tuple((_row(a, n), as_rational(b)) for a, b in self.leq))

    def satisfied_by(self, x: Sequence) -> bool:
        """Exact re-substitution check."""
        if len(x) != self.n_vars:
            return False
        if self.nonneg and any(v < 0 for v in x):
            return False
        for a, b in self.eq:
            if sum(ai * xi for ai, xi in zip(a, x)) != b:
                return False
        for a, b in self.leq:
            if sum(ai * xi for ai, xi in zip(a, x)) > b:
                return False
        return True


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.feasible


@dataclass
class _Tableau:
    rows: list                 # m rows, each ncols + 1 entries (last = rhs)
    basis: list                # basic column per row
    ncols: int
    blocked: set = field(default_factory=set)   # columns never allowed to enter

    def pivot(self, r: int, c: int, obj: list) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p != ONE:
            inv = ONE / p
            prow = [x * inv if x else x for x in prow]
            self.rows[r] = prow
        nz = [j for j, x in enumerate(prow) if x]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        f = obj[c]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
        self.basis[r] = c

    def objective_row(self, cost: Sequence) -> list:
        """Reduced costs (first ncols entries) and -value (last entry)."""
        obj = list(cost) + [ZERO]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j, x in enumerate(row):
                    if x:
                        obj[j] -= cb * x
        return obj

    def run(self, obj: list) -> bool:
        """Minimize; returns False if unbounded.  Bland's rule throughout."""
        n = self.ncols
        while True:
            enter = -1
            for j in range(n):
                if obj[j] < 0 and j not in self.blocked:
                    enter = j
                    break
            if enter < 0:
                return True
            best = None
            leave = -1
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave < 0:
                return False
            self.pivot(leave, enter, obj)


class _Standard:
    """An LP rewritten as ``A y = b, y >= 0, b >= 0`` with a feasible basis."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        n = lp.n_vars
        self.split = not lp.nonneg
        nx = 2 * n if self.split else n
        n_leq = len(lp.leq)
        n_rows = len(lp.eq) + n_leq
        slack0 = nx
        art0 = nx + n_leq
        rows, basis, arts = [], [], []

        def expand(a):
            if self.split:
                out = []
                for x in a:
                    out.append(x)
                    out.append(-x)
                return out
            return list(a)

        pending = []
        for k, (a, b) in enumerate(lp.leq):
            r = expand(a) + [ZERO] * n_leq
            r[slack0 + k] = ONE
            if b < 0:
                r = [-x for x in r]
                b = -b
                pending.append((r, b))
            else:
                rows.append((r, b, slack0 + k))
        for a, b in lp.eq:
            r = expand(a) + [ZERO] * n_leq
            if b < 0:
                r = [-x for x in r]
                b = -b
            pending.append((r, b))
        total = art0 + len(pending)
        table = []
        for r, b, bcol in rows:
            table.append(r + [ZERO] * len(pending) + [b])
            basis.append(bcol)
        for k, (r, b) in enumerate(pending):
            full = r + [ZERO] * len(pending) + [b]
            full[art0 + k] = ONE
            table.append(full)
            basis.append(art0 + k)
            arts.append(art0 + k)
        self.nx = nx
        self.art0 = art0
        self.arts = arts
        self.tab = _Tableau(table, basis, total)
        assert len(table) == n_rows

    def phase1(self) -> bool:
        if not self.arts:
            return True
        cost = [ZERO] * self.tab.ncols
        for a in self.arts:
            cost[a] = ONE
        obj = self.tab.objective_row(cost)
        self.tab.run(obj)
        if -obj[-1] != 0:
            return False
        # drive zero-level artificials out of the basis; drop redundant rows
        art = set(self.arts)
        i = 0
        while i < len(self.tab.rows):
            if self.tab.basis[i] in art:
                row = self.tab.rows[i]
                col = next((j for j in range(self.art0) if row[j] != 0), -1)
                if col < 0:
                    del self.tab.rows[i]
                    del self.tab.basis[i]
                    continue
                self.tab.pivot(i, col, [ZERO] * (self.tab.ncols + 1))
            i += 1
        self.tab.blocked = art
        return True

    def values(self) -> tuple:
        y = [ZERO] * self.tab.ncols
        for i, b in enumerate(self.tab.basis):
            y[b] = self.tab.rows[i][-1]
        n = self.lp.n_vars
        if self.split:
            return tuple(y[2 * i] - y[2 * i + 1] for i in range(n))
        return tuple(y[:n])

    def cost_vector(self, c: Sequence) -> list:
        cost = [ZERO] * self.tab.ncols
        for i, ci in enumerate(c):
            if self.split:
                cost[2 * i] = ci
                cost[2 * i + 1] = -ci
            else:
                cost[i] = ci
        return cost


def lp_feasible(lp: LinearProgram) -> FeasibilityResult:
    """Decide feasibility exactly; a feasible answer carries a basic witness."""
    std = _Standard(lp)
    if not std.phase1():
        return FeasibilityResult(False)
    x = std.values()
    return FeasibilityResult(True, x)


def lp_minimize(lp: LinearProgram) -> tuple:
    """Return ``(value, argmin)``; argmin is a basic feasible solution.

    Raises :class:`InfeasibleError` or :class:`UnboundedError`.
    """
    if lp.objective is None:
        raise StructuralError("lp_minimize needs an objective")
    std = _Standard(lp)
    if not std.phase1():
        raise InfeasibleError("linear program is infeasible")
    cost = std.cost_vector(lp.objective)
    obj = std.tab.objective_row(cost)
    if not std.tab.run(obj):
        raise UnboundedError("objective is unbounded below")
    x = std.values()
    value = sum((c * xi for c, xi in zip(lp.objective, x)), ZERO)
    return value, x


def lp_maximize(lp: LinearProgram) -> tuple:
    if lp.objective is None:
        raise StructuralError("lp_maximize needs an objective")
    neg = LinearProgram(lp.n_vars, tuple(-c for c in lp.objective), lp.eq, lp.leq, lp.nonneg)
    value, x = lp_minimize(neg)
    return -value, x
