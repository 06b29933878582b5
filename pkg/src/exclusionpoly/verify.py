"""Seeded invariant suites behind ``exclusionpoly verify``.

Every suite draws exact rational samples from a ``random.Random`` and
returns a :class:`SuiteResult`; a non-empty ``failures`` list means a
proven identity failed, which the CLI reports with exit code 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .configurations import check_witness, default_sizes
from .constraints import satisfies_all
from .errors import ExclusionPolyError
from .gok import excitation_gaps, weighted_energy
from .majorization import hlp_transfer, birkhoff_decompose, majorizes, sort_desc
from .polytope import (
    WeightVector,
    facets,
    generating_vertices,
    inner_outer,
    membership,
    polytope_inclusion,
    prime_weights,
    support_minimum,
    v_plus_closed_form,
    verify_certificate,
)
from .sampling import majorized_by, random_levels, random_spectrum, random_weights
from . import serialize

CLOSED_FORM_SIZES = ((2, 4), (3, 6), (4, 7))


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str, limit: int = 20) -> None:
        if len(self.failures) < limit:
            self.failures.append(msg)
        else:
            self.stats["suppressed"] = self.stats.get("suppressed", 0) + 1


def vh_equivalence(rng: random.Random, samples: int, sizes=CLOSED_FORM_SIZES, rs=(1, 2, 3, 4)) -> SuiteResult:
    """Closed-form constraints against LP membership, ``samples`` per (size, r)."""
    res = SuiteResult("vh-equivalence", stats={"inside": 0, "outside": 0})
    for n, d in sizes:
        for r in rs:
            w = random_weights(rng, r)
            vs = generating_vertices(n, d, w)
            for _ in range(samples):
                lam = random_spectrum(rng, vs)
                lp_ok = membership(lam, vs, certify=False).inside
                cf_ok, _ = satisfies_all(lam, w.weights, r, n)
                res.checked += 1
                res.stats["inside" if lp_ok else "outside"] += 1
                if lp_ok != cf_ok:
                    res.fail(f"(N,d,r)=({n},{d},{r}) w={w.weights} λ={lam}: LP {lp_ok}, closed form {cf_ok}")
    return res


def certificates(rng: random.Random, samples: int) -> SuiteResult:
    """Membership certificates re-checked independently."""
    res = SuiteResult("certificates")
    for n, d in CLOSED_FORM_SIZES[:2]:
        for r in (2, 3, 4):
            w = random_weights(rng, r)
            vs = generating_vertices(n, d, w)
            for _ in range(samples):
                lam = random_spectrum(rng, vs)
                cert = membership(lam, vs)
                res.checked += 1
                if not verify_certificate(lam, vs, cert):
                    res.fail(f"bad certificate for λ={lam} at ({n},{d}) w={w.weights}")
    return res


def vertex_feasibility(rng: random.Random, samples: int, rmax: int = 5) -> SuiteResult:
    """Vertices are feasible occupation vectors and witnesses realize their lineups."""
    res = SuiteResult("vertex-feasibility")
    for r in range(1, rmax + 1):
        n, d = default_sizes(r)
        for _ in range(max(1, samples)):
            vs = generating_vertices(n, d, random_weights(rng, r))
            for v, lu in zip(vs.vertices, vs.provenance):
                res.checked += 1
                if sum(v) != n or any(x < 0 or x > 1 for x in v) or tuple(sort_desc(v)) != v:
                    res.fail(f"infeasible vertex {v} at r={r}")
                if not check_witness(lu, n, d):
                    res.fail(f"witness fails for lineup {lu.sequence}")
    return res


def sandwich(rng: random.Random, samples: int, rmax: int = 5) -> SuiteResult:
    """``P_{v-} ⊆ Σ(w) ⊆ P_{v+}`` and the closed form of ``v+``."""
    res = SuiteResult("sandwich")
    for k in range(samples):
        r = 1 + k % rmax
        n, d = default_sizes(r)
        w = random_weights(rng, r)
        vs = generating_vertices(n, d, w)
        try:
            pair = inner_outer(vs)
        except ExclusionPolyError as exc:
            res.fail(str(exc))
            continue
        res.checked += 1
        if not membership(pair.v_minus, vs, certify=False).inside:
            res.fail(f"v- {pair.v_minus} outside Σ(w) for w={w.weights}")
        if any(not majorizes(v, pair.v_plus) for v in vs.vertices):
            res.fail(f"a vertex escapes P_v+ for w={w.weights}")
        if pair.v_plus != v_plus_closed_form(n, d, w):
            res.fail(f"v+ {pair.v_plus} differs from the closed form for w={w.weights}")
    return res


def hierarchy(n: int = 3, d: int = 6, rmax: int = 4) -> SuiteResult:
    """Exclusion-facet coefficient patterns grow with r; new counts recorded."""
    res = SuiteResult("hierarchy")
    prev = None
    new_counts = []
    for r in range(1, rmax + 1):
        pats = {a for a, _ in facets(generating_vertices(n, d, prime_weights(r))).inequalities}
        if prev is not None:
            res.checked += 1
            if not prev < pats:
                res.fail(f"facet patterns at r={r - 1} are not a strict subset of those at r={r}")
        new_counts.append(len(pats - (prev or set())))
        prev = pats
    res.stats["new"] = new_counts
    return res


def gok_duality(rng: random.Random, samples: int, rmax: int = 5) -> SuiteResult:
    """``min ⟨h, Σ(w)⟩ = Σ w_j Ẽ_j`` and the two gap computations agree."""
    res = SuiteResult("gok-duality")
    for k in range(samples):
        r = 1 + k % rmax
        n, d = default_sizes(r)
        w = random_weights(rng, r)
        h = random_levels(rng, d)
        we = weighted_energy(h, w, n)
        sm, _ = support_minimum(h, generating_vertices(n, d, w))
        res.checked += 1
        if sm != we.value:
            res.fail(f"h={h} w={w.weights}: support {sm} vs weighted energy {we.value}")
        if r >= 2:
            g = excitation_gaps(h, n, r)
            if not g.consistent:
                res.fail(f"gaps disagree for h={h}: {g.gaps} vs {g.derivative_gaps}")
    return res


def inclusion(rng: random.Random, samples: int, n: int = 2, d: int = 4, rmax: int = 4) -> SuiteResult:
    """Σ(w') ⊆ Σ(w) exactly when w' ≺ w; ``samples`` pairs of each kind."""
    res = SuiteResult("inclusion", stats={"majorized": 0, "not_majorized": 0})
    tries = 0
    while min(res.stats["majorized"], res.stats["not_majorized"]) < samples and tries < 50 * samples:
        tries += 1
        big = random_weights(rng, rng.randint(1, rmax), generic=False)
        if rng.random() < 0.5:
            raw = sorted(majorized_by(rng, big.padded(rmax)), reverse=True)
            small = WeightVector(tuple(raw))
        else:
            small = random_weights(rng, rng.randint(1, rmax), generic=False)
        expected = majorizes(small.padded(rmax), big.padded(rmax))
        key = "majorized" if expected else "not_majorized"
        if res.stats[key] >= samples:
            continue
        res.stats[key] += 1
        res.checked += 1
        try:
            polytope_inclusion(small, big, n, d)
        except ExclusionPolyError as exc:
            res.fail(str(exc))
    return res


def constructive_majorization(rng: random.Random, samples: int, dmax: int = 8) -> SuiteResult:
    """HLP transfer then Birkhoff decomposition rebuilds ``v`` from ``w``."""
    res = SuiteResult("constructive-majorization")
    for _ in range(samples):
        d = rng.randint(1, dmax)
        w = tuple(rng.randint(-20, 20) for _ in range(d))
        v = majorized_by(rng, w)
        m = hlp_transfer(v, w)
        comb = birkhoff_decompose(m)
        res.checked += 1
        if comb.apply(sort_desc(w)) != sort_desc(v):
            res.fail(f"reconstruction failed for v={v}, w={w}")
        if len(comb.terms) > (d - 1) ** 2 + 1:
            res.fail(f"{len(comb.terms)} permutations exceed the Carathéodory bound for d={d}")
    return res


def round_trip(rng: random.Random, samples: int) -> SuiteResult:
    """Every JSON encoding decodes back to an equal object."""
    res = SuiteResult("json-round-trip")
    for k in range(samples):
        r = 1 + k % 4
        n, d = default_sizes(r)
        w = random_weights(rng, r)
        vs = generating_vertices(n, d, w)
        objs = [vs, membership(random_spectrum(rng, vs), vs), inner_outer(vs)]
        objs += list(vs.provenance)
        if d > n and d - 1 <= 6:
            objs.append(facets(vs))
        h = random_levels(rng, d)
        objs.append(weighted_energy(h, w, n))
        if r >= 2:
            objs.append(excitation_gaps(h, n, r))
        for obj in objs:
            res.checked += 1
            if serialize.loads(serialize.dumps(obj)) != obj:
                res.fail(f"round trip changed a {type(obj).__name__}")
    return res


def suites(samples: int) -> list:
    """(name, callable taking rng) in execution order; ``samples`` scales work."""
    s = max(1, samples)
    return [
        ("vh-equivalence", lambda rng: vh_equivalence(rng, s)),
        ("certificates", lambda rng: certificates(rng, s)),
        ("vertex-feasibility", lambda rng: vertex_feasibility(rng, max(1, s // 20))),
        ("sandwich", lambda rng: sandwich(rng, s)),
        ("hierarchy", lambda rng: hierarchy()),
        ("gok-duality", lambda rng: gok_duality(rng, s)),
        ("inclusion", lambda rng: inclusion(rng, s)),
        ("constructive-majorization", lambda rng: constructive_majorization(rng, s)),
        ("json-round-trip", lambda rng: round_trip(rng, max(1, s // 5))),
    ]


def run_all(seed: int, samples: int, only=None) -> list:
    out = []
    for name, fn in suites(samples):
        if only and name not in only:
            continue
        out.append(fn(random.Random(f"{seed}:{name}")))
    return out


SUITE_NAMES = tuple(name for name, _ in suites(1))
