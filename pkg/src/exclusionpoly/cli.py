"""``exclusionpoly`` command-line interface.

Exit codes: 0 success, 1 a property violation was found, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import serialize
from .configurations import default_sizes, enumerate_lineups
from .constraints import MAX_R, constraints_for_r, instantiate, prune_redundant, satisfies_all
from .errors import DomainError, ExclusionPolyError, InfeasibleError, StructuralError, UnboundedError
from .gok import dft_domain_membership, excitation_gaps, weighted_energy
from .polytope import (
    PropertyViolation,
    WeightVector,
    canonical,
    facets,
    generating_vertices,
    inner_outer,
    membership,
    prime_weights,
    sorted_region_points,
    support_minimum,
)
from .rational import parse_vector
from .serialize import q, qv
from .verify import SUITE_NAMES, run_all

COMMANDS = (
    "lineups", "vertices", "check", "facets", "approx", "table",
    "gok", "gaps", "dft-check", "figure-data", "verify",
)
CONFIG_KEYS = {
    "n": int, "d": int, "r": int, "weights": str, "lambda": str, "h": str,
    "format": str, "seed": int, "minimal": bool, "approx_decimals": int,
    "rmax": int, "budget": int, "hull_max_dim": int, "samples": int,
}
DEFAULTS = {"format": "json", "seed": 0, "minimal": False, "rmax": 8, "budget": 8, "hull_max_dim": 9, "samples": 200}


class UsageError(Exception):
    pass


@dataclass
class Output:
    payload: dict
    header: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    text: list = field(default_factory=list)
    status: int = 0


# -- argument handling --------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="particle number N")
    common.add_argument("--d", type=int, help="one-particle dimension d")
    common.add_argument("--r", type=int, help="number of nonzero weights")
    common.add_argument("--weights", help="weight vector, e.g. '1/2,2/5,1/10'")
    common.add_argument("--lambda", "--occupations", dest="lambda", help="spectrum or occupation vector")
    common.add_argument("--h", help="non-decreasing one-particle levels")
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--seed", type=int)
    common.add_argument("--minimal", action="store_true", default=None, help="prune redundant closed-form constraints")
    common.add_argument("--approx-decimals", type=int, help="add rounded decimal fields to JSON output")
    common.add_argument("--config", help="key=value file supplying defaults")

    p = argparse.ArgumentParser(prog="exclusionpoly", description="Exact spectral polytopes of weighted fermionic ensembles.")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "lineups": "realizable lineups with witness levels",
        "vertices": "generating vertices of the spectral polytope",
        "check": "membership of a spectrum, with certificate and constraint slacks",
        "facets": "exclusion facets by exact hull computation",
        "approx": "inner and outer permutohedra",
        "table": "vertex counts and facet counts per r",
        "gok": "weighted energy against the polytope support minimum",
        "gaps": "excitation gaps, directly and as weight derivatives",
        "dft-check": "whether lattice occupations lie in the functional's domain",
        "figure-data": "polygon data for N=2, d=3 in the (λ1, λ2) plane",
        "verify": "run the invariant suites",
    }
    subs = {name: sub.add_parser(name, parents=[common], help=helps[name]) for name in COMMANDS}
    t = subs["table"]
    t.add_argument("--rmax", type=int, help="largest r to list (default 8)")
    t.add_argument("--budget", type=int, help="largest r actually enumerated (default 8)")
    t.add_argument("--hull-max-dim", type=int, help="largest hull dimension attempted for facet counts (default 9)")
    subs["facets"].add_argument("--hull-max-dim", type=int)
    v = subs["verify"]
    v.add_argument("--samples", type=int, help="sample count scale (default 200)")
    v.add_argument("--suite", action="append", choices=SUITE_NAMES, help="run only this suite (repeatable)")
    return p


def read_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            value = value.strip("\"'")
            kind = CONFIG_KEYS[key]
            if kind is bool:
                out[key] = value.lower() in ("1", "true", "yes", "on")
            elif kind is int:
                try:
                    out[key] = int(value)
                except ValueError as exc:
                    raise UsageError(f"{path}:{lineno}: {key} must be an integer") from exc
            else:
                out[key] = value
    return out


def parse_args(argv) -> argparse.Namespace:
    args = _parser().parse_args(argv)
    cfg = read_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        if getattr(args, key, None) is None:
            if key in cfg:
                setattr(args, key, cfg[key])
            elif key in DEFAULTS:
                setattr(args, key, DEFAULTS[key])
    return args


def _vector(args, key: str, required: bool = True) -> Optional[tuple]:
    text = getattr(args, key)
    if text is None:
        if required:
            raise UsageError(f"--{key} is required for '{args.command}'")
        return None
    return parse_vector(text)


def _weights(args) -> WeightVector:
    if args.weights is not None:
        w = WeightVector(parse_vector(args.weights))
        if args.r is not None and args.r != w.r:
            raise UsageError(f"--r {args.r} disagrees with the {w.r} nonzero weights given")
        return w
    if args.r is None:
        raise UsageError("give --weights or --r")
    if args.r < 1:
        raise UsageError("--r must be at least 1")
    return prime_weights(args.r)


def _sizes(args, r: int) -> tuple:
    if args.n is None and args.d is None:
        return default_sizes(r)
    if args.n is None:
        raise UsageError("--d needs --n")
    d = args.d if args.d is not None else args.n + max(1, r - 1)
    if args.n < 1 or d < args.n:
        raise UsageError(f"need 1 <= N <= d, got N={args.n}, d={d}")
    return args.n, d


def _particle_number(args, lam: tuple) -> int:
    total = sum(lam, Fraction(0))
    if args.n is not None:
        if total != args.n:
            raise UsageError(f"vector sums to {total}, expected N={args.n}")
        return args.n
    if total.denominator != 1:
        raise UsageError(f"vector sums to {total}, not an integer particle number")
    return int(total)


def _check_d(args, d: int) -> None:
    if args.d is not None and args.d != d:
        raise UsageError(f"vector has length {d}, but --d {args.d} was given")


# -- commands -----------------------------------------------------------------

def _cfg_str(c) -> str:
    return "(" + ",".join(str(i) for i in c) + ")"


def cmd_lineups(args) -> Output:
    r = args.r if args.r is not None else (_weights(args).r if args.weights else None)
    if r is None:
        raise UsageError("give --r or --weights")
    n, d = _sizes(args, r)
    lus = enumerate_lineups(n, d, r)
    payload = {"n": n, "d": d, "r": r, "count": len(lus), "lineups": [serialize.to_dict(lu) for lu in lus]}
    rows = [[i + 1, " ".join(_cfg_str(c) for c in lu.sequence), " ".join(qv(lu.witness_h))] for i, lu in enumerate(lus)]
    text = [f"N={n} d={d} r={r}: {len(lus)} lineups"]
    text += [f"{i}. {' < '.join(_cfg_str(c) for c in lu.sequence)}   h = ({', '.join(qv(lu.witness_h))})" for i, lu in enumerate(lus, 1)]
    return Output(payload, ["index", "configurations", "witness_h"], rows, text)


def _vertex_set(args):
    w = _weights(args)
    n, d = _sizes(args, w.r)
    return generating_vertices(n, d, w)


def cmd_vertices(args) -> Output:
    vs = _vertex_set(args)
    payload = serialize.to_dict(vs)
    payload["merged"] = vs.merged
    rows = [[i + 1, *qv(v), " ".join(_cfg_str(c) for c in lu.sequence)] for i, (v, lu) in enumerate(zip(vs.vertices, vs.provenance))]
    header = ["index"] + [f"v{k}" for k in range(1, vs.d + 1)] + ["lineup"]
    text = [f"N={vs.n} d={vs.d} w=({', '.join(qv(vs.weight.nonzero))}): {len(vs.vertices)} generating vertices"
            + (" (some lineups merged)" if vs.merged else "")]
    text += [f"v{i} = ({', '.join(qv(v))})" for i, v in enumerate(vs.vertices, 1)]
    return Output(payload, header, rows, text)


def cmd_check(args) -> Output:
    lam = _vector(args, "lambda")
    n = _particle_number(args, lam)
    d = len(lam)
    _check_d(args, d)
    w = _weights(args)
    vs = generating_vertices(n, d, w)
    cert = membership(lam, vs)
    lam_sorted = tuple(sorted(lam, reverse=True))
    payload = {
        "n": n, "d": d, "weights": qv(w.weights), "lambda": qv(lam),
        "inside": cert.inside, "certificate": serialize.to_dict(cert), "closed_form": None,
    }
    text = [f"λ = ({', '.join(qv(lam))}) is {'inside' if cert.inside else 'outside'} Σ(w)"]
    rows = []
    if w.r <= MAX_R:
        ok, slacks = satisfies_all(lam_sorted, w.weights, w.r, n)
        entries = [{"label": c.label, "slack": q(s), "satisfied": s >= 0} for c, s in slacks]
        payload["closed_form"] = {
            "inside": ok,
            "constraints": entries,
            "violated": [e["label"] for e in entries if not e["satisfied"]],
            "tight": [e["label"] for e in entries if e["slack"] == "0"],
        }
        rows = [[e["label"], e["slack"], e["satisfied"]] for e in entries]
        text += [f"  {e['label']}: slack {e['slack']}" + ("" if e["satisfied"] else "  VIOLATED") for e in entries]
        if ok != cert.inside:
            raise PropertyViolation(f"closed form says {ok}, LP says {cert.inside} for λ={lam}")
    if not cert.inside:
        text.append(f"  separating prefix k={cert.violated_prefix}, margin {q(cert.margin)}")
    return Output(payload, ["constraint", "slack", "satisfied"], rows, text)


def cmd_facets(args) -> Output:
    vs = _vertex_set(args)
    hs = facets(vs, args.hull_max_dim if args.hull_max_dim is not None else DEFAULTS["hull_max_dim"])
    payload = serialize.to_dict(hs)
    payload["weights"] = qv(vs.weight.weights)
    text = [f"N={vs.n} d={vs.d} r={vs.weight.r}: {len(hs.inequalities)} exclusion facets"]
    text += [_ineq_text(a, b) for a, b in hs.inequalities]
    r = vs.weight.r
    if r <= MAX_R:
        syms = constraints_for_r(r, vs.n, vs.d)
        concrete = instantiate(syms, vs.n, vs.d, vs.weight.weights)
        labelled = list(zip((c.label for c in syms), concrete))
        if args.minimal:
            kept = prune_redundant(concrete, vs.n, vs.d)
            labelled = [(lab, ab) for lab, ab in labelled if ab in kept]
        closed = [{"label": lab, "coeffs": list(a), "bound": q(b)} for lab, (a, b) in labelled]
        canon = {canonical(a, b, vs.n) for _, (a, b) in labelled}
        payload["closed_form"] = {"minimal": bool(args.minimal), "constraints": closed}
        if args.minimal:
            payload["closed_form"]["matches_hull"] = canon == set(hs.inequalities)
    rows = [[*a, q(b)] for a, b in hs.inequalities]
    return Output(payload, [f"a{k}" for k in range(1, vs.d + 1)] + ["bound"], rows, text)


def _ineq_text(a, b) -> str:
    terms = []
    for k, c in enumerate(a, 1):
        if c:
            terms.append(f"{'' if c == 1 else c}λ{k}")
    return " + ".join(terms).replace("+ -", "- ") + f" <= {q(b)}"


def cmd_approx(args) -> Output:
    vs = _vertex_set(args)
    pair = inner_outer(vs)
    payload = serialize.to_dict(pair)
    rows = [["v_minus", *qv(pair.v_minus)], ["v_plus", *qv(pair.v_plus)]]
    text = [f"v- = ({', '.join(qv(pair.v_minus))})", f"v+ = ({', '.join(qv(pair.v_plus))})"]
    return Output(payload, ["name"] + [f"v{k}" for k in range(1, vs.d + 1)], rows, text)


def facet_sizes(r: int) -> tuple:
    """Smallest default instance on which every r-facet is visible (needs N >= 2)."""
    return default_sizes(max(r, 3))


def cmd_table(args) -> Output:
    rows_out, rows, text = [], [], []
    truncated = False
    for r in range(1, args.rmax + 1):
        n, d = default_sizes(r)
        if r > args.budget:
            truncated = True
            rows_out.append({"r": r, "n": n, "d": d, "lineups": None, "vertices": None, "ineq": None, "truncated": True})
            continue
        t0 = time.perf_counter()
        vs = generating_vertices(n, d, prime_weights(r))
        entry = {"r": r, "n": n, "d": d, "lineups": vs.lineup_count, "vertices": len(vs.vertices), "ineq": None, "truncated": False}
        fn, fd = facet_sizes(r)
        if fd - 1 <= args.hull_max_dim:
            hs = facets(generating_vertices(fn, fd, prime_weights(r)), args.hull_max_dim)
            entry["ineq"] = len(hs.inequalities)
            entry["ineq_n"], entry["ineq_d"] = fn, fd
        rows_out.append(entry)
        print(f"r={r}: {entry['vertices']} vertices ({time.perf_counter() - t0:.1f}s)", file=sys.stderr)
    for e in rows_out:
        mark = "TRUNCATED" if e["truncated"] else ""
        rows.append([e["r"], "" if e["vertices"] is None else e["vertices"], "" if e["ineq"] is None else e["ineq"], mark])
        if e["truncated"]:
            text.append(f"r={e['r']}: not computed (beyond budget {args.budget})")
        else:
            ineq = "-" if e["ineq"] is None else e["ineq"]
            text.append(f"r={e['r']}  #(v)={e['vertices']}  #(ineq)={ineq}")
    payload = {"rmax": args.rmax, "budget": args.budget, "truncated": truncated, "rows": rows_out}
    return Output(payload, ["r", "vertices", "ineq", "truncated"], rows, text)


def cmd_gok(args) -> Output:
    h = _vector(args, "h")
    w = _weights(args)
    if args.n is None:
        raise UsageError("--n is required for 'gok'")
    d = len(h)
    _check_d(args, d)
    res = weighted_energy(h, w, args.n)
    sm, arg = support_minimum(h, generating_vertices(args.n, d, w))
    if sm != res.value:
        raise PropertyViolation(f"support minimum {sm} differs from weighted energy {res.value}")
    payload = serialize.to_dict(res)
    payload.update({"h": qv(h), "n": args.n, "support_minimum": q(sm), "support_argmin": qv(arg), "agree": True})
    rows = [[i + 1, _cfg_str(c), q(e)] for i, (c, e) in enumerate(res.sorted_config_energies)]
    text = [f"weighted energy = {q(res.value)} (support minimum {q(sm)})",
            f"minimizer occupations = ({', '.join(qv(res.minimizer_occupation))})"
            + ("  [energy tie: minimizer not unique]" if res.tie else "")]
    text += [f"  E{i} = {q(e)}  {_cfg_str(c)}" for i, (c, e) in enumerate(res.sorted_config_energies, 1)]
    return Output(payload, ["index", "configuration", "energy"], rows, text)


def cmd_gaps(args) -> Output:
    h = _vector(args, "h")
    if args.n is None:
        raise UsageError("--n is required for 'gaps'")
    w = WeightVector(parse_vector(args.weights)) if args.weights else None
    r = args.r if args.r is not None else (w.r if w else None)
    if r is None:
        raise UsageError("give --r or --weights")
    res = excitation_gaps(h, args.n, r, w)
    if not res.consistent:
        raise PropertyViolation(f"gap paths disagree: {res.gaps} vs {res.derivative_gaps}")
    payload = serialize.to_dict(res)
    payload.update({"h": qv(h), "n": args.n, "r": r})
    rows = [[j + 2, q(g), q(dg), side] for j, (g, dg, side) in enumerate(zip(res.gaps, res.derivative_gaps, res.one_sided))]
    text = [f"gap E{j + 2}-E1 = {q(g)}" for j, g in enumerate(res.gaps)]
    if res.tie:
        text.append("energy tie among the lowest levels: weighted energy not differentiable there")
    return Output(payload, ["j", "gap", "derivative_gap", "one_sided"], rows, text)


def cmd_dft_check(args) -> Output:
    occ = _vector(args, "lambda")
    n = _particle_number(args, occ)
    d = len(occ)
    _check_d(args, d)
    w = _weights(args)
    inside = dft_domain_membership(occ, w, n, d)
    payload = {"occupations": qv(occ), "n": n, "d": d, "weights": qv(w.weights), "inside": inside}
    text = [f"occupations ({', '.join(qv(occ))}) {'are' if inside else 'are not'} in the domain"]
    return Output(payload, ["inside"], [[inside]], text)


def convex_polygon(points) -> list:
    """Exact counter-clockwise hull (no collinear points), from the lowest-left point."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def cmd_figure_data(args) -> Output:
    if (args.n or 2) != 2 or (args.d or 3) != 3:
        raise UsageError("figure data is defined only for N=2, d=3 (projection λ3 = 2 - λ1 - λ2)")
    w = _weights(args)
    vs = generating_vertices(2, 3, w)
    perms = set()
    for v in vs.vertices:
        a, b, c = v
        perms |= {(a, b), (a, c), (b, a), (b, c), (c, a), (c, b)}
    full = convex_polygon(perms)
    down = convex_polygon({p[:2] for p in sorted_region_points(vs)})
    payload = {
        "n": 2, "d": 3, "weights": qv(w.weights),
        "vertices": [qv(v) for v in vs.vertices],
        "sigma": {"polygon": [qv(p) for p in full]},
        "sigma_sorted": {"polygon": [qv(p) for p in down]},
    }
    rows = [["sigma", i, *qv(p)] for i, p in enumerate(full)] + [["sigma_sorted", i, *qv(p)] for i, p in enumerate(down)]
    text = [f"Σ(w): {len(full)}-gon " + " ".join(f"({q(x)}, {q(y)})" for x, y in full),
            f"Σ↓(w): {len(down)}-gon " + " ".join(f"({q(x)}, {q(y)})" for x, y in down)]
    return Output(payload, ["region", "index", "lambda1", "lambda2"], rows, text)


def cmd_verify(args) -> Output:
    results = run_all(args.seed, args.samples, args.suite)
    ok = all(r.ok for r in results)
    payload = {
        "seed": args.seed, "samples": args.samples, "ok": ok,
        "suites": [{"name": r.name, "checked": r.checked, "ok": r.ok, "failures": r.failures, "stats": r.stats} for r in results],
    }
    rows = [[r.name, r.checked, "PASS" if r.ok else "FAIL", len(r.failures)] for r in results]
    text = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}  ({r.checked} checks)" for r in results]
    for r in results:
        text += [f"    {m}" for m in r.failures]
    return Output(payload, ["suite", "checked", "status", "failures"], rows, text, 0 if ok else 1)


HANDLERS = {
    "lineups": cmd_lineups, "vertices": cmd_vertices, "check": cmd_check, "facets": cmd_facets,
    "approx": cmd_approx, "table": cmd_table, "gok": cmd_gok, "gaps": cmd_gaps,
    "dft-check": cmd_dft_check, "figure-data": cmd_figure_data, "verify": cmd_verify,
}


def render(out: Output, fmt: str, approx_decimals: Optional[int] = None) -> str:
    if fmt == "json":
        return serialize.dumps(out.payload, approx_decimals) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(out.header)
        wr.writerows(out.rows)
        return buf.getvalue()
    return "\n".join(out.text) + "\n"


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        out = HANDLERS[args.command](args)
    except PropertyViolation as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 1
    except (InfeasibleError, UnboundedError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, DomainError, StructuralError, ExclusionPolyError, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(out, args.format, args.approx_decimals))
    return out.status


if __name__ == "__main__":
    sys.exit(main())
