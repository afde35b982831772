"""Command-line front end.

Exit codes: 0 ok, 1 malformed input, 2 size limit, 3 infeasible (empty Q),
4 verification failed.
"""
from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import polyio
from .core import compute_QH, hfree_optimize, hfree_report, hfree_separate, INSIDE
from .ef import (ExtendedFormulation, balas_union, ef_from_hrep, ef_project, ef_validate,
                 intersect_concat, martin_forest_ef, polar_route_intersection)
from .errors import EmptyPolytope, SizeLimit
from .families import (DEFAULT_FAMILY_CAP, FAMILY_NAMES, box_family, facets_family,
                       odd_set_family, oddcut_pm_family, subtour_family)
from .geometry import Polytope, VRep, contains
from .rational import Q, dot, fmt, fmt_vec
from .reductions import restrict_3cnf, stable_set_to_2sat, verify_reduction, VERIFY_CAP
from .xc import DEFAULT_BUDGET, rectangle_cover_number, slack_matrix
from .zoo import (DEFAULT_EDGE_CAP, DEFAULT_TOUR_CAP, enumerate_forests, enumerate_matchings,
                  enumerate_mpm, enumerate_sat, enumerate_stable_sets, enumerate_tours)

HEADER = "hfree-report v1"
OK, MALFORMED, TOO_BIG, INFEASIBLE, FAILED = 0, 1, 2, 3, 4

ZOO_KINDS = ("matching", "perfect-matching", "induced-matching", "maximal-matching",
             "tours", "stable-sets", "sat", "forests", "mpm")


@dataclass
class ExperimentConfig:
    command: str
    inputs: list = field(default_factory=list)
    family: str | None = None
    cap: int = DEFAULT_FAMILY_CAP
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    jobs: int = 1
    out: str | None = None

    def __post_init__(self):
        for name in ("cap", "budget", "jobs"):
            if getattr(self, name) <= 0:
                raise UsageError(f"--{name} must be positive")
        if self.family is not None and self.family not in FAMILY_NAMES:
            raise UsageError(f"unknown family {self.family!r}")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; that code means "size limit" here
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _graph(spec: str | None):
    if spec is None:
        raise UsageError("this command needs --graph")
    g = polyio.named_graph(spec)
    if g is not None and not Path(spec).exists():
        return g
    return polyio.read_graph(_read(spec))


def _polytope(path: str) -> Polytope:
    return polyio.read_polytope(_read(path))


def _ef_or_poly(path: str) -> ExtendedFormulation:
    text = _read(path)
    if text.lstrip().startswith("POLY"):
        p = polyio.read_polytope(text)
        return ef_from_hrep(p.minimal_hrep, p.name)
    return polyio.read_ef(text)


def _vector(args) -> tuple:
    if getattr(args, "c", None) is not None:
        return polyio.read_vector(args.c)
    if getattr(args, "objective", None) is not None:
        return polyio.read_vector(_read(args.objective))
    raise UsageError("give the vector with --c or --objective")


def _family(name: str, q: Polytope, args):
    if name == "box":
        return box_family(q.dim)
    if name == "facets":
        return facets_family(q)
    if name == "subtour":
        n = args.n if getattr(args, "n", None) else _n_from_dim(q.dim)
        return subtour_family(n)
    g = _graph(getattr(args, "graph", None))
    if name == "odd-set":
        return odd_set_family(g)
    return oddcut_pm_family(g)


def _n_from_dim(d: int) -> int:
    n = 3
    while n * (n - 1) // 2 < d:
        n += 1
    if n * (n - 1) // 2 != d:
        raise UsageError(f"dimension {d} is not the edge count of a complete graph")
    return n


# ---------------------------------------------------------------- commands

def _zoo_polytope(args) -> Polytope:
    kind = args.kind
    cap = args.cap if args.cap is not None else DEFAULT_EDGE_CAP
    if kind == "tours":
        v, name = enumerate_tours(_need(args.n, "--n"), cap=args.cap or DEFAULT_TOUR_CAP), f"tours-{args.n}"
    elif kind == "forests":
        v, name = enumerate_forests(_need(args.n, "--n"), cap=cap), f"forests-{args.n}"
    elif kind == "sat":
        if args.cnf is None:
            raise UsageError("sat needs --cnf")
        f = polyio.read_dimacs(_read(args.cnf))
        v, name = enumerate_sat(f, cap=args.cap or 24), "sat"
    elif kind == "stable-sets":
        v, name = enumerate_stable_sets(_graph(args.graph), cap=args.cap or 24), "stable-sets"
    elif kind == "mpm":
        v, name = enumerate_mpm(_graph(args.graph), _need(args.k, "--k"), args.exact, cap), f"mpm-{args.k}"
    else:
        variant = args.variant if kind == "matching" else kind.split("-")[0]
        v, name = enumerate_matchings(_graph(args.graph), variant, cap), f"{variant}-matching"
    return Polytope(v.dim, None, v, name=name)


def _need(x, flag):
    if x is None:
        raise UsageError(f"missing {flag}")
    return x


def cmd_zoo(args) -> int:
    p = _zoo_polytope(args)
    _emit(polyio.write_polytope(p, hrep=False, vrep=True), args.out)
    return OK


def cmd_qh(args) -> int:
    q = _polytope(args.polytope)
    fam = _family(args.family, q, args)
    rep = hfree_report(q, fam, cap=args.cap, budget=args.budget,
                       certificates=args.certificates, jobs=args.jobs)
    _emit(rep.to_json() if args.json else rep.to_text(), args.out)
    return OK


def _battery(q: Polytope, count: int, seed: int):
    """Affine combinations of vertices: half convex, half with weights in [-1/2, 3/2]."""
    rng = random.Random(seed)
    verts = q.vertices
    pts = []
    for t in range(count):
        k = min(len(verts), 3)
        chosen = [verts[rng.randrange(len(verts))] for _ in range(k)]
        lo = 0 if t % 2 == 0 else -2
        w = [Q(rng.randint(lo, 6), 4) for _ in range(k - 1)]
        w.append(1 - sum(w))
        pts.append(tuple(sum((wi * v[i] for wi, v in zip(w, chosen)), Q(0)) for i in range(q.dim)))
    return pts


def cmd_separate(args) -> int:
    q = _polytope(args.polytope).minimal()
    fam = _family(args.family, q, args)
    qh = compute_QH(q, fam, cap=args.cap, jobs=args.jobs)
    if args.random:
        points = _battery(q, args.random, args.seed)
    else:
        points = [_vector(args)]
    lines = [HEADER, f"family: {fam.name}", f"points: {len(points)}"]
    status = OK
    counts = {}
    for i, x in enumerate(points):
        ans = hfree_separate(x, fam, qh)
        counts[ans.verdict] = counts.get(ans.verdict, 0) + 1
        line = f"point {i + 1}: {fmt_vec(x)} -> {ans}"
        if args.check_brute_force:
            agree = (ans.verdict == INSIDE) == (contains(q, x) is None)
            line += " [agree]" if agree else " [DISAGREE]"
            if not agree:
                status = FAILED
        lines.append(line)
    for k in sorted(counts):
        lines.append(f"count {k}: {counts[k]}")
    _emit("\n".join(lines) + "\n", args.out)
    return status


def cmd_optimize(args) -> int:
    q = _zoo_polytope(args) if args.polytope is None else _polytope(args.polytope)
    if q.is_empty:
        raise EmptyPolytope("Q is empty")
    q = q.minimal()
    c = _vector(args)
    fam = _family(args.family, q, args)
    qh = compute_QH(q, fam, cap=args.cap, jobs=args.jobs)
    res = hfree_optimize(c, fam, qh, maximize=not args.minimize)
    lines = [HEADER, f"instance: {q.name or 'Q'}", f"family: {fam.name}",
             f"sense: {'min' if args.minimize else 'max'}",
             f"value: {fmt(res.value)}", f"point: {fmt_vec(res.point)}",
             f"cuts: {res.cuts}", f"rounds: {res.rounds}"]
    status = OK
    if args.check_brute_force:
        vals = [dot(c, v) for v in q.vertices]
        best = min(vals) if args.minimize else max(vals)
        ok = best == res.value
        lines.append(f"brute_force: {fmt(best)} {'agree' if ok else 'DISAGREE'}")
        status = OK if ok else FAILED
    _emit("\n".join(lines) + "\n", args.out)
    return status


def cmd_xcbounds(args) -> int:
    q = _polytope(args.polytope).minimal()
    lines = [HEADER, f"instance: {q.name or 'Q'}"]
    if q.is_empty:
        lines += ["vertices: 0", "facets: 0", "xc_lb: 0", "xc_ub: 0", "cover: exact(0)"]
    else:
        facets, verts = q.facets, q.vertices
        M = slack_matrix(q.minimal_hrep, VRep(q.dim, verts))
        cov = rectangle_cover_number(M, args.budget)
        ub = min(len(facets), len(verts))
        lb = cov.lb
        if q.dimension == q.dim:
            lb = max(lb, q.dim + 1)
        lines += [f"vertices: {len(verts)}", f"facets: {len(facets)}",
                  f"xc_lb: {min(lb, ub)}", f"xc_ub: {ub}", f"cover: {cov}"]
    _emit("\n".join(lines) + "\n", args.out)
    return OK


def cmd_ef(args) -> int:
    sub = args.ef_command
    if sub == "balas":
        e = balas_union(_ef_or_poly(args.first), _ef_or_poly(args.second))
    elif sub == "intersect":
        e = intersect_concat(_ef_or_poly(args.first), _ef_or_poly(args.second))
    elif sub == "polar-intersect":
        e = polar_route_intersection(_polytope(args.first), _polytope(args.second))
    elif sub == "martin":
        e = martin_forest_ef(_need(args.n, "--n"))
    elif sub == "project":
        p = ef_project(_ef_or_poly(args.first))
        _emit(polyio.write_polytope(p, hrep=True, vrep=True), args.out)
        return OK
    else:
        ok = ef_validate(_ef_or_poly(args.first), _polytope(args.second))
        _emit(f"{HEADER}\nvalid: {'true' if ok else 'false'}\n", args.out)
        return OK if ok else FAILED
    _emit(polyio.write_ef(e), args.out)
    return OK


def cmd_reduce(args) -> int:
    if args.cnf is None:
        raise UsageError("reduce needs --cnf")
    phi = polyio.read_dimacs(_read(args.cnf))
    psi, m = restrict_3cnf(phi, pad=args.pad)
    if args.out:
        Path(args.out).write_text(polyio.write_dimacs(psi))
        Path(args.map or args.out + ".map").write_text(m.to_text())
    else:
        sys.stdout.write(polyio.write_dimacs(psi) + m.to_text())
    return OK


def cmd_2sat(args) -> int:
    f = stable_set_to_2sat(_graph(args.graph))
    _emit(polyio.write_dimacs(f), args.out)
    return OK


def cmd_verify(args) -> int:
    phi = polyio.read_dimacs(_read(args.phi))
    psi = polyio.read_dimacs(_read(args.psi))
    m = polyio.read_map(_read(args.map))
    ok = verify_reduction(phi, psi, m, cap=args.cap or VERIFY_CAP)
    _emit(f"{HEADER}\nverify: {'true' if ok else 'false'}\n", args.out)
    return OK if ok else FAILED


# ---------------------------------------------------------------- parser

def _common(p, family=False):
    p.add_argument("--out")
    p.add_argument("--cap", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--graph")
    p.add_argument("--n", type=int)
    if family:
        p.add_argument("--family", choices=FAMILY_NAMES, required=True)


def _zoo_args(p):
    p.add_argument("--cnf")
    p.add_argument("--variant", default="all", choices=("all", "perfect", "induced", "maximal"))
    p.add_argument("--k", type=int)
    p.add_argument("--exact", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hfree", description="H-free extension complexity experiments")
    sp = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sp.add_parser("zoo", help="generate a polytope from the zoo")
    p.add_argument("kind", choices=ZOO_KINDS)
    _common(p)
    _zoo_args(p)
    p.set_defaults(func=cmd_zoo)

    p = sp.add_parser("qh", help="compute Q_H and report")
    p.add_argument("polytope")
    _common(p, family=True)
    p.add_argument("--certificates", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qh)

    p = sp.add_parser("separate", help="two-stage separation")
    p.add_argument("polytope")
    _common(p, family=True)
    p.add_argument("--c", help="point as a quoted list of rationals")
    p.add_argument("--objective", help="file holding the point")
    p.add_argument("--random", type=int, default=0, help="seeded battery of this many points")
    p.add_argument("--check-brute-force", action="store_true")
    p.set_defaults(func=cmd_separate)

    p = sp.add_parser("optimize", help="H-free LP over Q")
    p.add_argument("polytope", nargs="?")
    _common(p, family=True)
    p.add_argument("--zoo", dest="kind", choices=ZOO_KINDS)
    _zoo_args(p)
    p.add_argument("--c", help="objective as a quoted list of rationals")
    p.add_argument("--objective", help="objective file")
    p.add_argument("--min", dest="minimize", action="store_true")
    p.add_argument("--check-brute-force", action="store_true")
    p.set_defaults(func=cmd_optimize)

    p = sp.add_parser("xcbounds", help="rectangle-cover bounds on xc")
    p.add_argument("polytope")
    _common(p)
    p.set_defaults(func=cmd_xcbounds)

    p = sp.add_parser("ef", help="extended formulation constructions")
    esp = p.add_subparsers(dest="ef_command", required=True, parser_class=_Parser)
    for name, nin in (("balas", 2), ("intersect", 2), ("polar-intersect", 2),
                      ("martin", 0), ("project", 1), ("validate", 2)):
        q = esp.add_parser(name)
        if nin >= 1:
            q.add_argument("first")
        if nin == 2:
            q.add_argument("second")
        _common(q)
        q.set_defaults(func=cmd_ef)

    p = sp.add_parser("reduce", help="occurrence-restricted 3-CNF")
    _common(p)
    p.add_argument("--cnf")
    p.add_argument("--map", help="where to write the reduction map (default OUT.map)")
    p.add_argument("--pad", action="store_true", help="pad 2-clauses to width 3")
    p.set_defaults(func=cmd_reduce)

    p = sp.add_parser("2sat", help="stable sets as 2-SAT")
    _common(p)
    p.set_defaults(func=cmd_2sat)

    p = sp.add_parser("verify", help="check a reduction by projection")
    p.add_argument("phi")
    p.add_argument("psi")
    p.add_argument("map")
    _common(p)
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = ExperimentConfig(args.command,
                               family=getattr(args, "family", None),
                               cap=DEFAULT_FAMILY_CAP if args.cap is None else args.cap,
                               budget=args.budget, seed=args.seed, jobs=args.jobs,
                               out=args.out)
        if args.cap is None and args.command in ("qh", "separate", "optimize"):
            args.cap = cfg.cap
        return args.func(args)
    except SizeLimit as exc:
        print(f"hfree: size limit: {exc}", file=sys.stderr)
        return TOO_BIG
    except EmptyPolytope as exc:
        print(f"hfree: infeasible: {exc}", file=sys.stderr)
        return INFEASIBLE
    except (UsageError, ValueError) as exc:
        # every input error class derives from ValueError
        print(f"hfree: {exc}", file=sys.stderr)
        return MALFORMED


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
