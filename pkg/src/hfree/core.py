"""Q_H: facets of Q that survive deletion of everything implied by H.

Redundancy is decided relative to H together with the affine-hull equations
of Q.  When H is small enough it is enumerated and one LP per facet settles
the question; otherwise an exact cutting-plane loop against ``H.separate``
is used.  Either way the answer carries a certificate: LP multipliers when a
facet is redundant, a witness point when it is not.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import AffineHullViolation, EmptyPolytope, InputError
from .families import DEFAULT_FAMILY_CAP, InequalityFamily
from .geometry import LinearInequality, Polytope, VRep, reduce_modulo
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp
from .rational import Q, ZERO, as_rational, dot, fmt, fmt_vec
from .xc import DEFAULT_BUDGET, rectangle_cover_number, slack_matrix


@dataclass(frozen=True)
class Certificate:
    """Proof that ``a.x <= b`` follows from H and the equations.

    ``rows`` pairs H-rows with nonnegative multipliers, ``eq_multipliers``
    are free multipliers of the equations; together they reproduce ``a`` and
    give a bound ``<= b``.
    """
    rows: tuple  # (LinearInequality, multiplier)
    eq_multipliers: tuple
    bound: object

    def check(self, ineq: LinearInequality, equations) -> bool:
        d = len(ineq.a)
        combo = [ZERO] * d
        rhs = ZERO
        for r, u in self.rows:
            if u < 0:
                return False
            combo = [c + u * x for c, x in zip(combo, r.a)]
            rhs += u * r.b
        for eq, mu in zip(equations, self.eq_multipliers):
            combo = [c + mu * x for c, x in zip(combo, eq.a)]
            rhs += mu * eq.c
        return tuple(combo) == tuple(ineq.a) and rhs == self.bound and rhs <= ineq.b


@dataclass(frozen=True)
class Redundancy:
    redundant: bool
    certificate: Certificate | None = None
    witness: tuple | None = None  # point satisfying H and equations with a.x > b
    lp_calls: int = 0


def _certificate(rows, res, equations) -> Certificate:
    pairs = tuple((r, u) for r, u in zip(rows, res.ineq_duals) if u)
    return Certificate(pairs, tuple(res.eq_duals), res.value)


def _redundant_against_rows(ineq, rows, equations) -> Redundancy:
    A = [r.a for r in rows]
    b = [r.b for r in rows]
    E = [e.a for e in equations]
    e = [q.c for q in equations]
    res = solve_lp(ineq.a, A, b, E, e)
    if res.status == INFEASIBLE:
        raise EmptyPolytope("H together with the equations is infeasible")
    if res.status == OPTIMAL and res.value <= ineq.b:
        return Redundancy(True, _certificate(rows, res, equations), lp_calls=1)
    if res.status == OPTIMAL:
        return Redundancy(False, witness=res.point, lp_calls=1)
    # unbounded: cap the objective just above b to get a finite witness
    res2 = solve_lp(ineq.a, A + [ineq.a], b + [ineq.b + 1], E, e)
    return Redundancy(False, witness=res2.point, lp_calls=2)


def _cutting_plane(ineq, h: InequalityFamily, equations, max_rounds: int = 100000) -> Redundancy:
    rows = list(h.initial)
    seen = {r.key() for r in rows}
    E = [e.a for e in equations]
    e = [q.c for q in equations]
    calls = 0
    for _ in range(max_rounds):
        A = [r.a for r in rows]
        b = [r.b for r in rows]
        res = solve_lp(ineq.a, A, b, E, e)
        calls += 1
        if res.status == INFEASIBLE:
            raise EmptyPolytope("H together with the equations is infeasible")
        if res.status == UNBOUNDED:
            res = solve_lp(ineq.a, A + [ineq.a], b + [ineq.b + 1], E, e)
            calls += 1
            if h.separate(res.point) is None:
                return Redundancy(False, witness=res.point, lp_calls=calls)
            x = res.point
        else:
            if res.value <= ineq.b:
                return Redundancy(True, _certificate(rows, res, equations), lp_calls=calls)
            x = res.point
        cut = h.separate(x)
        if cut is None:
            return Redundancy(False, witness=x, lp_calls=calls)
        if cut.key() in seen:  # pragma: no cover - a violated row cannot already be present
            raise ArithmeticError("separation returned a row already in the LP")
        seen.add(cut.key())
        rows.append(cut)
    raise RuntimeError("cutting-plane loop did not converge")  # pragma: no cover


def facet_redundant_wrt(ineq: LinearInequality, h: InequalityFamily, equations=(),
                        cap: int | None = DEFAULT_FAMILY_CAP, rows=None) -> Redundancy:
    """Is ``ineq`` implied by H and the equations?"""
    if len(ineq.a) != h.ambient_dim:
        raise InputError("inequality and family dimensions differ")
    if rows is None and h.enumerable(cap):
        rows = h.rows(cap)
    if rows is None:
        return _cutting_plane(ineq, h, equations)
    # fast path: ineq is itself a member modulo the equations
    target = reduce_modulo(ineq, equations).key()
    for r in rows:
        if reduce_modulo(r, equations).key() == target:
            res = _redundant_against_rows(ineq, [r], equations)
            if res.redundant:
                return res
            break
    return _redundant_against_rows(ineq, rows, equations)


@dataclass(frozen=True)
class QHResult:
    polytope: Polytope
    family: str
    equations: tuple
    retained: tuple
    removed: tuple  # (LinearInequality, Certificate)
    witnesses: tuple  # one point per retained row
    lp_calls: int = 0

    @property
    def empty_flag(self) -> bool:
        return not self.retained

    @property
    def facet_count(self) -> int:
        return len(self.retained) + len(self.removed)


def _worker(args):
    ineq, rows, equations = args
    return _redundant_against_rows(ineq, rows, equations)


def compute_QH(q: Polytope, h: InequalityFamily, cap: int | None = DEFAULT_FAMILY_CAP,
               jobs: int = 1) -> QHResult:
    if q.dim != h.ambient_dim:
        raise InputError(f"polytope in R^{q.dim}, family {h.name} in R^{h.ambient_dim}")
    if q.is_empty:
        raise EmptyPolytope("Q is empty")
    facets = q.facets
    eqs = q.equations
    rows = h.rows(cap) if h.enumerable(cap) else None
    if jobs > 1 and rows is not None and len(facets) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            answers = list(pool.map(_worker, [(f, rows, eqs) for f in facets]))
    else:
        answers = [facet_redundant_wrt(f, h, eqs, cap, rows) for f in facets]
    retained, removed, wit = [], [], []
    calls = 0
    for f, ans in zip(facets, answers):
        calls += ans.lp_calls
        if ans.redundant:
            removed.append((f, ans.certificate))
        else:
            retained.append(f)
            wit.append(ans.witness)
    return QHResult(q, h.name, tuple(eqs), tuple(retained), tuple(removed), tuple(wit), calls)


def qh_polytope(qh: QHResult) -> Polytope:
    """{x : equations, retained rows} (may be unbounded; do not enumerate)."""
    from .geometry import HRep
    return Polytope.from_hrep(HRep(qh.polytope.dim, qh.retained, qh.equations))


def qh_xc_bounds(qh: QHResult, budget: int = DEFAULT_BUDGET):
    """(lb, ub, cover) for xc(Q_H).

    The rows of Q_H are facets of Q, hence tight on Q_H, so the slack matrix
    of those rows against the vertices of Q (all inside Q_H) factors through
    any extension of Q_H: its rectangle covering number is a lower bound.
    The slack lift of the retained rows is an extension of that size.
    """
    if not qh.retained:
        return 0, 0, None
    M = slack_matrix(qh.polytope.minimal_hrep, VRep(qh.polytope.dim, qh.polytope.vertices),
                     rows=qh.retained)
    cov = rectangle_cover_number(M, budget)
    return cov.lb, len(qh.retained), cov


# ---------------------------------------------------------------- separation

INSIDE = "inside"
VIOLATED_BY_H = "violated_by_H"
VIOLATED_BY_QH = "violated_by_QH"


@dataclass(frozen=True)
class SeparationAnswer:
    verdict: str
    inequality: LinearInequality | None = None
    label: str = ""

    def __str__(self):
        if self.verdict == INSIDE:
            return INSIDE
        return f"{self.verdict} {self.label}: {self.inequality}".replace(" :", ":")


def hfree_separate(x, h: InequalityFamily, qh: QHResult) -> SeparationAnswer:
    """Two-stage separation: equations, then H, then the rows of Q_H."""
    x = tuple(as_rational(t) for t in x)
    if len(x) != h.ambient_dim:
        raise InputError("point dimension mismatch")
    for eq in qh.equations:
        if dot(eq.a, x) != eq.c:
            raise AffineHullViolation(f"point violates equation {eq}")
    m = h.separate_member(x)
    if m is not None:
        return SeparationAnswer(VIOLATED_BY_H, m.ineq, m.label)
    worst, wv = None, ZERO
    for i, r in enumerate(qh.retained):
        v = dot(r.a, x) - r.b
        if v > wv:
            worst, wv = (i, r), v
    if worst is not None:
        return SeparationAnswer(VIOLATED_BY_QH, worst[1], f"QH row {worst[0] + 1}")
    return SeparationAnswer(INSIDE)


@dataclass(frozen=True)
class OptimizeResult:
    value: object
    point: tuple
    cuts: int
    rounds: int


def hfree_optimize(c, h: InequalityFamily, qh: QHResult, ef=None, maximize: bool = True,
                   max_rounds: int = 100000) -> OptimizeResult:
    """Optimise ``c`` over Q by cutting planes from H on top of Q_H.

    The working system starts from the equations, the rows of Q_H (or the
    facets of ``ef``'s projection when an extension of Q_H is supplied) and
    the family's bounding rows; violated H-rows are added until the LP
    optimum lies in Q.  The returned point is a vertex of Q.
    """
    c = [as_rational(t) for t in c]
    if len(c) != h.ambient_dim:
        raise InputError("objective dimension mismatch")
    obj = c if maximize else [-t for t in c]
    if ef is not None:
        from .ef import ef_project
        proj = ef_project(ef)
        qh_rows = list(proj.facets)
        extra_eqs = list(proj.equations)
    else:
        qh_rows = list(qh.retained)
        extra_eqs = []
    rows = list(h.initial) + qh_rows
    eqs = list(qh.equations) + extra_eqs
    E = [e.a for e in eqs]
    e = [q.c for q in eqs]
    cuts = 0
    for rnd in range(1, max_rounds + 1):
        res = solve_lp(obj, [r.a for r in rows], [r.b for r in rows], E, e)
        if res.status == INFEASIBLE:
            raise EmptyPolytope("Q is empty")
        if res.status == UNBOUNDED:
            raise InputError("the family's bounding rows do not bound the LP")
        ans = hfree_separate(res.point, h, qh)
        if ans.verdict == INSIDE:
            val = dot(c, res.point)
            return OptimizeResult(val, res.point, cuts, rnd)
        rows.append(ans.inequality)
        cuts += 1
    raise RuntimeError("cutting-plane loop did not converge")  # pragma: no cover


# ---------------------------------------------------------------- report

@dataclass
class Report:
    instance: str
    dim: int
    affine_dim: int
    vertices: int
    facets: int
    equations: int
    family: str
    family_size: int
    retained: int
    removed: int
    xc_lb: int
    xc_ub: int
    xc_exact_cover: bool
    retained_rows: list = field(default_factory=list)
    removed_rows: list = field(default_factory=list)  # (row, certificate) text, on request
    timings: dict | None = None

    @property
    def qh_status(self) -> str:
        return "empty" if self.retained == 0 else "nonempty"

    def to_text(self) -> str:
        lines = [
            "hfree-report v1",
            f"instance: {self.instance}",
            f"dim: {self.dim}",
            f"affine_dim: {self.affine_dim}",
            f"vertices: {self.vertices}",
            f"facets: {self.facets}",
            f"equations: {self.equations}",
            f"family: {self.family}",
            f"family_size: {self.family_size}",
            f"retained: {self.retained}",
            f"removed: {self.removed}",
            f"QH: {self.qh_status}",
            f"xc_lb: {self.xc_lb}",
            f"xc_ub: {self.xc_ub}",
            f"xc_lb_certified: {'exact-cover' if self.xc_exact_cover else 'fooling-set'}",
        ]
        for i, r in enumerate(self.retained_rows):
            lines.append(f"retained_row {i + 1}: {r}")
        for i, (r, cert) in enumerate(self.removed_rows):
            lines.append(f"removed_row {i + 1}: {r}")
            lines.append(f"  certificate: {cert}")
        if self.timings:
            for k in sorted(self.timings):
                lines.append(f"time_{k}: {self.timings[k]:.3f}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        d = {
            "schema": "hfree-report v1",
            "instance": self.instance,
            "dim": self.dim,
            "affine_dim": self.affine_dim,
            "vertices": self.vertices,
            "facets": self.facets,
            "equations": self.equations,
            "family": self.family,
            "family_size": self.family_size,
            "retained": self.retained,
            "removed": self.removed,
            "qh": self.qh_status,
            "xc_lb": self.xc_lb,
            "xc_ub": self.xc_ub,
            "retained_rows": self.retained_rows,
            "removed_rows": [{"row": r, "certificate": c} for r, c in self.removed_rows],
        }
        if self.timings:
            d["timings"] = {k: round(v, 3) for k, v in sorted(self.timings.items())}
        return json.dumps(d, indent=2, sort_keys=False) + "\n"


def _row_text(r: LinearInequality) -> str:
    return f"{fmt(r.b)} | {fmt_vec(r.a)}"


def _cert_text(cert: Certificate) -> str:
    parts = [f"{fmt(u)}*[{_row_text(r)}]" for r, u in cert.rows]
    if any(cert.eq_multipliers):
        parts.append("eq(" + " ".join(fmt(m) for m in cert.eq_multipliers) + ")")
    return " + ".join(parts) + f" => bound {fmt(cert.bound)}"


def hfree_report(q: Polytope, h: InequalityFamily, cap: int | None = DEFAULT_FAMILY_CAP,
                 budget: int = DEFAULT_BUDGET, certificates: bool = False, jobs: int = 1,
                 timings: bool = False, qh: QHResult | None = None) -> Report:
    t0 = time.perf_counter()
    q = q.minimal()
    t1 = time.perf_counter()
    if qh is None:
        qh = compute_QH(q, h, cap, jobs)
    t2 = time.perf_counter()
    lb, ub, cov = qh_xc_bounds(qh, budget)
    t3 = time.perf_counter()
    rep = Report(
        instance=q.name or "Q",
        dim=q.dim,
        affine_dim=q.dimension,
        vertices=len(q.vertices),
        facets=qh.facet_count,
        equations=len(qh.equations),
        family=h.name,
        family_size=h.size,
        retained=len(qh.retained),
        removed=len(qh.removed),
        xc_lb=lb,
        xc_ub=ub,
        xc_exact_cover=cov is None or cov.exact,
        retained_rows=[_row_text(r) for r in qh.retained],
    )
    if certificates:
        rep.removed_rows = [(_row_text(r), _cert_text(c)) for r, c in qh.removed]
    if timings:
        rep.timings = {"facets": t1 - t0, "qh": t2 - t1, "xc": t3 - t2}
    return rep
