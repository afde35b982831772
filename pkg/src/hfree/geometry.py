"""Polytopes over the rationals: representations, conversion, duality.

A :class:`Polytope` carries an H-representation, a V-representation, or
both; whichever is missing is computed on demand (double description for
hrep -> vrep and vrep -> hrep, exact LP for redundancy removal).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .dd import extreme_rays
from .errors import EmptyPolytope, InputError, NotFullDim, NotInterior, UnboundedInput
from .linalg import rank, rref
from .lp import OPTIMAL, solve_lp
from .rational import Q, ZERO, as_rational, dot, fmt, is_zero_vec, primitive


@dataclass(frozen=True)
class LinearInequality:
    """``a . x <= b``"""

    a: tuple
    b: object

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(as_rational(x) for x in self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    def slack(self, x):
        return self.b - dot(self.a, x)

    def violated_by(self, x) -> bool:
        return dot(self.a, x) > self.b

    def canonical(self) -> "LinearInequality":
        ints = primitive(self.a + (self.b,))
        return LinearInequality(ints[:-1], ints[-1])

    def key(self) -> tuple:
        c = self.canonical()
        return tuple(int(x) for x in c.a) + (int(c.b),)

    def is_trivial(self) -> bool:
        return is_zero_vec(self.a)

    def __str__(self):
        return f"[{' '.join(fmt(x) for x in self.a)}] . x <= {fmt(self.b)}"


@dataclass(frozen=True)
class LinearEquation:
    """``a . x = c``; canonical rows have a positive leading coefficient."""

    a: tuple
    c: object

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(as_rational(x) for x in self.a))
        object.__setattr__(self, "c", as_rational(self.c))

    def residual(self, x):
        return dot(self.a, x) - self.c

    def canonical(self) -> "LinearEquation":
        ints = primitive(self.a + (self.c,))
        lead = next((x for x in ints[:-1] if x != 0), 0)
        if lead < 0:
            ints = tuple(-x for x in ints)
        return LinearEquation(ints[:-1], ints[-1])

    def key(self) -> tuple:
        c = self.canonical()
        return tuple(int(x) for x in c.a) + (int(c.c),)

    def __str__(self):
        return f"[{' '.join(fmt(x) for x in self.a)}] . x = {fmt(self.c)}"


@dataclass(frozen=True)
class HRep:
    dim: int
    inequalities: tuple = ()
    equations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        object.__setattr__(self, "equations", tuple(self.equations))
        for row in self.inequalities + self.equations:
            if len(row.a) != self.dim:
                raise InputError(f"row of length {len(row.a)} in an HRep of dimension {self.dim}")

    def satisfied_by(self, x) -> bool:
        return all(dot(r.a, x) <= r.b for r in self.inequalities) and all(
            dot(e.a, x) == e.c for e in self.equations)

    def row_keys(self):
        return (frozenset(r.key() for r in self.inequalities),
                frozenset(e.key() for e in self.equations))

    def same_rows(self, other: "HRep") -> bool:
        """Order-insensitive comparison of canonical rows."""
        return self.dim == other.dim and self.row_keys() == other.row_keys()

    def matrices(self):
        A = [r.a for r in self.inequalities]
        b = [r.b for r in self.inequalities]
        E = [e.a for e in self.equations]
        e = [eq.c for eq in self.equations]
        return A, b, E, e


@dataclass(frozen=True)
class VRep:
    dim: int
    vertices: tuple = ()

    def __post_init__(self):
        seen = {}
        for v in self.vertices:
            v = tuple(as_rational(x) for x in v)
            if len(v) != self.dim:
                raise InputError(f"point of length {len(v)} in a VRep of dimension {self.dim}")
            seen.setdefault(v, None)
        object.__setattr__(self, "vertices", tuple(seen))

    def __len__(self):
        return len(self.vertices)

    def point_set(self) -> frozenset:
        return frozenset(self.vertices)


# ---------------------------------------------------------------- equations

def canonical_equations(rows, dim: int) -> tuple:
    """Canonical basis of the span of equation rows ``(a, c)``.

    Gaussian elimination with lexicographic pivots, then integer scaling.
    Raises EmptyPolytope on an inconsistent system.
    """
    if not rows:
        return ()
    R, piv = rref([list(a) + [c] for a, c in rows], ncols=dim)
    if len(R) > len(piv):
        raise EmptyPolytope("inconsistent equations")
    return tuple(LinearEquation(r[:dim], r[dim]).canonical() for r in R)


def _pivot(eq: LinearEquation) -> int:
    return next(i for i, x in enumerate(eq.a) if x != 0)


def reduce_modulo(ineq: LinearInequality, equations) -> LinearInequality:
    """Canonical representative of ``ineq`` modulo canonical ``equations``.

    The result has zero coefficients in every pivot column of the equations.
    """
    a = list(ineq.a)
    b = ineq.b
    for eq in equations:
        p = _pivot(eq)
        f = a[p]
        if f:
            f = f / eq.a[p]
            a = [x - f * y for x, y in zip(a, eq.a)]
            b = b - f * eq.c
    return LinearInequality(a, b).canonical()


def free_columns(equations, dim: int) -> list[int]:
    piv = {_pivot(e) for e in equations}
    return [j for j in range(dim) if j not in piv]


def lift_from_free(z, equations, dim: int):
    """Point of the affine subspace whose free coordinates are ``z``."""
    free = free_columns(equations, dim)
    x = [ZERO] * dim
    for j, v in zip(free, z):
        x[j] = Q(v)
    for eq in equations:
        p = _pivot(eq)
        x[p] = (eq.c - dot(eq.a, x)) / eq.a[p]
    return tuple(x)


def affine_hull(v: VRep):
    """Canonical equations of the affine hull of ``v`` and its dimension."""
    pts = list(v.vertices)
    if not pts:
        raise InputError("affine hull of an empty point set")
    d = v.dim
    # equations (a, c) with a.p = c for all points: null space of [p, -1]
    rows = [list(p) + [Q(-1)] for p in pts]
    R, piv = rref(rows)
    pivset = set(piv)
    basis = []
    for f in range(d + 1):
        if f in pivset:
            continue
        w = [ZERO] * (d + 1)
        w[f] = Q(1)
        for row, p in zip(R, piv):
            w[p] = -row[f]
        basis.append((w[:d], w[d]))
    eqs = canonical_equations(basis, d)
    return eqs, d - len(eqs)


# ---------------------------------------------------------------- conversions

def vrep_to_hrep(v: VRep) -> HRep:
    """Irredundant H-representation (facets plus canonical equations)."""
    if not v.vertices:
        raise InputError("vrep_to_hrep needs at least one point")
    d = v.dim
    eqs, k = affine_hull(v)
    if k == 0:
        return HRep(d, (), eqs)
    free = free_columns(eqs, d)
    zs = [[p[j] for j in free] for p in v.vertices]
    # cone of valid (b, a): b - a.z >= 0 for every point
    cone = [primitive([Q(1)] + [-x for x in z]) for z in zs]
    facets = []
    for ray in extreme_rays(cone):
        b, a_red = ray[0], ray[1:]
        if all(x == 0 for x in a_red):
            continue
        a = [ZERO] * d
        for j, x in zip(free, a_red):
            a[j] = Q(x)
        facets.append(LinearInequality(a, b).canonical())
    facets.sort(key=lambda r: r.key())
    return HRep(d, tuple(facets), eqs)


def hrep_to_vrep(h: HRep) -> VRep:
    """Vertices of the bounded polyhedron ``h``."""
    d = h.dim
    A, b, E, e = h.matrices()
    feas = solve_lp([ZERO] * d, A, b, E, e)
    if feas.status != OPTIMAL:
        raise EmptyPolytope("infeasible H-representation")
    eqs = canonical_equations([(r.a, r.c) for r in h.equations], d)
    free = free_columns(eqs, d)
    k = len(free)
    base = lift_from_free([ZERO] * k, eqs, d)
    if k == 0:
        return VRep(d, (base,))
    # x = base + sum_t z_t * dir_t
    dirs = []
    for t in range(k):
        z = [ZERO] * k
        z[t] = Q(1)
        p = lift_from_free(z, eqs, d)
        dirs.append(tuple(pi - bi for pi, bi in zip(p, base)))
    Ared = [[dot(r.a, dv) for dv in dirs] for r in h.inequalities]
    bred = [r.b - dot(r.a, base) for r in h.inequalities]
    if rank(Ared) < k:
        raise UnboundedInput("polyhedron has a lineality direction")
    cone = [primitive([bb] + [-x for x in row]) for row, bb in zip(Ared, bred)]
    cone.append(tuple([1] + [0] * k))
    verts = []
    for ray in extreme_rays(cone):
        t = ray[0]
        if t == 0:
            raise UnboundedInput("polyhedron has a recession direction")
        z = [Q(x, t) for x in ray[1:]]
        verts.append(tuple(bi + sum((zt * dv[j] for zt, dv in zip(z, dirs) if zt), ZERO)
                           for j, bi in enumerate(base)))
    verts.sort()
    return VRep(d, tuple(verts))


def extreme_points(points, h: HRep) -> tuple:
    """Subset of ``points`` that are vertices of the polytope ``h`` (minimal)."""
    if not points:
        return ()
    d = h.dim
    k = d - len(h.equations)
    if k == 0:
        return (tuple(points[0]),)
    free = free_columns(h.equations, d)
    out = []
    for p in points:
        tight = [[r.a[j] for j in free] for r in h.inequalities if dot(r.a, p) == r.b]
        if len(tight) >= k and rank(tight) == k:
            out.append(tuple(p))
    return tuple(sorted(set(out)))


def _implicit_equalities(A, b, E, e, candidates):
    """Indices among ``candidates`` that hold with equality on the polyhedron."""
    found = []
    cand = list(candidates)
    E = list(E)
    e = list(e)
    d = len(A[0]) if A else 0
    while cand:
        # max t  s.t.  A_j x + t <= b_j (j in cand), other rows, t <= 1
        rows, rhs = [], []
        for j in range(len(A)):
            if j in found:
                continue
            rows.append(list(A[j]) + [Q(1) if j in cand else ZERO])
            rhs.append(b[j])
        rows.append([ZERO] * d + [Q(1)])
        rhs.append(Q(1))
        Eext = [list(r) + [ZERO] for r in E] + [list(A[j]) + [ZERO] for j in found]
        eext = list(e) + [b[j] for j in found]
        res = solve_lp([ZERO] * d + [Q(1)], rows, rhs, Eext, eext)
        if res.status != OPTIMAL:
            raise EmptyPolytope("infeasible H-representation")
        if res.value > 0:
            break
        kept = [j for j in range(len(A)) if j not in found]
        newly = [kept[t] for t, u in enumerate(res.ineq_duals[:-1])
                 if u > 0 and kept[t] in cand]
        if not newly:  # pragma: no cover - duals always certify some row
            raise ArithmeticError("implicit equality detection stalled")
        found.extend(newly)
        cand = [j for j in cand if j not in newly]
    return found


@dataclass(frozen=True)
class MinimizeResult:
    hrep: HRep
    kept: tuple  # original indices of surviving inequalities, in output order
    implicit: tuple  # original indices turned into equations


def minimize_hrep_detailed(h: HRep) -> MinimizeResult:
    """Irredundant form of ``h`` plus provenance of the surviving rows.

    Rows are tested from last to first, so when two rows imply each other
    the earlier one survives.
    """
    d = h.dim
    A, b, E, e = h.matrices()
    feas = solve_lp([ZERO] * d, A, b, E, e)
    if feas.status != OPTIMAL:
        raise EmptyPolytope("infeasible H-representation")
    nontrivial = [j for j in range(len(A)) if not is_zero_vec(A[j])]
    implicit = _implicit_equalities(A, b, E, e, nontrivial) if nontrivial else []
    eqs = canonical_equations([(r.a, r.c) for r in h.equations]
                              + [(A[j], b[j]) for j in implicit], d)
    cands = []
    for j in nontrivial:
        if j in implicit:
            continue
        r = reduce_modulo(h.inequalities[j], eqs)
        if r.is_trivial():
            continue
        cands.append((j, r))
    # identical normals: keep the tightest bound, earliest on ties
    best_by_normal: dict[tuple, tuple] = {}
    for j, r in cands:
        na = primitive(r.a)
        g = next(x for x in r.a if x != 0) / next(x for x in na if x != 0)
        bnorm = r.b / g
        prev = best_by_normal.get(na)
        if prev is None or bnorm < prev[0]:
            best_by_normal[na] = (bnorm, j, r)
    survivors = sorted(v[1] for v in best_by_normal.values())
    rows = {v[1]: v[2] for v in best_by_normal.values()}
    Eq = [q.a for q in eqs]
    eq_rhs = [q.c for q in eqs]
    alive = list(survivors)
    for j in reversed(survivors):
        others = [t for t in alive if t != j]
        res = solve_lp(rows[j].a, [rows[t].a for t in others], [rows[t].b for t in others],
                       Eq, eq_rhs)
        if res.status == OPTIMAL and res.value <= rows[j].b:
            alive = others
    hrep = HRep(d, tuple(rows[j] for j in alive), eqs)
    return MinimizeResult(hrep, tuple(alive), tuple(sorted(implicit)))


def minimize_hrep(h: HRep) -> HRep:
    return minimize_hrep_detailed(h).hrep


# ---------------------------------------------------------------- polytope

@dataclass(frozen=True, eq=False)
class Polytope:
    dim: int
    hrep: HRep | None = None
    vrep: VRep | None = None
    hrep_minimal: bool = False
    vrep_minimal: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.hrep is None and self.vrep is None:
            raise InputError("a polytope needs at least one representation")
        for rep in (self.hrep, self.vrep):
            if rep is not None and rep.dim != self.dim:
                raise InputError("representation dimension mismatch")

    @classmethod
    def from_vertices(cls, points, dim: int | None = None, name: str = "") -> "Polytope":
        points = [tuple(p) for p in points]
        if dim is None:
            if not points:
                raise InputError("dimension needed for an empty point list")
            dim = len(points[0])
        return cls(dim, vrep=VRep(dim, tuple(points)), name=name)

    @classmethod
    def from_hrep(cls, h: HRep, name: str = "") -> "Polytope":
        return cls(h.dim, hrep=h, name=name)

    @classmethod
    def empty(cls, dim: int, name: str = "") -> "Polytope":
        return cls(dim, vrep=VRep(dim, ()), vrep_minimal=True, name=name)

    @cached_property
    def is_empty(self) -> bool:
        if self.vrep is not None:
            return len(self.vrep) == 0
        A, b, E, e = self.hrep.matrices()
        return solve_lp([ZERO] * self.dim, A, b, E, e).status != OPTIMAL

    @cached_property
    def minimal_hrep(self) -> HRep:
        """Facets plus canonical affine-hull equations (``0 <= -1`` if empty)."""
        if self.is_empty:
            return HRep(self.dim, (LinearInequality([0] * self.dim, -1),))
        if self.hrep is not None and self.hrep_minimal:
            return self.hrep
        if self.vrep is not None:
            return vrep_to_hrep(self.vrep)
        return minimize_hrep(self.hrep)

    @cached_property
    def vertices(self) -> tuple:
        if self.is_empty:
            return ()
        if self.vrep is not None and self.vrep_minimal:
            return tuple(sorted(self.vrep.vertices))
        if self.vrep is not None:
            return extreme_points(list(self.vrep.vertices), self.minimal_hrep)
        return hrep_to_vrep(self.hrep).vertices

    @property
    def facets(self) -> tuple:
        return () if self.is_empty else self.minimal_hrep.inequalities

    @property
    def equations(self) -> tuple:
        return () if self.is_empty else self.minimal_hrep.equations

    @property
    def dimension(self) -> int:
        """Affine dimension; -1 for the empty polytope."""
        if self.is_empty:
            return -1
        return self.dim - len(self.minimal_hrep.equations)

    def minimal(self) -> "Polytope":
        """Same point set with both representations irredundant."""
        if self.is_empty:
            return Polytope.empty(self.dim, self.name)
        return Polytope(self.dim, self.minimal_hrep, VRep(self.dim, self.vertices),
                        True, True, self.name)


def contains(p: Polytope, x):
    """``None`` if ``x`` lies in ``p``, otherwise a violated row.

    Equations of the minimal hrep are checked first; a violated equation is
    returned as whichever of its two halves is violated.
    """
    x = tuple(as_rational(t) for t in x)
    if len(x) != p.dim:
        raise InputError("point dimension mismatch")
    h = p.minimal_hrep
    for eq in h.equations:
        r = dot(eq.a, x) - eq.c
        if r > 0:
            return LinearInequality(eq.a, eq.c)
        if r < 0:
            return LinearInequality([-t for t in eq.a], -eq.c)
    for row in h.inequalities:
        if row.violated_by(x):
            return row
    return None


def polytopes_equal(p: Polytope, q: Polytope) -> bool:
    """Equality of point sets by mutual vertex containment."""
    if p.dim != q.dim:
        raise InputError("ambient dimensions differ")
    if p.is_empty or q.is_empty:
        return p.is_empty and q.is_empty
    hp, hq = p.minimal_hrep, q.minimal_hrep
    return all(hq.satisfied_by(v) for v in p.vertices) and all(
        hp.satisfied_by(v) for v in q.vertices)


def barycenter(points) -> tuple:
    n = len(points)
    return tuple(sum((Q(p[j]) for p in points), ZERO) / n for j in range(len(points[0])))


def polar_dual(p: Polytope, center=None) -> Polytope:
    """Polar of ``p`` with respect to ``center``: ``{y : (y-c).(x-c) <= 1 for x in p}``.

    The result is positioned around ``center`` so applying the map twice with
    the same center returns ``p``.
    """
    if p.is_empty:
        raise NotFullDim("polar of the empty polytope")
    h = p.minimal_hrep
    if h.equations:
        raise NotFullDim("polar duality needs a full-dimensional polytope")
    verts = p.vertices
    c = barycenter(verts) if center is None else tuple(as_rational(t) for t in center)
    if len(c) != p.dim:
        raise InputError("center dimension mismatch")
    new_verts = []
    for f in h.inequalities:
        s = f.slack(c)
        if s <= 0:
            raise NotInterior(f"center is not strictly inside facet {f}")
        new_verts.append(tuple(ci + ai / s for ci, ai in zip(c, f.a)))
    new_facets = []
    for v in verts:
        a = [vi - ci for vi, ci in zip(v, c)]
        new_facets.append(LinearInequality(a, 1 + dot(a, c)).canonical())
    new_facets.sort(key=lambda r: r.key())
    return Polytope(p.dim, HRep(p.dim, tuple(new_facets)), VRep(p.dim, tuple(sorted(new_verts))),
                    True, True, name=f"polar({p.name})" if p.name else "")
