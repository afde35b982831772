"""Extended formulations ``E x + F y = g, y >= 0`` and constructions on them.

Size is the number of inequalities, i.e. ``r`` (the nonnegativity rows of y).
Internally every bounded EF is brought into an explicit form
``x = C y + x0, K y = h`` (x is determined by y when the projection is
bounded), and from there into a homogeneous form ``x = C' y, K' y = 0,
l.y = 1`` which is what the Balas union and the polar construction use.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import EmptyInput, InputError, NotFullDim, UnboundedLift
from .geometry import (HRep, LinearInequality, Polytope, _implicit_equalities, free_columns,
                       lift_from_free, minimize_hrep, polytopes_equal, reduce_modulo,
                       vrep_to_hrep, VRep)
from .linalg import independent_rows, nullspace, rank, solve, transpose
from .lp import OPTIMAL, UNBOUNDED, PreparedLP, solve_lp
from .rational import Q, ZERO, as_rational, dot, fmt

MARTIN_C = 1  # martin_forest_ef(n).size == n^2 (n-1) <= MARTIN_C * n^3


@dataclass(frozen=True)
class ExtendedFormulation:
    d: int
    r: int
    E: tuple  # rows of length d
    F: tuple  # rows of length r
    g: tuple
    name: str = ""

    def __post_init__(self):
        E = tuple(tuple(as_rational(x) for x in row) for row in self.E)
        F = tuple(tuple(as_rational(x) for x in row) for row in self.F)
        g = tuple(as_rational(x) for x in self.g)
        if not (len(E) == len(F) == len(g)):
            raise InputError("E, F and g need the same number of rows")
        if any(len(row) != self.d for row in E) or any(len(row) != self.r for row in F):
            raise InputError("EF row length mismatch")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "g", g)

    @property
    def size(self) -> int:
        return self.r

    @property
    def rows(self) -> int:
        return len(self.g)

    def contains(self, x) -> bool:
        """Is ``x`` in the projection? (one LP)"""
        x = [as_rational(t) for t in x]
        rhs = [gi - dot(ei, x) for gi, ei in zip(self.g, self.E)]
        A = [[Q(-1) if j == i else ZERO for j in range(self.r)] for i in range(self.r)]
        res = solve_lp([ZERO] * self.r, A, [ZERO] * self.r, list(self.F), rhs)
        return res.status == OPTIMAL


def ef_from_hrep(h: HRep, name: str = "") -> ExtendedFormulation:
    """Slack lift: a.x <= b becomes a.x + s = b with s >= 0."""
    m = len(h.inequalities)
    E, F, g = [], [], []
    for i, row in enumerate(h.inequalities):
        E.append(row.a)
        F.append(tuple(Q(1) if j == i else ZERO for j in range(m)))
        g.append(row.b)
    for eq in h.equations:
        E.append(eq.a)
        F.append((ZERO,) * m)
        g.append(eq.c)
    return ExtendedFormulation(h.dim, m, tuple(E), tuple(F), tuple(g), name)


# ---------------------------------------------------------------- explicit forms

@dataclass
class _Explicit:
    C: list  # d x r
    x0: list
    K: list  # rows of length r
    h: list
    r: int = 0
    _prep: PreparedLP | None = None

    def lp(self) -> PreparedLP:
        if self._prep is None:
            r = self.r
            A = [[Q(-1) if j == i else ZERO for j in range(r)] for i in range(r)]
            self._prep = PreparedLP(A, [ZERO] * r, self.K, self.h, d=r)
        return self._prep


def _explicit(e: ExtendedFormulation) -> _Explicit:
    """x = C y + x0 on the lift; K y = h are the remaining constraints."""
    d, r = e.d, e.r
    if d == 0:
        return _Explicit([], [], [list(f) for f in e.F], list(e.g), r)
    basis = independent_rows(e.E)
    if len(basis) < d:
        raise UnboundedLift("x is not determined by y (projection unbounded or E rank deficient)")
    EB = [list(e.E[i]) for i in basis]
    # x = EB^{-1} (gB - FB y): solve column by column
    x0 = solve(EB, [e.g[i] for i in basis])
    C = [[ZERO] * r for _ in range(d)]
    for j in range(r):
        col = solve(EB, [-e.F[i][j] for i in basis])
        for t in range(d):
            C[t][j] = col[t]
    K, h = [], []
    bset = set(basis)
    for i in range(len(e.g)):
        if i in bset:
            continue
        row = [e.F[i][j] + dot(e.E[i], [C[t][j] for t in range(d)]) for j in range(r)]
        rhs = e.g[i] - dot(e.E[i], x0)
        if all(v == 0 for v in row):
            if rhs != 0:
                raise EmptyInput("extended formulation is infeasible")
            continue
        K.append(row)
        h.append(rhs)
    return _Explicit(C, x0, K, h, r)


def _lift_lp(ex: _Explicit, obj_y):
    return ex.lp().solve(obj_y, duals=False)


def _check_feasible(ex: _Explicit, r: int):
    if _lift_lp(ex, [ZERO] * r).status != OPTIMAL:
        raise EmptyInput("extended formulation has an empty projection")


def _positive_functional(ex: _Explicit, r: int):
    """w with K^T w >= 1 componentwise, or UnboundedLift."""
    k = len(ex.K)
    if r == 0:
        return []
    # feasibility of -K^T w <= -1 in free variables w
    A = [[-ex.K[i][j] for i in range(k)] for j in range(r)]
    res = solve_lp([ZERO] * k, A, [Q(-1)] * r)
    if res.status != OPTIMAL:
        raise UnboundedLift("lifted polyhedron is unbounded")
    return list(res.point)


@dataclass(frozen=True)
class _Homog:
    """Either x = C y, K y = 0, l.y = 1 (cone) or x = p, K y = 0 (point)."""
    C: list
    K: list
    ell: list | None
    point: list | None


def _homogenize(e: ExtendedFormulation) -> _Homog:
    ex = _explicit(e)
    _check_feasible(ex, e.r)
    w = _positive_functional(ex, e.r)
    wh = dot(w, ex.h) if ex.K else ZERO
    if e.r == 0 or wh == 0:
        # the lift is the single point y = 0
        return _Homog([], [list(row) for row in ex.K], None, list(ex.x0))
    Kt_w = [sum((ex.K[i][j] * w[i] for i in range(len(ex.K))), ZERO) for j in range(e.r)]
    ell = [v / wh for v in Kt_w]
    C = [[ex.C[t][j] + ex.x0[t] * ell[j] for j in range(e.r)] for t in range(e.d)]
    K = [[ex.K[i][j] - ex.h[i] * ell[j] for j in range(e.r)] for i in range(len(ex.K))]
    return _Homog(C, K, ell, None)


# ---------------------------------------------------------------- unions and intersections

def balas_union(e1: ExtendedFormulation, e2: ExtendedFormulation, name: str = "") -> ExtendedFormulation:
    """EF of conv(P1 u P2) with variables (y1, y2, lam), size r1 + r2 + 1.

    x = C1' y1 + C2' y2, K1' y1 = 0, K2' y2 = 0, l1.y1 = lam, l2.y2 = 1 - lam.
    ``lam >= 0`` is the extra inequality; ``1 - lam >= 0`` is implied by
    ``l2 > 0`` on the bounded lift of e2.  When a side's lift is a single
    point p its contribution is ``p * weight`` instead.
    """
    if e1.d != e2.d:
        raise InputError("EFs live in different dimensions")
    h1, h2 = _homogenize(e1), _homogenize(e2)
    d, r1, r2 = e1.d, e1.r, e2.r
    both_points = h1.point is not None and h2.point is not None
    r = r1 + r2 + (2 if both_points else 1)
    lam = r1 + r2
    E, F, g = [], [], []

    def row(coefs):
        out = [ZERO] * r
        for j, v in coefs:
            out[j] += v
        return tuple(out)

    for t in range(d):
        coefs = []
        if h1.point is None:
            coefs += [(j, -h1.C[t][j]) for j in range(r1)]
        else:
            coefs.append((lam, -h1.point[t]))
        if h2.point is None:
            coefs += [(r1 + j, -h2.C[t][j]) for j in range(r2)]
        else:
            coefs.append((lam + 1 if both_points else lam, -h2.point[t]))
        E.append(tuple(Q(1) if s == t else ZERO for s in range(d)))
        F.append(row(coefs))
        g.append(ZERO)
    for Krow in h1.K:
        E.append((ZERO,) * d)
        F.append(row([(j, Krow[j]) for j in range(r1)]))
        g.append(ZERO)
    for Krow in h2.K:
        E.append((ZERO,) * d)
        F.append(row([(r1 + j, Krow[j]) for j in range(r2)]))
        g.append(ZERO)
    zero_x = (ZERO,) * d
    if both_points:
        E.append(zero_x)
        F.append(row([(lam, Q(1)), (lam + 1, Q(1))]))
        g.append(Q(1))
    elif h1.point is None and h2.point is None:
        E.append(zero_x)
        F.append(row([(j, h1.ell[j]) for j in range(r1)] + [(lam, Q(-1))]))
        g.append(ZERO)
        E.append(zero_x)
        F.append(row([(r1 + j, h2.ell[j]) for j in range(r2)] + [(lam, Q(1))]))
        g.append(Q(1))
    elif h1.point is not None:
        # weight of p1 is lam; y2 carries 1 - lam
        E.append(zero_x)
        F.append(row([(r1 + j, h2.ell[j]) for j in range(r2)] + [(lam, Q(1))]))
        g.append(Q(1))
    else:
        # weight of p2 is lam; y1 carries 1 - lam
        E.append(zero_x)
        F.append(row([(j, h1.ell[j]) for j in range(r1)] + [(lam, Q(1))]))
        g.append(Q(1))
    return ExtendedFormulation(d, r, tuple(E), tuple(F), tuple(g),
                               name or f"union({e1.name},{e2.name})")


def intersect_concat(e1: ExtendedFormulation, e2: ExtendedFormulation, name: str = "") -> ExtendedFormulation:
    """Stack both systems on the shared x; size r1 + r2."""
    if e1.d != e2.d:
        raise InputError("EFs live in different dimensions")
    r = e1.r + e2.r
    E = list(e1.E) + list(e2.E)
    F = [tuple(row) + (ZERO,) * e2.r for row in e1.F] + [(ZERO,) * e1.r + tuple(row) for row in e2.F]
    g = list(e1.g) + list(e2.g)
    return ExtendedFormulation(e1.d, r, tuple(E), tuple(F), tuple(g),
                               name or f"cap({e1.name},{e2.name})")


# ---------------------------------------------------------------- polarity

def ef_polar(e: ExtendedFormulation, center, name: str = "") -> ExtendedFormulation:
    """EF of the polar of proj(e) around ``center``, of size at most ``e.size``.

    With x - c = C' y, K' y = 0, l.y = 1 and Q a basis of ker K', the polar
    {z : z.(x - c) <= 1} equals {z : (C'Q)^T z + Q^T s = Q^T l, s >= 0}.
    Coordinates of y that vanish on the whole lift are dropped first (they
    would make the polar lift unbounded).
    """
    c = [as_rational(t) for t in center]
    if len(c) != e.d:
        raise InputError("center dimension mismatch")
    shifted = ExtendedFormulation(e.d, e.r, e.E, e.F,
                                  tuple(gi - dot(ei, c) for gi, ei in zip(e.g, e.E)), e.name)
    ex = _explicit(shifted)
    _check_feasible(ex, e.r)
    # drop coordinates identically zero on the lift
    r = e.r
    A = [[Q(-1) if j == i else ZERO for j in range(r)] for i in range(r)]
    dead = set(_implicit_equalities(A, [ZERO] * r, ex.K, ex.h, list(range(r)))) if r else set()
    keep = [j for j in range(r) if j not in dead]
    if dead:
        E2 = list(shifted.E)
        F2 = [tuple(row[j] for j in keep) for row in shifted.F]
        shifted = ExtendedFormulation(e.d, len(keep), tuple(E2), tuple(F2), shifted.g, e.name)
    hm = _homogenize(shifted)
    if hm.point is not None:
        raise NotFullDim("polar of a single point")
    r = shifted.r
    if hm.K:
        Qb = nullspace(hm.K, r)  # list of vectors of length r
    else:
        Qb = [tuple(Q(1) if i == j else ZERO for i in range(r)) for j in range(r)]
    # rows indexed by basis vectors q: (C' q) . z + q . s = q . l
    E, F, g = [], [], []
    for qv in Qb:
        Cq = [dot(hm.C[t], qv) for t in range(e.d)]
        E.append(tuple(Cq))
        F.append(tuple(qv))
        g.append(dot(qv, hm.ell) + dot(Cq, c))  # shift back: z = x_polar - c
    out = ExtendedFormulation(e.d, r, tuple(E), tuple(F), tuple(g), name or f"polar({e.name})")
    _explicit(out)  # raises if the polar is unbounded, i.e. c was not interior
    return out


# ---------------------------------------------------------------- projection

def _lift_maximize(ex: _Explicit, c):
    """max c.x over the projection: (value, point x)."""
    d = len(ex.x0)
    r = ex.r
    obj = [sum((c[t] * ex.C[t][j] for t in range(d)), ZERO) for j in range(r)]
    res = _lift_lp(ex, obj)
    if res.status == UNBOUNDED:  # pragma: no cover - lift boundedness is checked first
        raise UnboundedLift("lifted polyhedron is unbounded")
    y = res.point
    x = tuple(ex.x0[t] + sum((ex.C[t][j] * y[j] for j in range(r) if y[j]), ZERO) for t in range(d))
    return dot(c, x), x


def ef_project(e: ExtendedFormulation, name: str = "") -> Polytope:
    """Exact projection of the lift onto x.

    The projection is reconstructed from an LP oracle over the lift: first
    its affine hull (by optimising along every candidate equation normal in
    both directions), then its facets (by optimising along every facet of the
    hull of the points found so far until none moves).
    """
    ex = _explicit(e)
    lift_rows = len(ex.K)
    if e.r and _lift_lp(ex, [ZERO] * e.r).status != OPTIMAL:
        return Polytope.empty(e.d, name or e.name)
    if e.r == 0 and any(v != 0 for v in ex.h):
        return Polytope.empty(e.d, name or e.name)
    _positive_functional(ex, e.r)
    d = e.d
    if d == 0:
        return Polytope.from_vertices([()], 0, name or e.name)
    if e.r == 0:
        return Polytope.from_vertices([tuple(ex.x0)], d, name or e.name)
    pts = {_lift_maximize(ex, [ZERO] * d)[1]}
    # affine hull
    while True:
        from .geometry import affine_hull
        eqs, _ = affine_hull(VRep(d, tuple(pts)))
        grew = False
        for eq in eqs:
            for sgn in (1, -1):
                val, x = _lift_maximize(ex, [sgn * a for a in eq.a])
                if val != sgn * eq.c:
                    pts.add(x)
                    grew = True
                    break
            if grew:
                break
        if not grew:
            break
    # facets
    while True:
        h = vrep_to_hrep(VRep(d, tuple(sorted(pts))))
        new = set()
        for f in h.inequalities:
            val, x = _lift_maximize(ex, f.a)
            if val > f.b:
                new.add(x)
        if not new:
            break
        pts |= new
    p = Polytope(d, h, VRep(d, tuple(sorted(pts))), True, False, name or e.name)
    return p.minimal()


def ef_validate(e: ExtendedFormulation, target: Polytope) -> bool:
    """True iff proj(e) equals ``target``, decided by LPs over the lift.

    Every vertex of the target must lie in the projection, and every facet
    and equation of the target must hold on the projection.
    """
    if e.d != target.dim:
        raise InputError("dimension mismatch")
    ex = _explicit(e)
    feasible = e.r == 0 and all(v == 0 for v in ex.h) or (
        e.r > 0 and _lift_lp(ex, [ZERO] * e.r).status == OPTIMAL)
    if target.is_empty or not feasible:
        return target.is_empty and not feasible
    _positive_functional(ex, e.r)
    if e.r == 0:
        return polytopes_equal(Polytope.from_vertices([tuple(ex.x0)], e.d), target)
    for v in target.vertices:
        if not e.contains(v):
            return False
    for f in target.facets:
        if _lift_maximize(ex, f.a)[0] > f.b:
            return False
    for eq in target.equations:
        if _lift_maximize(ex, eq.a)[0] != eq.c:
            return False
        if _lift_maximize(ex, [-a for a in eq.a])[0] != -eq.c:
            return False
    return True


def ef_lift_point(e: ExtendedFormulation, x):
    """Some y >= 0 with E x + F y = g, or None."""
    x = [as_rational(t) for t in x]
    rhs = [gi - dot(ei, x) for gi, ei in zip(e.g, e.E)]
    A = [[Q(-1) if j == i else ZERO for j in range(e.r)] for i in range(e.r)]
    res = solve_lp([ZERO] * e.r, A, [ZERO] * e.r, list(e.F), rhs)
    return res.point if res.status == OPTIMAL else None


# ---------------------------------------------------------------- polar route

def _interior_point(rows, k):
    """Point z with a.z < b strictly for all rows (None if there is none)."""
    A = [list(r.a) + [Q(1)] for r in rows] + [[ZERO] * k + [Q(1)]]
    b = [r.b for r in rows] + [Q(1)]
    res = solve_lp([ZERO] * k + [Q(1)], A, b)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return list(res.point[:k])


def polar_route_intersection(p1: Polytope, p2: Polytope, name: str = "") -> ExtendedFormulation:
    """EF of P1 n P2 built through polarity: (P1 n P2)* = conv(P1* u P2*).

    The intersection is first restricted to its affine hull (free
    coordinates), both polytopes are polarised around an interior point of
    the intersection, joined with :func:`balas_union`, polarised back and
    finally lifted to the original coordinates.  Size <= r1 + r2 + 1 with r_i
    the facet counts of the inputs.
    """
    if p1.dim != p2.dim:
        raise InputError("polytopes live in different dimensions")
    d = p1.dim
    h1, h2 = p1.minimal_hrep, p2.minimal_hrep
    if p1.is_empty or p2.is_empty:
        raise NotFullDim("empty intersection")
    stacked = HRep(d, h1.inequalities + h2.inequalities, h1.equations + h2.equations)
    try:
        joint = minimize_hrep(stacked)
    except Exception as exc:  # EmptyPolytope
        raise NotFullDim("empty intersection") from exc
    eqs = joint.equations
    free = free_columns(eqs, d)
    k = len(free)
    if k == 0:
        raise NotFullDim("intersection is a single point")
    base = lift_from_free([ZERO] * k, eqs, d)
    dirs = []
    for t in range(k):
        z = [ZERO] * k
        z[t] = Q(1)
        pt = lift_from_free(z, eqs, d)
        dirs.append([a - b for a, b in zip(pt, base)])

    def restrict(h):
        out = []
        for r in h.inequalities:
            a = [dot(r.a, dv) for dv in dirs]
            b = r.b - dot(r.a, base)
            if all(x == 0 for x in a):
                if b < 0:
                    raise NotFullDim("empty intersection")
                continue
            out.append(LinearInequality(a, b))
        return minimize_hrep(HRep(k, tuple(out)))

    r1h, r2h = restrict(h1), restrict(h2)
    if r1h.equations or r2h.equations:
        raise NotFullDim("affine-hull restriction failed")
    c = _interior_point(list(r1h.inequalities) + list(r2h.inequalities), k)
    if c is None:
        raise NotFullDim("no interior point in the affine hull")
    e1 = ef_from_hrep(r1h, "P1")
    e2 = ef_from_hrep(r2h, "P2")
    u = balas_union(ef_polar(e1, c), ef_polar(e2, c))
    back = ef_polar(u, c)
    # lift to x: z = x[free], plus the affine hull equations
    E, F, g = [], [], []
    for er, fr, gr in zip(back.E, back.F, back.g):
        row = [ZERO] * d
        for j, v in zip(free, er):
            row[j] = v
        E.append(tuple(row))
        F.append(fr)
        g.append(gr)
    for eq in eqs:
        E.append(eq.a)
        F.append((ZERO,) * back.r)
        g.append(eq.c)
    return ExtendedFormulation(d, back.r, tuple(E), tuple(F), tuple(g),
                               name or "polar-route")


# ---------------------------------------------------------------- forests

def martin_forest_ef(n: int) -> ExtendedFormulation:
    """Flow-style EF of the forest polytope of K_n.

    For every root k and every ordered pair (i, j) with i != k there is
    z[k,i,j] >= 0 (arc i -> j towards k); for every k and i != k a slack
    s[k,i] >= 0.  Constraints: x_ij = z[k,i,j] + z[k,j,i] for every k and
    edge (with z[k,k,.] absent), and sum_j z[k,i,j] + s[k,i] = 1.
    Size n(n-1)^2 + n(n-1) = n^2 (n-1).
    """
    if n < 2:
        raise InputError("martin_forest_ef needs n >= 2")
    edges = list(combinations(range(1, n + 1), 2))
    eidx = {e: i for i, e in enumerate(edges)}
    d = len(edges)
    zvars = {}
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if i == k:
                continue
            for j in range(1, n + 1):
                if j != i:
                    zvars[(k, i, j)] = len(zvars)
    svars = {}
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if i != k:
                svars[(k, i)] = len(zvars) + len(svars)
    r = len(zvars) + len(svars)
    E, F, g = [], [], []
    for k in range(1, n + 1):
        for (i, j) in edges:
            ex = [ZERO] * d
            ex[eidx[(i, j)]] = Q(1)
            fy = [ZERO] * r
            if (k, i, j) in zvars:
                fy[zvars[(k, i, j)]] = Q(-1)
            if (k, j, i) in zvars:
                fy[zvars[(k, j, i)]] = Q(-1)
            E.append(tuple(ex))
            F.append(tuple(fy))
            g.append(ZERO)
    for (k, i), s in svars.items():
        fy = [ZERO] * r
        fy[s] = Q(1)
        for j in range(1, n + 1):
            if j != i:
                fy[zvars[(k, i, j)]] = Q(1)
        E.append((ZERO,) * d)
        F.append(tuple(fy))
        g.append(Q(1))
    return ExtendedFormulation(d, r, tuple(E), tuple(F), tuple(g), f"martin-forest-{n}")
