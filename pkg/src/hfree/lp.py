"""Exact linear programming.

Problems are posed as ``max c.x  s.t.  A x <= b, E x = e`` with free ``x``.
Equations are eliminated by exact substitution; the remaining inequality
problem is solved through its dual ``min b.u  s.t.  A^T u = c, u >= 0`` with a
two-phase tableau simplex under Bland's rule.  The optimal dual vector is the
certificate returned to callers.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .linalg import independent_rows, rank, rref, solve, transpose
from .rational import Q, ZERO, dot

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: object = None
    point: tuple | None = None
    ineq_duals: tuple | None = None
    eq_duals: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense simplex tableau for ``min cost.u  s.t.  T u = rhs, u >= 0``."""

    def __init__(self, rows, rhs, basis):
        self.T = rows
        self.rhs = rhs
        self.basis = basis
        self.rc: list = []
        self.obj = ZERO

    def set_cost(self, cost):
        rc = list(cost)
        obj = ZERO
        for row, r, bv in zip(self.T, self.rhs, self.basis):
            cb = cost[bv]
            if cb:
                rc = [a - cb * t for a, t in zip(rc, row)]
                obj += cb * r
        self.rc = rc
        self.obj = obj

    def pivot(self, r: int, j: int):
        prow = self.T[r]
        inv = 1 / prow[j]
        if inv != 1:
            prow = [x * inv for x in prow]
            self.T[r] = prow
            self.rhs[r] *= inv
        pr = self.rhs[r]
        nz = [(t, v) for t, v in enumerate(prow) if v]
        for i, row in enumerate(self.T):
            if i == r:
                continue
            f = row[j]
            if f:
                for t, v in nz:
                    row[t] -= f * v
                self.rhs[i] -= f * pr
        f = self.rc[j]
        if f:
            rc = self.rc
            for t, v in nz:
                rc[t] -= f * v
            self.obj += f * pr
        self.basis[r] = j

    def run(self, allowed: int) -> str:
        """Bland-rule iterations over columns ``< allowed``."""
        while True:
            j = next((c for c in range(allowed) if self.rc[c] < 0), None)
            if j is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.T):
                a = row[j]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], j)


def _standard_min(Aeq, beq, cost):
    """Solve ``min cost.u  s.t.  Aeq u = beq, u >= 0`` (Aeq full row rank).

    Returns ``(status, u, basis)``.
    """
    k = len(Aeq)
    m = len(cost)
    rows = []
    rhs = []
    for i in range(k):
        row = list(Aeq[i])
        r = Q(beq[i])
        if r < 0:
            row = [-x for x in row]
            r = -r
        row.extend(Q(1) if t == i else ZERO for t in range(k))
        rows.append(row)
        rhs.append(r)
    tab = _Tableau(rows, rhs, [m + i for i in range(k)])
    tab.set_cost([ZERO] * m + [Q(1)] * k)
    tab.run(m + k)
    if tab.obj != 0:
        return INFEASIBLE, None, None
    # drive remaining artificials out of the basis
    for i in range(k):
        if tab.basis[i] >= m:
            j = next((c for c in range(m) if tab.T[i][c] != 0), None)
            if j is None:
                raise InputError("equality system is not of full row rank")
            tab.pivot(i, j)
    tab.set_cost(list(cost) + [ZERO] * k)
    status = tab.run(m)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    u = [ZERO] * m
    for r, bv in zip(tab.rhs, tab.basis):
        u[bv] = r
    return OPTIMAL, u, list(tab.basis)


def _solve_full_rank(c, A, b):
    """max c.z s.t. A z <= b where A has full column rank."""
    AT = transpose(A)
    status, u, basis = _standard_min(AT, c, b)
    if status == OPTIMAL:
        AB = [A[i] for i in basis]
        bB = [b[i] for i in basis]
        z = solve(AB, bB)
        return OPTIMAL, z, u
    if status == UNBOUNDED:
        return INFEASIBLE, None, None
    st, _, _ = _standard_min(AT, [ZERO] * len(c), b)
    if st == UNBOUNDED:
        return INFEASIBLE, None, None
    return UNBOUNDED, None, None


class PreparedLP:
    """The feasible region ``A x <= b, E x = e`` with equations eliminated once.

    Repeated optimisation over a fixed region (projection oracles, cutting
    planes over the same rows) only pays for the simplex runs.
    """

    def __init__(self, A, b, E=(), e=(), d: int | None = None):
        A = [[Q(x) for x in row] for row in A]
        b = [Q(x) for x in b]
        E = [[Q(x) for x in row] for row in E]
        e = [Q(x) for x in e]
        if d is None:
            d = len(A[0]) if A else (len(E[0]) if E else 0)
        for row in A + E:
            if len(row) != d:
                raise InputError("row length does not match objective length")
        if len(A) != len(b) or len(E) != len(e):
            raise InputError("right-hand side length mismatch")
        self.d = d
        self.A, self.b, self.E, self.e = A, b, E, e
        self.infeasible = False
        self.N = None
        if E:
            R, piv = rref([row + [rhs] for row, rhs in zip(E, e)], ncols=d)
            if len(R) > len(piv):
                self.infeasible = True
                return
            pivset = set(piv)
            free = [j for j in range(d) if j not in pivset]
            x0 = [ZERO] * d
            for row, p in zip(R, piv):
                x0[p] = row[d]
            # x = x0 + N z with N's column t attached to free column free[t]
            N = [[ZERO] * len(free) for _ in range(d)]
            for t, f in enumerate(free):
                N[f][t] = Q(1)
                for row, p in zip(R, piv):
                    N[p][t] = -row[f]
            # sparse column view of N for fast products
            self.Ncols = [[(j, N[j][t]) for j in range(d) if N[j][t]] for t in range(len(free))]
            self.Ared = [[_sdot(row, col) for col in self.Ncols] for row in A]
            self.bred = [bb - dot(row, x0) for row, bb in zip(A, b)]
            self.x0, self.N, self.free = x0, N, free
        else:
            self.Ared, self.bred = A, b
            self.free = list(range(d))
        k = len(self.free)
        self.k = k
        self.rank = rank(self.Ared) if self.Ared and k else 0
        self.R = None
        if self.Ared and k and self.rank < k:
            self.R = [self.Ared[i] for i in independent_rows(self.Ared)]
            self.A2 = [[dot(row, rr) for rr in self.R] for row in self.Ared]

    def _reduce_objective(self, c):
        if self.N is None:
            return list(c)
        return [_sdot(c, col) for col in self.Ncols]

    def _solve_reduced(self, cred):
        k = self.k
        A, b = self.Ared, self.bred
        if k == 0:
            if any(x < 0 for x in b):
                return INFEASIBLE, None, None
            return OPTIMAL, [], [ZERO] * len(A)
        if not A:
            if any(x != 0 for x in cred):
                return UNBOUNDED, None, None
            return OPTIMAL, [ZERO] * k, []
        if self.rank == k:
            return _solve_full_rank(cred, A, b)
        if rank(list(A) + [cred]) > self.rank:
            st, _, _ = self._solve_reduced([ZERO] * k)
            return (UNBOUNDED if st == OPTIMAL else INFEASIBLE), None, None
        c2 = [dot(rr, cred) for rr in self.R]
        st, w, u = _solve_full_rank(c2, self.A2, b)
        if st != OPTIMAL:
            return st, None, None
        z = [sum((self.R[t][j] * w[t] for t in range(len(self.R))), ZERO) for j in range(k)]
        return OPTIMAL, z, u

    def solve(self, c, duals: bool = True) -> LPResult:
        """Maximise ``c.x`` over the prepared region.

        ``duals=False`` skips reconstructing the equation multipliers.
        """
        c = [Q(x) for x in c]
        if len(c) != self.d:
            raise InputError("row length does not match objective length")
        if self.infeasible:
            return LPResult(INFEASIBLE)
        st, z, u = self._solve_reduced(self._reduce_objective(c))
        if st != OPTIMAL:
            return LPResult(st)
        if self.N is None:
            x = list(z)
        else:
            x = list(self.x0)
            for t, col in enumerate(self.Ncols):
                zt = z[t]
                if zt:
                    for j, v in col:
                        x[j] += v * zt
        mu = ()
        if self.E and duals:
            resid = list(c)
            for ui, row in zip(u, self.A):
                if ui:
                    resid = [r - ui * a for r, a in zip(resid, row)]
            sol = solve(transpose(self.E), resid)
            if sol is None:  # pragma: no cover - guaranteed consistent
                raise ArithmeticError("dual certificate reconstruction failed")
            mu = tuple(sol)
        return LPResult(OPTIMAL, dot(c, x), tuple(x), tuple(u), mu)


def _sdot(row, col):
    s = ZERO
    for j, v in col:
        a = row[j]
        if a:
            s += a * v
    return s


def solve_lp(c, A, b, E=(), e=()) -> LPResult:
    """Maximise ``c.x`` over ``{x : A x <= b, E x = e}`` exactly."""
    return PreparedLP(A, b, E, e, d=len(c)).solve(c)


def lp_optimize(c, h, maximize: bool = True) -> LPResult:
    """Optimise ``c`` over the H-representation ``h``.

    For minimisation the returned value is the minimum and the dual
    multipliers certify ``c.x >= value`` (they are the multipliers of the
    negated problem).
    """
    if len(c) != h.dim:
        raise InputError(f"objective has length {len(c)}, polytope lives in R^{h.dim}")
    A = [ineq.a for ineq in h.inequalities]
    b = [ineq.b for ineq in h.inequalities]
    E = [eq.a for eq in h.equations]
    e = [eq.c for eq in h.equations]
    if maximize:
        return solve_lp(c, A, b, E, e)
    res = solve_lp([-Q(x) for x in c], A, b, E, e)
    if res.status != OPTIMAL:
        return res
    return LPResult(OPTIMAL, -res.value, res.point, res.ineq_duals, res.eq_duals)


def check_certificate(c, A, b, E, e, res: LPResult) -> bool:
    """True iff the duals of ``res`` prove optimality of ``res.value``."""
    if res.status != OPTIMAL:
        return False
    u, mu = res.ineq_duals, res.eq_duals
    if any(x < 0 for x in u):
        return False
    combo = [ZERO] * len(c)
    for ui, row in zip(u, A):
        combo = [s + ui * a for s, a in zip(combo, row)]
    for mi, row in zip(mu, E):
        combo = [s + mi * a for s, a in zip(combo, row)]
    if combo != [Q(x) for x in c]:
        return False
    dual_value = dot(u, b) + dot(mu, e)
    x = res.point
    primal_ok = all(dot(row, x) <= bb for row, bb in zip(A, b)) and all(
        dot(row, x) == ee for row, ee in zip(E, e))
    return primal_ok and dual_value == res.value == dot(c, x)
