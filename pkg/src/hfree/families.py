"""Valid-inequality families H with enumeration and exact separation.

A family is a finite (possibly huge) list of rows in a fixed canonical order.
``rows()`` materialises the list under a cap; ``separate(x)`` returns a
violated member or ``None`` without enumerating when a fast oracle exists.

Separation answers are deterministic: the brute-force oracle returns the most
violated member, earliest in family order on ties.  Fast oracles return the
most violated member among the cuts they inspect.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from .errors import InputError, SizeLimit
from .flows import gomory_hu, max_flow
from .geometry import LinearInequality, Polytope
from .rational import Q, ZERO, as_rational, dot
from .zoo import Graph, tour_edges

DEFAULT_FAMILY_CAP = 1 << 16


@dataclass(frozen=True)
class Member:
    label: str
    ineq: LinearInequality

    def violation(self, x):
        return dot(self.ineq.a, x) - self.ineq.b


@dataclass(frozen=True)
class InequalityFamily:
    name: str
    ambient_dim: int
    size: int
    members: Callable[[], Iterator[Member]] = field(repr=False)
    fast: Callable | None = field(default=None, repr=False)
    initial: tuple = field(default=(), repr=False)  # rows that bound a cutting-plane start
    context: object = None

    def rows(self, cap: int | None = DEFAULT_FAMILY_CAP) -> list[LinearInequality]:
        return [m.ineq for m in self.enumerate_members(cap)]

    def enumerate_members(self, cap: int | None = DEFAULT_FAMILY_CAP) -> list[Member]:
        if cap is not None and self.size > cap:
            raise SizeLimit(f"family {self.name} has {self.size} rows (cap {cap})")
        return list(self.members())

    def enumerable(self, cap: int | None = DEFAULT_FAMILY_CAP) -> bool:
        return cap is None or self.size <= cap

    def separate_member(self, x) -> Member | None:
        x = _point(x, self.ambient_dim)
        if self.fast is not None:
            return self.fast(x)
        return self.brute_separate_member(x)

    def separate(self, x) -> LinearInequality | None:
        m = self.separate_member(x)
        return None if m is None else m.ineq

    def brute_separate_member(self, x, cap: int | None = DEFAULT_FAMILY_CAP) -> Member | None:
        x = _point(x, self.ambient_dim)
        if cap is not None and self.size > cap:
            raise SizeLimit(f"family {self.name} has {self.size} rows (cap {cap})")
        return _most_violated(self.members(), x)

    def brute_separate(self, x, cap: int | None = DEFAULT_FAMILY_CAP):
        m = self.brute_separate_member(x, cap)
        return None if m is None else m.ineq


def _point(x, d):
    x = tuple(as_rational(t) for t in x)
    if len(x) != d:
        raise InputError(f"point has length {len(x)}, family lives in R^{d}")
    return x


def _most_violated(members, x) -> Member | None:
    best = None
    best_v = ZERO
    for m in members:
        v = m.violation(x)
        if v > best_v:
            best, best_v = m, v
    return best


def _fmt_set(S) -> str:
    return "{" + ",".join(str(v) for v in sorted(S)) + "}"


# ---------------------------------------------------------------- box

def _box_members(d: int, names=None, offset: int = 0, dim: int | None = None):
    dim = d if dim is None else dim
    for i in range(d):
        a = [0] * dim
        a[offset + i] = -1
        nm = names[i] if names else f"x{i + 1}"
        yield Member(f"{nm} >= 0", LinearInequality(a, 0))
        a = [0] * dim
        a[offset + i] = 1
        yield Member(f"{nm} <= 1", LinearInequality(a, 1))


def _box_violation(x, d, names=None, offset=0, dim=None):
    return _most_violated(_box_members(d, names, offset, dim), x)


def box_family(d: int) -> InequalityFamily:
    return InequalityFamily("box", d, 2 * d, lambda: _box_members(d),
                            initial=tuple(m.ineq for m in _box_members(d)), context=d)


def facets_family(p: Polytope, name: str = "facets") -> InequalityFamily:
    """The whole facet list F(Q) as a family (equations are not members)."""
    rows = tuple(p.facets)

    def members():
        for i, r in enumerate(rows):
            yield Member(f"facet {i + 1}", r)

    return InequalityFamily(name, p.dim, len(rows), members,
                            initial=rows, context=p)


# ---------------------------------------------------------------- matchings

def _edge_names(g: Graph):
    return [f"x[{u},{v}]" for u, v in g.edges]


def odd_set_row(g: Graph, S, dim: int | None = None, offset: int = 0) -> LinearInequality:
    """x(E(S)) <= (|S|-1)/2."""
    a = [0] * (g.m if dim is None else dim)
    for i in g.inside(S):
        a[offset + i] = 1
    return LinearInequality(a, Q(len(S) - 1, 2))


def degree_row(g: Graph, v: int, dim: int | None = None, offset: int = 0) -> LinearInequality:
    """x(delta(v)) <= 1."""
    a = [0] * (g.m if dim is None else dim)
    for i in g.incident(v):
        a[offset + i] = 1
    return LinearInequality(a, 1)


def _degree_vertices(g: Graph):
    # degree <= 1 vertices give rows already among the box rows
    return [v for v in range(1, g.n + 1) if len(g.incident(v)) >= 2]


def _odd_sets(n: int):
    for k in range(3, n + 1, 2):
        yield from combinations(range(1, n + 1), k)


def _n_odd_sets(n: int) -> int:
    from math import comb
    return sum(comb(n, k) for k in range(3, n + 1, 2))


def _matching_members(g: Graph, dim=None, offset=0, box=True, prefix="x"):
    if box:
        yield from _box_members(g.m, _edge_names(g) if prefix == "x" else
                                [f"{prefix}[{u},{v}]" for u, v in g.edges], offset, dim)
    for v in _degree_vertices(g):
        yield Member(f"degree {prefix} {v}", degree_row(g, v, dim, offset))
    for S in _odd_sets(g.n):
        yield Member(f"odd {prefix} {_fmt_set(S)}", odd_set_row(g, S, dim, offset))


def _min_odd_cut_sets(n: int, edges, caps, T):
    """Fundamental cuts of a Gomory-Hu tree that split ``T`` oddly.

    Vertices are 0-based.  By the Padberg-Rao theorem a minimum T-odd cut is
    among them.  Returns a list of ``(capacity, side)``.
    """
    tree = gomory_hu(n, edges, caps)
    out = []
    for (u, v, c), side in zip(tree.tree_edges, tree.cut_sets):
        if len(side & T) % 2 == 1:
            out.append((c, side))
    return out


def odd_set_separate_fast(x, g: Graph, dim=None, offset=0, prefix="x") -> Member | None:
    """Exact separation of the degree and odd-set rows (box rows assumed).

    With slacks ``s_v = 1 - x(delta(v)) >= 0`` and an extra vertex joined to
    every v with capacity ``s_v``, an odd S is violated iff the cut around S
    has capacity ``x(delta(S)) + s(S) < 1``.  That is a minimum T-odd cut
    problem, solved on a Gomory-Hu tree.
    """
    xs = [x[offset + i] for i in range(g.m)]
    worst = None
    for v in _degree_vertices(g):
        s = sum((xs[i] for i in g.incident(v)), ZERO) - 1
        if s > 0 and (worst is None or s > worst[0]):
            worst = (s, v)
    if worst is not None:
        v = worst[1]
        return Member(f"degree {prefix} {v}", degree_row(g, v, dim, offset))
    if g.n < 3:
        return None
    n = g.n
    z = n  # extra vertex, 0-based vertices are 0..n-1
    edges = [(u - 1, v - 1) for u, v in g.edges]
    caps = list(xs)
    for v in range(1, n + 1):
        s = 1 - sum((xs[i] for i in g.incident(v)), ZERO)
        edges.append((v - 1, z))
        caps.append(s)
    T = set(range(n))
    if n % 2 == 1:
        T.add(z)
    best = None
    for c, side in _min_odd_cut_sets(n + 1, edges, caps, frozenset(T)):
        if c >= 1:
            continue
        S = side if z not in side else frozenset(range(n + 1)) - side
        S = tuple(sorted(v + 1 for v in S))
        row = odd_set_row(g, S, dim, offset)
        viol = dot(row.a, x) - row.b
        key = (-viol, len(S), S)
        if best is None or key < best[0]:
            best = (key, S, row)
    if best is None:
        return None
    return Member(f"odd {prefix} {_fmt_set(best[1])}", best[2])


def odd_set_family(g: Graph) -> InequalityFamily:
    """Box rows, degree rows x(delta(v)) <= 1, odd-set rows for odd |S| >= 3.

    The degree rows are included because without them the system does not
    describe the matching polytope (the claw with x = 1/2 everywhere
    satisfies every odd-set and box row).
    """
    size = 2 * g.m + len(_degree_vertices(g)) + _n_odd_sets(g.n)
    names = _edge_names(g)

    def fast(x):
        m = _box_violation(x, g.m, names)
        if m is not None:
            return m
        return odd_set_separate_fast(x, g)

    return InequalityFamily("odd-set", g.m, size, lambda: _matching_members(g), fast,
                            initial=tuple(m.ineq for m in _box_members(g.m, names)),
                            context=g)


# ---------------------------------------------------------------- tours

def subtour_row(n: int, S) -> LinearInequality:
    """x(E(S)) <= |S| - 1 over the edges of K_n."""
    S = set(S)
    a = [1 if (u in S and v in S) else 0 for u, v in tour_edges(n)]
    return LinearInequality(a, len(S) - 1)


def _subtour_sets(n: int):
    for k in range(2, n):
        yield from combinations(range(1, n), k)


def _subtour_members(n: int):
    edges = tour_edges(n)
    for i, (u, v) in enumerate(edges):
        a = [0] * len(edges)
        a[i] = -1
        yield Member(f"x[{u},{v}] >= 0", LinearInequality(a, 0))
    for S in _subtour_sets(n):
        yield Member(f"subtour {_fmt_set(S)}", subtour_row(n, S))


def subtour_separate(x, n: int, cap: int | None = DEFAULT_FAMILY_CAP) -> Member | None:
    """Exact subtour separation.

    Nonnegativity first.  When every degree equation x(delta(v)) = 2 holds, a
    subtour row is violated iff some cut has capacity < 2; the side of a
    minimum n-t cut not containing n is returned.  Otherwise the rows are
    scanned exhaustively (under ``cap``).
    """
    edges = tour_edges(n)
    x = tuple(as_rational(t) for t in x)
    if len(x) != len(edges):
        raise InputError("point length does not match K_n")
    worst = None
    for i, (u, v) in enumerate(edges):
        if x[i] < 0 and (worst is None or x[i] < x[worst]):
            worst = i
    if worst is not None:
        a = [0] * len(edges)
        a[worst] = -1
        u, v = edges[worst]
        return Member(f"x[{u},{v}] >= 0", LinearInequality(a, 0))
    deg = [ZERO] * (n + 1)
    for (u, v), xe in zip(edges, x):
        deg[u] += xe
        deg[v] += xe
    if all(deg[v] == 2 for v in range(1, n + 1)):
        e0 = [(u - 1, v - 1) for u, v in edges]
        best = None
        for t in range(n - 1):
            val, side = max_flow(n, e0, x, n - 1, t)
            if val < 2:
                S = tuple(sorted(v + 1 for v in range(n) if v not in side))
                row = subtour_row(n, S)
                key = (-(dot(row.a, x) - row.b), S)
                if best is None or key < best[0]:
                    best = (key, S, row)
        if best is None:
            return None
        return Member(f"subtour {_fmt_set(best[1])}", best[2])
    size = len(edges) + (2 ** (n - 1) - n)
    if cap is not None and size > cap:
        raise SizeLimit(f"subtour scan of {size} rows exceeds cap {cap}")
    return _most_violated(_subtour_members(n), x)


def subtour_family(n: int) -> InequalityFamily:
    if n < 3:
        raise InputError("subtour family needs n >= 3")
    m = n * (n - 1) // 2
    size = m + (2 ** (n - 1) - n)  # subsets of {1..n-1} of size 2..n-1
    return InequalityFamily("subtour", m, size, lambda: _subtour_members(n),
                            lambda x: subtour_separate(x, n),
                            initial=tuple(m_.ineq for m_ in _subtour_members(n))[:m],
                            context=n)


# ---------------------------------------------------------------- MPM odd cuts

def oddcut_row(g: Graph, S) -> LinearInequality:
    """x(delta(S)) >= 1 written as -x(delta(S)) <= -1 (x block of R^{2m})."""
    a = [0] * (2 * g.m)
    for i in g.cut(S):
        a[i] = -1
    return LinearInequality(a, -1)


def _all_odd_sets(n: int):
    for k in range(1, n + 1, 2):
        yield from combinations(range(1, n + 1), k)


def _oddcut_members(g: Graph):
    d = 2 * g.m
    xn = _edge_names(g)
    yield from _box_members(g.m, xn, 0, d)
    yield from _box_members(g.m, [f"y[{u},{v}]" for u, v in g.edges], g.m, d)
    for S in _all_odd_sets(g.n):
        yield Member(f"oddcut x {_fmt_set(S)}", oddcut_row(g, S))
    yield from _matching_members(g, d, g.m, box=False, prefix="y")


def oddcut_x_separate(x, g: Graph) -> Member | None:
    """Most violated x(delta(S)) >= 1 over odd S (box rows assumed)."""
    n = g.n
    if n == 0:
        return None
    if n % 2 == 1:
        # S = V has an empty cut
        S = tuple(range(1, n + 1))
        return Member(f"oddcut x {_fmt_set(S)}", oddcut_row(g, S))
    edges = [(u - 1, v - 1) for u, v in g.edges]
    caps = [x[i] for i in range(g.m)]
    best = None
    for c, side in _min_odd_cut_sets(n, edges, caps, frozenset(range(n))):
        if c >= 1:
            continue
        S = tuple(sorted(v + 1 for v in side))
        if 1 not in S:
            S = tuple(v for v in range(1, n + 1) if v not in S)
        key = (c, len(S), S)
        if best is None or key < best[0]:
            best = (key, S)
    if best is None:
        return None
    S = best[1]
    return Member(f"oddcut x {_fmt_set(S)}", oddcut_row(g, S))


def oddcut_pm_family(g: Graph) -> InequalityFamily:
    """Rows for MPM(G,k) in R^{2m}: box rows on both blocks, odd cuts
    x(delta(S1)) >= 1 over every odd S1, and the matching rows (degree and
    odd sets |S2| >= 3) on the y block.
    """
    d = 2 * g.m
    size = 4 * g.m + sum(1 for _ in _all_odd_sets(g.n)) + len(_degree_vertices(g)) + _n_odd_sets(g.n)
    xn = _edge_names(g)
    yn = [f"y[{u},{v}]" for u, v in g.edges]

    def fast(x):
        m = _most_violated(list(_box_members(g.m, xn, 0, d)) + list(_box_members(g.m, yn, g.m, d)), x)
        if m is not None:
            return m
        cand = [c for c in (oddcut_x_separate(x, g),
                            odd_set_separate_fast(x, g, d, g.m, "y")) if c is not None]
        if not cand:
            return None
        return max(cand, key=lambda c: c.violation(x))

    init = tuple(m.ineq for m in _box_members(g.m, xn, 0, d)) + tuple(
        m.ineq for m in _box_members(g.m, yn, g.m, d))
    return InequalityFamily("odd-cut-pm", d, size, lambda: _oddcut_members(g), fast,
                            initial=init, context=g)


FAMILY_NAMES = ("odd-set", "subtour", "odd-cut-pm", "box", "facets")
