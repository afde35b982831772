"""Independent brute-force oracles and the golden polytope set.

Everything here uses fractions.Fraction and plain loops so it shares no code
path with the package under test.
"""
from fractions import Fraction as F
from itertools import combinations, product
import random


def to_f(x):
    """Fraction from int, Fraction or an mpq (whose Fraction() coercion is unreliable)."""
    if isinstance(x, (int, F)):
        return F(x)
    return F(int(x.numerator), int(x.denominator))


def gauss_solve(A, b):
    """Unique solution of a square system, or None if singular."""
    n = len(A)
    M = [[to_f(x) for x in row] + [to_f(bb)] for row, bb in zip(A, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(M[i][n] / M[i][i] for i in range(n))


def matrix_rank(rows):
    M = [[to_f(x) for x in r] for r in rows]
    rk = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((r for r in range(rk, len(M)) if M[r][c] != 0), None)
        if p is None:
            continue
        M[rk], M[p] = M[p], M[rk]
        for r in range(len(M)):
            if r != rk and M[r][c] != 0:
                f = M[r][c] / M[rk][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[rk])]
        rk += 1
    return rk


def brute_vertices(A, b):
    """Vertices of {x : Ax <= b} (full-rank, bounded) by trying every d-subset."""
    d = len(A[0])
    out = set()
    for S in combinations(range(len(A)), d):
        x = gauss_solve([A[i] for i in S], [b[i] for i in S])
        if x is None:
            continue
        if all(sum(to_f(a) * xi for a, xi in zip(row, x)) <= bb for row, bb in zip(A, b)):
            out.add(x)
    return out


def affine_dim(points):
    pts = [tuple(to_f(x) for x in p) for p in points]
    if not pts:
        return -1
    return matrix_rank([[x - y for x, y in zip(p, pts[0])] for p in pts[1:]] or [[0] * len(pts[0])])


def brute_facets(points):
    """Facets of a full-dimensional conv(points) as primitive integer rows (a..., b)."""
    pts = [tuple(to_f(x) for x in p) for p in points]
    d = len(pts[0])
    facets = set()
    for S in combinations(range(len(pts)), d):
        # hyperplane a.x = b through the chosen points: solve with b normalised
        rows = [list(pts[i]) + [F(-1)] for i in S]
        null = _nullspace(rows, d + 1)
        if len(null) != 1:
            continue
        w = null[0]
        a, bb = w[:d], w[d]
        vals = [sum(ai * xi for ai, xi in zip(a, p)) for p in pts]
        if all(v <= bb for v in vals):
            pass
        elif all(v >= bb for v in vals):
            a, bb = [-x for x in a], -bb
        else:
            continue
        tight = [p for p, v in zip(pts, vals) if sum(ai * xi for ai, xi in zip(a, p)) == bb]
        if affine_dim(tight) == d - 1:
            facets.add(primitive(list(a) + [bb]))
    return facets


def _nullspace(rows, n):
    M = [list(r) for r in rows]
    piv = []
    rk = 0
    for c in range(n):
        p = next((r for r in range(rk, len(M)) if M[r][c] != 0), None)
        if p is None:
            continue
        M[rk], M[p] = M[p], M[rk]
        M[rk] = [x / M[rk][c] for x in M[rk]]
        for r in range(len(M)):
            if r != rk and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[rk])]
        piv.append(c)
        rk += 1
    basis = []
    for f in range(n):
        if f in piv:
            continue
        w = [F(0)] * n
        w[f] = F(1)
        for i, p in enumerate(piv):
            w[p] = -M[i][f]
        basis.append(w)
    return basis


def primitive(vals):
    from math import gcd
    vals = [to_f(v) for v in vals]
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints) if g else tuple(ints)


def row_key(ineq):
    return primitive(list(ineq.a) + [ineq.b])


def frac_point(p):
    return tuple(to_f(x) for x in p)


# ---------------------------------------------------------------- combinatorics

def brute_matchings(n, edges):
    # depth-first over edges, skipping any edge that touches a used vertex
    out = []
    m = len(edges)

    def rec(i, used, mask):
        if i == m:
            out.append(tuple(mask >> j & 1 for j in range(m)))
            return
        rec(i + 1, used, mask)
        u, v = edges[i]
        if u not in used and v not in used:
            rec(i + 1, used | {u, v}, mask | 1 << i)

    rec(0, frozenset(), 0)
    return sorted(out, key=lambda t: sum(b << j for j, b in enumerate(t)))


def is_acyclic(n, chosen):
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in chosen:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def brute_sat(num_vars, clauses):
    out = []
    for bits in product((0, 1), repeat=num_vars):
        if all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in c) for c in clauses):
            out.append(bits)
    return out


def brute_stable_sets(n, edges):
    return [bits for bits in product((0, 1), repeat=n)
            if not any(bits[u - 1] and bits[v - 1] for u, v in edges)]


# ---------------------------------------------------------------- golden set

def _cube(d):
    return [tuple(p) for p in product((0, 1), repeat=d)]


def golden_point_sets():
    """Named full- and lower-dimensional point sets used across the suite."""
    from hfree.zoo import Graph, enumerate_forests, enumerate_matchings, enumerate_tours
    sets = {
        "triangle": [(0, 0), (1, 0), (0, 1)],
        "square": _cube(2),
        "hexagon": [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)],
        "tetrahedron": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
        "cube": _cube(3),
        "octahedron": [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
        "prism": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)],
        "pyramid": [(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (1, 1, 1)],
        "simplex4": [tuple(1 if i == j else 0 for i in range(4)) for j in range(4)] + [(0, 0, 0, 0)],
        "segment-in-plane": [(0, 0), (1, 1)],
        "triangle-in-space": [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        "point": [(1, 2)],
        "matching-K4": list(enumerate_matchings(Graph.complete(4)).vertices),
        "forests-3": list(enumerate_forests(3).vertices),
        "tours-5": list(enumerate_tours(5).vertices),
    }
    rng = random.Random(7)
    for t in range(4):
        d = 2 + t % 2
        sets[f"random-{t}"] = [tuple(F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(d))
                               for _ in range(7)]
    return sets


def random_points(rng, d, k, lo=-5, hi=5, den=3):
    return [tuple(F(rng.randint(lo * den, hi * den), den) for _ in range(d)) for _ in range(k)]
