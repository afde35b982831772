"""Brute-force generators for the 0/1 polytopes under study.

Every generator returns a :class:`VRep` whose vertices are sorted
lexicographically, so output is canonical.  Coordinates are indexed by the
lexicographically sorted edge list of the graph (or of K_n).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import InputError, SizeLimit
from .geometry import VRep

DEFAULT_EDGE_CAP = 24
DEFAULT_TOUR_CAP = 8
DEFAULT_SAT_CAP = 24


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple  # sorted pairs (u, v), 1 <= u < v <= n

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InputError(f"edge ({u},{v}) outside 1..{self.n}")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise InputError("duplicate edge")
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    def incident(self, v: int) -> list[int]:
        return [i for i, (a, b) in enumerate(self.edges) if v in (a, b)]

    def inside(self, S) -> list[int]:
        """Edge indices with both endpoints in ``S``."""
        S = set(S)
        return [i for i, (a, b) in enumerate(self.edges) if a in S and b in S]

    def cut(self, S) -> list[int]:
        """Edge indices with exactly one endpoint in ``S``."""
        S = set(S)
        return [i for i, (a, b) in enumerate(self.edges) if (a in S) != (b in S)]

    def neighbors(self, v: int) -> list[int]:
        return sorted({b if a == v else a for a, b in self.edges if v in (a, b)})

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(combinations(range(1, n + 1), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i % n + 1) for i in range(1, n + 1)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i + 1) for i in range(1, n)))


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple  # tuples of nonzero signed ints

    def __post_init__(self):
        cl = []
        for c in self.clauses:
            c = tuple(int(x) for x in c)
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InputError(f"literal {lit} outside 1..{self.num_vars}")
            if any(-lit in c for lit in c):
                raise InputError(f"clause {c} contains a variable and its negation")
            cl.append(c)
        object.__setattr__(self, "clauses", tuple(cl))

    def satisfied_by(self, assignment) -> bool:
        """``assignment[i-1]`` is the 0/1 value of variable i."""
        return all(any((assignment[abs(l) - 1] == 1) == (l > 0) for l in c) for c in self.clauses)


def _canonical(dim: int, vecs) -> VRep:
    return VRep(dim, tuple(sorted(set(tuple(v) for v in vecs))))


def _check_edges(m: int, cap: int | None):
    if cap is not None and m > cap:
        raise SizeLimit(f"{m} edges exceed the enumeration cap {cap}")


def _matchings(g: Graph):
    """All matchings as sorted tuples of edge indices (backtracking)."""
    out = []

    def rec(i, used, chosen):
        if i == g.m:
            out.append(tuple(chosen))
            return
        rec(i + 1, used, chosen)
        a, b = g.edges[i]
        if a not in used and b not in used:
            chosen.append(i)
            rec(i + 1, used | {a, b}, chosen)
            chosen.pop()

    rec(0, frozenset(), [])
    return out


def is_matching(g: Graph, M) -> bool:
    ends = [v for i in M for v in g.edges[i]]
    return len(ends) == len(set(ends))


def is_induced(g: Graph, M) -> bool:
    if not is_matching(g, M):
        return False
    owner = {}
    for i in M:
        for v in g.edges[i]:
            owner[v] = i
    for a, b in g.edges:
        if a in owner and b in owner and owner[a] != owner[b]:
            return False
    return True


def is_maximal(g: Graph, M) -> bool:
    if not is_matching(g, M):
        return False
    covered = {v for i in M for v in g.edges[i]}
    return all(a in covered or b in covered for a, b in g.edges)


def is_perfect(g: Graph, M) -> bool:
    return is_matching(g, M) and 2 * len(M) == g.n


_VARIANTS = {
    "all": lambda g, M: True,
    "perfect": is_perfect,
    "induced": is_induced,
    "maximal": is_maximal,
}


def enumerate_matchings(g: Graph, variant: str = "all", cap: int | None = DEFAULT_EDGE_CAP) -> VRep:
    if variant not in _VARIANTS:
        raise InputError(f"unknown matching variant {variant!r}")
    _check_edges(g.m, cap)
    keep = _VARIANTS[variant]
    vecs = []
    for M in _matchings(g):
        if keep(g, M):
            x = [0] * g.m
            for i in M:
                x[i] = 1
            vecs.append(x)
    return _canonical(g.m, vecs)


def tour_edges(n: int):
    return list(combinations(range(1, n + 1), 2))


def enumerate_tours(n: int, cap: int = DEFAULT_TOUR_CAP) -> VRep:
    """Incidence vectors of the (n-1)!/2 Hamiltonian cycles of K_n."""
    if n < 3:
        raise InputError("tours need n >= 3")
    if n > cap:
        raise SizeLimit(f"n={n} exceeds the tour cap {cap}")
    idx = {e: i for i, e in enumerate(tour_edges(n))}
    vecs = []
    for perm in permutations(range(2, n + 1)):
        if perm[0] > perm[-1]:
            continue
        cyc = (1,) + perm
        x = [0] * len(idx)
        for i in range(n):
            a, b = cyc[i], cyc[(i + 1) % n]
            x[idx[(min(a, b), max(a, b))]] = 1
        vecs.append(x)
    return _canonical(len(idx), vecs)


def enumerate_stable_sets(g: Graph, cap: int = DEFAULT_SAT_CAP) -> VRep:
    if g.n > cap:
        raise SizeLimit(f"{g.n} vertices exceed the cap {cap}")
    nbrs = {v: set(g.neighbors(v)) for v in range(1, g.n + 1)}
    vecs = []

    def rec(v, chosen):
        if v > g.n:
            vecs.append([1 if u in chosen else 0 for u in range(1, g.n + 1)])
            return
        rec(v + 1, chosen)
        if not (nbrs[v] & chosen):
            rec(v + 1, chosen | {v})

    rec(1, frozenset())
    return _canonical(g.n, vecs)


def enumerate_sat(f: CnfFormula, cap: int | None = DEFAULT_SAT_CAP) -> VRep:
    """All satisfying 0/1 assignments (backtracking with clause pruning)."""
    n = f.num_vars
    if cap is not None and n > cap:
        raise SizeLimit(f"{n} variables exceed the cap {cap}")
    # clauses indexed by their largest variable: checkable once it is set
    by_last: dict[int, list] = {}
    for c in f.clauses:
        if not c:
            return VRep(n, ())
        by_last.setdefault(max(abs(l) for l in c), []).append(c)
    occurs: dict[int, list] = {}
    for c in f.clauses:
        for l in c:
            occurs.setdefault(abs(l), []).append(c)
    vals = [0] * (n + 1)
    out = []

    def clause_dead(c, upto):
        # every literal assigned (var <= upto) and false
        return all(abs(l) <= upto and (vals[abs(l)] == 1) != (l > 0) for l in c)

    def rec(v):
        if v > n:
            out.append(tuple(vals[1:]))
            return
        for bit in (0, 1):
            vals[v] = bit
            if not any(clause_dead(c, v) for c in occurs.get(v, ())):
                rec(v + 1)
        vals[v] = 0

    rec(1)
    return _canonical(n, out)


def enumerate_forests(n: int, cap: int | None = DEFAULT_EDGE_CAP) -> VRep:
    """Acyclic edge subsets of K_n."""
    if n < 1:
        raise InputError("forests need n >= 1")
    edges = tour_edges(n) if n >= 2 else []
    _check_edges(len(edges), cap)
    vecs = []

    def find(parent, a):
        while parent[a] != a:
            a = parent[a]
        return a

    def rec(i, parent, chosen):
        if i == len(edges):
            vecs.append(list(chosen))
            return
        chosen.append(0)
        rec(i + 1, parent, chosen)
        chosen.pop()
        a, b = edges[i]
        ra, rb = find(parent, a), find(parent, b)
        if ra != rb:
            p2 = dict(parent)
            p2[ra] = rb
            chosen.append(1)
            rec(i + 1, p2, chosen)
            chosen.pop()

    rec(0, {v: v for v in range(1, n + 1)}, [])
    return _canonical(len(edges), vecs)


def enumerate_mpm(g: Graph, k: int, exact: bool = False,
                  cap: int | None = DEFAULT_EDGE_CAP) -> VRep:
    """Pairs (M, M') with M perfect, M' a matching disjoint from M, |M'| >= k.

    With ``exact=True`` the size condition is ``|M'| == k``.  Vectors are the
    concatenation (x, y) of the two incidence vectors.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    _check_edges(g.m, cap)
    ms = _matchings(g)
    perfect = [M for M in ms if 2 * len(M) == g.n]
    vecs = []
    for M in perfect:
        Ms = set(M)
        for M2 in ms:
            if Ms & set(M2):
                continue
            if (len(M2) == k) if exact else (len(M2) >= k):
                x = [1 if i in Ms else 0 for i in range(g.m)]
                y = [1 if i in M2 else 0 for i in range(g.m)]
                vecs.append(x + y)
    return _canonical(2 * g.m, vecs)
