"""Exact max flow and Gomory-Hu cut trees on small undirected graphs."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InputError
from .rational import Q, ZERO


def _capacity_matrix(n: int, edges, caps):
    C = [[ZERO] * n for _ in range(n)]
    for (u, v), c in zip(edges, caps):
        c = Q(c)
        if c < 0:
            raise InputError("negative capacity")
        C[u][v] += c
        C[v][u] += c
    return C


def max_flow(n: int, edges, caps, s: int, t: int):
    """Edmonds-Karp on an undirected graph with 0-based vertices.

    Returns ``(value, source_side)`` where ``source_side`` is the set of
    vertices reachable from ``s`` in the final residual graph, i.e. a minimum
    s-t cut.
    """
    if s == t:
        raise InputError("source equals sink")
    C = _capacity_matrix(n, edges, caps)
    adj = [[v for v in range(n) if C[u][v] > 0] for u in range(n)]
    F = [[ZERO] * n for _ in range(n)]
    value = ZERO
    while True:
        parent = [-1] * n
        parent[s] = s
        dq = deque([s])
        while dq and parent[t] < 0:
            u = dq.popleft()
            for v in adj[u]:
                if parent[v] < 0 and C[u][v] - F[u][v] > 0:
                    parent[v] = u
                    dq.append(v)
        if parent[t] < 0:
            side = frozenset(v for v in range(n) if parent[v] >= 0)
            return value, side
        push = None
        v = t
        while v != s:
            u = parent[v]
            r = C[u][v] - F[u][v]
            push = r if push is None or r < push else push
            v = u
        v = t
        while v != s:
            u = parent[v]
            F[u][v] += push
            F[v][u] -= push
            v = u
        value += push


def cut_value(edges, caps, side) -> object:
    side = set(side)
    return sum((Q(c) for (u, v), c in zip(edges, caps) if (u in side) != (v in side)), ZERO)


@dataclass(frozen=True)
class GomoryHuTree:
    n: int
    tree_edges: tuple  # (u, v, capacity), 0-based
    cut_sets: tuple  # for each tree edge, the side containing u

    def min_cut(self, s: int, t: int):
        """Minimum tree-path capacity between ``s`` and ``t``."""
        adj: dict[int, list] = {}
        for k, (u, v, c) in enumerate(self.tree_edges):
            adj.setdefault(u, []).append((v, c))
            adj.setdefault(v, []).append((u, c))
        best = {s: None}
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for v, c in adj.get(u, ()):
                if v not in best:
                    b = best[u]
                    best[v] = c if b is None or c < b else b
                    dq.append(v)
        return best[t]


def gomory_hu(n: int, edges, caps) -> GomoryHuTree:
    """Gusfield's algorithm: n-1 max-flow computations, exact arithmetic.

    Vertices are 0-based.  The side recorded for tree edge ``(u, v)`` is the
    component of ``u`` after removing that edge, which is a minimum u-v cut.
    """
    if n <= 1:
        return GomoryHuTree(n, (), ())
    p = [0] * n
    fl = [ZERO] * n
    for s in range(1, n):
        t = p[s]
        f, X = max_flow(n, edges, caps, s, t)
        fl[s] = f
        for i in range(n):
            if i != s and i in X and p[i] == t:
                p[i] = s
        if p[t] in X:
            p[s] = p[t]
            p[t] = s
            fl[s] = fl[t]
            fl[t] = f
    tree = [(s, p[s], fl[s]) for s in range(1, n)]
    adj: dict[int, list] = {v: [] for v in range(n)}
    for u, v, _ in tree:
        adj[u].append(v)
        adj[v].append(u)
    sides = []
    for u, v, _ in tree:
        seen = {u}
        dq = deque([u])
        while dq:
            a = dq.popleft()
            for b in adj[a]:
                if b not in seen and not (a == u and b == v):
                    seen.add(b)
                    dq.append(b)
        sides.append(frozenset(seen))
    return GomoryHuTree(n, tuple(tree), tuple(sides))
