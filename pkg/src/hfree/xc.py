"""Slack matrices and desk-scale extension-complexity bounds.

Only the rectangle covering number of the support is used as a lower bound
(rc <= nonnegative rank <= xc).  Upper bounds come from trivial lifts.
Nothing here claims to compute xc itself.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, NegativeSlack
from .geometry import HRep, Polytope, VRep
from .rational import dot, fmt

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class SlackMatrix:
    entries: tuple  # rows of exact rationals
    row_labels: tuple = ()
    col_labels: tuple = ()

    @property
    def shape(self):
        return len(self.entries), (len(self.entries[0]) if self.entries else len(self.col_labels))

    def support(self) -> tuple:
        return tuple(tuple(1 if x != 0 else 0 for x in row) for row in self.entries)

    def to_text(self) -> str:
        return "\n".join(" ".join(fmt(x) for x in row) for row in self.entries)

    def support_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.support())


def slack_matrix(h: HRep, v: VRep, rows=None) -> SlackMatrix:
    """M[i][j] = b_i - a_i . v_j; raises NegativeSlack on a violated row."""
    if h.dim != v.dim:
        raise InputError("dimension mismatch between rows and points")
    rows = h.inequalities if rows is None else tuple(rows)
    M = []
    for i, r in enumerate(rows):
        line = []
        for j, p in enumerate(v.vertices):
            s = r.b - dot(r.a, p)
            if s < 0:
                raise NegativeSlack(f"point {j + 1} violates row {i + 1}")
            line.append(s)
        M.append(tuple(line))
    return SlackMatrix(tuple(M), tuple(str(r) for r in rows),
                       tuple(" ".join(fmt(x) for x in p) for p in v.vertices))


@dataclass(frozen=True)
class CoverResult:
    lb: int
    ub: int
    exact: bool
    rectangles: tuple = ()  # an optimal (or greedy) cover as (row set, col set)

    @property
    def value(self):
        return self.lb if self.exact else None

    def __str__(self):
        return f"exact({self.lb})" if self.exact else f"bounds({self.lb}, {self.ub})"


def _as_support(m) -> list[list[int]]:
    if isinstance(m, SlackMatrix):
        return [list(r) for r in m.support()]
    return [[1 if x else 0 for x in row] for row in m]


def maximal_rectangles(S, limit: int | None = None):
    """All maximal all-ones rectangles of a 0/1 matrix as (row mask, col mask).

    Column sets of maximal rectangles are exactly the nonempty intersections
    of row supports; the row set is then every row containing that set.
    Returns None when more than ``limit`` column sets turn up.
    """
    rows = [sum(1 << j for j, x in enumerate(r) if x) for r in S]
    col_sets = {r for r in rows if r}
    frontier = set(col_sets)
    while frontier:
        new = set()
        for c in frontier:
            for r in rows:
                x = c & r
                if x and x not in col_sets:
                    new.add(x)
        col_sets |= new
        frontier = new
        if limit is not None and len(col_sets) > limit:
            return None
    return sorted((sum(1 << i for i, r in enumerate(rows) if r & c == c), c) for c in col_sets)


def _row_rectangles(S):
    """One maximal rectangle per nonzero row: its support and every row containing it."""
    rows = [sum(1 << j for j, x in enumerate(r) if x) for r in S]
    return sorted({(sum(1 << i for i, r in enumerate(rows) if r & c == c), c) for c in rows if c})


def fooling_set_bound(S) -> int:
    """Size of a greedy-then-exhaustive fooling set (pairwise non-coverable ones)."""
    cells = [(i, j) for i, r in enumerate(S) for j, x in enumerate(r) if x]
    ok = lambda a, b: not (S[a[0]][b[1]] and S[b[0]][a[1]])
    best: list = []

    # exact search for small supports, greedy otherwise
    if len(cells) <= 40:
        def rec(start, chosen):
            nonlocal best
            if len(chosen) > len(best):
                best = list(chosen)
            if len(chosen) + (len(cells) - start) <= len(best):
                return
            for t in range(start, len(cells)):
                c = cells[t]
                if all(ok(c, d) for d in chosen):
                    chosen.append(c)
                    rec(t + 1, chosen)
                    chosen.pop()
        rec(0, [])
    else:
        for c in cells:
            if all(ok(c, d) for d in best):
                best.append(c)
    return len(best)


def rectangle_cover_number(m, budget: int = DEFAULT_BUDGET) -> CoverResult:
    """Minimum number of all-ones rectangles covering the support of ``m``.

    Exact branch and bound over maximal rectangles while the node count stays
    within ``budget``; otherwise (fooling-set lower bound, greedy upper bound).
    """
    S = _as_support(m)
    cells = [(i, j) for i, r in enumerate(S) for j, x in enumerate(r) if x]
    if not cells:
        return CoverResult(0, 0, True)
    limit = max(1000, min(budget, 20000))
    rects = maximal_rectangles(S, limit)
    enumerated = rects is not None
    if not enumerated:
        rects = _row_rectangles(S)
    ncols = len(S[0])
    cell_bit = {c: k for k, c in enumerate(cells)}
    masks = []
    for rm, cm in rects:
        mk = 0
        for i in range(len(S)):
            if rm >> i & 1:
                for j in range(ncols):
                    if cm >> j & 1:
                        mk |= 1 << cell_bit[(i, j)]
        masks.append(mk)
    full = (1 << len(cells)) - 1

    # greedy cover: upper bound
    covered = 0
    greedy = []
    while covered != full:
        k = max(range(len(masks)), key=lambda t: (bin(masks[t] & ~covered).count("1"), -t))
        greedy.append(k)
        covered |= masks[k]
    best = list(greedy)
    lb0 = fooling_set_bound(S)
    by_cell = [[k for k, mk in enumerate(masks) if mk >> b & 1] for b in range(len(cells))]
    biggest = max(bin(mk).count("1") for mk in masks)
    nodes = 0
    exhausted = False

    def rec(covered, chosen):
        nonlocal best, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if covered == full:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        remaining = bin(full & ~covered).count("1")
        if len(chosen) + max(1, -(-remaining // biggest)) >= len(best):
            return
        # branch on the uncovered cell with fewest covering rectangles
        unc = full & ~covered
        bcell = None
        bcount = None
        b = unc
        while b:
            low = b & -b
            idx = low.bit_length() - 1
            cnt = len(by_cell[idx])
            if bcount is None or cnt < bcount:
                bcell, bcount = idx, cnt
            b ^= low
        for k in sorted(by_cell[bcell], key=lambda t: -bin(masks[t] & unc).count("1")):
            chosen.append(k)
            rec(covered | masks[k], chosen)
            chosen.pop()

    if not enumerated:
        return CoverResult(min(lb0, len(best)), len(best), False,
                           tuple(rects[k] for k in best))
    if lb0 < len(best):
        rec(0, [])
    as_pairs = tuple(rects[k] for k in best)
    if exhausted:
        return CoverResult(min(lb0, len(best)), len(best), False, as_pairs)
    return CoverResult(len(best), len(best), True, as_pairs)


def xc_bounds(p: Polytope, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """(lb, ub) on xc(p): rectangle covers below, trivial lifts above."""
    if p.is_empty:
        return 0, 0
    facets = p.facets
    verts = p.vertices
    ub = min(len(facets), len(verts))
    if not facets:
        return 0, 0
    M = slack_matrix(p.minimal_hrep, VRep(p.dim, verts))
    lb = rectangle_cover_number(M, budget).lb
    if p.dimension == p.dim:
        lb = max(lb, p.dim + 1)
    return min(lb, ub), ub
