"""The two explicit reductions: occurrence-restricted 3-CNF and stable sets as 2-SAT."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedInput
from .zoo import DEFAULT_SAT_CAP, CnfFormula, Graph, enumerate_sat

VERIFY_CAP = 64


@dataclass(frozen=True)
class ReductionMap:
    source_vars: int
    target_vars: int
    projection: tuple  # projection[i-1] = target variable carrying source variable i
    origin: tuple = ()  # origin[t-1] = source variable copied by target t (0 for padding)

    def project(self, assignment) -> tuple:
        return tuple(assignment[t - 1] for t in self.projection)

    def to_text(self) -> str:
        lines = [f"MAP {self.source_vars} {self.target_vars}"]
        for t, s in enumerate(self.origin, start=1):
            lines.append(f"{t} {s}")
        lines.append("PROJ " + " ".join(str(t) for t in self.projection))
        lines.append("END")
        return "\n".join(lines) + "\n"


def _literal_counts(f: CnfFormula):
    pos = [0] * (f.num_vars + 1)
    neg = [0] * (f.num_vars + 1)
    for c in f.clauses:
        for lit in c:
            if lit > 0:
                pos[lit] += 1
            else:
                neg[-lit] += 1
    return pos, neg


def occurrence_audit(f: CnfFormula, max_pos: int = 2, max_neg: int = 1) -> list[int]:
    """Variables breaking the cap (empty list when the formula passes)."""
    pos, neg = _literal_counts(f)
    return [v for v in range(1, f.num_vars + 1) if pos[v] > max_pos or neg[v] > max_neg]


def restrict_3cnf(phi: CnfFormula, pad: bool = False) -> tuple[CnfFormula, ReductionMap]:
    """Rewrite ``phi`` so every variable occurs at most twice positively and
    at most once negatively, keeping the satisfying assignments up to
    projection.

    Positive occurrences of x_i become fresh x-copies, negative occurrences
    fresh y-copies (standing for the negation of x_i, used positively).  The
    copies are tied into one implication cycle
    x^1 => ... => x^k => not y^1 => ... => not y^l => x^1.  A variable with
    no positive (negative) occurrence gets one dummy x-copy (y-copy) so the
    cycle exists.  Source variable i is read off its last x-copy.

    The cycle clauses have two literals.  With ``pad=True`` each of them is
    split into (a | b | p) and (a | b | -p) for a fresh p; this gives exact
    width 3 but doubles the occurrences of a and b, so the occurrence cap no
    longer holds.
    """
    for c in phi.clauses:
        if len(c) != 3:
            raise MalformedInput(f"clause {c} does not have exactly 3 literals")
    n = phi.num_vars
    xs: dict[int, list] = {i: [] for i in range(1, n + 1)}
    ys: dict[int, list] = {i: [] for i in range(1, n + 1)}
    origin: list[int] = []

    def fresh(src):
        origin.append(src)
        return len(origin)

    # x-copies in clause order, then dummies in variable order; same for y
    new_clauses = []
    xlit = {}
    for j, c in enumerate(phi.clauses):
        for pos, lit in enumerate(c):
            if lit > 0:
                v = fresh(lit)
                xs[lit].append(v)
                xlit[(j, pos)] = v
    for i in range(1, n + 1):
        if not xs[i]:
            xs[i].append(fresh(i))
    for j, c in enumerate(phi.clauses):
        for pos, lit in enumerate(c):
            if lit < 0:
                v = fresh(-lit)
                ys[-lit].append(v)
                xlit[(j, pos)] = v
    for i in range(1, n + 1):
        if not ys[i]:
            ys[i].append(fresh(i))
    for j, c in enumerate(phi.clauses):
        new_clauses.append(tuple(xlit[(j, pos)] for pos in range(len(c))))
    chain = []
    for i in range(1, n + 1):
        X, Y = xs[i], ys[i]
        for a, b in zip(X, X[1:]):
            chain.append((-a, b))
        for a, b in zip(Y, Y[1:]):
            chain.append((a, -b))
        chain.append((-X[-1], -Y[0]))
        chain.append((Y[-1], X[0]))
    if pad:
        for a, b in chain:
            p = fresh(0)
            new_clauses.append((a, b, p))
            new_clauses.append((a, b, -p))
    else:
        new_clauses.extend(chain)
    psi = CnfFormula(len(origin), tuple(new_clauses))
    m = ReductionMap(n, len(origin), tuple(xs[i][-1] for i in range(1, n + 1)), tuple(origin))
    return psi, m


def stable_set_to_2sat(g: Graph) -> CnfFormula:
    """One clause (-x_i | -x_j) per edge."""
    return CnfFormula(g.n, tuple((-u, -v) for u, v in g.edges))


def identity_map(phi: CnfFormula) -> ReductionMap:
    n = phi.num_vars
    return ReductionMap(n, n, tuple(range(1, n + 1)), tuple(range(1, n + 1)))


def verify_reduction(phi: CnfFormula, psi: CnfFormula, m: ReductionMap,
                     cap: int = VERIFY_CAP) -> bool:
    """Does projecting sat(psi) through ``m`` give exactly sat(phi)?

    Both sides are sets of 0/1 points, which are all vertices of their hulls,
    so equality of the point sets is equality of the polytopes.
    """
    if m.source_vars != phi.num_vars or m.target_vars != psi.num_vars:
        return False
    if any(not 1 <= t <= psi.num_vars for t in m.projection):
        return False
    src = set(enumerate_sat(phi, cap=max(cap, DEFAULT_SAT_CAP)).vertices)
    tgt = enumerate_sat(psi, cap=cap).vertices
    proj = {m.project(v) for v in tgt}
    return proj == src
