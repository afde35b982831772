"""Line-based text formats: polytopes, graphs, DIMACS CNF, EFs, reduction maps.

Polytope::

    POLY <name>
    DIM <d>
    HREP <m> <k>          (optional)
    <b> <a1> ... <ad>     m rows meaning a.x <= b
    E <c> <a1> ... <ad>   k rows meaning a.x = c
    VREP <n>              (optional)
    <x1> ... <xd>         n points
    END

Rationals are written ``p`` or ``p/q``.  Blank lines and ``#`` comments are
ignored everywhere.
"""
from __future__ import annotations

from .ef import ExtendedFormulation
from .errors import MalformedInput
from .geometry import HRep, LinearEquation, LinearInequality, Polytope, VRep
from .rational import fmt, fmt_vec, parse_rational
from .reductions import ReductionMap
from .zoo import CnfFormula, Graph


def _lines(text: str):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _rats(tokens, what="row"):
    try:
        return [parse_rational(t) for t in tokens]
    except ValueError as exc:
        raise MalformedInput(f"bad rational in {what}: {exc}") from exc


def _int(tok, what):
    try:
        return int(tok)
    except ValueError as exc:
        raise MalformedInput(f"expected an integer for {what}, got {tok!r}") from exc


# ---------------------------------------------------------------- polytopes

def write_polytope(p: Polytope, hrep: bool | None = None, vrep: bool | None = None) -> str:
    """Serialise ``p``; by default whichever representations it carries."""
    hrep = p.hrep is not None if hrep is None else hrep
    vrep = p.vrep is not None if vrep is None else vrep
    lines = [f"POLY {p.name or 'Q'}", f"DIM {p.dim}"]
    if hrep:
        h = p.hrep if p.hrep is not None else p.minimal_hrep
        lines.append(f"HREP {len(h.inequalities)} {len(h.equations)}")
        for r in h.inequalities:
            lines.append(f"{fmt(r.b)} {fmt_vec(r.a)}".rstrip())
        for e in h.equations:
            lines.append(f"E {fmt(e.c)} {fmt_vec(e.a)}".rstrip())
    if vrep:
        pts = p.vrep.vertices if p.vrep is not None else p.vertices
        lines.append(f"VREP {len(pts)}")
        for v in pts:
            lines.append(fmt_vec(v))
    lines.append("END")
    return "\n".join(lines) + "\n"


def read_polytope(text: str) -> Polytope:
    lines = _lines(text)
    if not lines or not lines[0].startswith("POLY"):
        raise MalformedInput("polytope file must start with POLY")
    name = lines[0][4:].strip()
    if len(lines) < 2 or not lines[1].startswith("DIM"):
        raise MalformedInput("missing DIM line")
    parts = lines[1].split()
    if len(parts) != 2:
        raise MalformedInput("DIM takes one integer")
    d = _int(parts[1], "DIM")
    if d < 0:
        raise MalformedInput("negative dimension")
    i = 2
    h = v = None
    while i < len(lines):
        head = lines[i].split()
        if head[0] == "END":
            if i != len(lines) - 1:
                raise MalformedInput("content after END")
            break
        if head[0] == "HREP":
            if h is not None or len(head) != 3:
                raise MalformedInput("bad HREP header")
            m, k = _int(head[1], "HREP m"), _int(head[2], "HREP k")
            ineqs, eqs = [], []
            for t in range(m):
                i += 1
                if i >= len(lines):
                    raise MalformedInput("truncated HREP")
                vals = _rats(lines[i].split())
                if len(vals) != d + 1:
                    raise MalformedInput(f"HREP row has {len(vals) - 1} coefficients, expected {d}")
                ineqs.append(LinearInequality(vals[1:], vals[0]))
            for t in range(k):
                i += 1
                if i >= len(lines):
                    raise MalformedInput("truncated HREP")
                tok = lines[i].split()
                if tok[0] != "E":
                    raise MalformedInput("equation rows start with E")
                vals = _rats(tok[1:])
                if len(vals) != d + 1:
                    raise MalformedInput("equation row length mismatch")
                eqs.append(LinearEquation(vals[1:], vals[0]))
            h = HRep(d, tuple(ineqs), tuple(eqs))
        elif head[0] == "VREP":
            if v is not None or len(head) != 2:
                raise MalformedInput("bad VREP header")
            n = _int(head[1], "VREP n")
            pts = []
            for t in range(n):
                i += 1
                if i >= len(lines):
                    raise MalformedInput("truncated VREP")
                vals = _rats(lines[i].split(), "point")
                if len(vals) != d:
                    raise MalformedInput(f"point has {len(vals)} coordinates, expected {d}")
                pts.append(tuple(vals))
            v = VRep(d, tuple(pts))
        else:
            raise MalformedInput(f"unexpected line {lines[i]!r}")
        i += 1
    else:
        raise MalformedInput("missing END")
    if h is None and v is None:
        raise MalformedInput("polytope needs HREP or VREP")
    return Polytope(d, h, v, name=name)


# ---------------------------------------------------------------- graphs

def write_graph(g: Graph) -> str:
    return "\n".join([f"GRAPH {g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def read_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines:
        raise MalformedInput("empty graph file")
    head = lines[0].split()
    if head[0] != "GRAPH" or len(head) != 3:
        raise MalformedInput("graph file must start with 'GRAPH <n> <m>'")
    n, m = _int(head[1], "n"), _int(head[2], "m")
    if len(lines) - 1 != m:
        raise MalformedInput(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        tok = line.split()
        if len(tok) != 2:
            raise MalformedInput(f"bad edge line {line!r}")
        edges.append((_int(tok[0], "u"), _int(tok[1], "v")))
    return Graph(n, tuple(edges))


def named_graph(spec: str) -> Graph | None:
    """K<n>, C<n>, P<n> shorthands."""
    if len(spec) >= 2 and spec[0] in "KCP" and spec[1:].isdigit():
        n = int(spec[1:])
        return {"K": Graph.complete, "C": Graph.cycle, "P": Graph.path}[spec[0]](n)
    return None


# ---------------------------------------------------------------- DIMACS

def write_dimacs(f: CnfFormula, comment: str = "") -> str:
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    for c in f.clauses:
        lines.append(" ".join(str(l) for l in c) + " 0")
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> CnfFormula:
    nv = nc = None
    clauses = []
    cur = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            tok = line.split()
            if len(tok) != 4 or tok[1] != "cnf":
                raise MalformedInput("bad problem line")
            nv, nc = _int(tok[2], "variables"), _int(tok[3], "clauses")
            continue
        if nv is None:
            raise MalformedInput("clause before the problem line")
        for tok in line.split():
            lit = _int(tok, "literal")
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(lit)
    if nv is None:
        raise MalformedInput("missing problem line")
    if cur:
        clauses.append(tuple(cur))
    if len(clauses) != nc:
        raise MalformedInput(f"header announces {nc} clauses, found {len(clauses)}")
    return CnfFormula(nv, tuple(clauses))


# ---------------------------------------------------------------- EFs

def write_ef(e: ExtendedFormulation) -> str:
    lines = [f"EF {e.name or 'ef'}", f"DIM {e.d} {e.r} {e.rows}"]
    for gi, er, fr in zip(e.g, e.E, e.F):
        lines.append(f"{fmt(gi)} | {fmt_vec(er)} | {fmt_vec(fr)}")
    lines.append("END")
    return "\n".join(lines) + "\n"


def read_ef(text: str) -> ExtendedFormulation:
    lines = _lines(text)
    if not lines or not lines[0].startswith("EF"):
        raise MalformedInput("EF file must start with EF")
    name = lines[0][2:].strip()
    head = lines[1].split() if len(lines) > 1 else []
    if len(head) != 4 or head[0] != "DIM":
        raise MalformedInput("expected 'DIM <d> <r> <rows>'")
    d, r, k = (_int(t, "DIM") for t in head[1:])
    if len(lines) != k + 3 or lines[-1] != "END":
        raise MalformedInput(f"expected {k} rows followed by END")
    E, F, g = [], [], []
    for line in lines[2:-1]:
        parts = line.split("|")
        if len(parts) != 3:
            raise MalformedInput(f"EF row needs two '|' separators: {line!r}")
        gi = _rats(parts[0].split())
        er = _rats(parts[1].split())
        fr = _rats(parts[2].split())
        if len(gi) != 1 or len(er) != d or len(fr) != r:
            raise MalformedInput(f"EF row has wrong lengths: {line!r}")
        g.append(gi[0])
        E.append(tuple(er))
        F.append(tuple(fr))
    return ExtendedFormulation(d, r, tuple(E), tuple(F), tuple(g), name)


# ---------------------------------------------------------------- maps and vectors

def read_map(text: str) -> ReductionMap:
    lines = _lines(text)
    if not lines or not lines[0].startswith("MAP"):
        raise MalformedInput("map file must start with MAP")
    head = lines[0].split()
    if len(head) != 3:
        raise MalformedInput("expected 'MAP <source> <target>'")
    s, t = _int(head[1], "source"), _int(head[2], "target")
    origin = [0] * t
    proj = None
    for line in lines[1:]:
        tok = line.split()
        if tok[0] == "END":
            break
        if tok[0] == "PROJ":
            proj = tuple(_int(x, "projection") for x in tok[1:])
            continue
        if len(tok) != 2:
            raise MalformedInput(f"bad map line {line!r}")
        ti, si = _int(tok[0], "target"), _int(tok[1], "source")
        if not 1 <= ti <= t:
            raise MalformedInput(f"target index {ti} out of range")
        origin[ti - 1] = si
    else:
        raise MalformedInput("missing END")
    if proj is None or len(proj) != s:
        raise MalformedInput("PROJ line must list one target per source variable")
    return ReductionMap(s, t, proj, tuple(origin))


def read_vector(text: str) -> tuple:
    return tuple(_rats(" ".join(_lines(text)).split(), "vector"))
