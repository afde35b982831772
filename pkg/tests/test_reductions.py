import random
from itertools import product

import pytest

from hfree.errors import MalformedInput
from hfree.reductions import (identity_map, occurrence_audit, restrict_3cnf, stable_set_to_2sat,
                              verify_reduction)
from hfree.zoo import CnfFormula, Graph, enumerate_sat, enumerate_stable_sets

from oracles import brute_sat


def all_patterns():
    return tuple(tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                 for signs in product((1, -1), repeat=3))


def random_3cnf(rng, nvars, nclauses):
    clauses = []
    for _ in range(nclauses):
        vs = rng.sample(range(1, nvars + 1), 3) if nvars >= 3 else [rng.randint(1, nvars) for _ in range(3)]
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(nvars, tuple(clauses))


def test_single_clause():
    phi = CnfFormula(3, ((1, 2, 3),))
    psi, m = restrict_3cnf(phi)
    assert occurrence_audit(psi) == []
    assert len(enumerate_sat(psi)) >= 7
    assert {m.project(v) for v in enumerate_sat(psi).vertices} == set(brute_sat(3, phi.clauses))
    assert verify_reduction(phi, psi, m)


def test_unsat_stays_unsat():
    phi = CnfFormula(3, all_patterns())
    psi, m = restrict_3cnf(phi)
    assert len(enumerate_sat(psi)) == 0
    assert occurrence_audit(psi) == []
    assert verify_reduction(phi, psi, m)


def test_variable_numbering_is_deterministic():
    phi = CnfFormula(3, ((1, -2, 3), (-1, 2, 3)))
    psi, m = restrict_3cnf(phi)
    # x-copies in clause order, then dummies, then y-copies
    assert psi.clauses[0] == (1, 5, 2)
    assert psi.clauses[1] == (6, 3, 4)
    assert m.origin[:4] == (1, 3, 2, 3)
    assert restrict_3cnf(phi) == (psi, m)


def test_width_check():
    with pytest.raises(MalformedInput):
        restrict_3cnf(CnfFormula(2, ((1, 2),)))


def test_padding_gives_width_three_but_breaks_cap():
    phi = CnfFormula(3, ((1, 2, 3), (-1, -2, 3)))
    psi, m = restrict_3cnf(phi, pad=True)
    assert all(len(c) == 3 for c in psi.clauses)
    assert verify_reduction(phi, psi, m)
    assert occurrence_audit(psi) != []


@pytest.mark.parametrize("seed", range(8))
def test_random_formulas(seed):
    rng = random.Random(seed)
    phi = random_3cnf(rng, rng.randint(3, 4), rng.randint(1, 5))
    psi, m = restrict_3cnf(phi)
    assert occurrence_audit(psi) == []
    assert verify_reduction(phi, psi, m)


def test_corrupted_map_is_caught():
    # removing the cycle-closing clause of a variable decouples its copies
    rng = random.Random(1)
    caught = False
    for _ in range(30):
        phi = random_3cnf(rng, 3, rng.randint(2, 4))
        psi, m = restrict_3cnf(phi)
        for k in range(len(phi.clauses), len(psi.clauses)):
            bad = CnfFormula(psi.num_vars, psi.clauses[:k] + psi.clauses[k + 1:])
            if not verify_reduction(phi, bad, m):
                caught = True
                break
        if caught:
            break
    assert caught


def test_identity_map():
    phi = CnfFormula(3, ((1, -2, 3),))
    assert verify_reduction(phi, phi, identity_map(phi))


def test_projection_mismatch():
    phi = CnfFormula(3, ((1, 2, 3),))
    psi, m = restrict_3cnf(phi)
    assert not verify_reduction(phi, phi, m)


@pytest.mark.parametrize("g,count", [(Graph.complete(3), 4), (Graph(3, ()), 8),
                                     (Graph(2, ((1, 2),)), 3)])
def test_stable_set_2sat(g, count):
    f = stable_set_to_2sat(g)
    assert len(enumerate_sat(f)) == count
    assert enumerate_sat(f).point_set() == enumerate_stable_sets(g).point_set()
