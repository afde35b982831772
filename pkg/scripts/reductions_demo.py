"""Run the occurrence-restricting 3-CNF reduction on random formulas and verify each."""
import argparse
import random

from hfree.reductions import occurrence_audit, restrict_3cnf, verify_reduction
from hfree.zoo import CnfFormula


def random_cnf(rng, n, k):
    clauses = []
    for _ in range(k):
        vs = rng.sample(range(1, n + 1), min(3, n))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(n, tuple(clauses))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    failures = 0
    for i in range(args.count):
        phi = random_cnf(rng, rng.randint(3, 4), rng.randint(1, 5))
        psi, m = restrict_3cnf(phi)
        ok = verify_reduction(phi, psi, m) and not occurrence_audit(psi)
        failures += not ok
        print(f"{i:3d}: vars {phi.num_vars}->{psi.num_vars} clauses "
              f"{len(phi.clauses)}->{len(psi.clauses)} {'ok' if ok else 'FAIL'}")
    print(f"failures: {failures}")


if __name__ == "__main__":
    main()
