"""Subtour family against the TSP polytope: Q_H is empty for n=5 and not for n=6."""
import argparse

from hfree.core import compute_QH, qh_xc_bounds
from hfree.families import subtour_family
from hfree.geometry import Polytope
from hfree.zoo import enumerate_tours


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[5, 6])
    ap.add_argument("--budget", type=int, default=10 ** 5)
    args = ap.parse_args()
    for n in args.n:
        q = Polytope(n * (n - 1) // 2, vrep=enumerate_tours(n)).minimal()
        qh = compute_QH(q, subtour_family(n))
        lb, ub, cov = qh_xc_bounds(qh, args.budget)
        kind = "none" if cov is None else ("exact" if cov.exact else "bounds")
        print(f"n={n}: tours={len(q.vertices)} facets={qh.facet_count} "
              f"retained={len(qh.retained)} xc(Q_H) in [{lb}, {ub}] ({kind})")


if __name__ == "__main__":
    main()
