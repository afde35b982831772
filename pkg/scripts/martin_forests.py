"""Size and correctness of the compact forest formulation for small n."""
import argparse
import time

from hfree.ef import MARTIN_C, ef_validate, martin_forest_ef
from hfree.geometry import Polytope
from hfree.zoo import enumerate_forests


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    for n in range(2, args.max_n + 1):
        t = time.perf_counter()
        e = martin_forest_ef(n)
        target = Polytope(n * (n - 1) // 2, vrep=enumerate_forests(n))
        ok = ef_validate(e, target)
        print(f"n={n}: size={e.size} bound={MARTIN_C * n ** 3} forests={len(target.vertices)} "
              f"valid={ok} ({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    main()
