"""Q_H for the matching polytope against Edmonds' odd-set family, over small graphs.

Usage: python3 scripts/matching_sweep.py [--max-n 5] [--seed 0] [--samples 20]
"""
import argparse
import random
from dataclasses import dataclass
from itertools import combinations

from hfree.core import compute_QH
from hfree.families import odd_set_family
from hfree.geometry import Polytope
from hfree.zoo import Graph, enumerate_matchings


@dataclass
class SweepConfig:
    max_n: int = 5
    seed: int = 0
    samples: int = 20


def random_graph(rng, n):
    edges = [e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.5]
    return Graph(n, tuple(edges)) if edges else Graph.complete(n)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=20)
    cfg = SweepConfig(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    print("n  m  vertices  facets  retained")
    bad = 0
    for _ in range(cfg.samples):
        n = rng.randint(3, cfg.max_n)
        g = random_graph(rng, n)
        q = Polytope(g.m, vrep=enumerate_matchings(g)).minimal()
        qh = compute_QH(q, odd_set_family(g))
        bad += len(qh.retained) > 0
        print(f"{n}  {g.m:2d}  {len(q.vertices):8d}  {qh.facet_count:6d}  {len(qh.retained):8d}")
    print(f"graphs with nonempty Q_H: {bad}")


if __name__ == "__main__":
    main()
