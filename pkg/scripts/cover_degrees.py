"""Fibre sizes of the strata covers and of the SL -> PGL and eta2 maps.

    python3 scripts/cover_degrees.py --max-n 5 --samples 30 --seed 0
"""
import argparse
import random
from collections import Counter

from dtcoh.groups import Partition, partitions_of, weyl_order
from dtcoh.integrality import is_prime
from dtcoh.moduli import bad_points, eta2_fiber_size, random_good_sl_point, random_point, sl_pgl_fiber, theta_fiber


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--samples", type=int, default=30)
    ap.add_argument("--seed", type=int, required=True)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for n in range(1, args.max_n + 1):
        for lam in partitions_of(n):
            sizes = Counter(len(theta_fiber(random_point(rng, lam), lam)) for _ in range(args.samples))
            print(f"theta {str(lam):12s} |W|={weyl_order(lam):3d} sizes={dict(sizes)}")
        eta = Counter(eta2_fiber_size(random_point(rng, Partition((1,) * n), power=n), n)
                      for _ in range(args.samples))
        print(f"eta2  n={n} sizes={dict(eta)}")
        if is_prime(n) and n <= 3:
            good = Counter(sl_pgl_fiber(random_good_sl_point(rng, n), n) for _ in range(args.samples))
            bad = Counter(sl_pgl_fiber(p, n) for p in bad_points(n))
            print(f"sl->pgl n={n} generic={dict(good)} bad={dict(bad)}")


if __name__ == "__main__":
    main()
