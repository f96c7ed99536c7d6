"""Torsion of the u_pm complexes over every nontrivial Levi of GL_n.

    python3 scripts/orientation_check.py --max-n 5 --samples 4 --seed 0
"""
import argparse
import random

from dtcoh.complexes import orientation_suite
from dtcoh.groups import partitions_of


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--samples", type=int, default=4)
    ap.add_argument("--seed", type=int, required=True)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    for n in range(2, args.max_n + 1):
        for lam in partitions_of(n):
            if lam.l == 1:
                continue
            values = orientation_suite(rng, lam, args.samples)
            bad += sum(v != 1 for v in values)
            print(f"{str(lam):12s} {' '.join(str(v) for v in values)}")
    print("all torsions equal 1" if not bad else f"{bad} torsions differ from 1")


if __name__ == "__main__":
    main()
