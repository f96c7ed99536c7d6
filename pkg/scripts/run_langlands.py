"""Compare SL_n with PGL_n, with and without the twisted components.

    python3 scripts/run_langlands.py --primes 2,3,5,7
"""
import argparse

from dtcoh.groups import Kind
from dtcoh.integrality import dt_cohomology, langlands_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="2,3,5,7")
    ap.add_argument("--max-deg", type=int, default=30)
    args = ap.parse_args()
    for n in (int(p) for p in args.primes.split(",")):
        res = langlands_check(n, (-12, args.max_deg))
        sl = dt_cohomology(Kind.SL, n, 4)
        print(f"n={n}: equal={res.equal} twisted difference ok={res.twisted_difference_ok}")
        print(f"  SL_{n}: {sl.to_text()}")


if __name__ == "__main__":
    main()
