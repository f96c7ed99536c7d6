"""Tabulate the integrality check for GL and the additive variant.

    python3 scripts/run_integrality.py --max-n 6 --min-deg -12 --max-deg 30
"""
import argparse
import time

from dtcoh.groups import Kind
from dtcoh.integrality import verify_integrality
from dtcoh.molien import Parity


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--min-deg", type=int, default=-12)
    ap.add_argument("--max-deg", type=int, default=30)
    args = ap.parse_args()
    window = (args.min_deg, args.max_deg)
    for kind in (Kind.GL, Kind.GL_ADD):
        for parity in Parity:
            start = time.perf_counter()
            report = verify_integrality(kind, args.max_n, window, parity)
            elapsed = time.perf_counter() - start
            print(f"{kind.value:7s} {parity.value:9s} ok={report.ok} ({elapsed:.2f}s)")
            for r in report.results:
                print(f"  n={r.n}: {r.levi_sum.truncate(2 - 2 * r.n).to_text()}")


if __name__ == "__main__":
    main()
