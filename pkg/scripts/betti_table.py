"""Print minimal generator counts by degree (first Betti column) for a range of d.

    python scripts/betti_table.py --dmin 4 --dmax 12 --max-degree 4
"""

import argparse
import time

from gtlattice.gtsystem import derive_params, enumerate_wd
from gtlattice.markov import minimal_generators


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dmin", type=int, default=4)
    ap.add_argument("--dmax", type=int, default=10)
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    degrees = range(2, args.max_degree + 1)
    print("d   mu  " + "  ".join(f"deg{n:<3}" for n in degrees) + "  seconds")
    for d in range(args.dmin, args.dmax + 1):
        p = derive_params(d)
        t = time.perf_counter()
        gens = minimal_generators(p, args.max_degree)
        cells = "  ".join(f"{len(gens[n]):<6}" for n in degrees)
        print(f"{d:<3} {len(enumerate_wd(p)):<4}{cells}  {time.perf_counter() - t:.2f}")


if __name__ == "__main__":
    main()
