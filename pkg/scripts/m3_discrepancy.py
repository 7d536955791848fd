"""Compare quadric-obstructed degree-3 fibers with the listed M_3 family for odd d.

    python scripts/m3_discrepancy.py 5 7 9 11
"""

import sys

from gtlattice.binomials import render_monomial
from gtlattice.gtsystem import derive_params
from gtlattice.markov import verify_main_theorem


def main(ds):
    for d in ds:
        r = verify_main_theorem(derive_params(d), 3)
        deg3 = r.degrees[0]
        extra = r.obstructed_fibers_without_m3
        print(f"d={d}: {len(deg3.disconnected)} obstructed fibers, |M_3| = {len(r.m3)}, "
              f"{len(extra)} obstructed fibers without an M_3 member")
        for f in extra:
            print("   ", tuple(f.multidegree), ", ".join(render_monomial(m) for m in f.representatives))
        missing = r.m3_not_isolated
        if missing:
            print("    listed but connected:", ", ".join(render_monomial(m) for m in sorted(missing)))


if __name__ == "__main__":
    main([int(a) for a in sys.argv[1:]] or [5, 7, 9, 11])
