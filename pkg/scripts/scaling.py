"""Time the decomposition check on decomposable instances of growing size."""
import argparse
import time

from periodic_rigidity.characterize import theorem2_check
from periodic_rigidity.generate import decomposable_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--sizes", type=int, nargs="+", default=[125, 250, 500, 1000])
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'n':>6} {'m':>7} {'verdict':>16} {'seconds':>8}")
    for n in args.sizes:
        g = decomposable_instance(args.d, n, args.seed).graph
        t0 = time.perf_counter()
        rep = theorem2_check(g)
        print(f"{n:>6} {g.m:>7} {rep.verdict:>16} {time.perf_counter() - t0:>8.2f}")


if __name__ == "__main__":
    main()
