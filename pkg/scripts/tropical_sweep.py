"""Tropical rank invariances and Riemann-Roch on random rational curves."""

import argparse
import sys
import time

from tropdiv.io import serialize_graph
from tropdiv.sweeps import tropical_invariance_sweep, tropical_rr_sweep, tropical_sample
from tropdiv.tropical import format_tropical_divisor


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--curves", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    sample = tropical_sample(args.curves, seed=args.seed)
    t0 = time.perf_counter()
    n, inv_bad = tropical_invariance_sweep(sample)
    t1 = time.perf_counter()
    _, rr_bad = tropical_rr_sweep(sample)
    t2 = time.perf_counter()
    print(f"curves:                   {n}")
    print(f"invariance disagreements: {len(inv_bad)}  ({t1 - t0:.1f}s)")
    print(f"Riemann-Roch failures:    {len(rr_bad)}  ({t2 - t1:.1f}s)")
    for c, D, name, r, v in inv_bad[:5]:
        print("---")
        print(serialize_graph(c), end="")
        print(f"D = {format_tropical_divisor(D)}: rank {r}, {name} gives {v}")
    return 1 if inv_bad or rr_bad else 0


if __name__ == "__main__":
    sys.exit(main())
