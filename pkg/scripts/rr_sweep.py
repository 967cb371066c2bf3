"""Riemann-Roch sweep over small weighted multigraphs.

    python3 scripts/rr_sweep.py                 # full sweep
    python3 scripts/rr_sweep.py --stride 8      # the CI smoke subset
"""

import argparse
import sys

from tropdiv.divisor import format_divisor
from tropdiv.io import serialize_graph
from tropdiv.sweeps import riemann_roch_sweep


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-edges", type=int, default=6)
    p.add_argument("--max-weight", type=int, default=2, help="bound on the total vertex weight")
    p.add_argument("--divisors", type=int, default=20, help="divisors per weighted graph")
    p.add_argument("--stride", type=int, default=1, help="check every n-th weighted graph")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    s = riemann_roch_sweep(
        args.max_vertices, args.max_edges, args.max_weight, args.divisors,
        seed=args.seed, stride=args.stride, progress=250,
    )
    print(f"weighted graphs:          {s.graphs}")
    print(f"divisors checked:         {s.checks}")
    print(f"Riemann-Roch failures:    {len(s.failures)}")
    print(f"deg >= 2g-1 divisors:     {s.riemann_checks}")
    print(f"r(D) != deg D - g:        {len(s.riemann_failures)}")
    print(f"time:                     {s.seconds:.1f}s")
    for GW, D, rep in (s.failures + s.riemann_failures)[:5]:
        print("---")
        print(serialize_graph(GW), end="")
        print(f"D = {format_divisor(D)}  {rep.as_dict()}")
    return 1 if s.failures or s.riemann_failures else 0


if __name__ == "__main__":
    sys.exit(main())
