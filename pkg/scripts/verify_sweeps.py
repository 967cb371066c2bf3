"""Run the remaining combinatorial checks and print a one-line summary each."""

import sys
import time

from tropdiv import sweeps

CHECKS = [
    ("Jacobian order vs spanning trees", sweeps.jacobian_sweep),
    ("q-reduction vs Smith-form membership", sweeps.equivalence_sweep),
    ("rank under loop refinement", sweeps.loop_refinement_sweep),
    ("rank under uniform subdivision", sweeps.uniform_subdivision_sweep),
    ("rank under two-sided wedge subdivision", sweeps.wedge_subdivision_sweep),
    ("cut-vertex inequalities", sweeps.cut_vertex_sweep),
]


def main():
    failed = 0
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        n, bad = fn()
        failed += bool(bad)
        print(f"{name:42s} {len(bad):4d} failures / {n:6d}  ({time.perf_counter() - t0:.1f}s)")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
