"""Head-to-head timing of the two gluing-search kernels.

Runs the Mom-2 census and the smallest Mom-3 inventory on the
numba-compiled kernel and on the pure-Python/numpy reference path
(the one selected by MOMCENSUS_NO_NUMBA), and prints a table.

Usage: python benchmarks/bench_census.py [--repeat N] [--mom3]
       --mom3 adds the full Mom-3 census on the accelerated kernel only
       (the reference path would take hours there).
"""

import argparse
import time

from momcensus.census import census_inventory, polyhedron_inventories, run_census
from momcensus.census.kernels import backend_name


def time_inventory(inv, backend, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = census_inventory(inv, backend=backend)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--mom3", action="store_true",
                        help="also run the full Mom-3 census (accelerated only)")
    args = parser.parse_args()

    targets = polyhedron_inventories(2) + [polyhedron_inventories(3)[0]]
    print(f"default backend: {backend_name()}")
    print(f"{'inventory':<12} {'raw':>10} {'dedup':>6} {'numba (s)':>10} "
          f"{'numpy (s)':>10} {'speedup':>8}")

    # warm the jit once so compile time is not billed to the first row
    census_inventory(targets[0], backend="numba")

    for inv in targets:
        t_numba, r_numba = time_inventory(inv, "numba", args.repeat)
        t_numpy, r_numpy = time_inventory(inv, "numpy", args.repeat)
        assert r_numba.raw_count == r_numpy.raw_count
        assert r_numba.dedup_count == r_numpy.dedup_count
        speedup = t_numpy / t_numba if t_numba > 0 else float("inf")
        print(f"{inv.tag:<12} {r_numba.raw_count:>10} {r_numba.dedup_count:>6} "
              f"{t_numba:>10.4f} {t_numpy:>10.4f} {speedup:>7.1f}x")

    if args.mom3:
        start = time.perf_counter()
        res = run_census(3, backend="numba")
        elapsed = time.perf_counter() - start
        print(f"\nfull Mom-3 census (numba): raw={res.raw_count} "
              f"dedup={res.dedup_count} in {elapsed:.1f}s")


if __name__ == "__main__":
    main()
