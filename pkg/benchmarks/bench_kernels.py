"""Time the numba and numpy kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]

Each line reports the best of ``--repeat`` runs after one warm-up call, so
JIT compilation is not counted.
"""

import argparse
import time

from ternaryq import _kernels

CASES = [
    ("residue_mask  (1,1,10) mod 1024", _kernels.residue_mask, (1, 1, 10, 1024)),
    ("residue_mask  (3,5,7) mod 3^6 prim", _kernels.residue_mask, (3, 5, 7, 729, 3)),
    ("pair_table    (1,2) mod 2000", _kernels.pair_table, (1, 2, 2000)),
    ("first_solution (1,1,1) N=7 24/600", _kernels.first_solution, (1, 1, 1, 7, 24, 600)),
    ("first_solution (1,2,-5) N=3 24/200", _kernels.first_solution, (1, 2, -5, 3, 24, 200)),
    ("first_solution (2,6,15) N=1195 12/300", _kernels.first_solution, (2, 6, 15, 1195, 12, 300)),
]


def best_of(fn, args, backend, repeat):
    fn(*args, backend=backend)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args, backend=backend)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numba", "numpy"] if _kernels.HAS_NUMBA else ["numpy"]
    print(f"{'case':40s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn, a in CASES:
        ts = [best_of(fn, a, b, args.repeat) for b in backends]
        row = f"{name:40s}" + "".join(f"{t * 1e3:10.2f}ms" for t in ts)
        if len(ts) == 2:
            row += f"   {ts[1] / ts[0]:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
