"""Compiled vs pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 1]

Times the brute-force 2-adic scan and the Berlekamp-Massey profile on random
inputs with both backends and checks that their outputs agree.
"""

import argparse
import random
import sys
import timeit

from twoadic import _kernels_py as py

try:
    from twoadic import _kernels as cy
except ImportError:
    cy = None


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1
    rng = random.Random(args.seed)
    rows = []
    for n in (16, 24, 32, 40, 44):
        x = rng.getrandbits(n)
        assert cy.adic_scan(x, n) == py.adic_scan(x, n)
        rows.append((f"adic_scan N={n}", bench(py.adic_scan, (x, n), args.repeat),
                     bench(cy.adic_scan, (x, n), args.repeat)))
    for n in (1000, 4096, 16384):
        bits = [rng.getrandbits(1) for _ in range(n)]
        assert cy.bm_profile(bits) == py.bm_profile(bits)
        rows.append((f"bm_profile len={n}", bench(py.bm_profile, (bits,), args.repeat),
                     bench(cy.bm_profile, (bits,), args.repeat)))
    print(f"{'kernel':<22}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, tp, tc in rows:
        print(f"{name:<22}{tp:>12.5f}{tc:>12.5f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
