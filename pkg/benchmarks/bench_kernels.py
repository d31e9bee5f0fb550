"""Compiled vs pure-numpy kernels.

    python benchmarks/bench_kernels.py [--limit 50000] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from stminor import _core_py
from stminor.arithmetic import primes_up_to

try:
    from stminor import _core
except ImportError:  # extension not built
    _core = None


def bench(name, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {name:<10} {best * 1e3:10.2f} ms")
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=int, default=50000, help="primes up to this for ec_ap")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    ps = primes_up_to(args.limit)[1:]
    rng = np.random.default_rng(0)
    coeffs = rng.normal(size=65)
    t = rng.uniform(-1, 1, 10**6)

    cases = [
        (f"ec_ap_many, {ps.size} primes <= {args.limit}", "ec_ap_many", (1, 1, ps)),
        ("clenshaw_u, degree 64 at 10^6 points", "clenshaw_u", (coeffs, t)),
    ]
    for title, fname, fargs in cases:
        print(title)
        py = bench("python", lambda: getattr(_core_py, fname)(*fargs), args.repeat)
        if _core is None:
            print("  compiled   (not built)")
            continue
        cy = bench("compiled", lambda: getattr(_core, fname)(*fargs), args.repeat)
        same = np.allclose(getattr(_core, fname)(*fargs), getattr(_core_py, fname)(*fargs))
        print(f"  speedup    {py / cy:10.1f}x   outputs agree: {same}")


if __name__ == "__main__":
    main()
