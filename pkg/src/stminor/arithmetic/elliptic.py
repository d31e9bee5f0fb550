"""Frobenius traces of y^2 = x^3 + a x + b by Legendre-symbol sums."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .. import kernels


def discriminant(a: int, b: int) -> int:
    return -16 * (4 * a**3 + 27 * b**2)


def is_bad_prime(a: int, b: int, p: int) -> bool:
    """Conservative flag: p divides 2 * disc."""
    return (2 * discriminant(a, b)) % p == 0


def ec_ap(a: int, b: int, p: int) -> int | None:
    """a_p = p + 1 - #E(F_p); None at flagged primes."""
    if is_bad_prime(a, b, p):
        return None
    return int(kernels.ec_ap_many(a, b, [p])[0])


def ec_ap_array(a: int, b: int, primes: np.ndarray, threads: int = 1,
                chunks: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Traces for many primes and the bad-prime mask (traces there are 0).

    Work is split into contiguous chunks; results are written back by
    position, so the output does not depend on ``threads``.
    """
    primes = np.asarray(primes, dtype=np.int64)
    d2 = 2 * discriminant(a, b)
    if d2 == 0:
        raise ValueError(f"singular curve y^2 = x^3 + {a}x + {b}")
    bad = np.array([d2 % int(p) == 0 for p in primes], dtype=bool)
    good = primes[~bad]
    out = np.zeros(primes.size, dtype=np.int64)
    if good.size:
        # interleave so chunks carry similar work
        order = np.argsort(np.arange(good.size) % chunks, kind="stable")
        parts = np.array_split(order, min(chunks, good.size))
        res = np.zeros(good.size, dtype=np.int64)

        def run(idx):
            res[idx] = kernels.ec_ap_many(a, b, good[idx])

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                list(pool.map(run, parts))
        else:
            for idx in parts:
                run(idx)
        out[~bad] = res
    return out, bad


def ec_ap_bruteforce(a: int, b: int, p: int) -> int:
    """Oracle: count (x, y) pairs on the affine curve directly."""
    x = np.arange(p, dtype=np.int64)
    rhs = (x * x % p * x + a * x + b) % p
    sq = (x * x) % p
    counts = np.bincount(sq, minlength=p)
    affine = int(counts[rhs].sum())
    return p + 1 - (affine + 1)
