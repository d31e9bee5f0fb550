"""Segmented sieve of Eratosthenes."""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

SEGMENT = 1 << 18


def _small_primes(n: int) -> np.ndarray:
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def iter_prime_segments(lo: int, hi: int, segment: int = SEGMENT) -> Iterator[np.ndarray]:
    """Primes in [lo, hi] as sorted int64 arrays, one per segment."""
    lo = max(lo, 2)
    if hi < lo:
        return
    base = _small_primes(math.isqrt(hi))
    start = lo
    while start <= hi:
        stop = min(start + segment - 1, hi)
        mark = np.ones(stop - start + 1, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > stop:
                break
            first = max(p * p, -(-start // p) * p)
            mark[first - start::p] = False
        if start < 2:
            mark[: 2 - start] = False
        yield np.nonzero(mark)[0].astype(np.int64) + start
        start = stop + 1


def primes_between(lo: int, hi: int) -> np.ndarray:
    parts = list(iter_prime_segments(lo, hi))
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)


def primes_up_to(n: int) -> np.ndarray:
    return primes_between(2, n)
