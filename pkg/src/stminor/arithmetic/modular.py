"""Ramanujan tau from the product q prod (1 - q^n)^24.

The main pipeline writes prod (1 - q^n) by Euler's pentagonal theorem and
raises it to the 24th power by four squarings and one product.  Each
product packs the series into one big integer (Kronecker substitution) so
the multiplication runs in GMP.  The oracle pipeline multiplies by the
sparse pentagonal series 23 times with plain integer arithmetic.
"""

from __future__ import annotations

import gmpy2
import numpy as np

DELTA_CAP = 10**6


class SeriesCapError(ValueError):
    pass


def pentagonal_series(n_terms: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) up to q^(n_terms - 1)."""
    out = [0] * n_terms
    k = 0
    while True:
        hit = False
        for g in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if g < n_terms:
                out[g] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def _slot_bytes(a: list[int], b: list[int]) -> int:
    amax = max((abs(c) for c in a), default=0)
    bmax = max((abs(c) for c in b), default=0)
    bound = min(len(a), len(b)) * amax * bmax
    bits = bound.bit_length() + 2  # one for sign, one of headroom
    return -(-bits // 8)


def _pack(coeffs: list[int], width: int) -> gmpy2.mpz:
    pos = b"".join((c if c > 0 else 0).to_bytes(width, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(width, "little") for c in coeffs)
    return gmpy2.mpz(int.from_bytes(pos, "little")) - gmpy2.mpz(int.from_bytes(neg, "little"))


def _unpack(value: gmpy2.mpz, width: int, n_terms: int) -> list[int]:
    sign = -1 if value < 0 else 1
    raw = int(abs(value)).to_bytes(max(n_terms * width, (int(abs(value)).bit_length() + 7) // 8),
                                   "little")
    base = 1 << (8 * width)
    half = base >> 1
    out = []
    carry = 0
    for i in range(n_terms):
        c = int.from_bytes(raw[i * width:(i + 1) * width], "little") + carry
        if c >= half:
            c -= base
            carry = 1
        else:
            carry = 0
        out.append(sign * c)
    return out


def kronecker_multiply(a: list[int], b: list[int], n_terms: int) -> list[int]:
    """First n_terms coefficients of the product of two integer series."""
    a, b = a[:n_terms], b[:n_terms]
    width = _slot_bytes(a, b)
    prod = _pack(a, width) * _pack(b, width)
    return _unpack(prod, width, n_terms)


def eta_power_24(n_terms: int) -> list[int]:
    """prod (1 - q^n)^24 to n_terms coefficients by repeated squaring."""
    p1 = pentagonal_series(n_terms)
    p2 = kronecker_multiply(p1, p1, n_terms)
    p4 = kronecker_multiply(p2, p2, n_terms)
    p8 = kronecker_multiply(p4, p4, n_terms)
    p16 = kronecker_multiply(p8, p8, n_terms)
    return kronecker_multiply(p16, p8, n_terms)


def eta_power_24_iterated(n_terms: int) -> list[int]:
    """Oracle: multiply by the sparse pentagonal series 23 times."""
    p1 = pentagonal_series(n_terms)
    support = [(i, c) for i, c in enumerate(p1) if c]
    acc = np.array(p1, dtype=object)
    for _ in range(23):
        nxt = np.zeros(n_terms, dtype=object)
        for shift, c in support:
            if c > 0:
                nxt[shift:] += acc[: n_terms - shift]
            else:
                nxt[shift:] -= acc[: n_terms - shift]
        acc = nxt
    return [int(v) for v in acc]


def tau_table(X: int, cap: int = DELTA_CAP, oracle: bool = False) -> list[int]:
    """tau(0..X) with tau(0) = 0."""
    if X < 1:
        raise ValueError("X must be positive")
    if X > cap:
        raise SeriesCapError(f"X = {X} exceeds the tau cap {cap}")
    series = eta_power_24_iterated(X) if oracle else eta_power_24(X)
    return [0] + series[:X]


def tau(n: int, cap: int = DELTA_CAP) -> int:
    return tau_table(n, cap)[n]
