"""Pure numpy versions of the compiled kernels in ``_core.pyx``."""

import numpy as np


def _legendre_table(p: int) -> np.ndarray:
    chi = np.full(p, -1, dtype=np.int8)
    x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    chi[(x * x) % p] = 1
    chi[0] = 0
    return chi


def ec_ap_many(a: int, b: int, primes) -> np.ndarray:
    """a_p = -sum_x legendre(x^3 + a x + b, p) for each odd prime p."""
    ps = np.asarray(primes, dtype=np.int64)
    out = np.zeros(ps.size, dtype=np.int64)
    for i, p in enumerate(ps.tolist()):
        if p < 3:
            raise ValueError("primes must be odd")
        x = np.arange(p, dtype=np.int64)
        f = ((x * x % p) * x + (a % p) * x + (b % p)) % p
        out[i] = -int(_legendre_table(p)[f].sum(dtype=np.int64))
    return out


def clenshaw_u(coeffs, t) -> np.ndarray:
    """sum_n c_n U_n(t) at each point of t."""
    c = np.asarray(coeffs, dtype=np.float64)
    x = 2.0 * np.asarray(t, dtype=np.float64)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for ck in c[::-1]:
        b1, b2 = ck + x * b1 - b2, b1
    return b1
