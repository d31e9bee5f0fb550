"""Explicit minorants: Selberg's arc minorant and the extreme-value family.

Selberg's construction works on the circle.  With x = theta / (2 pi), the
indicator of an arc [u1, u2] is (u2 - u1) + psi(x - u2) + psi(u1 - x) where
psi is the sawtooth.  Replacing psi by Vaaler's polynomial and subtracting
the Fejer kernel error term gives a trigonometric polynomial of degree K
below the indicator.  A symmetric pair of arcs [alpha, beta] and
[-beta, -alpha] (alpha = arccos b, beta = arccos a) has only cosine terms,
so t = cos theta turns it into a polynomial in t.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .chebyshev import MonomialPoly, catalan, cos_to_u, from_monomial
from .measure import IntervalSet, mu_st
from .minorant import (DEFAULT_TOL, MinorantCertificate, Status,
                       certificate_from_series)


def vaaler_coefficients(K: int) -> np.ndarray:
    """v_1..v_K with sum v_k sin(2 pi k y) Vaaler's approximation to the sawtooth."""
    k = np.arange(1, K + 1)
    u = k / (K + 1)
    f = np.pi * u * (1 - u) / np.tan(np.pi * u) + u
    return -f / (np.pi * k)


def arc_cosine_coefficients(u1: float, u2: float, K: int) -> np.ndarray:
    """Cosine coefficients c_0..c_K of the Selberg minorant of the arc [u1, u2].

    Only the even part is returned; the sine terms cancel for the symmetric
    configurations used here.
    """
    k = np.arange(1, K + 1)
    v = vaaler_coefficients(K)
    w = 1.0 - k / (K + 1)
    c = np.empty(K + 1)
    c[0] = (u2 - u1) - 1.0 / (K + 1)
    c[1:] = (v * (np.sin(2 * np.pi * k * u1) - np.sin(2 * np.pi * k * u2))
             - w / (K + 1) * (np.cos(2 * np.pi * k * u2) + np.cos(2 * np.pi * k * u1)))
    return c


def selberg_cosine_coefficients(a: float, b: float, K: int) -> np.ndarray:
    """Cosine coefficients of the minorant of 1_[a,b](cos theta), degree K."""
    alpha, beta = math.acos(b), math.acos(a)
    if b >= 1.0:
        # one arc [-beta, beta] centred at theta = 0
        return arc_cosine_coefficients(-beta / (2 * math.pi), beta / (2 * math.pi), K)
    if a <= -1.0:
        # one arc [alpha, 2 pi - alpha] centred at theta = pi
        return arc_cosine_coefficients(alpha / (2 * math.pi), 1 - alpha / (2 * math.pi), K)
    return 2.0 * arc_cosine_coefficients(alpha / (2 * math.pi), beta / (2 * math.pi), K)


def selberg_minorant(I: IntervalSet, N: int, tol: float = DEFAULT_TOL) -> MinorantCertificate:
    """Degree-N Selberg minorant of a single interval, verified and shifted if needed."""
    if len(I) != 1:
        raise ValueError("selberg_minorant needs a single interval")
    if N < 1:
        raise ValueError("N must be at least 1")
    (a, b), = I.intervals
    if a >= b:
        raise ValueError(f"degenerate arc for interval [{a}, {b}]")
    if a <= -1.0 and b >= 1.0:
        return certificate_from_series(cos_to_u([1.0] + [0.0] * N), I, tol)
    s = cos_to_u(selberg_cosine_coefficients(a, b, N))
    return certificate_from_series(s, I, tol)


def selberg_degree(mu: float, delta: float) -> int:
    """Smallest N with N >= 4 (1 + delta) / mu - 1."""
    return max(1, math.ceil(4 * (1 + delta) / mu - 1 - 1e-12))


def selberg_B_bound(mu: float, delta: float) -> float:
    return (2 + 3 / delta) / mu


def extreme_integral(n: int, a) -> Fraction:
    """Exact Sato-Tate integral of (x^2 - a^2) x^(2n-2) for rational a."""
    a = Fraction(a)
    m = Fraction(catalan(n - 1), 4 ** (n - 1))
    return m * (1 - a * a - Fraction(3, 2 * (n + 1)))


def extreme_threshold(n: int) -> float:
    """The a where the extreme-value integral changes sign."""
    return math.sqrt(1 - 1.5 / (n + 1))


def extreme_polynomial(n: int, a) -> MonomialPoly:
    a = Fraction(a)
    coeffs = [Fraction(0)] * (2 * n + 1)
    coeffs[2 * n] = Fraction(1)
    coeffs[2 * n - 2] = -a * a
    return MonomialPoly(coeffs)


def extreme_minorant(n: int, a: float, verify: bool = False,
                     tol: float = DEFAULT_TOL) -> MinorantCertificate:
    """f(x) = (x^2 - a^2) x^(2n-2) as a minorant of [-1, -a] u [a, 1].

    On [-1, 1] the polynomial is at most 1 - a^2 <= 1 and it is <= 0 on
    [-a, a], so it needs no rescaling.  The status follows the sign of the
    exact integral; ``verify`` adds a certified slack.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= a < 1:
        raise ValueError("a must lie in [0, 1)")
    I = IntervalSet.of([(-1.0, -a), (a, 1.0)])
    s = from_monomial(extreme_polynomial(n, a))
    exact = extreme_integral(n, a)
    b0 = float(s.coeffs[0])
    slack = math.nan
    if verify:
        slack = certificate_from_series(s, I, tol, shift=False).worst_slack
    feasible = exact > 0
    return MinorantCertificate(
        series=s, b0=b0, B=float(np.max(np.abs(s.coeffs)) / b0) if feasible else None,
        worst_slack=slack, target=I, N=2 * n,
        status=Status.FEASIBLE if feasible else Status.INFEASIBLE, tol=tol,
        reason=None if feasible else "integral_nonpositive")


def symmetric_interval_with_measure(mu: float) -> IntervalSet:
    """[-s, s] with Sato-Tate measure mu."""
    from scipy.optimize import brentq

    if not 0 < mu <= 1:
        raise ValueError("mu must lie in (0, 1]")
    if mu == 1:
        return IntervalSet.full()
    s = brentq(lambda x: mu_st(IntervalSet.of([(-x, x)])) - mu, 0.0, 1.0, xtol=1e-15)
    return IntervalSet.of([(-s, s)])
