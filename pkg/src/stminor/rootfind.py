"""Global maxima of Chebyshev series on closed intervals.

Two routes are provided.  ``local_maxima`` is the fast float path used inside
the exchange loop: critical points come from the colleague-matrix roots of
the derivative, polished and cross-checked on a sign-change grid.
``certified_max`` isolates the critical points exactly with a Sturm chain
over the integers (binary64 coefficients are exact dyadic rationals), so the
only rounding left is in evaluating the series at a few points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from scipy.optimize import brentq

from .chebyshev import ChebSeries, eval_series, to_monomial, u_to_t

EXACT_DEGREE_CAP = 64


class RootIsolationError(RuntimeError):
    """Exact isolation unavailable; ``bound`` is a rigorous fallback upper bound."""

    def __init__(self, message: str, bound: float):
        super().__init__(message)
        self.bound = bound


# -- exact integer polynomials (coefficient lists, low degree first) -----------

def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _content(p: list) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return g or 1


def _primitive(p: list) -> list:
    g = _content(p)
    return [c // g for c in p]


def _to_integer_poly(coeffs) -> list:
    """Clear denominators of a rational coefficient list; result is primitive."""
    fr = [Fraction(c) for c in coeffs]
    den = 1
    for c in fr:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _primitive(_trim([int(c * den) for c in fr]))


def _derivative(p: list) -> list:
    return _trim([k * c for k, c in enumerate(p)][1:] or [0])


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    for _ in range(max(delta, 0)):
        if len(a) - 1 < db:
            a = [lb * c for c in a]
            continue
        lead = a[-1]
        shift = len(a) - 1 - db
        a = [lb * c for c in a]
        for i, c in enumerate(b):
            a[i + shift] -= lead * c
        a.pop()
        a = _trim(a) if a else [0]
    return _trim(a)


def sturm_chain(p: list) -> list:
    """Sturm sequence of an integer polynomial (primitive PRS, signs preserved)."""
    p = _primitive(_trim(list(p)))
    chain = [p, _primitive(_derivative(p))] if len(p) > 1 else [p]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = _prem(a, b)
        if r == [0]:
            break
        delta = len(a) - len(b) + 1
        if b[-1] < 0 and delta % 2 == 1:
            r = [-c for c in r]
        chain.append(_primitive([-c for c in r]))
    return chain


def _sign_at(p: list, x: Fraction) -> int:
    # homogeneous Horner: sign of sum c_k num^k den^(n-k)
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(p):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def _variations(chain: list, x: Fraction) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(chain: list, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi] (Sturm's theorem)."""
    return _variations(chain, lo) - _variations(chain, hi)


def isolate_roots(p: list, lo, hi, width: float | None = None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational brackets (l, r] each holding one distinct root in (lo, hi].

    Bisection stops as soon as a bracket holds a single root, unless
    ``width`` asks for narrower brackets.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if len(p) <= 1:
        return []
    chain = sturm_chain(p)
    out = []
    stack = [(lo, hi, count_roots(chain, lo, hi))]
    w = Fraction(width) if width is not None else None
    while stack:
        l, r, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and (w is None or r - l <= w):
            out.append((l, r))
            continue
        m = (l + r) / 2
        # keep dyadic endpoints short
        m = Fraction(round(m * 2**64), 2**64) if m.denominator > 2**64 else m
        if not (l < m < r):
            out.append((l, r))
            continue
        stack.append((m, r, count_roots(chain, m, r)))
        stack.append((l, m, count_roots(chain, l, m)))
    out.sort()
    return out


# -- float fast path --------------------------------------------------------------

def critical_points(s: ChebSeries, lo: float, hi: float) -> np.ndarray:
    """Float estimates of the derivative's real roots inside (lo, hi)."""
    if s.degree < 2 or hi <= lo:
        return np.empty(0)
    ct = u_to_t(s)
    d = npcheb.chebder(ct)
    pts = []
    if np.any(d != 0):
        r = npcheb.chebroots(d)
        scale = max(1.0, float(np.max(np.abs(r))) if r.size else 1.0)
        r = r[np.abs(r.imag) <= 1e-7 * scale].real
        pts.extend(r[(r > lo) & (r < hi)].tolist())
    # sign-change scan guards against eigenvalue misses near double roots
    grid = np.linspace(lo, hi, max(16, 8 * s.degree) + 1)
    dv = npcheb.chebval(grid, d)
    for i in np.nonzero(np.sign(dv[:-1]) * np.sign(dv[1:]) < 0)[0]:
        pts.append(brentq(lambda x: npcheb.chebval(x, d), grid[i], grid[i + 1], xtol=1e-15))
    if not pts:
        return np.empty(0)
    pts = np.unique(np.round(np.asarray(pts), 15))
    # Newton polish
    dd = npcheb.chebder(d)
    for _ in range(3):
        den = npcheb.chebval(pts, dd)
        step = np.where(den != 0, npcheb.chebval(pts, d) / np.where(den != 0, den, 1), 0.0)
        cand = pts - step
        pts = np.where((cand > lo) & (cand < hi) & np.isfinite(cand), cand, pts)
    return pts


def local_maxima(s: ChebSeries, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    """Candidate maximizers (endpoints and critical points) with their values."""
    pts = np.concatenate([[lo, hi], critical_points(s, lo, hi)])
    return pts, eval_series(s, pts)


def max_on_float(s: ChebSeries, lo: float, hi: float) -> tuple[float, float]:
    pts, vals = local_maxima(s, lo, hi)
    i = int(np.argmax(vals))
    return float(vals[i]), float(pts[i])


# -- certified path ---------------------------------------------------------------

def lipschitz_bound(s: ChebSeries, lo: float, hi: float, n: int = 4096) -> float:
    """Rigorous-up-to-rounding upper bound on max s over [lo, hi] from a grid.

    Uses |T_k'| <= k^2 on [-1, 1] for the derivative bound.
    """
    ct = u_to_t(s)
    k = np.arange(ct.size)
    lip = float(np.sum(np.abs(ct) * k * k))
    grid = np.linspace(lo, hi, n + 1)
    h = (hi - lo) / n
    vals = eval_series(s, grid)
    rounding = 1e-14 * float(np.sum(np.abs(s.coeffs)) * (s.degree + 1))
    return float(np.max(vals)) + lip * h / 2 + rounding


def _float_root(dcheb: np.ndarray, lo: float, hi: float) -> float:
    f = lambda x: npcheb.chebval(x, dcheb)
    flo, fhi = f(lo), f(hi)
    if flo * fhi < 0:
        return brentq(f, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps)
    # float noise hides the exact sign change; fall back to plain bisection
    a, b, sa = lo, hi, np.sign(flo) or 1.0
    for _ in range(80):
        m = 0.5 * (a + b)
        if np.sign(f(m)) == sa:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


@dataclass(frozen=True)
class CertifiedMax:
    value: float
    argmax: float
    n_critical: int


def certified_max(s: ChebSeries, lo: float, hi: float,
                  exact_cap: int = EXACT_DEGREE_CAP) -> CertifiedMax:
    """Global maximum of s on [lo, hi] with exactly isolated critical points."""
    lo, hi = float(lo), float(hi)
    if hi < lo:
        raise ValueError("empty interval")
    if hi == lo or s.degree <= 1:
        pts = np.array([lo, hi])
        vals = eval_series(s, pts)
        i = int(np.argmax(vals))
        return CertifiedMax(float(vals[i]), float(pts[i]), 0)
    if s.degree > exact_cap:
        raise RootIsolationError(
            f"degree {s.degree} above exact isolation cap {exact_cap}",
            lipschitz_bound(s, lo, hi))
    mono = to_monomial(s)
    dp = _to_integer_poly(mono.derivative().coeffs)
    brackets = isolate_roots(dp, Fraction(lo), Fraction(hi))
    dcheb = npcheb.chebder(u_to_t(s))
    cands = [lo, hi]
    for l, r in brackets:
        fl, fr = max(float(l), lo), min(float(r), hi)
        cands.extend([fl, fr])
        # one root per bracket: a sign change means a simple (or odd) root,
        # located in floats on the T-basis derivative; otherwise the series
        # is monotone through the bracket and its endpoints suffice
        if _sign_at(dp, Fraction(fl)) * _sign_at(dp, Fraction(fr)) < 0:
            cands.append(_float_root(dcheb, fl, fr))
    pts = np.array(cands)
    vals = eval_series(s, pts)
    i = int(np.argmax(vals))
    return CertifiedMax(float(vals[i]), float(pts[i]), len(brackets))
