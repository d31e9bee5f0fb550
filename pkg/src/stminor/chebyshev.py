"""Chebyshev polynomials of the second kind and Sato-Tate integrals.

The U_n are orthonormal for the Sato-Tate measure (2/pi) sqrt(1 - t^2) dt,
so the Sato-Tate integral of a series sum b_n U_n is just b_0.  Series are
stored as float64 arrays; basis changes to and from the power basis are
carried out in exact rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels

DEGREE_CAP = 1024


class DegreeError(ValueError):
    """Raised when a polynomial exceeds the supported degree."""


def _check_degree(n: int, cap: int = DEGREE_CAP) -> None:
    if n > cap:
        raise DegreeError(f"degree {n} exceeds cap {cap}")


class ChebSeries:
    """Immutable series sum_{n=0}^{N} b_n U_n(t)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[float]):
        arr = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                       dtype=float).ravel()
        if arr.size == 0:
            arr = np.zeros(1)
        _check_degree(arr.size - 1)
        arr.setflags(write=False)
        self._coeffs = arr

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.size - 1

    def __len__(self) -> int:
        return self._coeffs.size

    def __repr__(self) -> str:
        return f"ChebSeries({self._coeffs.tolist()!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChebSeries):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self) -> int:
        return hash(self._coeffs.tobytes())

    def __call__(self, t):
        return eval_series(self, t)

    def __add__(self, other: "ChebSeries") -> "ChebSeries":
        n = max(len(self), len(other))
        out = np.zeros(n)
        out[: len(self)] += self._coeffs
        out[: len(other)] += other._coeffs
        return ChebSeries(out)

    def __sub__(self, other: "ChebSeries") -> "ChebSeries":
        return self + (-other)

    def __neg__(self) -> "ChebSeries":
        return ChebSeries(-self._coeffs)

    def __mul__(self, scalar: float) -> "ChebSeries":
        return ChebSeries(self._coeffs * float(scalar))

    __rmul__ = __mul__

    def trim(self, tol: float = 1e-14) -> "ChebSeries":
        """Drop trailing coefficients with |b_n| <= tol * max|b|."""
        c = self._coeffs
        scale = float(np.max(np.abs(c))) if c.size else 0.0
        if scale == 0.0:
            return ChebSeries([0.0])
        keep = np.nonzero(np.abs(c) > tol * scale)[0]
        return ChebSeries(c[: keep[-1] + 1])

    def shift_constant(self, delta: float) -> "ChebSeries":
        """Return the series plus delta * U_0."""
        c = self._coeffs.copy()
        c[0] += delta
        return ChebSeries(c)

    def product(self, other: "ChebSeries") -> "ChebSeries":
        """Exact-structure product via the U linearization identity."""
        out = np.zeros(self.degree + other.degree + 1)
        for m, bm in enumerate(self._coeffs):
            if bm == 0.0:
                continue
            for n, bn in enumerate(other._coeffs):
                if bn == 0.0:
                    continue
                lo = abs(m - n)
                out[lo : m + n + 1 : 2] += bm * bn
        return ChebSeries(out)


class MonomialPoly:
    """Power-basis polynomial sum a_k x^k with exact rational coefficients.

    Floats are converted exactly, so a MonomialPoly built from binary64 data
    carries no rounding error of its own.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        _check_degree(len(cs) - 1)
        self._coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Sequence, scale=1) -> "MonomialPoly":
        coeffs = [Fraction(scale)]
        for r in roots:
            r = Fraction(r)
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k + 1] += c
                nxt[k] -= r * c
            coeffs = nxt
        return cls(coeffs)

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __repr__(self) -> str:
        return f"MonomialPoly({[float(c) for c in self._coeffs]!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __mul__(self, other: "MonomialPoly") -> "MonomialPoly":
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self._coeffs):
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return MonomialPoly(out)

    def __neg__(self) -> "MonomialPoly":
        return MonomialPoly([-c for c in self._coeffs])

    def derivative(self) -> "MonomialPoly":
        return MonomialPoly([k * c for k, c in enumerate(self._coeffs)][1:] or [0])

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self._coeffs])

    def eval_exact(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in reversed(self.float_coeffs()):
            acc = acc * x + c
        return acc if acc.ndim else float(acc)


def eval_U(n: int, t):
    """U_n(t) by the three-term recurrence.  Values of |t| > 1 extrapolate."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = np.asarray(t, dtype=float)
    prev = np.zeros_like(t)
    cur = np.ones_like(t)
    for _ in range(n):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur if cur.ndim else float(cur)


def eval_series(s: ChebSeries, t):
    """Evaluate sum b_n U_n(t) with Clenshaw's backward recurrence."""
    t_arr = np.asarray(t, dtype=float)
    out = kernels.clenshaw_u(s.coeffs, np.ascontiguousarray(t_arr.ravel()))
    if t_arr.ndim == 0:
        return float(out[0])
    return out.reshape(t_arr.shape)


def u_product(m: int, n: int) -> ChebSeries:
    """U_m U_n = sum_{k=0}^{min(m,n)} U_{m+n-2k}."""
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    out = np.zeros(m + n + 1)
    out[abs(m - n) : m + n + 1 : 2] = 1.0
    return ChebSeries(out)


def st_inner(m: int, n: int) -> int:
    """Sato-Tate inner product of U_m and U_n."""
    return 1 if m == n else 0


def st_integral(s: ChebSeries) -> float:
    """Sato-Tate integral of a series, which is its U_0 coefficient."""
    return float(s.coeffs[0])


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def st_moment(m: int) -> Fraction:
    """Integral of x^(2m) against the Sato-Tate measure: Catalan(m) / 4^m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return Fraction(catalan(m), 4**m)


def st_power_integral(k: int) -> Fraction:
    """Integral of x^k; odd powers vanish by symmetry."""
    return Fraction(0) if k % 2 else st_moment(k // 2)


@lru_cache(maxsize=None)
def _u_monomial(n: int) -> tuple:
    """Integer power-basis coefficients of U_n."""
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 2)
    a, b = _u_monomial(n - 2), _u_monomial(n - 1)
    out = [0] * (n + 1)
    for k, c in enumerate(b):
        out[k + 1] += 2 * c
    for k, c in enumerate(a):
        out[k] -= c
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_u(k: int) -> tuple:
    """x^k in the U basis, as (index, Fraction) pairs."""
    den = 2**k
    terms = []
    for j in range(k // 2 + 1):
        num = math.comb(k, j) - (math.comb(k, j - 1) if j else 0)
        if num:
            terms.append((k - 2 * j, Fraction(num, den)))
    return tuple(terms)


def to_monomial(s: ChebSeries, cap: int = DEGREE_CAP) -> MonomialPoly:
    _check_degree(s.degree, cap)
    out = [Fraction(0)] * (s.degree + 1)
    for n, b in enumerate(s.coeffs):
        if b == 0.0:
            continue
        fb = Fraction(float(b))
        for k, c in enumerate(_u_monomial(n)):
            if c:
                out[k] += fb * c
    return MonomialPoly(out)


def from_monomial(p: MonomialPoly, cap: int = DEGREE_CAP) -> ChebSeries:
    _check_degree(p.degree, cap)
    out = [Fraction(0)] * (p.degree + 1)
    for k, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, c in _monomial_u(k):
            out[j] += a * c
    return ChebSeries([float(c) for c in out])


def t_to_u(k: int) -> ChebSeries:
    """T_k (that is cos k theta) in the U basis."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return ChebSeries([1.0])
    out = np.zeros(k + 1)
    if k == 1:
        out[1] = 0.5
    else:
        out[k] = 0.5
        out[k - 2] = -0.5
    return ChebSeries(out)


def cos_to_u(c: Sequence[float]) -> ChebSeries:
    """Convert sum_k c_k T_k to the U basis."""
    c = np.asarray(c, dtype=float)
    out = np.zeros(max(c.size, 1))
    for k, ck in enumerate(c):
        if k == 0:
            out[0] += ck
        elif k == 1:
            out[1] += ck / 2
        else:
            out[k] += ck / 2
            out[k - 2] -= ck / 2
    return ChebSeries(out)


def u_to_t(s: ChebSeries) -> np.ndarray:
    """T-basis coefficients of a U series: U_n = 2 sum T_{n-2j}, T_0 once."""
    b = s.coeffs
    c = np.zeros(b.size)
    for parity in (0, 1):
        tail = np.cumsum(b[parity::2][::-1])[::-1]
        c[parity::2] = 2.0 * tail
    c[0] /= 2.0
    return c


def gauss_nodes(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule for the Sato-Tate measure with m nodes, exact to degree 2m-1."""
    k = np.arange(1, m + 1)
    ang = k * np.pi / (m + 1)
    return np.cos(ang), 2.0 / (m + 1) * np.sin(ang) ** 2


def st_quad(f: Callable[[np.ndarray], np.ndarray], n0: int = 16,
            tol: float = 1e-12, max_nodes: int = 1 << 20) -> float:
    """Integrate f against the Sato-Tate measure, doubling nodes until stable."""
    m = max(n0, 1)
    x, w = gauss_nodes(m)
    prev = float(np.dot(w, f(x)))
    while m < max_nodes:
        m *= 2
        x, w = gauss_nodes(m)
        cur = float(np.dot(w, f(x)))
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    return prev


def st_quad_series(s: ChebSeries) -> float:
    """Quadrature of a series with 4(N+1) starting nodes."""
    return st_quad(lambda x: eval_series(s, x), n0=4 * (s.degree + 1))
