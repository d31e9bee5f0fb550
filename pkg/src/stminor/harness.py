"""Empirical Sato-Tate checks on angle data.

Log-weighted prime counts are accumulated exactly: every binary64 log p
below 2^10 is an integer multiple of 2^-53, so the sums are kept as integers
in those units and only rounded for display.  Partition sums therefore add
up to the undivided sum exactly.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .arithmetic.angles import AngleSet, symn_lambda
from .chebyshev import eval_series
from .measure import IntervalSet, indicator, mu_st
from .minorant import MinorantCertificate

UNIT_BITS = 53


class IncompleteRangeError(ValueError):
    pass


def _log_units(p: np.ndarray) -> np.ndarray:
    # exact: scaling by a power of two, and log p < 2^10 keeps values below 2^63
    return np.ldexp(np.log(p.astype(float)), UNIT_BITS).astype(np.int64)


def _exact_sum(units: np.ndarray) -> int:
    hi = (units >> 32).sum(dtype=np.int64)
    lo = (units & 0xFFFFFFFF).sum(dtype=np.int64)
    return (int(hi) << 32) + int(lo)


def _from_units(u: int) -> float:
    return u / (1 << UNIT_BITS)


@dataclass(frozen=True)
class IntervalCountReport:
    I: IntervalSet
    x: float
    h: float
    weighted_count: float
    expected: float
    minorant_floor: float | None
    ratio: float | None
    prime_mass: float
    n_primes: int
    count_units: int
    mass_units: int
    minorant_sum: float | None = None
    flag: bool = False

    def to_dict(self) -> dict:
        return {
            "interval_set": str(self.I),
            "x": self.x,
            "h": self.h,
            "weighted_count": self.weighted_count,
            "expected": self.expected,
            "minorant_floor": self.minorant_floor,
            "floor_label": "asymptotic target (o(1) dropped)",
            "ratio": self.ratio,
            "prime_mass": self.prime_mass,
            "n_primes": self.n_primes,
            "minorant_sum": self.minorant_sum,
            "flag": self.flag,
        }


def _window(data: AngleSet, x: float, h: float, limit: int | None):
    if not (x >= 2 and 0 < h <= x):
        raise ValueError("need x >= 2 and 0 < h <= x")
    top = limit if limit is not None else getattr(data, "limit", data.max_p)
    if x + h > top:
        raise IncompleteRangeError(
            f"window ({x:g}, {x + h:g}] exceeds data range p <= {top}")
    lo = np.searchsorted(data.p, x, side="right")
    hi = np.searchsorted(data.p, x + h, side="right")
    sl = slice(lo, hi)
    good = ~data.ramified[sl]
    return data.p[sl][good], data.cos_theta[sl][good]


def minorant_sum(cert: MinorantCertificate, cos_theta: np.ndarray, p: np.ndarray) -> float:
    """sum_p (sum_n b_n U_n(cos theta_p)) log p, sequentially in the order of p."""
    vals = eval_series(cert.series, cos_theta) * np.log(p.astype(float))
    return float(np.cumsum(vals)[-1]) if vals.size else 0.0


def indicator_sum(I: IntervalSet, cos_theta: np.ndarray, p: np.ndarray) -> float:
    """The same sequential float sum with the indicator in place of the minorant."""
    vals = indicator(I, cos_theta).astype(float) * np.log(p.astype(float))
    return float(np.cumsum(vals)[-1]) if vals.size else 0.0


def short_interval_count(data: AngleSet, I: IntervalSet, x: float, h: float,
                         certificate: MinorantCertificate | None = None,
                         limit: int | None = None) -> IntervalCountReport:
    p, c = _window(data, x, h, limit)
    units = _log_units(p)
    ind = indicator(I, c).astype(bool)
    count_u = _exact_sum(units[ind])
    mass_u = _exact_sum(units)
    count = _from_units(count_u)
    mass = _from_units(mass_u)
    expected = mu_st(I) * mass
    ratio = count / expected if expected > 0 else None
    floor = msum = None
    flag = False
    if certificate is not None:
        floor = certificate.b0 * h / 2.0
        msum = minorant_sum(certificate, c, p)
        flag = count < floor
    return IntervalCountReport(I, float(x), float(h), count, expected, floor, ratio,
                               mass, int(p.size), count_u, mass_u, msum, flag)


def chebyshev_moment_test(data: AngleSet, n_max: int, x: float) -> list[float]:
    """Log-weighted means of U_n(cos theta_p) over good p <= x, n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    sel = (data.p <= x) & ~data.ramified
    p, c = data.p[sel], data.cos_theta[sel]
    if p.size == 0:
        raise IncompleteRangeError(f"no good primes up to {x:g}")
    w = np.log(p.astype(float))
    total = float(np.cumsum(w)[-1])
    out = []
    for n in range(1, n_max + 1):
        u = np.atleast_1d(symn_lambda(n, 1, c))
        out.append(float(np.cumsum(u * w)[-1]) / total)
    return out


def least_prime_in_interval(data: AngleSet, I: IntervalSet) -> dict:
    """Smallest good p with cos theta_p in I, or None with the searched range."""
    good = ~data.ramified
    hit = good & indicator(I, data.cos_theta).astype(bool)
    idx = np.nonzero(hit)[0]
    p = int(data.p[idx[0]]) if idx.size else None
    return {"interval_set": str(I), "p": p, "searched_up_to": data.max_p,
            "log_p": math.log(p) if p else None}


def hoheisel_scan(data: AngleSet, I: IntervalSet, x0: float, delta: float, steps: int,
                  certificate: MinorantCertificate | None = None, growth: float = 2.0,
                  limit: int | None = None) -> list[IntervalCountReport]:
    """Windows (x, x + x^(1-delta)] at x = x0 * growth^k, k < steps."""
    if not 0 <= delta < 1:
        raise ValueError("delta must lie in [0, 1)")
    if steps < 1 or growth <= 1:
        raise ValueError("need steps >= 1 and growth > 1")
    out = []
    for k in range(steps):
        x = x0 * growth ** k
        h = x ** (1.0 - delta)
        out.append(short_interval_count(data, I, x, h, certificate, limit))
    return out


def reports_to_csv(reports: list[IntervalCountReport]) -> str:
    buf = io.StringIO()
    buf.write("x,h,count,expected,floor,ratio,flag\n")
    for r in reports:
        floor = "" if r.minorant_floor is None else repr(r.minorant_floor)
        ratio = "" if r.ratio is None else repr(r.ratio)
        buf.write(f"{r.x!r},{r.h!r},{r.weighted_count!r},{r.expected!r},"
                  f"{floor},{ratio},{int(r.flag)}\n")
    return buf.getvalue()


def reports_to_json(reports: list[IntervalCountReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], sort_keys=True)
