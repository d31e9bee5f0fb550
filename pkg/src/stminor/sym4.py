"""Closed-form classification of the intervals with a degree-4 minorant.

The plane a <= b splits by a into five regions with breakpoints -1,
-beta0, -beta1, beta1, beta0.  Each region has a threshold curve in b and
an explicit quartic F(x) that is positive on [-1, 1] only inside [a, b];
its Sato-Tate integral is positive exactly above the curve.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.stats import qmc

from .chebyshev import MonomialPoly, from_monomial, st_integral
from .measure import IntervalSet, mu_st, st_cdf

SQRT7 = math.sqrt(7.0)
BETA0 = (1.0 + SQRT7) / 6.0
BETA1 = (SQRT7 - 1.0) / 6.0
GUARD = 1e-14
EDGE_FACTOR = (14.0 + SQRT7) / 36.0


@dataclass(frozen=True)
class Sym4Verdict:
    a: float
    b: float
    minorizable: bool
    case_id: int | None
    threshold_b: float | None
    certificate: MonomialPoly | None = None
    certificate_b0: float | None = None

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "minorizable": self.minorizable,
            "case": self.case_id,
            "threshold_b": self.threshold_b,
            "certificate_coeffs": (None if self.certificate is None
                                   else [float(c) for c in self.certificate.coeffs]),
            "certificate_b0": self.certificate_b0,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _quartic_threshold(a):
    """Threshold of the two regions whose certificate has a double root off [a, b]."""
    a = np.asarray(a, dtype=float)
    return (a + np.sqrt(16 * a**4 - 11 * a**2 + 2)) / (2 * (1 - 4 * a**2))


def case_of(a: float) -> int | None:
    """Region index for the left endpoint; None when a >= beta0."""
    if a <= -1.0:
        return 1
    if a <= -BETA0:
        return 2
    if a <= -BETA1:
        return 3
    if a < BETA1:
        return 4
    if a < BETA0:
        return 5
    return None


def threshold_b(a: float) -> float | None:
    """Infimum of b making [a, b] minorizable (b must exceed it, or equal 1 in region 5)."""
    case = case_of(a)
    if case == 1:
        return -BETA0
    if case in (2, 4):
        return float(_quartic_threshold(a))
    if case == 3:
        return -1.0 / (6.0 * a)
    if case == 5:
        return 1.0
    return None


def _is_minorizable(a: float, b: float, case: int | None, thr: float | None) -> bool:
    if case is None:
        return False
    if case == 5:
        return b >= 1.0
    return b > thr + GUARD and b <= 1.0


def certificate_closed_form_b0(a: float, b: float, case: int) -> float:
    if case == 1:
        return (b + BETA0) * EDGE_FACTOR
    if case in (2, 4):
        # region 4 shares region 2's certificate and so its integral
        return ((1 - 4 * a * a) * b * b - a * b + a * a - 0.5) / (4 * (4 * a * b + 1))
    if case == 3:
        return -0.75 * (a * b + 1.0 / 6.0)
    if case == 5:
        return (BETA0 - a) * EDGE_FACTOR
    raise ValueError(f"no certificate for case {case}")


def certificate_polynomial(a: float, b: float, case: int) -> MonomialPoly:
    if case == 1:
        return MonomialPoly.from_roots([1.0, b, BETA1, BETA1])
    if case in (2, 4):
        r = -(a + b) / (4 * a * b + 1)
        return MonomialPoly.from_roots([a, b, r, r], scale=-1)
    if case == 3:
        return MonomialPoly.from_roots([1.0, -1.0, a, b])
    if case == 5:
        return MonomialPoly.from_roots([-1.0, a, -BETA1, -BETA1])
    raise ValueError(f"no certificate for case {case}")


def certificate_form(a: float, b: float, case: int) -> int:
    """Which region's quartic certifies [a, b].

    The quartic of regions 2 and 4 has its double root at -(a+b)/(4ab+1),
    and its integral changes sign with 4ab + 1.  Once 4ab + 1 <= 0 we have
    ab < -1/6, where the region-3 quartic (x^2-1)(x-a)(x-b) is <= 0 off
    [a, b] and has positive integral, so that one is used instead.
    """
    if case in (2, 4) and 4 * a * b + 1 <= 0:
        return 3
    return case


def certificate(a: float, b: float) -> tuple[MonomialPoly, float]:
    """The certifying quartic F and its Sato-Tate integral by the closed formula."""
    v = classify(a, b, with_certificate=False)
    if not v.minorizable:
        raise ValueError(f"[{a}, {b}] has no degree-4 minorant")
    form = certificate_form(a, b, v.case_id)
    return certificate_polynomial(a, b, form), certificate_closed_form_b0(a, b, form)


def classify(a: float, b: float, with_certificate: bool = True) -> Sym4Verdict:
    a, b = float(a), float(b)
    if not (-1.0 <= a <= 1.0 and -1.0 <= b <= 1.0):
        raise ValueError("endpoints must lie in [-1, 1]")
    if a > b:
        raise ValueError(f"a = {a} exceeds b = {b}")
    case = case_of(a)
    thr = threshold_b(a)
    ok = _is_minorizable(a, b, case, thr)
    cert = cb0 = None
    if ok and with_certificate:
        form = certificate_form(a, b, case)
        cert = certificate_polynomial(a, b, form)
        cb0 = certificate_closed_form_b0(a, b, form)
    return Sym4Verdict(a, b, ok, case, thr, cert, cb0)


def certificate_integral_by_quadrature(F: MonomialPoly) -> float:
    return st_integral(from_monomial(F))


def minorizable_mask(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized ``classify(a, b).minorizable`` for a <= b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        quartic = _quartic_threshold(a)
        third = -1.0 / (6.0 * a)
    thr = np.select(
        [a <= -1.0, a <= -BETA0, a <= -BETA1, a < BETA1],
        [np.full(a.shape, -BETA0), quartic, third, quartic],
        default=np.inf,
    )
    ok = b > thr + GUARD
    ok |= (a >= BETA1) & (a < BETA0) & (b >= 1.0)
    return ok & (b <= 1.0)


# -- global statistics -------------------------------------------------------------

def _region_length(a: float) -> float:
    """Length of {b in [a, 1]: b above the threshold} for a in the open regions."""
    thr = threshold_b(a)
    if thr is None:
        return 0.0
    return 1.0 - min(max(thr, a), 1.0)


def _quad_region(lo: float, hi: float) -> float:
    val, _ = integrate.quad(_region_length, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)
    return val


def proportion_by_quadrature() -> float:
    """Area of the minorizable region over the triangle's area 2, one quad per region."""
    # regions 1 and 5 are lines (a = -1, b = 1) and carry no area
    # region 4's curve reaches b = 1 exactly at a = beta1, so no clipping split
    area = (_quad_region(-1.0, -BETA0) + _quad_region(-BETA0, -BETA1)
            + _quad_region(-BETA1, BETA1))
    return area / 2.0


def proportion_by_sampling(n: int = 1 << 24, seed: int = 20240101,
                           chunk: int = 1 << 20) -> float:
    """Scrambled Sobol points on the square, folded onto a <= b."""
    sob = qmc.Sobol(d=2, scramble=True, seed=seed)
    hits = 0
    done = 0
    while done < n:
        m = min(chunk, n - done)
        pts = sob.random(m) * 2.0 - 1.0
        a = np.minimum(pts[:, 0], pts[:, 1])
        b = np.maximum(pts[:, 0], pts[:, 1])
        hits += int(np.count_nonzero(minorizable_mask(a, b)))
        done += m
    return hits / n


def proportion_minorizable(samples: int = 1 << 24, seed: int = 20240101) -> dict:
    q = proportion_by_quadrature()
    s = proportion_by_sampling(samples, seed)
    return {"quadrature": q, "sampling": s, "samples": samples, "seed": seed,
            "difference": abs(q - s)}


def golden_section(f, lo: float, hi: float, tol: float = 1e-10, maximize: bool = False):
    """Golden-section search for a unimodal f on [lo, hi]; returns (x, f(x))."""
    g = lambda x: -f(x) if maximize else f(x)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = g(c), g(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = g(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _mu(a: float, b: float) -> float:
    return float(st_cdf(b) - st_cdf(a)) if b > a else 0.0


def _optimize(f, lo: float, hi: float, maximize: bool, grid: int = 400):
    # a coarse grid picks the basin, golden-section refines inside it
    xs = np.linspace(lo, hi, grid + 1)
    vals = np.array([f(x) for x in xs])
    i = int(np.argmax(vals) if maximize else np.argmin(vals))
    l, r = xs[max(i - 1, 0)], xs[min(i + 1, grid)]
    return golden_section(f, l, r, maximize=maximize)


def _clip_threshold(a: float) -> float:
    thr = threshold_b(a)
    return 1.0 if thr is None else float(min(max(thr, a), 1.0))


def measure_thresholds() -> dict:
    """sup of mu over non-minorizable intervals and inf over minorizable ones.

    Along each region the extremal intervals run from a to the threshold
    curve (clipped to 1); regions 1 and 5 contribute their limiting intervals.
    """
    def edge(a: float) -> float:
        thr = threshold_b(a)
        return _mu(a, min(max(thr, a), 1.0))

    regions = [(-1.0, -BETA0), (-BETA0, -BETA1), (-BETA1, BETA1)]
    highs, lows = [], []
    eps = 1e-12
    for lo, hi in regions:
        highs.append(_optimize(edge, lo + eps, hi - eps, True))
        lows.append(_optimize(edge, lo + eps, hi - eps, False))
    # region 5: [a, b] with b < 1 is never minorizable, [a, 1] always is
    highs.append((BETA1, _mu(BETA1, 1.0)))
    lows.append((BETA0, _mu(BETA0, 1.0)))
    # region 1: [-1, b] non-minorizable up to b = -beta0
    highs.append((-1.0, _mu(-1.0, -BETA0)))
    lows.append((-1.0, _mu(-1.0, -BETA0)))
    # a >= beta0: nothing is minorizable
    highs.append((BETA0, _mu(BETA0, 1.0)))
    ia = int(np.argmax([v for _, v in highs]))
    ib = int(np.argmin([v for _, v in lows]))
    a_all = float(highs[ia][0])
    a_min = float(lows[ib][0])
    return {
        "mu_all": float(highs[ia][1]),
        "mu_all_interval": [a_all, _clip_threshold(a_all)],
        "mu_min": float(lows[ib][1]),
        "mu_min_interval": [a_min, _clip_threshold(a_min)],
    }


def interval_measure(a: float, b: float) -> float:
    return mu_st(IntervalSet.of([(a, b)]))
