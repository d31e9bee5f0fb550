"""Sato-Tate measure of finite unions of closed intervals in [-1, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class IntervalParseError(ValueError):
    pass


def _st_cdf(t):
    """Sato-Tate measure of [-1, t]."""
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    val = (t * np.sqrt(1.0 - t * t) + np.arcsin(t)) / np.pi + 0.5
    return val if val.ndim else float(val)


st_cdf = _st_cdf


def st_density(t):
    t = np.asarray(t, dtype=float)
    return 2.0 / np.pi * np.sqrt(np.clip(1.0 - t * t, 0.0, None))


def st_quantile(u, iters: int = 60):
    """Inverse Sato-Tate CDF by bisection on [-1, 1] (monotone, vectorized)."""
    u = np.asarray(u, dtype=float)
    lo = np.full(u.shape, -1.0)
    hi = np.full(u.shape, 1.0)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = _st_cdf(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    out = 0.5 * (lo + hi)
    return out if out.ndim else float(out)


def st_sample(rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw from the Sato-Tate law: (t + 1) / 2 is Beta(3/2, 3/2)."""
    return 2.0 * rng.beta(1.5, 1.5, size=size) - 1.0


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, pairwise disjoint closed intervals inside [-1, 1].

    Construct with :meth:`of`, which validates and normalizes.  Degenerate
    components ``[c, c]`` survive normalization unless another component
    covers them: they carry no measure but still count for the indicator.
    """

    intervals: tuple = ()

    @classmethod
    def of(cls, pairs: Iterable[Sequence[float]]) -> "IntervalSet":
        items = []
        for pair in pairs:
            a, b = (float(v) for v in pair)
            if not (-1.0 <= a <= 1.0 and -1.0 <= b <= 1.0):
                raise ValueError(f"interval [{a}, {b}] not inside [-1, 1]")
            if a > b:
                raise ValueError(f"interval [{a}, {b}] has a > b")
            items.append((a, b))
        items.sort()
        merged: list[list[float]] = []
        for a, b in items:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return cls(tuple((a, b) for a, b in merged))

    @classmethod
    def parse(cls, text: str) -> "IntervalSet":
        """Parse ``a:b,c:d``; an empty string or ``empty`` gives the empty set."""
        text = text.strip()
        if text in ("", "empty", "{}"):
            return cls()
        pairs = []
        for chunk in text.split(","):
            parts = chunk.strip().split(":")
            if len(parts) != 2:
                raise IntervalParseError(f"bad interval {chunk!r}; expected a:b")
            try:
                a, b = float(parts[0]), float(parts[1])
            except ValueError as exc:
                raise IntervalParseError(f"bad number in {chunk!r}") from exc
            if not (math.isfinite(a) and math.isfinite(b)):
                raise IntervalParseError(f"non-finite endpoint in {chunk!r}")
            pairs.append((a, b))
        try:
            return cls.of(pairs)
        except ValueError as exc:
            raise IntervalParseError(str(exc)) from exc

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls(((-1.0, 1.0),))

    def __str__(self) -> str:
        if not self.intervals:
            return "empty"
        return ",".join(f"{a!r}:{b!r}" for a, b in self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def endpoints(self) -> list[float]:
        return sorted({v for pair in self.intervals for v in pair})

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.of(self.intervals + other.intervals)

    def contains(self, other: "IntervalSet") -> bool:
        return all(any(a <= c and d <= b for a, b in self.intervals)
                   for c, d in other.intervals)

    def to_json(self) -> list:
        return [[a, b] for a, b in self.intervals]


def mu_st(I: IntervalSet) -> float:
    """Sato-Tate measure, summed componentwise from the closed-form CDF."""
    total = 0.0
    for a, b in I.intervals:
        if b > a:
            total += _st_cdf(b) - _st_cdf(a)
    return min(max(total, 0.0), 1.0)


def indicator(I: IntervalSet, t):
    """1 where t lies in some closed component of I, else 0."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=np.int8)
    for a, b in I.intervals:
        out |= ((t >= a) & (t <= b)).astype(np.int8)
    return out if out.ndim else int(out)


def complement_closure(I: IntervalSet) -> IntervalSet:
    """Closure of [-1, 1] minus I.  Degenerate components leave no gap."""
    solid = [(a, b) for a, b in I.intervals if b > a]
    out = []
    cur = -1.0
    for a, b in solid:
        if a > cur:
            out.append((cur, a))
        cur = max(cur, b)
    if cur < 1.0:
        out.append((cur, 1.0))
    if not solid:
        out = [(-1.0, 1.0)]
    return IntervalSet(tuple(out))


def empirical_discrepancy(samples, grid_size: int) -> float:
    """max over grid intervals [g_i, g_j] of |empirical fraction - mu_ST|.

    The grid has ``grid_size`` equal cells on [-1, 1].
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    if x.size == 0:
        raise ValueError("empirical_discrepancy needs at least one sample")
    if grid_size < 1:
        raise ValueError("grid_size must be positive")
    g = np.linspace(-1.0, 1.0, grid_size + 1)
    n = x.size
    le = np.searchsorted(x, g, side="right") / n   # fraction <= g
    lt = np.searchsorted(x, g, side="left") / n    # fraction < g
    F = _st_cdf(g)
    emp = le[None, :] - lt[:, None]
    mu = F[None, :] - F[:, None]
    iu = np.triu_indices(g.size, k=1)
    return float(np.max(np.abs(emp - mu)[iu]))
