"""Sym^N minorants and majorants of interval indicators.

A minorant of degree N for I is p = sum b_n U_n with p(t) <= 1_I(t) on
[-1, 1].  By continuity this is p <= 0 on the closure of the complement of
I and p <= 1 on I.  ``solve_minorant`` maximizes b_0 (the Sato-Tate integral
of p) by an exchange method: a finite LP over a node set, then a global
search for the worst violation, which joins the node set, until the
violation drops below ``tol``.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import linprog

from .chebyshev import ChebSeries, eval_series, gauss_nodes
from .measure import IntervalSet, complement_closure
from .rootfind import RootIsolationError, certified_max, local_maxima

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
MAX_ROUNDS = 200


class Status(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class MinorantCertificate:
    series: ChebSeries
    b0: float
    B: float | None
    worst_slack: float
    target: IntervalSet
    N: int
    status: Status
    tol: float = DEFAULT_TOL
    kind: str = "minorant"
    reason: str | None = None
    rounds: int = 0
    fallback_bound: float | None = None

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "interval_set": str(self.target),
            "N": self.N,
            "coeffs": [float(c) + 0.0 for c in self.series.coeffs],
            "b0": self.b0 + 0.0,
            "B": self.B,
            "worst_slack": self.worst_slack,
            "status": self.status.value,
            "tol": self.tol,
            "reason": self.reason,
            "rounds": self.rounds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "MinorantCertificate":
        return cls(
            series=ChebSeries(d["coeffs"]),
            b0=d["b0"],
            B=d["B"],
            worst_slack=d["worst_slack"],
            target=IntervalSet.parse(d["interval_set"]),
            N=d["N"],
            status=Status(d["status"]),
            tol=d["tol"],
            kind=d.get("kind", "minorant"),
            reason=d.get("reason"),
            rounds=d.get("rounds", 0),
        )

    @classmethod
    def from_json(cls, text: str) -> "MinorantCertificate":
        return cls.from_dict(json.loads(text))


# Pieces describe the constraint p <= level (sign +1) or p >= level (sign -1)
# on a closed interval; violation there is sign * (p - level).
Piece = tuple  # (lo, hi, level, sign)


def _pieces(I: IntervalSet, kind: str) -> list[Piece]:
    if kind == "minorant":
        out = [(a, b, 0.0, 1.0) for a, b in complement_closure(I)]
        out += [(a, b, 1.0, 1.0) for a, b in I]
    elif kind == "majorant":
        out = [(-1.0, 1.0, 0.0, -1.0)]
        out += [(a, b, 1.0, -1.0) for a, b in I]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out


def _node_bounds(nodes: np.ndarray, pieces: list[Piece]) -> np.ndarray:
    """Tightest right-hand side sign*level over pieces containing each node."""
    rhs = np.full(nodes.size, np.inf)
    for lo, hi, level, sign in pieces:
        inside = (nodes >= lo) & (nodes <= hi)
        rhs[inside] = np.minimum(rhs[inside], sign * level)
    return rhs


def _u_matrix(t: np.ndarray, N: int) -> np.ndarray:
    U = np.empty((t.size, N + 1))
    U[:, 0] = 1.0
    if N >= 1:
        U[:, 1] = 2.0 * t
    for k in range(2, N + 1):
        U[:, k] = 2.0 * t * U[:, k - 1] - U[:, k - 2]
    return U


def _solve_lp(nodes: np.ndarray, pieces: list[Piece], N: int, sign: float) -> np.ndarray:
    rhs = _node_bounds(nodes, pieces)
    keep = np.isfinite(rhs)
    A = _u_matrix(nodes[keep], N) * sign
    c = np.zeros(N + 1)
    c[0] = -sign  # minorant: maximize b0; majorant: minimize b0
    res = linprog(
        c, A_ub=A, b_ub=rhs[keep], bounds=[(None, None)] * (N + 1),
        method="highs-ds",
        options={"primal_feasibility_tolerance": 1e-10,
                 "dual_feasibility_tolerance": 1e-10},
    )
    if res.status != 0:
        raise RuntimeError(f"finite LP failed: {res.message}")
    return np.asarray(res.x, dtype=float)


def _violations(s: ChebSeries, pieces: list[Piece]) -> tuple[np.ndarray, np.ndarray]:
    """Float local maxima of the violation function across all pieces."""
    pts, vals = [], []
    for lo, hi, level, sign in pieces:
        p, v = local_maxima(s * sign, lo, hi)
        pts.append(p)
        vals.append(v - sign * level)
    return np.concatenate(pts), np.concatenate(vals)


def _certified_violation(s: ChebSeries, pieces: list[Piece]) -> float:
    worst = -np.inf
    for lo, hi, level, sign in pieces:
        m = certified_max(s * sign, lo, hi)
        worst = max(worst, m.value - sign * level)
    return float(worst)


def _initial_nodes(I: IntervalSet, N: int, count: int) -> np.ndarray:
    x, _ = gauss_nodes(count)
    return np.unique(np.concatenate([x, [-1.0, 1.0], I.endpoints()]))


def _add_nodes(nodes: np.ndarray, new: np.ndarray) -> np.ndarray:
    if new.size == 0:
        return nodes
    merged = np.unique(np.concatenate([nodes, new]))
    # drop near-duplicates, which only make the LP degenerate
    keep = np.concatenate([[True], np.diff(merged) > 1e-15])
    return merged[keep]


def _exchange(I: IntervalSet, N: int, tol: float, kind: str,
              max_rounds: int) -> MinorantCertificate:
    if N < 0:
        raise ValueError("N must be nonnegative")
    if not (1e-12 <= tol <= 1e-3):
        raise ValueError("tol must lie in [1e-12, 1e-3]")
    sign = 1.0 if kind == "minorant" else -1.0
    pieces = _pieces(I, kind)
    nodes = _initial_nodes(I, N, 8 * (N + 1))
    refined = False
    stalled = 0
    best = math.inf if kind == "minorant" else -math.inf
    x = None
    for rnd in range(1, max_rounds + 1):
        x = _solve_lp(nodes, pieces, N, sign)
        s = ChebSeries(x)
        b0_lp = float(x[0])
        if kind == "minorant" and b0_lp <= tol:
            # the node LP is a relaxation, so its optimum bounds the true one
            if not refined:
                nodes = _add_nodes(nodes, _initial_nodes(I, N, 64 * (N + 1)))
                refined = True
                stalled = 0
                best = b0_lp
                continue
            stalled = stalled + 1 if best - b0_lp <= tol / 10 else 0
            best = min(best, b0_lp)
            if stalled >= 3:
                return MinorantCertificate(
                    series=s, b0=b0_lp, B=None, worst_slack=math.nan, target=I, N=N,
                    status=Status.INFEASIBLE, tol=tol, kind=kind,
                    reason="lp_bound_nonpositive", rounds=rnd)
            pts, vals = _violations(s, pieces)
            nodes = _add_nodes(nodes, pts[vals > tol])
            continue
        pts, vals = _violations(s, pieces)
        worst = float(np.max(vals))
        log.debug("round %d: b0=%.12g violation=%.3g nodes=%d", rnd, b0_lp, worst, nodes.size)
        if worst <= tol:
            return _finalize(s, worst, I, N, tol, kind, pieces, rnd)
        nodes = _add_nodes(nodes, pts[vals > tol])
    return MinorantCertificate(
        series=ChebSeries(x), b0=float(x[0]), B=None, worst_slack=math.nan, target=I,
        N=N, status=Status.UNRESOLVED, tol=tol, kind=kind,
        reason="max_rounds", rounds=max_rounds)


def _margin(s: ChebSeries) -> float:
    # covers rounding in Clenshaw evaluation of the shifted series
    return 1e-15 * (1.0 + float(np.sum(np.abs(s.coeffs))))


def _finalize(s: ChebSeries, viol: float, I: IntervalSet, N: int, tol: float,
              kind: str, pieces: list[Piece], rounds: int) -> MinorantCertificate:
    sign = 1.0 if kind == "minorant" else -1.0
    shift = max(viol, 0.0) + _margin(s)
    s = s.shift_constant(-sign * shift)
    try:
        slack = _certified_violation(s, pieces)
    except RootIsolationError as exc:
        return MinorantCertificate(
            series=s, b0=float(s.coeffs[0]), B=None, worst_slack=math.nan, target=I,
            N=N, status=Status.UNRESOLVED, tol=tol, kind=kind,
            reason="root_isolation", rounds=rounds, fallback_bound=exc.bound)
    if slack > 0:
        s = s.shift_constant(-sign * (slack + _margin(s)))
        slack = _certified_violation(s, pieces)
    b0 = float(s.coeffs[0])
    if kind == "minorant" and b0 <= tol:
        return MinorantCertificate(
            series=s, b0=b0, B=None, worst_slack=slack, target=I, N=N,
            status=Status.INFEASIBLE, tol=tol, kind=kind,
            reason="certified_b0_nonpositive", rounds=rounds)
    B = float(np.max(np.abs(s.coeffs)) / b0) if b0 > 0 else None
    return MinorantCertificate(
        series=s, b0=b0, B=B, worst_slack=slack, target=I, N=N,
        status=Status.FEASIBLE, tol=tol, kind=kind, rounds=rounds)


def solve_minorant(I: IntervalSet, N: int, tol: float = DEFAULT_TOL,
                   max_rounds: int = MAX_ROUNDS) -> MinorantCertificate:
    """Maximize b_0 over degree-N minorants of the indicator of I."""
    return _exchange(I, N, tol, "minorant", max_rounds)


def solve_majorant(I: IntervalSet, N: int, tol: float = DEFAULT_TOL,
                   max_rounds: int = MAX_ROUNDS) -> MinorantCertificate:
    """Minimize b_0 over degree-N majorants p >= 1_I of the indicator of I."""
    return _exchange(I, N, tol, "majorant", max_rounds)


def verify_certificate(c: MinorantCertificate) -> float:
    """Certified sup over [-1, 1] of p - 1_I (minorant) or 1_I - p (majorant).

    Raises RootIsolationError, carrying a grid/Lipschitz upper bound, when
    exact isolation is unavailable for the degree.
    """
    if len(c.series) == 0:
        raise ValueError("empty series")
    return _certified_violation(c.series, _pieces(c.target, c.kind))


def compute_B(c: MinorantCertificate) -> float:
    """max_n |b_n| / b_0."""
    if c.status is not Status.FEASIBLE:
        raise ValueError(f"certificate status is {c.status.value}, not Feasible")
    b = c.series.coeffs
    if not b[0] > 0:
        raise ValueError("corrupt certificate: b0 <= 0")
    return float(np.max(np.abs(b)) / b[0])


def certificate_from_series(s: ChebSeries, I: IntervalSet, tol: float = DEFAULT_TOL,
                            kind: str = "minorant", shift: bool = True,
                            verify: bool = True) -> MinorantCertificate:
    """Wrap an externally constructed series, verifying it against I.

    With ``shift`` a positive slack is absorbed into b_0, as the solver does.
    """
    N = s.degree
    if not verify:
        b0 = float(s.coeffs[0])
        ok = b0 > tol if kind == "minorant" else True
        return MinorantCertificate(
            series=s, b0=b0, B=float(np.max(np.abs(s.coeffs)) / b0) if b0 > 0 else None,
            worst_slack=math.nan, target=I, N=N,
            status=Status.FEASIBLE if ok else Status.INFEASIBLE, tol=tol, kind=kind,
            reason=None if ok else "b0_nonpositive")
    pieces = _pieces(I, kind)
    try:
        slack = _certified_violation(s, pieces)
    except RootIsolationError as exc:
        return MinorantCertificate(
            series=s, b0=float(s.coeffs[0]), B=None, worst_slack=math.nan, target=I,
            N=N, status=Status.UNRESOLVED, tol=tol, kind=kind,
            reason="root_isolation", fallback_bound=exc.bound)
    if shift and slack > 0:
        return _finalize(s, slack, I, N, tol, kind, pieces, 0)
    b0 = float(s.coeffs[0])
    sound = slack <= tol
    positive = b0 > tol or kind == "majorant"
    status = Status.FEASIBLE if sound and positive else Status.INFEASIBLE
    reason = None if status is Status.FEASIBLE else (
        "slack_positive" if not sound else "b0_nonpositive")
    B = float(np.max(np.abs(s.coeffs)) / b0) if b0 > 0 else None
    return MinorantCertificate(series=s, b0=b0, B=B, worst_slack=slack, target=I, N=N,
                               status=status, tol=tol, kind=kind, reason=reason)


def dense_scan_slack(c: MinorantCertificate, n: int = 10**6) -> float:
    """Independent check: max of the violation on a dense uniform grid plus endpoints."""
    t = np.unique(np.concatenate([np.linspace(-1.0, 1.0, n), c.target.endpoints()]))
    p = eval_series(c.series, t)
    ind = np.zeros(t.size)
    for a, b in c.target:
        ind[(t >= a) & (t <= b)] = 1.0
    if c.kind == "minorant":
        # closure convention: the boundary of I also carries p <= 0
        comp = np.zeros(t.size, dtype=bool)
        for a, b in complement_closure(c.target):
            comp |= (t >= a) & (t <= b)
        bound = np.where(comp, 0.0, ind)
        return float(np.max(p - bound))
    return float(np.max(ind - p))


def __getattr__(name: str):
    # the explicit constructions live in ``extremal``, which imports this module
    if name in ("selberg_minorant", "extreme_minorant"):
        from . import extremal

        return getattr(extremal, name)
    raise AttributeError(name)
