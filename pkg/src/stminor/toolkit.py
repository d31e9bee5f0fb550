"""Conductor arithmetic, parametric effective bounds, and small proof tools.

The bounds carry unspecified absolute constants.  They are exposed with the
constants as inputs (``EffectiveConstants``) and an explicit multiplier for
the implied constant of each ``<<`` estimate, so every number here is a
shape, not a value.  Anything that overflows binary64 is returned as a
natural logarithm.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class RepresentationParams:
    d: int
    q: int
    kappas: tuple
    field_degree: int = 1
    disc: int = 1
    self_dual: bool = True
    satisfies_grc: bool = True

    def __post_init__(self):
        if self.d < 1 or self.q < 1 or self.field_degree < 1 or self.disc < 1:
            raise ValueError("d, q, field_degree and disc must be positive")
        kap = tuple(complex(k) for k in self.kappas)
        object.__setattr__(self, "kappas", kap)
        if len(kap) != self.d * self.field_degree:
            raise ValueError(
                f"expected {self.d * self.field_degree} Langlands parameters, got {len(kap)}")
        for k in kap:
            if k.real <= -0.5:
                raise ValueError(f"Re(kappa) = {k.real} must exceed -1/2")
        floor = -0.5 + 1.0 / (self.d ** 2 + 1)
        low = [k for k in kap if k.real < floor]
        if low:
            warnings.warn(
                f"Re(kappa) below the known bound -1/2 + 1/(d^2+1) = {floor:.6g}",
                stacklevel=2)

    @classmethod
    def trivial(cls) -> "RepresentationParams":
        return cls(d=1, q=1, kappas=(0.0,))


@dataclass(frozen=True)
class EffectiveConstants:
    c_hoheisel: float = 1.0
    c_satotate1: float = 1.0
    c_satotate2: float = 1.0
    c_density: float = 1.0
    symn_multiplier: float = 1.0

    def __post_init__(self):
        for name, v in asdict(self).items():
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number")

    def to_dict(self) -> dict:
        return asdict(self)


def load_constants(path: str | Path | None) -> EffectiveConstants:
    """Read constants from JSON; missing keys take the shape-only default 1."""
    if path is None:
        return EffectiveConstants()
    data = json.loads(Path(path).read_text())
    known = set(EffectiveConstants.__dataclass_fields__)
    extra = set(data) - known
    if extra:
        raise ValueError(f"unknown constant(s) in {path}: {sorted(extra)}")
    return EffectiveConstants(**{k: float(v) for k, v in data.items()})


# -- conductors --------------------------------------------------------------------

def analytic_conductor(r: RepresentationParams, s: complex = 0.0) -> float:
    """q * prod_j (|s + kappa_j| + 3)."""
    out = float(r.q)
    for k in r.kappas:
        out *= abs(s + k) + 3.0
    return out


def log_analytic_conductor(r: RepresentationParams, s: complex = 0.0) -> float:
    return math.log(r.q) + sum(math.log(abs(s + k) + 3.0) for k in r.kappas)


def rs_conductor_bound(r: RepresentationParams, rp: RepresentationParams,
                       s: complex = 0.0) -> float:
    """log of q(pi)^d' q(pi')^d (|s|+3)^(d d' [K:Q]), the Rankin-Selberg upper bound."""
    if r.field_degree != rp.field_degree:
        raise ValueError("representations must live over the same field")
    return (rp.d * log_analytic_conductor(r) + r.d * log_analytic_conductor(rp)
            + r.d * rp.d * r.field_degree * math.log(abs(s) + 3.0))


def symn_conductor_log_bound(r: RepresentationParams, n: int,
                             squarefree_newform: bool = False,
                             multiplier: float = 1.0) -> float:
    """Shape of log q(Sym^n pi): n^3 log q in general, n log q for squarefree newforms."""
    if n < 1:
        raise ValueError("n must be at least 1")
    logq = math.log(r.q)
    if squarefree_newform:
        return n * logq
    return multiplier * n ** 3 * logq


def least_prime_log_bound(N: int, B: float, r: RepresentationParams,
                          consts: EffectiveConstants,
                          squarefree_newform: bool = False) -> float:
    """log of the least-prime bound (implied constant 1).

    General: c N^4 log(3BN) * max(N log N + N^3 log q(pi), log D_K + [K:Q] log [K:Q]).
    Squarefree newform: c N^5 log(3BN) * log(N q(pi)).
    """
    if N < 1 or B < 1:
        raise ValueError("need N >= 1 and B >= 1")
    c = consts.c_satotate2
    logq = log_analytic_conductor(r)
    L = math.log(3 * B * N)
    if squarefree_newform:
        return c * N ** 5 * L * (math.log(N) + logq)
    kd = r.field_degree
    base = max(N * math.log(N) + N ** 3 * logq, math.log(r.disc) + kd * math.log(kd))
    return c * N ** 4 * L * base


def delta_bound(n_or_d: int, B: float | None, field_degree: int,
                consts: EffectiveConstants, which: str) -> float:
    """Upper bound on the short-interval exponent delta.

    ``which`` is ``hoheisel`` (degree d, constant c_hoheisel) or ``satotate``
    (minorant degree N and constant B, constant c_satotate1).
    """
    if n_or_d < 1 or field_degree < 1:
        raise ValueError("degree arguments must be positive")
    key = which.lower()
    if key == "hoheisel":
        d = n_or_d
        return consts.c_hoheisel / (d ** 4 * field_degree * math.log(3 * d))
    if key == "satotate":
        if B is None:
            raise ValueError("B is required for the Sato-Tate bound")
        if B < 1:
            raise ValueError("B must be at least 1")
        N = n_or_d
        return consts.c_satotate1 / (N ** 4 * field_degree * math.log(3 * B * N))
    raise ValueError(f"unknown bound {which!r}")


# -- proof tools ---------------------------------------------------------------------

def power_sums(z: Sequence[complex], ks: Sequence[int]) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    ks = np.asarray(ks)
    return np.abs(np.power.outer(z, ks).sum(axis=0))


def turan_witness(z: Sequence[complex], M: int) -> tuple[int, float]:
    """k in [M, 2M] maximizing |sum z_j^k|, with that value (smallest k on ties)."""
    if len(z) == 0:
        raise ValueError("need at least one complex number")
    if M < len(z):
        raise ValueError("M must be at least the number of terms")
    ks = np.arange(M, 2 * M + 1)
    vals = power_sums(z, ks)
    i = int(np.argmax(vals))
    return int(ks[i]), float(vals[i])


def turan_holds(z: Sequence[complex], M: int, reading: str = "max") -> bool:
    """Check the power-sum lower bound at the witness.

    ``max`` compares against the largest modulus, ``literal`` against the
    first listed number; since the largest modulus dominates, the first
    implies the second.
    """
    k, val = turan_witness(z, M)
    zz = np.asarray(z, dtype=complex)
    ref = float(np.max(np.abs(zz))) if reading == "max" else abs(zz[0])
    if ref == 0:
        return True
    # compare in logs, the right side underflows quickly
    return val > 0 and math.log(val) >= k * math.log(ref / 50.0) - 1e-12 * k


def j_k(u: float, k: int) -> float:
    """u^k e^(-u) / k!, evaluated in log space."""
    if u < 0 or k < 0:
        raise ValueError("need u >= 0 and k >= 0")
    if u == 0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(u) - u - math.lgamma(k + 1))


def log_j_k(u: float, k: int) -> float:
    if u == 0:
        return 0.0 if k == 0 else -math.inf
    return k * math.log(u) - u - math.lgamma(k + 1)


def j_k_bound_small(u: float, k: int) -> bool:
    """j_k(u) <= 100^-k for u <= k/300 (checked in logs)."""
    return log_j_k(u, k) <= -k * math.log(100.0) + 1e-12


def j_k_bound_large(u: float, k: int) -> bool:
    """j_k(u) <= 110^-k e^(-u/2) for u >= 20k (checked in logs)."""
    return log_j_k(u, k) <= -k * math.log(110.0) - u / 2 + 1e-12


def zero_count_main_term(dd: int, q_rs: float, field_degree: int, T: float) -> float:
    """(T/pi) log(q (T / 2 pi e)^(d d' [K:Q])): main term of the zero count up to height T.

    Zeros are counted with |gamma| <= T, so both signs of the ordinate.
    """
    if T < 1 or q_rs < 1:
        raise ValueError("need T >= 1 and q >= 1")
    return T / math.pi * (math.log(q_rs) + dd * field_degree * math.log(T / (2 * math.pi * math.e)))


def evaluate_all(r: RepresentationParams, N: int, B: float,
                 consts: EffectiveConstants) -> dict:
    """Every calculator at one parameter point, for the CLI."""
    return {
        "analytic_conductor": analytic_conductor(r),
        "log_analytic_conductor": log_analytic_conductor(r),
        "symn_conductor_log_bound": symn_conductor_log_bound(
            r, N, False, consts.symn_multiplier),
        "symn_conductor_log_bound_squarefree": symn_conductor_log_bound(r, N, True),
        "least_prime_log_bound": least_prime_log_bound(N, B, r, consts, False),
        "least_prime_log_bound_squarefree": least_prime_log_bound(N, B, r, consts, True),
        "delta_hoheisel": delta_bound(r.d, None, r.field_degree, consts, "hoheisel"),
        "delta_satotate": delta_bound(N, B, r.field_degree, consts, "satotate"),
        "note": "shape-only: implied constants set to the configured values",
    }
