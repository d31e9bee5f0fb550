"""Normalized Hecke eigenvalues cos(theta_p) for GL(2) sources, with a CSV cache."""

from __future__ import annotations

import csv
import hashlib
import io
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from ..chebyshev import eval_U
from .elliptic import discriminant, ec_ap_array
from .modular import DELTA_CAP, tau_table
from .primes import primes_up_to

EC_CAP = 10**7
CACHE_ENV = "STMINOR_CACHE_DIR"


@dataclass(frozen=True)
class AngleRecord:
    p: int
    a_raw: int
    cos_theta: float
    ramified: bool
    source_id: str


@dataclass(frozen=True)
class EllipticCurve:
    a: int
    b: int

    def __post_init__(self):
        if discriminant(self.a, self.b) == 0:
            raise ValueError(f"y^2 = x^3 + {self.a}x + {self.b} is singular")

    @property
    def source_id(self) -> str:
        return f"ec:{self.a},{self.b}"

    weight = 2
    cap = EC_CAP


@dataclass(frozen=True)
class DeltaForm:
    source_id = "delta"
    weight = 12
    cap = DELTA_CAP


class FileSourceError(ValueError):
    pass


@dataclass(frozen=True)
class FileSource:
    path: str

    @property
    def source_id(self) -> str:
        digest = hashlib.sha256(Path(self.path).read_bytes()).hexdigest()[:16]
        return f"file:{digest}"

    cap = None


def normalize(a_raw: int, p: int, weight: int) -> float:
    """a_raw / (2 p^((weight - 1) / 2))."""
    half = weight - 1
    # p^(half/2) = p^(half//2) * sqrt(p)^(half % 2), integer part kept exact
    den = 2 * p ** (half // 2)
    val = a_raw / den
    return val / math.sqrt(p) if half % 2 else val


class AngleSet:
    """Angle data as parallel arrays, sorted by p; indexing yields AngleRecord."""

    def __init__(self, source_id: str, p, a_raw, cos_theta, ramified,
                 limit: int | None = None):
        self.source_id = source_id
        self.p = np.asarray(p, dtype=np.int64)
        self.a_raw = list(int(v) for v in a_raw)
        self.cos_theta = np.asarray(cos_theta, dtype=float)
        self.ramified = np.asarray(ramified, dtype=bool)
        if np.any(np.diff(self.p) <= 0):
            raise ValueError("primes must be strictly increasing")
        # every prime up to ``limit`` is present
        self.limit = int(limit) if limit is not None else self.max_p

    def __len__(self) -> int:
        return int(self.p.size)

    def __getitem__(self, i: int) -> AngleRecord:
        return AngleRecord(int(self.p[i]), self.a_raw[i], float(self.cos_theta[i]),
                           bool(self.ramified[i]), self.source_id)

    def __iter__(self) -> Iterator[AngleRecord]:
        return (self[i] for i in range(len(self)))

    @property
    def max_p(self) -> int:
        return int(self.p[-1]) if len(self) else 0

    def good(self) -> "AngleSet":
        keep = ~self.ramified
        return AngleSet(self.source_id, self.p[keep],
                        [a for a, k in zip(self.a_raw, keep) if k],
                        self.cos_theta[keep], self.ramified[keep], self.limit)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("p,a_raw,cos_theta,ramified\n")
        for p, a, c, r in zip(self.p.tolist(), self.a_raw, self.cos_theta.tolist(),
                              self.ramified.tolist()):
            buf.write(f"{p},{a},{c:.17g},{int(r)}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, source_id: str, limit: int | None = None) -> "AngleSet":
        rows = list(csv.reader(io.StringIO(text)))
        body = rows[1:]
        return cls(source_id, [int(r[0]) for r in body], [int(r[1]) for r in body],
                   [float(r[2]) for r in body], [r[3] == "1" for r in body], limit)


def _compute_delta(X: int) -> AngleSet:
    ps = primes_up_to(X)
    t = tau_table(X, cap=DeltaForm.cap)
    a_raw = [t[int(p)] for p in ps]
    cos = [normalize(a, int(p), 12) for a, p in zip(a_raw, ps)]
    return AngleSet(DeltaForm.source_id, ps, a_raw, cos, np.zeros(ps.size, dtype=bool), X)


def _compute_ec(src: EllipticCurve, X: int, threads: int) -> AngleSet:
    if X > EC_CAP:
        raise ValueError(f"X = {X} exceeds the elliptic cap {EC_CAP}")
    ps = primes_up_to(X)
    ap, bad = ec_ap_array(src.a, src.b, ps, threads=threads)
    cos = np.where(bad, 0.0, ap / (2.0 * np.sqrt(ps)))
    return AngleSet(src.source_id, ps, ap.tolist(), cos, bad, X)


def _truthy(text: str, lineno: int) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes"):
        return True
    if t in ("0", "false", "no", ""):
        return False
    raise FileSourceError(f"line {lineno}: bad ramified flag {text!r}")


def load_file_source(src: FileSource, X: int | None = None) -> AngleSet:
    """Read a CSV with header p,a_raw,weight,ramified and normalize each row."""
    path = Path(src.path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileSourceError(f"cannot read {path}: {exc}") from exc
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [h.strip() for h in rows[0]] != ["p", "a_raw", "weight", "ramified"]:
        raise FileSourceError("line 1: header must be p,a_raw,weight,ramified")
    recs = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise FileSourceError(f"line {lineno}: expected 4 fields, got {len(row)}")
        try:
            p, a, w = int(row[0]), int(row[1]), int(row[2])
        except ValueError as exc:
            raise FileSourceError(f"line {lineno}: {exc}") from exc
        if p < 2 or w < 1:
            raise FileSourceError(f"line {lineno}: need p >= 2 and weight >= 1")
        ram = _truthy(row[3], lineno)
        cos = normalize(a, p, w)
        if not ram and abs(cos) > 1.0:
            raise FileSourceError(
                f"line {lineno}: |cos theta| = {abs(cos):.6g} > 1 at unramified p = {p}")
        if X is None or p <= X:
            recs.append((p, a, cos, ram, lineno))
    recs.sort()
    for (p1, *_), (p2, *rest) in zip(recs, recs[1:]):
        if p1 == p2:
            raise FileSourceError(f"line {rest[-1]}: duplicate prime {p2}")
    return AngleSet(src.source_id, [r[0] for r in recs], [r[1] for r in recs],
                    [r[2] for r in recs], [r[3] for r in recs])


def cache_path(source, X: int, cache_dir: str | os.PathLike) -> Path:
    key = hashlib.sha256(f"{source.source_id}|X={X}".encode()).hexdigest()[:24]
    return Path(cache_dir) / f"angles-{key}.csv"


def _default_cache_dir() -> str | None:
    return os.environ.get(CACHE_ENV) or None


def angles(source, X: int, cache_dir: str | os.PathLike | None = None,
           threads: int = 1, use_cache: bool = True) -> AngleSet:
    """Angle data for all primes p <= X, ordered by p, cached as CSV."""
    if X < 2:
        raise ValueError("X must be at least 2")
    if isinstance(source, FileSource):
        return load_file_source(source, X)
    cache_dir = cache_dir if cache_dir is not None else _default_cache_dir()
    path = cache_path(source, X, cache_dir) if (cache_dir and use_cache) else None
    if path is not None and path.exists():
        return AngleSet.from_csv(path.read_text(), source.source_id, X)
    if isinstance(source, DeltaForm):
        data = _compute_delta(X)
    elif isinstance(source, EllipticCurve):
        data = _compute_ec(source, X, threads)
    else:
        raise TypeError(f"unsupported source {source!r}")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        # write-then-rename keeps readers from seeing partial files
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(data.to_csv())
        os.replace(tmp, path)
    return data


def symn_lambda(n: int, m: int, cos_theta):
    """U_n(cos(m theta)): the Sym^n coefficient at p^m (up to the log p factor)."""
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    c = np.asarray(cos_theta, dtype=float)
    if m > 1:
        # cos(m theta) = T_m(cos theta)
        c = np.polynomial.chebyshev.chebval(c, [0.0] * m + [1.0])
    return eval_U(n, c)


def parse_source(spec: str):
    """``delta``, ``ec:A,B`` or ``file:PATH``."""
    spec = spec.strip()
    if spec == "delta":
        return DeltaForm()
    if spec.startswith("ec:"):
        try:
            a, b = (int(v) for v in spec[3:].split(","))
        except ValueError as exc:
            raise ValueError(f"bad curve spec {spec!r}; expected ec:A,B") from exc
        return EllipticCurve(a, b)
    if spec.startswith("file:"):
        return FileSource(spec[5:])
    raise ValueError(f"unknown source {spec!r}")
