"""Command-line interface: ``stminor <subcommand> ...``.

Every subcommand prints one JSON document {"manifest": ..., "result": ...}
with sorted keys, so identical inputs give identical bytes.  ``--pretty``
prints an aligned text table instead.  Exit codes: 0 success, 2 invalid
input, 3 solver status Unresolved.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import os
import re
import sys
from pathlib import Path

from . import __version__

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNRESOLVED = 3


class InvalidInput(Exception):
    pass


def _interval(text: str):
    from .measure import IntervalParseError, IntervalSet

    try:
        return IntervalSet.parse(text)
    except IntervalParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _source(tokens: list[str]):
    from .arithmetic.angles import DeltaForm, EllipticCurve, FileSource, parse_source

    if len(tokens) == 1:
        return parse_source(tokens[0])
    if tokens[0] == "ec" and len(tokens) == 3:
        return EllipticCurve(int(tokens[1]), int(tokens[2]))
    if tokens[0] == "file" and len(tokens) == 2:
        return FileSource(tokens[1])
    if tokens == ["delta"]:
        return DeltaForm()
    raise ValueError(f"bad --source {' '.join(tokens)!r}")


def _file_hash(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _manifest(args: argparse.Namespace, inputs: dict) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items())
             if k not in ("func", "pretty") and not k.startswith("_")}
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    return {
        "subcommand": args.command,
        "flags": _jsonable(flags),
        "input_hashes": inputs,
        "tool_version": __version__,
        "timestamp": int(epoch) if epoch and epoch.isdigit() else None,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if hasattr(obj, "item"):
        return _jsonable(obj.item())
    return str(obj)


def _pretty(result, indent: str = "") -> str:
    lines = []
    if isinstance(result, dict):
        width = max((len(str(k)) for k in result), default=0)
        for k in sorted(result):
            v = result[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{indent}{k}")
                lines.append(_pretty(v, indent + "  "))
            else:
                lines.append(f"{indent}{str(k):<{width}}  {_fmt(v)}")
    elif isinstance(result, list):
        for i, v in enumerate(result):
            if isinstance(v, dict):
                lines.append(f"{indent}[{i}]")
                lines.append(_pretty(v, indent + "  "))
            else:
                lines.append(f"{indent}{_fmt(v)}")
    else:
        lines.append(f"{indent}{_fmt(result)}")
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


# -- subcommands -----------------------------------------------------------------

def cmd_measure(args):
    from .measure import mu_st

    return {"interval_set": str(args.interval), "mu_st": mu_st(args.interval)}, EXIT_OK


def _cert_result(cert):
    from .minorant import Status

    code = EXIT_UNRESOLVED if cert.status is Status.UNRESOLVED else EXIT_OK
    out = cert.to_dict()
    if cert.fallback_bound is not None:
        out["fallback_bound"] = cert.fallback_bound
    return out, code


def cmd_minorize(args):
    from .minorant import solve_minorant

    _check_N(args.N)
    return _cert_result(solve_minorant(args.interval, args.N, tol=args.tol))


def cmd_majorize(args):
    from .minorant import solve_majorant

    _check_N(args.N)
    return _cert_result(solve_majorant(args.interval, args.N, tol=args.tol))


def _check_N(N: int):
    from .chebyshev import DEGREE_CAP

    if not 0 <= N <= DEGREE_CAP:
        raise InvalidInput(f"N must lie in [0, {DEGREE_CAP}]")


def cmd_classify(args):
    from .sym4 import classify

    return classify(args.a, args.b).to_dict(), EXIT_OK


def cmd_proportion(args):
    from .sym4 import proportion_minorizable

    return proportion_minorizable(samples=args.samples, seed=args.seed), EXIT_OK


def cmd_thresholds(args):
    from .sym4 import measure_thresholds

    return measure_thresholds(), EXIT_OK


def cmd_selberg(args):
    from .extremal import selberg_B_bound, selberg_degree, selberg_minorant
    from .measure import mu_st

    I = args.interval
    if len(I) != 1:
        raise InvalidInput("selberg needs a single interval")
    mu = mu_st(I)
    N = args.N
    if N is None:
        if args.delta is None:
            raise InvalidInput("give N or --delta")
        N = selberg_degree(mu, args.delta)
    _check_N(N)
    cert = selberg_minorant(I, N, tol=args.tol)
    out, code = _cert_result(cert)
    out["mu_st"] = mu
    if args.delta is not None:
        out["delta"] = args.delta
        out["degree_condition"] = N >= 4 * (1 + args.delta) / mu - 1 - 1e-12
        out["B_bound"] = selberg_B_bound(mu, args.delta)
        out["B_within_bound"] = cert.B is not None and cert.B <= out["B_bound"]
    return out, code


def cmd_extreme(args):
    from .extremal import extreme_integral, extreme_minorant, extreme_threshold

    cert = extreme_minorant(args.n, args.a, verify=args.verify)
    out = cert.to_dict()
    out["integral_formula"] = float(extreme_integral(args.n, args.a))
    out["threshold_a"] = extreme_threshold(args.n)
    return out, EXIT_OK


def _load(args):
    from .arithmetic.angles import FileSource, angles

    src = _source(args.source)
    data = angles(src, args.limit, cache_dir=args.cache_dir, threads=args.threads)
    hashes = {"source": src.source_id}
    if isinstance(src, FileSource):
        hashes["file_sha256"] = _file_hash(src.path)
    return data, hashes


def cmd_angles(args):
    import numpy as np

    data, hashes = _load(args)
    text = data.to_csv()
    if args.csv:
        Path(args.csv).write_text(text)
    good = ~data.ramified
    out = {
        "source": data.source_id,
        "limit": args.limit,
        "n_primes": len(data),
        "n_ramified": int(np.count_nonzero(data.ramified)),
        "max_abs_cos_good": float(np.max(np.abs(data.cos_theta[good]))) if good.any() else None,
        "csv_sha256": hashlib.sha256(text.encode()).hexdigest(),
        "head": [
            {"p": r.p, "a_raw": r.a_raw, "cos_theta": r.cos_theta, "ramified": r.ramified}
            for r in (data[i] for i in range(min(args.head, len(data))))
        ],
    }
    return out, EXIT_OK, hashes


def cmd_moments(args):
    from .harness import chebyshev_moment_test

    data, hashes = _load(args)
    x = args.x if args.x is not None else args.limit
    means = chebyshev_moment_test(data, args.nmax, x)
    return {"x": x, "means": {str(n + 1): m for n, m in enumerate(means)}}, EXIT_OK, hashes


def _maybe_cert(args, I):
    if args.N is None:
        return None
    from .minorant import Status, solve_minorant

    cert = solve_minorant(I, args.N, tol=args.tol)
    return cert if cert.status is Status.FEASIBLE else None


def cmd_scan(args):
    from .harness import hoheisel_scan, reports_to_csv

    data, hashes = _load(args)
    cert = _maybe_cert(args, args.interval)
    reports = hoheisel_scan(data, args.interval, args.x0, args.delta, args.steps,
                            certificate=cert, growth=args.growth)
    if args.csv:
        Path(args.csv).write_text(reports_to_csv(reports))
    out = {"windows": [r.to_dict() for r in reports],
           "certificate": None if cert is None else cert.to_dict()}
    return out, EXIT_OK, hashes


def cmd_leastprime(args):
    from .harness import least_prime_in_interval
    from .toolkit import RepresentationParams, least_prime_log_bound, load_constants

    data, hashes = _load(args)
    if args.weight is None:
        args.weight = 12 if data.source_id == "delta" else 2
    out = least_prime_in_interval(data, args.interval)
    cert = _maybe_cert(args, args.interval)
    if args.N is not None:
        out["certificate_status"] = "Feasible" if cert is not None else "not Feasible"
    if cert is not None:
        consts = load_constants(args.config)
        # archimedean parameters of a weight-k newform: (k-1)/2 and (k+1)/2
        k = args.weight
        r = RepresentationParams(d=2, q=args.q, kappas=((k - 1) / 2, (k + 1) / 2))
        bound = least_prime_log_bound(args.N, cert.B, r, consts)
        out.update({"N": args.N, "B": cert.B, "log_bound": bound,
                    "log_p_within_bound": out["log_p"] is not None and out["log_p"] <= bound})
    return out, EXIT_OK, hashes


def cmd_constants(args):
    from .toolkit import RepresentationParams, evaluate_all, load_constants

    consts = load_constants(args.config)
    kappas = tuple(complex(k) for k in args.kappas.split(",")) if args.kappas else (0.0,) * (
        args.d * args.field_degree)
    r = RepresentationParams(d=args.d, q=args.q, kappas=kappas,
                             field_degree=args.field_degree, disc=args.disc)
    out = evaluate_all(r, args.N, args.B, consts)
    out["constants"] = consts.to_dict()
    hashes = {"config_sha256": _file_hash(args.config)} if args.config else {}
    return out, EXIT_OK, hashes


# -- parser ------------------------------------------------------------------------

def _common_flags(sub: bool) -> argparse.ArgumentParser:
    # subcommand copies must not reset flags already given before the subcommand
    d = (lambda v: argparse.SUPPRESS) if sub else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=d(False),
                        help="aligned text instead of JSON")
    common.add_argument("--threads", type=int, default=d(1), help="worker threads (default 1)")
    common.add_argument("--cache-dir", default=d(None),
                        help="angle cache directory (default $STMINOR_CACHE_DIR)")
    common.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(sub=False)
    p = argparse.ArgumentParser(prog="stminor", parents=[common],
                                description="Sato-Tate minorants and empirical checks")
    p.add_argument("--version", action="version", version=f"stminor {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub_common = _common_flags(sub=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[sub_common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("measure", cmd_measure, "Sato-Tate measure of an interval set")
    sp.add_argument("interval", type=_interval)

    for name, func, what in (("minorize", cmd_minorize, "minorant"),
                             ("majorize", cmd_majorize, "majorant")):
        sp = add(name, func, f"optimal degree-N {what}")
        sp.add_argument("interval", type=_interval)
        sp.add_argument("N", type=int)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--json", action="store_true", help="JSON output (the default)")

    sp = add("classify", cmd_classify, "closed-form degree-4 verdict for [a, b]")
    sp.add_argument("a", type=float)
    sp.add_argument("b", type=float)

    sp = add("proportion", cmd_proportion, "share of [a, b] with a degree-4 minorant")
    sp.add_argument("--samples", type=int, default=1 << 24)
    sp.add_argument("--seed", type=int, default=20240101)

    add("thresholds", cmd_thresholds, "measure thresholds for degree-4 minorization")

    sp = add("selberg", cmd_selberg, "Selberg minorant of one interval")
    sp.add_argument("interval", type=_interval)
    sp.add_argument("N", type=int, nargs="?")
    sp.add_argument("--delta", type=float, default=None)
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = add("extreme", cmd_extreme, "(x^2 - a^2) x^(2n-2) minorant")
    sp.add_argument("n", type=int)
    sp.add_argument("a", type=float)
    sp.add_argument("--verify", action="store_true", help="also certify the slack")

    def data_args(sp, interval=False):
        sp.add_argument("--source", nargs="+", required=True,
                        help="delta | ec A B | file PATH (or ec:A,B, file:PATH)")
        sp.add_argument("--limit", type=int, required=True, help="prime limit X")
        if interval:
            sp.add_argument("--interval", type=_interval, required=True)

    sp = add("angles", cmd_angles, "Satake-angle data")
    data_args(sp)
    sp.add_argument("--csv", default=None, help="write the full table here")
    sp.add_argument("--head", type=int, default=10)

    sp = add("moments", cmd_moments, "log-weighted means of U_n(cos theta_p)")
    data_args(sp)
    sp.add_argument("--nmax", type=int, default=4)
    sp.add_argument("--x", type=float, default=None)

    sp = add("scan", cmd_scan, "short-interval counts at geometric x")
    data_args(sp, interval=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--steps", type=int, default=5)
    sp.add_argument("--growth", type=float, default=2.0)
    sp.add_argument("--N", type=int, default=None, help="attach a degree-N minorant floor")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--csv", default=None)

    sp = add("leastprime", cmd_leastprime, "least good prime with cos theta_p in I")
    data_args(sp, interval=True)
    sp.add_argument("--N", type=int, default=None, help="compare with the degree-N bound")
    sp.add_argument("--q", type=int, default=1, help="arithmetic conductor for the bound")
    sp.add_argument("--weight", type=int, default=None,
                    help="weight for the bound (default: 12 for delta, 2 otherwise)")
    sp.add_argument("--config", default=None)
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = add("constants", cmd_constants, "evaluate the parametric bounds")
    sp.add_argument("--config", default=None, help="JSON file of constants")
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--kappas", default=None, help="comma-separated complex numbers")
    sp.add_argument("--field-degree", type=int, default=1)
    sp.add_argument("--disc", type=int, default=1)
    sp.add_argument("--N", type=int, default=4)
    sp.add_argument("--B", type=float, default=1.0)
    return p


_NEG_INTERVAL = re.compile(r"^-[\d.][^:]*:")


def _protect_intervals(argv: list[str]) -> list[str]:
    # argparse reads "-1:0.5" as an option; a leading space keeps it positional
    # and IntervalSet.parse strips it again
    return [" " + a if _NEG_INTERVAL.match(a) else a for a in argv]


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    argv = _protect_intervals(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr)
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INVALID
    try:
        res = args.func(args)
    except (InvalidInput, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    result, code = res[0], res[1]
    inputs = res[2] if len(res) > 2 else {}
    doc = {"manifest": _manifest(args, inputs), "result": _jsonable(result)}
    if args.pretty:
        stdout.write(_pretty(doc) + "\n")
    else:
        stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    return code


def main() -> None:
    sys.exit(run())
