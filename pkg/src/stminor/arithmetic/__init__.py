"""Satake-angle data for elliptic curves, the Delta form, and CSV files."""

from .angles import (AngleRecord, AngleSet, DeltaForm, EllipticCurve, FileSource,
                     FileSourceError, angles, parse_source, symn_lambda)
from .elliptic import ec_ap, ec_ap_bruteforce
from .modular import tau, tau_table
from .primes import primes_between, primes_up_to

__all__ = [
    "AngleRecord", "AngleSet", "DeltaForm", "EllipticCurve", "FileSource",
    "FileSourceError", "angles", "parse_source", "symn_lambda", "ec_ap",
    "ec_ap_bruteforce", "tau", "tau_table", "primes_between", "primes_up_to",
]
