"""Sym^N-minorants of interval indicators under the Sato-Tate measure."""

__version__ = "0.1.0"

from .chebyshev import ChebSeries, MonomialPoly
from .measure import IntervalSet, mu_st

__all__ = ["ChebSeries", "MonomialPoly", "IntervalSet", "mu_st", "__version__"]
