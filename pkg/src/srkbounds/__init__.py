"""Upper bounds on the size of sum-rank-metric codes.

Spectral Ratio-Type and minor-LP bounds on the k-independence number of the
sum-rank-metric graph, the classical coding-theoretic bounds they are
compared with, and a brute-force oracle for small graphs.
"""

from __future__ import annotations

from .bounds_classical import BoundValue, all_classical, classical_bound
from .bounds_spectral import ratio_type, ratio_type_d3, ratio_type_d4, ratio_type_generic
from .core import ParameterError, SrkParams, normalize_params
from .lp_minor import lp_bound
from .msrd import msrd_exclusion, msrd_scan, msrd_threshold_t
from .spectra import Spectrum, classify_distance_regular, srk_spectrum

__version__ = "0.1.0"

__all__ = [
    "BoundValue",
    "ParameterError",
    "Spectrum",
    "SrkParams",
    "all_classical",
    "classical_bound",
    "classify_distance_regular",
    "lp_bound",
    "msrd_exclusion",
    "msrd_scan",
    "msrd_threshold_t",
    "normalize_params",
    "ratio_type",
    "ratio_type_d3",
    "ratio_type_d4",
    "ratio_type_generic",
    "srk_spectrum",
]
