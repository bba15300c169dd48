"""Census of mod p eigensystems of level one cusp forms via p-good Hecke operators."""

from .census import PrimeCensusRow, WeightReport, find_p_good, prime_census, weight_census
from .criteria import corp_check
from .intpoly import CharpolyCache, IntMatrix, IntPoly, charpoly, discriminant, hecke_matrix
from .kernels import BACKEND
from .modpoly import ModPoly, distinct_root_count, linking_number
from .qseries import QSeries, delta, dim_cusp, eisenstein_series, miller_basis

__all__ = [
    "BACKEND",
    "CharpolyCache",
    "IntMatrix",
    "IntPoly",
    "ModPoly",
    "PrimeCensusRow",
    "QSeries",
    "WeightReport",
    "charpoly",
    "corp_check",
    "delta",
    "dim_cusp",
    "discriminant",
    "distinct_root_count",
    "eisenstein_series",
    "find_p_good",
    "hecke_matrix",
    "linking_number",
    "miller_basis",
    "prime_census",
    "weight_census",
]
