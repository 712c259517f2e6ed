"""Sieved arithmetic functions, exact log identities and prime-pattern tables."""

from .constellations import ConstellationSpec, QuadraticPolynomial, count, inversion_rhs, weighted_sum_lhs
from .exact_logs import LogBilinear, LogCombination, bilinear_product, combine, evaluate
from .sieve_core import SieveRangeError, SieveSizeError, SieveTables, arithmetic_value, build_tables, summatory

__all__ = [
    "ConstellationSpec",
    "LogBilinear",
    "LogCombination",
    "QuadraticPolynomial",
    "SieveRangeError",
    "SieveSizeError",
    "SieveTables",
    "arithmetic_value",
    "bilinear_product",
    "build_tables",
    "combine",
    "count",
    "evaluate",
    "inversion_rhs",
    "summatory",
    "weighted_sum_lhs",
]
