"""Exact certification of p-adic equiangular lines in Q_p^d.

The package works entirely in exact arithmetic: rationals via
`fractions.Fraction`, p-adic absolute values as stored exponents.  See
`padic` for the valuation toolkit, `linalg` for exact matrices and the
eigenvalue ladder, `equiangular` for certification and bounds, `search`
for the lattice search harness, and `cli` for the command-line interface.
"""

__version__ = "0.1.0"

from .equiangular import (
    BoundReport,
    Certificate,
    Configuration,
    bound_classical_gerzon,
    bound_classical_relative,
    bound_ga_relative,
    bound_ga_welch,
    bound_padic_relative,
    bound_padic_welch,
    certify,
    check_condition_i,
    check_condition_ii,
    check_condition_iii,
    check_tight_frame,
)
from .padic import PadicAbs, Prime, abs_max, abs_p, valuation
from .search import SearchResult, SearchSpace, run_search

__all__ = [
    "__version__",
    "PadicAbs",
    "Prime",
    "valuation",
    "abs_p",
    "abs_max",
    "Configuration",
    "Certificate",
    "BoundReport",
    "certify",
    "check_condition_i",
    "check_condition_ii",
    "check_condition_iii",
    "check_tight_frame",
    "bound_padic_relative",
    "bound_padic_welch",
    "bound_ga_relative",
    "bound_ga_welch",
    "bound_classical_relative",
    "bound_classical_gerzon",
    "SearchSpace",
    "SearchResult",
    "run_search",
]
