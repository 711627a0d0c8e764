"""
quotient_germs - fundamental cycles, log discrepancies and lc thresholds of
quotient surface singularities, computed in exact rational arithmetic.
"""

__version__ = "0.1.0"

from .errors import QuotientGermsError
from .exact_core import NOT_LC, format_rational, to_rational
from .fundamental_cycle import brute_force_fundamental_cycle, laufer_fundamental_cycle
from .hj_cyclic import cyclic_graph, hj_evaluate, hj_expand
from .log_discrepancy import (
    BoundaryData,
    lct_maximal_ideal,
    mld_over_point,
    verify_surface_bound,
)
from .monomial_plane import MonomialBoundary, monomial_lct, monomial_mld
from .quotient_catalog import Family, catalog_entry
from .resolution_graph import Cycle, ResolutionGraph

__all__ = [
    "__version__",
    "NOT_LC",
    "BoundaryData",
    "Cycle",
    "Family",
    "MonomialBoundary",
    "QuotientGermsError",
    "ResolutionGraph",
    "brute_force_fundamental_cycle",
    "catalog_entry",
    "cyclic_graph",
    "format_rational",
    "hj_evaluate",
    "hj_expand",
    "laufer_fundamental_cycle",
    "lct_maximal_ideal",
    "mld_over_point",
    "monomial_lct",
    "monomial_mld",
    "to_rational",
    "verify_surface_bound",
]
