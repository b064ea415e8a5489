"""Colored Jones polynomials of (2,2b+1)-cables of the figure-eight knot.

Exact Laurent-polynomial invariants, high-precision growth rates against
the dilogarithm limit S(xi), the associated SL(2,R) representations, and
Chern-Simons invariants of the knot exteriors.
"""

from .asymptotics import GrowthRow, MaxTermReport, S_of_xi, growth_table, growth_table_fig8, kappa, max_term, phi
from .chern_simons import CSResult, cs_cable, cs_fig8, integral_log_ell
from .jones import (
    CableSpec,
    JonesValue,
    TermIndex,
    alexander_cable,
    alexander_fig8,
    cable_poly,
    eval_cable_jones,
    eval_fig8_jones,
    habiro_fig8_poly,
)
from .laurent import LaurentPoly, NotDivisibleError
from .numerics import DomainError, PrecisionContext, Real
from .representation import Mat2, RepData, build_rep, delta, ell, verify_relations

__version__ = "0.1.0"

__all__ = [
    "CSResult",
    "CableSpec",
    "DomainError",
    "GrowthRow",
    "JonesValue",
    "LaurentPoly",
    "Mat2",
    "MaxTermReport",
    "NotDivisibleError",
    "PrecisionContext",
    "Real",
    "RepData",
    "S_of_xi",
    "TermIndex",
    "alexander_cable",
    "alexander_fig8",
    "build_rep",
    "cable_poly",
    "cs_cable",
    "cs_fig8",
    "delta",
    "ell",
    "eval_cable_jones",
    "eval_fig8_jones",
    "growth_table",
    "growth_table_fig8",
    "habiro_fig8_poly",
    "integral_log_ell",
    "kappa",
    "max_term",
    "phi",
    "verify_relations",
    "__version__",
]
