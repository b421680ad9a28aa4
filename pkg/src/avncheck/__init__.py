"""Numerical and exhaustive-search checks of all-versus-nothing arguments.

Submodules, bottom up: :mod:`linalg` (dense operators), :mod:`hilbert`
(spaces, labels, permutations), :mod:`states`, :mod:`symmetrize`,
:mod:`hv` (hidden-variable search), :mod:`scenarios` (the catalogue),
:mod:`scenario_file` and :mod:`cli`.
"""
from .hv import Constraint, Scenario, SearchResult, search
from .linalg import Operator, StateVector
from .scenarios import CATALOG, Conclusion, VerificationReport, run_catalog

__all__ = [
    "CATALOG",
    "Conclusion",
    "Constraint",
    "Operator",
    "Scenario",
    "SearchResult",
    "StateVector",
    "VerificationReport",
    "run_catalog",
    "search",
]
__version__ = "0.1.0"
