"""Exact Iwasawa invariants of Z_ell-towers of voltage multigraphs."""

from .errors import IwagraphError
from .multigraph import Multigraph, bouquet, spanning_tree_count
from .padic import PadicInt, quadratic_character, val_ell
from .series import VoltageAssignment, char_poly_exact, char_series_truncated
from .invariants import compute_invariants, mu_lambda, nu_fit

__all__ = [
    "IwagraphError", "Multigraph", "bouquet", "spanning_tree_count", "PadicInt",
    "quadratic_character", "val_ell", "VoltageAssignment", "char_poly_exact",
    "char_series_truncated", "compute_invariants", "mu_lambda", "nu_fit",
]

__version__ = "0.1.0"
