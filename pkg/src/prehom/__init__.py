"""Exact computations for Lie algebras of linear vector fields.

Open-orbit certificates, linear free divisors, basic relative invariants with
their infinitesimal characters, and additive relative invariants, all over
the rationals.
"""

from .invariants import (AdditiveInvariant, SemiInvariant, additive_invariants, basic_relative_invariants,
                         partial_fraction_split, semiinvariants_of_degree, verify_additive)
from .linalg import RatMatrix, Subspace
from .liealg import LieAlgebraVF, LinVectorField, apply_derivation, vf_bracket
from .parser import parse_poly
from .pvscore import PVSpace, certify, is_linear_free_divisor, linear_logarithmic_fields
from .ratpoly import Poly, UniPoly
from .report import AnalysisReport, load_input, run_analysis

__version__ = "0.1.0"

__all__ = [
    "AdditiveInvariant", "AnalysisReport", "LieAlgebraVF", "LinVectorField", "PVSpace", "Poly",
    "RatMatrix", "SemiInvariant", "Subspace", "UniPoly", "additive_invariants", "apply_derivation",
    "basic_relative_invariants", "certify", "is_linear_free_divisor", "linear_logarithmic_fields",
    "load_input", "parse_poly", "partial_fraction_split", "run_analysis", "semiinvariants_of_degree",
    "verify_additive", "vf_bracket",
]
