"""Rational models of mapping spaces: Sullivan algebras, Haefliger models,
cohomology, homotopy and Hurewicz ranks, and formality evidence."""

from .cdga import (CDGAMorphism, FiniteCDGA, RankTable, SullivanAlgebra, bigraded_model,
                   cohomology, formality_report, formality_witness_linear, homotopy_ranks,
                   hurewicz_ranks, minimal_model, triple_massey, validate, verify_quasi_iso)
from .gca import (Derivation, FreeGCA, Generator, Polynomial, WeightedGrading,
                  apply_derivation, euler_identity_check, multiply, normalize_monomial,
                  partial_derivative)
from .io import format_space, load, parse, parse_polynomial
from .mapmodel import (basis_split, finite_model_from_minimal, haefliger_model,
                       homotopy_formula, hurewicz_vanishing_check, theorem2_quotient,
                       thom_splitting_check)

__version__ = "0.1.0"
