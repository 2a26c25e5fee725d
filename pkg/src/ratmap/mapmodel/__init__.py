from .finite import (BasisSplit, ModelError, basis_split, finite_model_from_minimal,
                     finite_model_with_projection, top_cohomology_degree)
from .haefliger import (HaefligerModel, HypothesisError, TensorCDGA, ThomReport,
                        free_algebra_ranks, haefliger_model, homology_table,
                        homotopy_comparison, homotopy_formula, thom_splitting_check)
from .theorem2 import (QuotientComplex, VanishingReport, hurewicz_vanishing_check,
                       theorem2_quotient)

__all__ = [
    "BasisSplit", "ModelError", "basis_split", "finite_model_from_minimal",
    "finite_model_with_projection", "top_cohomology_degree",
    "HaefligerModel", "HypothesisError", "TensorCDGA", "ThomReport", "free_algebra_ranks",
    "haefliger_model", "homology_table", "homotopy_comparison", "homotopy_formula",
    "thom_splitting_check",
    "QuotientComplex", "VanishingReport", "hurewicz_vanishing_check", "theorem2_quotient",
]
