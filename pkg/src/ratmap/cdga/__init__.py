from .algebras import (FiniteCDGA, SullivanAlgebra, ValidationReport, Violation,
                       validate)
from .cohomology import (CohomologyResult, DegreeCohomology, RankTable, cohomology,
                         cohomology_ranks, degree_data, homotopy_ranks, hurewicz_data,
                         hurewicz_ranks, linear_complex)
from .formality import FormalityReport, formality_report, generator_count_mismatch
from .massey import MasseyError, MasseyResult, massey_search, triple_massey
from .models import (PreconditionError, bigraded_model, cohomology_algebra,
                     formality_witness_linear, minimal_model)
from .morphisms import CDGAMorphism, QuasiIsoReport, identity, verify_quasi_iso

__all__ = [
    "FiniteCDGA", "SullivanAlgebra", "ValidationReport", "Violation", "validate",
    "CohomologyResult", "DegreeCohomology", "RankTable", "cohomology", "cohomology_ranks",
    "degree_data", "homotopy_ranks", "hurewicz_data", "hurewicz_ranks", "linear_complex",
    "FormalityReport", "formality_report", "generator_count_mismatch",
    "MasseyError", "MasseyResult", "massey_search", "triple_massey",
    "PreconditionError", "bigraded_model", "cohomology_algebra",
    "formality_witness_linear", "minimal_model",
    "CDGAMorphism", "QuasiIsoReport", "identity", "verify_quasi_iso",
]
