"""cdgalab: exact computer algebra for commutative differential graded algebras.

Everything is computed over the rationals with `fractions.Fraction`, so
Betti numbers, kernels and the various model constructions are exact and
reproducible.
"""

from .gca import (
    Element,
    EngineError,
    GcaError,
    GeneratorSet,
    format_element,
    koszul_product,
    multiply,
    parse_element,
)
from .cdga import (
    CDGA,
    CdgaError,
    ContractionFamily,
    Derivation,
    DSquaredReport,
    SubCDGA,
    apply_derivation,
    apply_differential,
    contraction_dual_to,
    graded_commutator,
    kernel_subcdga,
    make_subcdga,
)
from .homology import (
    CohomologyClass,
    CohomologyData,
    HomologyError,
    boundary_matrix,
    class_of,
    class_power_index,
    cohomology,
    cup,
)
from .lie import (
    JacobiViolation,
    LieAlgebraSpec,
    LieError,
    Subspace,
    change_basis,
    check_jacobi,
    chevalley_eilenberg,
    classify_heisenberg_type,
    derived_and_center,
    heisenberg_adapted_basis,
    heisenberg_sum,
    is_nilpotent,
    lower_central_series,
    skew_normal_form,
)
from .models import (
    AlmostFormalPresentation,
    AutomorphismSpec,
    DecompositionResult,
    HirschData,
    LinearChainMap,
    ModelError,
    MorphismSpec,
    QuasiIsoReport,
    RankResult,
    almost_formal_index,
    ce_almost_formal_presentation,
    check_quasi_iso,
    chevalley_decompose,
    hirsch_extend,
    inclusion_map,
    invariant_subcomplex,
    mapping_torus_model,
    rank_of_form,
)

__version__ = "0.1.0"

__all__ = [
    "CDGA",
    "AlmostFormalPresentation",
    "AutomorphismSpec",
    "CdgaError",
    "CohomologyClass",
    "CohomologyData",
    "ContractionFamily",
    "DecompositionResult",
    "Derivation",
    "DSquaredReport",
    "Element",
    "EngineError",
    "GcaError",
    "GeneratorSet",
    "HirschData",
    "HomologyError",
    "JacobiViolation",
    "LieAlgebraSpec",
    "LieError",
    "LinearChainMap",
    "ModelError",
    "MorphismSpec",
    "QuasiIsoReport",
    "RankResult",
    "SubCDGA",
    "Subspace",
    "almost_formal_index",
    "apply_derivation",
    "apply_differential",
    "boundary_matrix",
    "ce_almost_formal_presentation",
    "change_basis",
    "check_jacobi",
    "check_quasi_iso",
    "chevalley_decompose",
    "chevalley_eilenberg",
    "class_of",
    "class_power_index",
    "classify_heisenberg_type",
    "cohomology",
    "contraction_dual_to",
    "cup",
    "derived_and_center",
    "format_element",
    "graded_commutator",
    "heisenberg_adapted_basis",
    "heisenberg_sum",
    "hirsch_extend",
    "inclusion_map",
    "invariant_subcomplex",
    "is_nilpotent",
    "kernel_subcdga",
    "koszul_product",
    "lower_central_series",
    "make_subcdga",
    "mapping_torus_model",
    "multiply",
    "parse_element",
    "rank_of_form",
    "skew_normal_form",
]
