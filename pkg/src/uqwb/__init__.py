"""uqwb: exact-arithmetic workbench for the unrolled restricted
quantum group of sl2 at a root of unity.

All computations are exact over Q(zeta_M)(tau): modules are explicit
matrix representations, every construction is re-verified against the
defining relations, and structural claims (filtrations, composition
series, projective covers, BGG reciprocity) are certified by linear
algebra with no floating point.
"""

from .algebra import (
    AlgebraElement,
    act,
    antipode_map,
    coproduct_expand,
    counit,
    omega_map,
    pbw_normal_form,
)
from .errors import (
    ConstructionError,
    DiagnosticError,
    ModeUnsupportedError,
    ModuleInvalidError,
    PoleError,
    RejectedInputError,
    UqwbError,
)
from .projectives import (
    build_projective_cover,
    build_via_tensor_summand,
    casimir_eigenvalue,
    casimir_matrix,
    certify_projcover_structure,
    generator_index,
    proj_index,
    verify_dominant_generation,
)
from .repmod import (
    ModuleRep,
    WeightLabel,
    build_dual,
    build_generalized_verma,
    build_one_dim,
    build_simple,
    build_tensor,
    derive_K,
    direct_sum,
    dump_module,
    dump_module_json,
    load_module,
    load_module_json,
    verify_relations,
    weight_decomposition,
)
from .session import MODE_EXPONENTIAL, MODE_PAPER_LITERAL, Session
from .structure import (
    FiltrationCertificate,
    SubmoduleBasis,
    atypical_decompose,
    bgg_table,
    dominant_vectors,
    extract_costandard_filtration,
    extract_standard_filtration,
    highest_weight_vectors,
    is_generalized_verma,
    iso_test,
    jordan_holder,
    leading_dominant_vectors,
    quotient_module,
    simple_label,
    socle_counts,
    standard_top_surjection,
    submodule_generated,
    submodule_to_module,
    typicality,
    verify_filtration_certificate,
    verma_splitting_section,
    weight_split,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "ConstructionError",
    "DiagnosticError",
    "FiltrationCertificate",
    "MODE_EXPONENTIAL",
    "MODE_PAPER_LITERAL",
    "ModeUnsupportedError",
    "ModuleInvalidError",
    "ModuleRep",
    "PoleError",
    "RejectedInputError",
    "Session",
    "SubmoduleBasis",
    "UqwbError",
    "WeightLabel",
    "act",
    "antipode_map",
    "atypical_decompose",
    "bgg_table",
    "build_dual",
    "build_generalized_verma",
    "build_one_dim",
    "build_projective_cover",
    "build_simple",
    "build_tensor",
    "build_via_tensor_summand",
    "casimir_eigenvalue",
    "casimir_matrix",
    "certify_projcover_structure",
    "coproduct_expand",
    "counit",
    "derive_K",
    "direct_sum",
    "dominant_vectors",
    "dump_module",
    "dump_module_json",
    "extract_costandard_filtration",
    "extract_standard_filtration",
    "generator_index",
    "highest_weight_vectors",
    "is_generalized_verma",
    "iso_test",
    "jordan_holder",
    "leading_dominant_vectors",
    "load_module",
    "load_module_json",
    "omega_map",
    "pbw_normal_form",
    "proj_index",
    "quotient_module",
    "simple_label",
    "socle_counts",
    "standard_top_surjection",
    "submodule_generated",
    "submodule_to_module",
    "typicality",
    "verify_dominant_generation",
    "verify_filtration_certificate",
    "verify_relations",
    "verma_splitting_section",
    "weight_decomposition",
    "weight_split",
]
