"""Category rings of cyclic-group orbit categories, and homological algebra over them.

The package builds the generators-and-relations presentation of the
endomorphism category of the standard orbit objects of a cyclic group,
completes it to an explicit based ring with an exact integer rewriting
engine, and does homological algebra (Hom, Ext, resolutions, projectivity,
universal-coefficient end terms) in Z/2-graded finitely presented right
modules over the completed ring.
"""

from .groups import (
    Character,
    character,
    double_cosets,
    induce_character,
    restrict_character,
    subgroups,
    trivial_character,
)
from .presentation import (
    Generator,
    Presentation,
    Relation,
    build_presentation,
    presentation_c4,
    presentations_equivalent,
)
from .completion import (
    CategoryRing,
    CompletionError,
    InconsistentPresentationError,
    NotStabilizedError,
    RingElement,
    complete,
    normal_form,
    random_associativity_probe,
    verify_ring,
)
from .modules import (
    ABOVE_CAP,
    AbInvariants,
    ExtResult,
    FreeModule,
    GradedModule,
    HomGroup,
    ModuleMap,
    Resolution,
    UctTerms,
    direct_sum,
    ext,
    free_cover,
    free_resolution,
    hom_module,
    identity_map,
    is_projective,
    kernel_of,
    projective_dimension,
    quotient_by_element,
    suspend,
    trivial_group_module,
    uct_terms,
    yoneda,
    yoneda_cyclic_quotient,
    zero_module,
)

__all__ = [
    "ABOVE_CAP",
    "AbInvariants",
    "ExtResult",
    "FreeModule",
    "GradedModule",
    "HomGroup",
    "ModuleMap",
    "Resolution",
    "UctTerms",
    "direct_sum",
    "ext",
    "free_cover",
    "free_resolution",
    "hom_module",
    "identity_map",
    "is_projective",
    "kernel_of",
    "projective_dimension",
    "quotient_by_element",
    "suspend",
    "trivial_group_module",
    "uct_terms",
    "yoneda",
    "yoneda_cyclic_quotient",
    "zero_module",
    "random_associativity_probe",
    "Character",
    "character",
    "double_cosets",
    "induce_character",
    "restrict_character",
    "subgroups",
    "trivial_character",
    "Generator",
    "Presentation",
    "Relation",
    "build_presentation",
    "presentation_c4",
    "presentations_equivalent",
    "CategoryRing",
    "CompletionError",
    "InconsistentPresentationError",
    "NotStabilizedError",
    "RingElement",
    "complete",
    "normal_form",
    "verify_ring",
]
