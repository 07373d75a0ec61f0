"""
vbraids: virtual braid groups and their quotients.

Braid words and presentations for the classical, virtual, flat, welded,
unrestricted and flat unrestricted braid groups; a rewriting engine that
mechanically certifies the reduced presentations by replaying the relation
derivations; Morse link diagrams with Gauss codes and closure invariants;
the general braiding algorithm turning diagrams into braids; and the
homomorphism lattice between the seven groups.
"""

from .words import (
    BraidWord,
    Generator,
    GroupKind,
    Permutation,
    WordError,
    compose,
    format_word,
    free_reduce,
    identity,
    inverse,
    parse_word,
    permutation_image,
)
from .presentations import (
    Presentation,
    PresentationError,
    Relator,
    derived_detour_relations,
    expand_sigma,
    expand_v_welded,
    expand_word,
    full_presentation,
    reduced_presentation,
    relator_symmetric_check,
)
from .rewrite import (
    DerivationScript,
    EquivalenceResult,
    RewriteStep,
    ScriptError,
    apply_step,
    bounded_equivalence,
    certify_reduction,
    prove_pure_virtual,
    verify_script,
)

__all__ = [
    "BraidWord",
    "Generator",
    "GroupKind",
    "Permutation",
    "WordError",
    "compose",
    "format_word",
    "free_reduce",
    "identity",
    "inverse",
    "parse_word",
    "permutation_image",
    "Presentation",
    "PresentationError",
    "Relator",
    "derived_detour_relations",
    "expand_sigma",
    "expand_v_welded",
    "expand_word",
    "full_presentation",
    "reduced_presentation",
    "relator_symmetric_check",
    "DerivationScript",
    "EquivalenceResult",
    "RewriteStep",
    "ScriptError",
    "apply_step",
    "bounded_equivalence",
    "certify_reduction",
    "prove_pure_virtual",
    "verify_script",
]

__version__ = "0.1.0"
