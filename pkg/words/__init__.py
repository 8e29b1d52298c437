from .twisted_perm import (
    Letter,
    Word,
    TwistedPerm,
    AutomorphismKind,
    Classification,
    act,
    normalize_word,
    parse_word,
    commutator_word,
    generator_image,
    evaluate_word,
    commutator_formula,
    classify_automorphism,
    word_to_string
)
from .commutators import (
    FiniteLayer,
    CommGroupData,
    commutator_generators,
    commutator_group,
    intermediate_condition
)

__all__ = [
    "Letter",
    "Word",
    "TwistedPerm",
    "AutomorphismKind",
    "Classification",
    "act",
    "normalize_word",
    "parse_word",
    "commutator_word",
    "generator_image",
    "evaluate_word",
    "commutator_formula",
    "classify_automorphism",
    "word_to_string",
    "FiniteLayer",
    "CommGroupData",
    "commutator_generators",
    "commutator_group",
    "intermediate_condition"
]
