from .algebra import (
    ConcreteAlgebra,
    TowerLevel,
    row_space,
    null_space,
    accumulate_span,
    conditional_expectation,
    central_decomposition,
    basic_construction,
    inclusion_matrix,
    markov_modulus,
    is_commuting_square
)
from .commutant import (
    ORIENTATIONS,
    CommutantTower,
    validated_orientation,
    relative_commutant_dims,
    commutant_basis,
    basis_is_abelian,
    commutant_is_abelian
)

__all__ = [
    "ConcreteAlgebra",
    "TowerLevel",
    "row_space",
    "null_space",
    "accumulate_span",
    "conditional_expectation",
    "central_decomposition",
    "basic_construction",
    "inclusion_matrix",
    "markov_modulus",
    "is_commuting_square",
    "ORIENTATIONS",
    "CommutantTower",
    "validated_orientation",
    "relative_commutant_dims",
    "commutant_basis",
    "basis_is_abelian",
    "commutant_is_abelian"
]
