from .finite_group import (
    FinGroup,
    AbelianGroup,
    TableGroup,
    symmetric_group,
    parse_group,
    group_literal,
    characters,
    automorphisms
)
from .smith import (
    AbelianStructure,
    smith_normal_form,
    left_kernel,
    structure_of_relations,
    relation_lattice,
    subgroup_structure,
    invariant_factors
)

__all__ = [
    "FinGroup",
    "AbelianGroup",
    "TableGroup",
    "symmetric_group",
    "parse_group",
    "group_literal",
    "characters",
    "automorphisms",
    "AbelianStructure",
    "smith_normal_form",
    "left_kernel",
    "structure_of_relations",
    "relation_lattice",
    "subgroup_structure",
    "invariant_factors"
]
