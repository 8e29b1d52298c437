from .quotient_group import (
    QuotientGroup,
    ExtendedGroup,
    GroupDescriptor,
    build_G,
    build_Gtilde,
    power_map,
    element_orders,
    abelian_invariants,
    abelianization,
    identify_group
)
from .invariants import (
    INCONCLUSIVE,
    CharInvariant,
    CocycleWitness,
    lambda_value,
    char_invariant,
    cyclic_cocycle_test,
    invariants_equivalent
)
from .verdict import VerdictKind, Verdict, verdict_assumptions, subfactor_verdict

__all__ = [
    "QuotientGroup",
    "ExtendedGroup",
    "GroupDescriptor",
    "build_G",
    "build_Gtilde",
    "power_map",
    "element_orders",
    "abelian_invariants",
    "abelianization",
    "identify_group",
    "INCONCLUSIVE",
    "CharInvariant",
    "CocycleWitness",
    "lambda_value",
    "char_invariant",
    "cyclic_cocycle_test",
    "invariants_equivalent",
    "VerdictKind",
    "Verdict",
    "verdict_assumptions",
    "subfactor_verdict"
]
