from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from config import config
from hadamard import Twist
from words import (
    AutomorphismKind,
    CommGroupData,
    Letter,
    classify_automorphism,
    commutator_group,
    generator_image,
    intermediate_condition,
)
from .invariants import CocycleWitness, cyclic_cocycle_test, invariants_equivalent
from .quotient_group import build_G, build_Gtilde, identify_group

logger = config.get_logger(__name__)


class VerdictKind(str, Enum):
    ISOMORPHIC = "Isomorphic"
    DISTINCT = "Distinct"
    UNDETERMINED = "Undetermined"


@dataclass
class Verdict:
    kind: VerdictKind
    reasons: List[str] = field(default_factory=list)
    evidence: Dict[str, str] = field(default_factory=dict)

    def __str__(self) -> str:
        return self.kind.value


def verdict_assumptions(twist: Twist, data: Optional[CommGroupData] = None) -> Dict[str, bool]:
    """
        Hypotheses under which invariant equality implies isomorphism
        Returns:
            Dict[str, bool]: outer generators, inner part inside the
            commutator subgroup, the intermediate subfactor condition and
            whether H or K is cyclic of prime order
    """
    data = data or commutator_group(twist)
    letters = [Letter("h", h) for h in range(1, twist.H.order)]
    letters += [Letter("k", k) for k in range(1, twist.K.order)]
    outer = all(classify_automorphism(generator_image(twist, letter)).kind == AutomorphismKind.OUTER
                for letter in letters)
    inner_in_commutators = data.ntilde is None or all(
        data.ntilde.elements[s].is_row_function() for s in data.inner)
    return {
        "outer_generators": outer,
        "inner_in_commutator_subgroup": inner_in_commutators,
        "intermediate_condition": intermediate_condition(twist, data.generators),
        "prime_cyclic_factor": twist.H.is_prime_cyclic or twist.K.is_prime_cyclic,
    }


def subfactor_verdict(first: Twist, second: Twist, bound: Optional[int] = None) -> Verdict:
    """
        Compare the subfactors of two twists. Distinct needs a differing
        invariant of the subfactor itself (graphs, depth, group); Isomorphic
        needs equivalent characteristic data plus a side condition; anything
        else is Undetermined.
    """
    from graphs import graph_hash, graphs_isomorphic, principal_graph, dual_graph

    data = [commutator_group(first), commutator_group(second)]
    verdict = Verdict(VerdictKind.UNDETERMINED)
    groups = [build_G(t, d) for t, d in zip((first, second), data)]

    if groups[0].finite != groups[1].finite:
        verdict.kind = VerdictKind.DISTINCT
        verdict.reasons.append("one subfactor has finite depth and the other infinite depth")
        return verdict
    if not groups[0].finite:
        verdict.reasons.append("both quotient groups are infinite")
        verdict.evidence["N"] = f"{data[0].n_structure} / {data[1].n_structure}"
        return verdict

    descriptors = [identify_group(g) for g in groups]
    verdict.evidence["G"] = f"{descriptors[0]} / {descriptors[1]}"
    if descriptors[0] != descriptors[1]:
        verdict.kind = VerdictKind.DISTINCT
        verdict.reasons.append("quotient groups are not isomorphic")
        return verdict

    for build in (principal_graph, dual_graph):
        graphs = [build(g) for g in groups]
        verdict.evidence[graphs[0].kind] = f"{graph_hash(graphs[0])} / {graph_hash(graphs[1])}"
        if not graphs_isomorphic(*graphs):
            verdict.kind = VerdictKind.DISTINCT
            verdict.reasons.append(f"{graphs[0].kind} graphs differ")
            return verdict

    if data[0].ntilde_finite and data[1].ntilde_finite:
        extended = [build_Gtilde(t, d) for t, d in zip((first, second), data)]
        outcomes = [cyclic_cocycle_test(e, g) for e, g in zip(extended, groups)]
        verdict.evidence["cocycle"] = f"{outcomes[0]} / {outcomes[1]}"
        for i in (0, 1):
            if isinstance(outcomes[i], CocycleWitness) and extended[1 - i].s_order == 1:
                verdict.kind = VerdictKind.DISTINCT
                verdict.reasons.append("nonzero 3-cocycle against an outer action with trivial inner part")
                return verdict

        if invariants_equivalent(data[0], data[1], bound):
            side = [verdict_assumptions(t, d) for t, d in zip((first, second), data)]
            if all(s["prime_cyclic_factor"] or s["intermediate_condition"] for s in side):
                verdict.kind = VerdictKind.ISOMORPHIC
                verdict.reasons.append("characteristic data agree and the side conditions hold")
            else:
                verdict.reasons.append("characteristic data agree but no side condition holds")
        else:
            verdict.reasons.append("characteristic data differ, which alone does not separate the subfactors")
    else:
        verdict.reasons.append("inner part is infinite")

    logger.info(f"Verdict {verdict.kind.value}: {'; '.join(verdict.reasons)}")
    return verdict
