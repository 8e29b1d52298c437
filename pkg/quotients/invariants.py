from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from config import config
from config.exceptions import InfiniteGroupError, InternalInconsistency, NonConstantRatio
from groups import automorphisms
from hadamard import Twist
from phases import Phase, PhaseArray
from words import CommGroupData, act, commutator_group
from .quotient_group import ExtendedGroup, QuotientGroup, element_orders, power_map

logger = config.get_logger(__name__)


@dataclass
class CharInvariant:
    """
    lambda(g, s) for the nontrivial elements g of H and K and s in S, with
    g(u_{g^-1 s g}) = lambda(g, s) u_s.
    """
    table: Dict[Tuple[str, int], Phase] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return not self.table

    def to_strings(self) -> Dict[str, str]:
        return {f"{g}|s{s}": str(value) for (g, s), value in sorted(self.table.items())}


def lambda_value(extended: ExtendedGroup, element: int, s: int) -> Phase:
    """
        lambda(g, s) by the ratio method: conjugate s by g in Gtilde, apply
        the shift of g to the implementing vector and divide by u_s
    """
    twist = extended.twist
    h, k, _ = extended.decode(element)
    layer = extended.layer
    conjugated = layer.k_action[k, layer.h_action[h, s]]
    moved = act(twist, layer.elements[conjugated], h, k).column(0)
    u_s = extended.u(s)
    ratios = {a / b for a, b in zip(moved, u_s)}
    if len(ratios) != 1:
        raise NonConstantRatio(f"lambda({extended.label(element)}, s{s}) is not a constant ratio")
    value = ratios.pop()
    # Coordinate form: the conjugate of u_s at h (left action) or at h^-1 (right action)
    coordinate = u_s[twist.H.inv(h) if twist.right_action else h].conj()
    if value != coordinate:
        raise NonConstantRatio(f"lambda({extended.label(element)}, s{s}) = {value} "
                               f"disagrees with the coordinate formula {coordinate}")
    return value


def char_invariant(extended: ExtendedGroup) -> CharInvariant:
    """
        Characteristic invariant restricted to generators from H and K
        Args:
            extended: finite Gtilde
        Returns:
            CharInvariant: empty when S is trivial
    """
    extended._require_finite()
    invariant = CharInvariant()
    if extended.s_order <= 1:
        return invariant
    generators = [(f"h{extended.H.label(h)}", extended.encode(h, 0, 0)) for h in range(1, extended.H.order)]
    generators += [(f"k{extended.K.label(k)}", extended.encode(0, k, 0)) for k in range(1, extended.K.order)]
    for name, element in generators:
        for s in extended.inner:
            invariant.table[(name, s)] = lambda_value(extended, element, s)
    return invariant


@dataclass(frozen=True)
class CocycleWitness:
    element: str
    inner_element: int
    value: Phase
    order_in_G: int
    cyclic_order: int

    def __str__(self) -> str:
        return (f"NontrivialWitness(g={self.element}, s=s{self.inner_element}, lambda={self.value}, "
                f"|<g>|={self.cyclic_order})")


INCONCLUSIVE = "Inconclusive"


def cyclic_cocycle_test(extended: ExtendedGroup,
                        quotient: Optional[QuotientGroup] = None) -> Union[CocycleWitness, str]:
    """
        Scan cyclic subgroups <g> of Gtilde. If g^m is a nontrivial inner
        element s (m the order of g in G) and lambda(g, s) != 1, the
        3-cocycle obstruction of G is nonzero. Otherwise Inconclusive, which
        is not a proof of triviality.
    """
    extended._require_finite()
    if extended.s_order <= 1:
        return INCONCLUSIVE
    quotient = quotient or QuotientGroup(extended.data)
    g_orders = element_orders(quotient.table)
    power_maps: Dict[int, np.ndarray] = {}
    table = extended.table
    n_size = extended.layer.order
    candidates = [i for i in range(extended.order) if i % n_size == 0]
    candidates += [i for i in range(extended.order) if i % n_size != 0]
    inner = set(extended.inner)
    for g in candidates:
        h, k, n = extended.to_quotient(g)
        m = int(g_orders[quotient.encode(h, k, n)])
        if m not in power_maps:
            power_maps[m] = power_map(table, m)
        s_element = int(power_maps[m][g])
        sh, sk, s = extended.decode(s_element)
        if (sh, sk) != (0, 0) or s not in inner:
            raise InternalInconsistency(f"g^{m} for g = {extended.label(g)} is not inner")
        if s == 0:
            continue
        value = lambda_value(extended, g, s)
        if not value.is_identity:
            cyclic_order = m * int(extended.layer.elements[s].order())
            witness = CocycleWitness(extended.label(g), s, value, m, cyclic_order)
            logger.info(f"3-cocycle witness: {witness}")
            return witness
    return INCONCLUSIVE


Pair = Tuple[PhaseArray, PhaseArray]


def _pair_closure(pairs: List[Pair], limit: int) -> Optional[List[Pair]]:
    if not pairs:
        return []
    ones = PhaseArray.ones(pairs[0][0].rows, pairs[0][0].cols)
    identity = (ones, ones)
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a, b in frontier:
            for x, y in pairs:
                product = (a * x, b * y)
                if product not in seen:
                    if len(elements) >= limit:
                        return None
                    seen.add(product)
                    elements.append(product)
                    nxt.append(product)
        frontier = nxt
    return elements


def invariants_equivalent(first: Union[Twist, CommGroupData], second: Union[Twist, CommGroupData],
                          bound: Optional[int] = None) -> bool:
    """
        Search Aut(H) x Aut(K) for a relabeling of the commutator words that
        carries the inner data of the first twist onto the second one
        Args:
            first: twist or its commutator group
            second: twist or its commutator group over the same H and K
            bound: automorphism search bound
        Returns:
            bool: True if (phi, psi) exists such that h k h^-1 k^-1 of the second
            twist corresponds to phi(h) psi(k) phi(h)^-1 psi(k)^-1 of the first
            through an isomorphism of the commutator groups which maps inner
            elements to inner elements with the same implementing vector u_s
            (entrywise over H, not a comparison of lambda tables)
    """
    data1 = first if isinstance(first, CommGroupData) else commutator_group(first)
    data2 = second if isinstance(second, CommGroupData) else commutator_group(second)
    if not (data1.ntilde_finite and data2.ntilde_finite):
        raise InfiniteGroupError("Invariant equivalence needs finite commutator groups")
    t1, t2 = data1.twist, data2.twist
    if (t1.H.name, t1.K.name) != (t2.H.name, t2.K.name) or t1.right_action != t2.right_action:
        return False
    order = data1.ntilde.order
    if data2.ntilde.order != order or len(data1.inner) != len(data2.inner):
        return False
    if not data1.generators:
        return True
    for phi in automorphisms(t2.H, bound):
        for psi in automorphisms(t2.K, bound):
            pairs = [(data1.generators[(phi[h], psi[k])], x) for (h, k), x in data2.generators.items()]
            closure = _pair_closure(pairs, order + 1)
            if closure is None or len(closure) != order:
                continue
            if all(_same_inner_data(a, b) for a, b in closure):
                logger.debug(f"Invariants match under phi={phi}, psi={psi}")
                return True
    return False


def _same_inner_data(a: PhaseArray, b: PhaseArray) -> bool:
    """
        Inner elements must pair with inner elements whose implementing
        vectors u_s agree entry by entry over H, read off column 0 of the
        column-normalized arrays. No lambda table is built or compared here.
    """
    a_inner, b_inner = a.is_row_function(), b.is_row_function()
    if a_inner != b_inner:
        return False
    return not a_inner or a.column(0) == b.column(0)
