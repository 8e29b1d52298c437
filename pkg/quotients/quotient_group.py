from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Hashable, List, Optional, Tuple, Union

import numpy as np
from sympy import factorint

from config import config
from config.exceptions import BoundExceeded, InfiniteGroupError, InternalInconsistency
from groups import FinGroup, TableGroup, invariant_factors
from hadamard import Twist
from phases import Phase, PhaseArray
from words import CommGroupData, FiniteLayer, commutator_group

logger = config.get_logger(__name__)

# Chunk of table rows computed at once
_ROW_BLOCK = 256


class QuotientGroup:
    """
    The group G = H K N generated by the images of H and K, with N the
    abelian commutator part. Elements are triples (h, k, n) multiplied by

        (h1, k1, n1)(h2, k2, n2) = (h1 h2, k1 k2, c(k1, h2)^k2 (n1^h2)^k2 n2)

    where n^g = g^-1 n g and c(k, h) = k^-1 h^-1 k h. Finite groups are
    tabulated with index (h |K| + k) |N| + n; infinite ones are handled on
    triples (h, k, standard-form array).
    """

    extended = False

    def __init__(self, data: CommGroupData):
        self.data = data
        self.twist: Twist = data.twist
        self.H: FinGroup = data.twist.H
        self.K: FinGroup = data.twist.K
        self.layer: Optional[FiniteLayer] = data.ntilde if self.extended else data.n
        self.logger = config.get_logger(type(self).__name__)

    @property
    def finite(self) -> bool:
        return self.layer is not None

    @property
    def n_order(self) -> Union[int, str]:
        structure = self.data.ntilde_structure if self.extended else self.data.n_structure
        return structure.order

    @property
    def order(self) -> Union[int, str]:
        if not self.finite:
            return self.n_order
        return self.H.order * self.K.order * self.layer.order

    def _require_finite(self):
        if not self.finite:
            raise InfiniteGroupError(f"{self.describe()} is infinite")

    def describe(self) -> str:
        name = "Gtilde" if self.extended else "G"
        return f"{name}({self.H.name}, {self.K.name})"

    def encode(self, h: int, k: int, n: int) -> int:
        return (h * self.K.order + k) * self.layer.order + n

    def decode(self, index: int) -> Tuple[int, int, int]:
        hk, n = divmod(int(index), self.layer.order)
        h, k = divmod(hk, self.K.order)
        return h, k, n

    def label(self, index: int) -> str:
        h, k, n = self.decode(index)
        return f"({self.H.label(h)},{self.K.label(k)},{n})"

    @cached_property
    def table(self) -> np.ndarray:
        """Full multiplication table as an integer array"""
        self._require_finite()
        limit = config.get_group_config()["max_group_order"]
        order = self.order
        if order > limit:
            raise BoundExceeded(f"{self.describe()} has order {order}, tabulation is limited to {limit}")
        layer = self.layer
        h_tab, k_tab = self.H.table, self.K.table
        idx = np.arange(order)
        h_all, rest = np.divmod(idx, self.K.order * layer.order)
        k_all, n_all = np.divmod(rest, layer.order)
        table = np.empty((order, order), dtype=np.int64)
        for start in range(0, order, _ROW_BLOCK):
            rows = slice(start, min(start + _ROW_BLOCK, order))
            h1, k1, n1 = h_all[rows, None], k_all[rows, None], n_all[rows, None]
            h2, k2, n2 = h_all[None, :], k_all[None, :], n_all[None, :]
            twisted_c = layer.k_action[k2, layer.commutator[k1, h2]]
            moved_n = layer.k_action[k2, layer.h_action[h2, n1]]
            n_prod = layer.mul[layer.mul[twisted_c, moved_n], n2]
            table[rows] = (h_tab[h1, h2] * self.K.order + k_tab[k1, k2]) * layer.order + n_prod
        return table

    @cached_property
    def group(self) -> TableGroup:
        """The tabulated group; construction verifies the group axioms"""
        labels = [self.label(i) for i in range(self.order)]
        group = TableGroup(self.table, labels=labels, name=self.describe())
        self.logger.info(f"{self.describe()} tabulated with order {self.order}")
        return group

    # Element interface shared with the graph builders. Finite elements are
    # table indices; infinite ones are triples (h, k, array).

    def h_element(self, h: int) -> Hashable:
        return self.encode(h, 0, 0) if self.finite else (h, 0, self._identity_array)

    def k_element(self, k: int) -> Hashable:
        return self.encode(0, k, 0) if self.finite else (0, k, self._identity_array)

    def n_element(self, n: Union[int, PhaseArray]) -> Hashable:
        return self.encode(0, 0, n) if self.finite else (0, 0, n)

    @property
    def identity(self) -> Hashable:
        return 0 if self.finite else (0, 0, self._identity_array)

    @cached_property
    def _identity_array(self) -> PhaseArray:
        return PhaseArray.ones(self.H.order, self.K.order)

    def mul(self, a: Hashable, b: Hashable) -> Hashable:
        if self.finite:
            return int(self.table[a, b])
        h1, k1, n1 = a
        h2, k2, n2 = b
        standard = not self.extended
        twisted_c = self.data.conjugate(self.data.commutator_array(k1, h2, standard=standard),
                                        k=k2, standard=standard)
        moved_n = self.data.conjugate(self.data.conjugate(n1, h=h2, standard=standard),
                                      k=k2, standard=standard)
        return (self.H.mul(h1, h2), self.K.mul(k1, k2), twisted_c * moved_n * n2)

    def odd_class(self, element: Hashable) -> Hashable:
        """
            The N element n with element in H n K, namely k n' k^-1 for
            element (h, k, n')
        """
        if self.finite:
            _, k, n = self.decode(element)
            return int(self.layer.k_action[self.K.inv(k), n])
        _, k, n = element
        return self.data.conjugate(n, k=self.K.inv(k), standard=not self.extended)


class ExtendedGroup(QuotientGroup):
    """
    The group Gtilde = H K Ntilde, a finite extension of G by the inner
    subgroup S. Each s in S is implemented by a phase vector u_s over H
    normalized by u_s(1) = 1.
    """

    extended = True

    @property
    def inner(self) -> List[int]:
        return self.data.inner

    @property
    def s_order(self) -> int:
        return len(self.data.inner)

    def u(self, s: int) -> Tuple[Phase, ...]:
        return self.layer.elements[s].column(0)

    def to_quotient(self, index: int) -> Tuple[int, int, int]:
        """(h, k, n) coordinates of the image in G"""
        h, k, n = self.decode(index)
        return h, k, self.data.ntilde_to_n[n]

    def verify_trivial_mu(self):
        """u_s u_s' = u_ss' exactly under the normalization u_s(1) = 1"""
        for s in self.inner:
            for t in self.inner:
                product = self.layer.mul[s, t]
                if tuple(a * b for a, b in zip(self.u(s), self.u(t))) != self.u(product):
                    raise InternalInconsistency(f"Implementing vectors of {s} and {t} do not multiply")


def build_G(twist: Twist, data: Optional[CommGroupData] = None) -> QuotientGroup:
    """
        Assemble G = H * K / Int = H K N
        Args:
            twist: the twist
            data: precomputed commutator group, computed when omitted
        Returns:
            QuotientGroup: tabulated lazily when N is finite, infinite-flagged otherwise
    """
    data = data or commutator_group(twist)
    group = QuotientGroup(data)
    if group.finite:
        logger.info(f"|G| = {group.H.order} * {group.K.order} * {group.layer.order} = {group.order}")
    else:
        logger.info(f"G is infinite: N = {data.n_structure}")
    return group


def build_Gtilde(twist: Twist, data: Optional[CommGroupData] = None) -> ExtendedGroup:
    """
        Assemble Gtilde = H K Ntilde with its inner subgroup S
    """
    data = data or commutator_group(twist)
    group = ExtendedGroup(data)
    if group.finite:
        group.verify_trivial_mu()
        logger.info(f"|Gtilde| = {group.order}, |S| = {group.s_order}")
    return group


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str  # "Abelian", "Dihedral" or "Other"
    order: int
    invariants: Tuple[int, ...] = ()
    half_order: int = 0
    abelianization: Tuple[int, ...] = field(default=())

    def __str__(self) -> str:
        if self.kind == "Abelian":
            return f"Abelian({','.join(str(d) for d in self.invariants)})"
        if self.kind == "Dihedral":
            return f"Dihedral({self.half_order})"
        return f"Other(order={self.order}, abelianization=({','.join(str(d) for d in self.abelianization)}))"


def power_map(table: np.ndarray, exponent: int) -> np.ndarray:
    n = table.shape[0]
    result = np.zeros(n, dtype=np.int64)
    base = np.arange(n)
    while exponent:
        if exponent & 1:
            result = table[result, base]
        base = table[base, base]
        exponent >>= 1
    return result


def element_orders(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    current = idx.copy()
    for step in range(1, n + 1):
        orders[(current == 0) & (orders == 0)] = step
        if orders.all():
            break
        current = table[current, idx]
    return orders


def abelian_invariants(table: np.ndarray) -> Tuple[int, ...]:
    """
        Invariant factors of an abelian group given by its table, from the
        number of solutions of x^(p^j) = 1 for each prime p
    """
    order = table.shape[0]
    elementary = []
    for p, multiplicity in factorint(order).items():
        logs = [0]
        for j in range(1, multiplicity + 1):
            count = int((power_map(table, p ** j) == 0).sum())
            logs.append(round(np.log(count) / np.log(p)))
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
        for j in range(1, len(logs)):
            elementary += [p ** j] * (at_least[j - 1] - at_least[j])
    return invariant_factors(elementary)


def _subgroup_closure(table: np.ndarray, generators: np.ndarray) -> np.ndarray:
    members = np.zeros(table.shape[0], dtype=bool)
    members[0] = True
    members[generators] = True
    while True:
        current = np.flatnonzero(members)
        grown = members.copy()
        grown[np.unique(table[np.ix_(current, current)])] = True
        if grown.sum() == members.sum():
            return current
        members = grown


def abelianization(group: FinGroup) -> Tuple[int, ...]:
    table = group.table
    inverse = np.array(group.inverses)
    x = np.arange(group.order)
    commutators = table[table[table[x[:, None], x[None, :]], inverse[x][:, None]], inverse[x][None, :]]
    derived = _subgroup_closure(table, np.unique(commutators))
    coset = table[:, derived].min(axis=1)
    representatives = np.unique(coset)
    position = {int(r): i for i, r in enumerate(representatives)}
    quotient = np.array([[position[int(coset[table[a, b]])] for b in representatives]
                         for a in representatives], dtype=np.int64)
    return abelian_invariants(quotient)


def identify_group(group: Union[QuotientGroup, FinGroup]) -> GroupDescriptor:
    """
        Name a finite group: abelian invariants, dihedral recognition, or
        order plus the invariants of the abelianization
        Args:
            group: a finite quotient group or any tabulated group
        Returns:
            GroupDescriptor: Dihedral(m) has order 2m
    """
    if isinstance(group, QuotientGroup):
        group._require_finite()
        group = group.group
    table = group.table
    order = group.order
    if group.is_abelian:
        return GroupDescriptor("Abelian", order, invariants=abelian_invariants(table))
    orders = element_orders(table)
    if order % 2 == 0:
        m = order // 2
        inverse = np.array(group.inverses)
        for a in np.flatnonzero(orders == m):
            powers = set(np.flatnonzero(_in_cyclic(table, int(a))))
            for b in np.flatnonzero(orders == 2):
                if int(b) in powers:
                    continue
                if table[table[b, a], b] == inverse[a]:
                    return GroupDescriptor("Dihedral", order, half_order=m)
            break
    return GroupDescriptor("Other", order, abelianization=abelianization(group))


def _in_cyclic(table: np.ndarray, a: int) -> np.ndarray:
    members = np.zeros(table.shape[0], dtype=bool)
    x = 0
    while not members[x]:
        members[x] = True
        x = int(table[x, a])
    return members
