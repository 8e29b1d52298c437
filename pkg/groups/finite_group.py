import itertools
import json
import random
import re
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime

from config import config
from config.exceptions import BoundExceeded, GroupLiteralError
from phases import Phase, PhaseArray
from .smith import invariant_factors

logger = config.get_logger(__name__)


class FinGroup(ABC):
    """
    A finite group on the element indices 0..order-1, identity at index 0.
    """

    name: str = "G"

    @property
    @abstractmethod
    def order(self) -> int:
        ...

    @property
    @abstractmethod
    def table(self) -> np.ndarray:
        """Cayley table as an order x order integer array"""

    @abstractmethod
    def coords(self, a: int) -> Tuple[int, ...]:
        ...

    @abstractmethod
    def element(self, coords: Sequence[int]) -> int:
        ...

    @property
    def identity(self) -> int:
        return 0

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> Tuple[int, ...]:
        rows, cols = np.nonzero(self.table == self.identity)
        inverse = [0] * self.order
        for a, b in zip(rows, cols):
            inverse[int(a)] = int(b)
        return tuple(inverse)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = self.identity
        for _ in range(n):
            result = self.mul(result, a)
        return result

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @property
    def is_prime_cyclic(self) -> bool:
        return False

    def label(self, a: int) -> str:
        c = self.coords(a)
        return str(c[0]) if len(c) == 1 else "(" + ",".join(str(x) for x in c) + ")"

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """A small generating set, largest element orders first"""
        candidates = sorted(self.elements, key=lambda a: (-self.element_order(a), a))
        chosen: List[int] = []
        span = {self.identity}
        for a in candidates:
            if len(span) == self.order:
                break
            if a in span:
                continue
            chosen.append(a)
            span = self.subgroup_closure(chosen)
        return tuple(chosen)

    def subgroup_closure(self, gens: Sequence[int]) -> set:
        span = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        return span

    def left_shift(self, g: int) -> Tuple[int, ...]:
        """
            Source indices of the left regular action: (g.X)(y) = X(g^-1 y)
        """
        g_inv = self.inv(g)
        return tuple(self.mul(g_inv, y) for y in self.elements)

    def right_shift(self, g: int) -> Tuple[int, ...]:
        """
            Source indices of the right regular action: (g.X)(y) = X(y g)
        """
        return tuple(self.mul(y, g) for y in self.elements)

    def describe(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class AbelianGroup(FinGroup):
    """
    Finite abelian group in invariant-factor form. Any list of cyclic factors
    is normalized on construction, e.g. Z2xZ3 becomes Z6.
    """

    def __init__(self, factors: Sequence[int] = ()):
        if any(int(n) < 1 for n in factors):
            raise GroupLiteralError(f"Cyclic factors must be positive: {list(factors)}")
        self.factors: Tuple[int, ...] = invariant_factors([int(n) for n in factors])
        self.name = "x".join(f"Z{n}" for n in self.factors) or "Z1"
        self._elements = list(itertools.product(*[range(n) for n in self.factors]))
        self._index = {e: i for i, e in enumerate(self._elements)}

    @property
    def order(self) -> int:
        return len(self._elements)

    @cached_property
    def table(self) -> np.ndarray:
        if not self.factors:
            return np.zeros((1, 1), dtype=np.int64)
        coords = np.array(self._elements, dtype=np.int64)
        moduli = np.array(self.factors, dtype=np.int64)
        sums = (coords[:, None, :] + coords[None, :, :]) % moduli
        weights = np.cumprod(np.concatenate([moduli[1:][::-1], [1]]))[::-1]
        return (sums * weights).sum(axis=2)

    def mul(self, a: int, b: int) -> int:
        if not self.factors:
            return 0
        return self._index[tuple((x + y) % n for x, y, n in
                                 zip(self._elements[a], self._elements[b], self.factors))]

    def coords(self, a: int) -> Tuple[int, ...]:
        return self._elements[a]

    def element(self, coords: Sequence[int]) -> int:
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.factors):
            raise GroupLiteralError(f"{self.name} elements need {len(self.factors)} coordinates, got {coords}")
        return self._index[tuple(c % n for c, n in zip(coords, self.factors))]

    @property
    def is_abelian(self) -> bool:
        return True

    @property
    def is_prime_cyclic(self) -> bool:
        return len(self.factors) == 1 and isprime(self.factors[0])

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        basis = []
        for i in range(len(self.factors)):
            unit = [0] * len(self.factors)
            unit[i] = 1
            basis.append(self.element(unit))
        return tuple(basis)


class TableGroup(FinGroup):
    """
    A finite group given by its Cayley table. The identity is moved to
    index 0; associativity is verified on construction.
    """

    def __init__(self, cayley: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 name: str = "G", coordinates: Optional[Sequence[Tuple[int, ...]]] = None):
        table = np.array(cayley, dtype=np.int64)
        n = table.shape[0]
        if table.ndim != 2 or table.shape != (n, n) or n == 0:
            raise GroupLiteralError("Cayley table must be a non-empty square table")
        expected = np.arange(n)
        for line in list(table) + list(table.T):
            if not np.array_equal(np.sort(line), expected):
                raise GroupLiteralError("Cayley table is not a Latin square")
        identities = [e for e in range(n) if np.array_equal(table[e], expected)]
        if not identities:
            raise GroupLiteralError("Cayley table has no identity element")
        e = identities[0]
        order = [e] + [x for x in range(n) if x != e]
        position = np.empty(n, dtype=np.int64)
        position[order] = np.arange(n)
        self._table = position[table[np.ix_(order, order)]]
        self.name = name
        self._labels = [labels[x] for x in order] if labels else [str(i) for i in range(n)]
        self._coords = [tuple(coordinates[x]) for x in order] if coordinates else [(i,) for i in range(n)]
        self._coord_index = {c: i for i, c in enumerate(self._coords)}
        self._verify_associativity()

    def _verify_associativity(self):
        T = self._table
        n = T.shape[0]
        group_config = config.get_group_config()
        if n <= group_config["associativity_exhaustive_bound"]:
            for a in range(n):
                if not np.array_equal(T[T[a, :], :], T[a, T]):
                    raise GroupLiteralError(f"Cayley table of {self.name} is not associative")
            return
        rng = random.Random(group_config["random_seed"])
        for _ in range(group_config["associativity_samples"]):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if T[T[a, b], c] != T[a, T[b, c]]:
                raise GroupLiteralError(f"Cayley table of {self.name} is not associative")

    @property
    def order(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        return self._table

    def coords(self, a: int) -> Tuple[int, ...]:
        return self._coords[a]

    def element(self, coords: Sequence[int]) -> int:
        key = tuple(int(c) for c in coords)
        if key not in self._coord_index:
            raise GroupLiteralError(f"No element with coordinates {list(key)} in {self.name}")
        return self._coord_index[key]

    def label(self, a: int) -> str:
        return self._labels[a]


def symmetric_group(n: int) -> TableGroup:
    """
        The symmetric group S_n for n <= 5, elements as one-line permutations
        in lexicographic order, composition (pq)(i) = p(q(i))
    """
    if not 1 <= n <= 5:
        raise GroupLiteralError(f"Symmetric groups are supported for n <= 5, got S{n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    labels = ["[" + ",".join(str(x) for x in p) + "]" for p in perms]
    return TableGroup(table, labels=labels, name=f"S{n}", coordinates=perms)


_CYCLIC = re.compile(r"^Z(\d+)$")
_SYMMETRIC = re.compile(r"^S(\d+)$")


def parse_group(literal: Union[str, Sequence[Sequence[int]], FinGroup]) -> FinGroup:
    """
        Parse a group literal
        Args:
            literal: "Z4", "Z2xZ2", "S3", or an explicit Cayley table
        Returns:
            FinGroup: the parsed group
    """
    if isinstance(literal, FinGroup):
        return literal
    if isinstance(literal, str):
        text = literal.strip()
        if text.startswith("["):
            try:
                return parse_group(json.loads(text))
            except json.JSONDecodeError as e:
                raise GroupLiteralError(f"Invalid Cayley table literal {literal!r}: {e}") from e
        symmetric = _SYMMETRIC.match(text)
        if symmetric:
            return symmetric_group(int(symmetric.group(1)))
        factors = []
        for part in text.split("x"):
            cyclic = _CYCLIC.match(part.strip())
            if not cyclic or int(cyclic.group(1)) < 1:
                raise GroupLiteralError(f"Invalid group literal {literal!r}")
            factors.append(int(cyclic.group(1)))
        return AbelianGroup(factors)
    if isinstance(literal, (list, tuple)):
        try:
            return TableGroup(literal, name=f"T{len(literal)}")
        except (TypeError, ValueError) as e:
            if isinstance(e, GroupLiteralError):
                raise
            raise GroupLiteralError(f"Invalid Cayley table: {e}") from e
    raise GroupLiteralError(f"Unsupported group literal {literal!r}")


def group_literal(group: FinGroup) -> Union[str, List[List[int]]]:
    """Literal that parse_group maps back onto an identical group"""
    if isinstance(group, AbelianGroup) or group.name.startswith("S"):
        return group.name
    return group.table.tolist()


def characters(group: FinGroup) -> PhaseArray:
    """
        Character table of an abelian group
        Args:
            group: an abelian group in invariant-factor form
        Returns:
            PhaseArray: entry (g, x) is rho_g(x) = sum_i g_i x_i / n_i
    """
    if not isinstance(group, AbelianGroup):
        raise GroupLiteralError(f"Characters need an abelian group, got {group.name}")

    def rho(g: int, x: int) -> Phase:
        return Phase(sum((Fraction(a * b, n) for a, b, n in
                          zip(group.coords(g), group.coords(x), group.factors)), Fraction(0)))

    return PhaseArray.from_function(group.order, group.order, rho)


def _extend_homomorphism(group: FinGroup, gens: Sequence[int],
                         images: Sequence[int]) -> Optional[Tuple[int, ...]]:
    image: Dict[int, int] = {group.identity: group.identity}
    frontier = [group.identity]
    while frontier:
        x = frontier.pop()
        for g, g_image in zip(gens, images):
            y = group.mul(x, g)
            candidate = group.mul(image[x], g_image)
            if y not in image:
                image[y] = candidate
                frontier.append(y)
            elif image[y] != candidate:
                return None
    if len(image) != group.order or len(set(image.values())) != group.order:
        return None
    return tuple(image[a] for a in group.elements)


def automorphisms(group: FinGroup, bound: Optional[int] = None) -> List[Tuple[int, ...]]:
    """
        All automorphisms of a small group by brute force over generator images
        Args:
            group: the group
            bound: largest order searched, defaults to the configured bound
        Returns:
            List[Tuple[int, ...]]: automorphisms as index permutations, identity first
    """
    bound = bound or config.get_group_config()["automorphism_bound"]
    if group.order > bound:
        raise BoundExceeded(f"Automorphism search limited to order {bound}, {group.name} has order {group.order}")
    gens = group.generators
    choices = [[a for a in group.elements if group.element_order(a) == group.element_order(g)]
               for g in gens]
    found = set()
    for images in itertools.product(*choices):
        perm = _extend_homomorphism(group, gens, images)
        if perm is not None:
            found.add(perm)
    identity = tuple(group.elements)
    result = sorted(found, key=lambda p: (p != identity, p))
    logger.debug(f"{group.name} has {len(result)} automorphisms")
    return result
