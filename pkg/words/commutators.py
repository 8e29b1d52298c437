from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import config
from config.exceptions import BoundExceeded, InternalInconsistency
from groups import AbelianStructure, subgroup_structure
from hadamard import Twist
from phases import Phase, PhaseArray
from .twisted_perm import (
    Letter,
    TwistedPerm,
    act,
    classify_automorphism,
    commutator_formula,
    commutator_word,
    evaluate_word,
    AutomorphismKind,
)

logger = config.get_logger(__name__)

Pair = Tuple[int, int]

# Entries of the broadcast sums computed at once when tabulating a layer
_BLOCK_ENTRIES = 1 << 22
# Mixed radix keys stay below this bound
_KEY_BOUND = 1 << 62


def _denominator(arrays: Sequence[PhaseArray]) -> int:
    return reduce(lcm, (p.rational_turn.denominator for a in arrays for p in a.entries), 1)


def _codes(arrays: Sequence[PhaseArray], width: int, denominator: int) -> np.ndarray:
    """Rational arrays as integer rows: entry p becomes p * denominator"""
    if not all(a.is_rational for a in arrays):
        raise InternalInconsistency("A finite commutator layer has an irrational generator")
    rows = [[int(p.rational_turn * denominator) for p in a.entries] for a in arrays]
    return np.array(rows, dtype=np.int64).reshape(len(arrays), width)


def _closure(generators: np.ndarray, denominator: int, limit: int) -> np.ndarray:
    """
        Breadth first closure of integer rows under addition modulo the
        denominator, identity first
    """
    width = generators.shape[1]
    identity = np.zeros(width, dtype=np.int64)
    elements = [identity]
    seen = {identity.tobytes()}
    frontier = identity[None, :]
    while len(frontier):
        candidates = ((frontier[:, None, :] + generators[None, :, :]) % denominator).reshape(-1, width)
        fresh = []
        for row in candidates:
            key = row.tobytes()
            if key not in seen:
                if len(elements) >= limit:
                    raise BoundExceeded(f"Subgroup closure exceeded {limit} elements")
                seen.add(key)
                elements.append(row)
                fresh.append(row)
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, width)
    return np.array(elements, dtype=np.int64)


class _RowIndex:
    """
    Exact lookup of the rows of a finite layer. Rows are keyed in mixed
    radix on a set of columns that already separates them; when no such
    key fits in 62 bits the lookup falls back to a dictionary on row bytes.
    """

    def __init__(self, codes: np.ndarray, denominator: int):
        self.codes = codes
        self.columns, self.weights = self._separating_key(codes, denominator)
        if self.weights is None:
            self._by_bytes = {row.tobytes(): i for i, row in enumerate(codes)}
        else:
            keys = codes[:, self.columns] @ self.weights
            self._order = np.argsort(keys, kind="stable")
            self._sorted = keys[self._order]

    @staticmethod
    def _separating_key(codes: np.ndarray, denominator: int):
        size = codes.shape[0]
        columns = []
        keys = np.zeros(size, dtype=np.int64)
        distinct = 1
        for column in range(codes.shape[1]):
            if distinct == size:
                break
            if denominator ** (len(columns) + 1) >= _KEY_BOUND:
                return None, None
            trial = keys * denominator + codes[:, column]
            count = len(np.unique(trial))
            if count > distinct:
                columns.append(column)
                keys, distinct = trial, count
        weights = np.array([denominator ** e for e in range(len(columns) - 1, -1, -1)], dtype=np.int64)
        return np.array(columns, dtype=np.int64), weights

    def find(self, rows: np.ndarray) -> np.ndarray:
        """Indices of rows (any leading shape); every row must be present"""
        if self.weights is None:
            flat = rows.reshape(-1, rows.shape[-1])
            try:
                found = np.array([self._by_bytes[row.tobytes()] for row in flat], dtype=np.int64)
            except KeyError as e:
                raise InternalInconsistency("Layer is not closed under the tabulated operation") from e
            return found.reshape(rows.shape[:-1])
        keys = rows[..., self.columns] @ self.weights
        position = np.minimum(np.searchsorted(self._sorted, keys), len(self._sorted) - 1)
        found = self._order[position]
        if not np.array_equal(self.codes[found], rows):
            raise InternalInconsistency("Layer is not closed under the tabulated operation")
        return found


def _normalize(codes: np.ndarray, rows: int, cols: int, denominator: int, standard: bool) -> np.ndarray:
    """Column normalization, then row normalization for the standard form"""
    grid = codes.reshape(-1, rows, cols)
    grid = (grid - grid[:, :1, :]) % denominator
    if standard:
        grid = (grid - grid[:, :, :1]) % denominator
    return grid.reshape(codes.shape)


def _shift_index(twist: Twist, h: int, k: int) -> np.ndarray:
    """Flat source index of act(twist, ., h, k)"""
    rows = twist.H.right_shift(h) if twist.right_action else twist.H.left_shift(h)
    return (np.asarray(rows)[:, None] * twist.K.order + np.asarray(twist.K.left_shift(k))[None, :]).ravel()


@dataclass
class FiniteLayer:
    """
    One enumerated abelian layer (the full commutator group or its quotient
    by the inner part): elements with identity first, integer tables for the
    product, the conjugation actions of H and K and the commutator map.
    """
    elements: List[PhaseArray]
    index: Dict[PhaseArray, int]
    mul: np.ndarray
    h_action: np.ndarray  # h_action[h, n] is the index of h^-1 n h
    k_action: np.ndarray  # k_action[k, n] is the index of k^-1 n k
    commutator: np.ndarray  # commutator[k, h] is the index of k^-1 h^-1 k h

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass
class CommGroupData:
    """
    Commutator group of a twist. Ntilde is the group of column-normalized
    commutator arrays, S its row-function (inner) part and N = Ntilde / S
    with standard-form representatives.
    """
    twist: Twist
    generators: Dict[Pair, PhaseArray]
    ntilde_structure: AbelianStructure
    n_structure: AbelianStructure
    s_structure: Optional[AbelianStructure] = None
    ntilde: Optional[FiniteLayer] = None
    n: Optional[FiniteLayer] = None
    inner: List[int] = field(default_factory=list)
    ntilde_to_n: List[int] = field(default_factory=list)

    @property
    def finite(self) -> bool:
        return self.n_structure.is_finite

    @property
    def ntilde_finite(self) -> bool:
        return self.ntilde_structure.is_finite

    @property
    def n_generators(self) -> Dict[Pair, PhaseArray]:
        return {pair: array.standard_form() for pair, array in self.generators.items()}

    def conjugate(self, array: PhaseArray, h: int = 0, k: int = 0, standard: bool = True) -> PhaseArray:
        """
            (h k)^-1 n (h k) for n given by its array: shift by the inverse
            and re-normalize
        """
        twist = self.twist
        shifted = act(twist, act(twist, array, twist.H.inv(h), 0), 0, twist.K.inv(k))
        return shifted.standard_form() if standard else shifted.column_normalized()

    def commutator_array(self, k: int, h: int, standard: bool = True) -> PhaseArray:
        """Array of k^-1 h^-1 k h"""
        twist = self.twist
        word = (Letter("k", twist.K.inv(k)), Letter("h", twist.H.inv(h)), Letter("k", k), Letter("h", h))
        perm = evaluate_word(twist, word)
        return perm.array.standard_form() if standard else perm.array.column_normalized()

    def word_class(self, word) -> PhaseArray:
        """
            Standard-form N element of a word with trivial shift
        """
        perm = evaluate_word(self.twist, word)
        if not perm.has_trivial_shift:
            raise ValueError("Word does not lie in the commutator subgroup")
        return perm.array.standard_form()


def commutator_generators(twist: Twist) -> Dict[Pair, PhaseArray]:
    """
        Column-normalized arrays of h k h^-1 k^-1 for h != 1, k != 1
        Args:
            twist: the twist
        Returns:
            Dict[Pair, PhaseArray]: generator arrays keyed by (h, k)
    """
    generators = {}
    for h in range(1, twist.H.order):
        for k in range(1, twist.K.order):
            perm = evaluate_word(twist, commutator_word(twist, h, k))
            if not perm.has_trivial_shift or perm.array != commutator_formula(twist, h, k):
                raise InternalInconsistency(f"Commutator ({h}, {k}) disagrees with its closed formula")
            generators[(h, k)] = perm.array.column_normalized()
    logger.debug(f"Computed {len(generators)} commutator generators for {twist}")
    return generators


def _flat(arrays: Sequence[PhaseArray]) -> List[Tuple]:
    return [a.entries for a in arrays]


def _layer(data: CommGroupData, codes: np.ndarray, denominator: int,
           standard: bool) -> Tuple[FiniteLayer, _RowIndex]:
    twist = data.twist
    rows, cols = twist.H.order, twist.K.order
    elements = [PhaseArray(rows, cols, tuple(Phase(Fraction(int(v), denominator)) for v in row)) for row in codes]
    index = {a: i for i, a in enumerate(elements)}
    lookup = _RowIndex(codes, denominator)
    size, width = codes.shape
    mul = np.empty((size, size), dtype=np.int64)
    block = max(1, _BLOCK_ENTRIES // (size * width))
    for start in range(0, size, block):
        chunk = codes[start:start + block]
        mul[start:start + block] = lookup.find((chunk[:, None, :] + codes[None, :, :]) % denominator)

    def conjugated(h: int, k: int) -> np.ndarray:
        moved = codes[:, _shift_index(twist, h, k)]
        return lookup.find(_normalize(moved, rows, cols, denominator, standard))

    h_action = np.array([conjugated(twist.H.inv(h), 0) for h in twist.H.elements], dtype=np.int64)
    k_action = np.array([conjugated(0, twist.K.inv(k)) for k in twist.K.elements], dtype=np.int64)
    commutator = np.array([[index[data.commutator_array(k, h, standard=standard)] for h in twist.H.elements]
                           for k in twist.K.elements], dtype=np.int64)
    return FiniteLayer(elements, index, mul, h_action, k_action, commutator), lookup


def _refuse_large(structure: AbelianStructure, name: str, limit: int):
    if structure.order > limit:
        raise BoundExceeded(f"{name} = {structure} has order {structure.order}, "
                            f"enumeration is limited to {limit}")


def commutator_group(twist: Twist) -> CommGroupData:
    """
        Structure of the commutator group of a twist
        Args:
            twist: the twist
        Returns:
            CommGroupData: Ntilde, S and N with their actions; the finite
            layers are enumerated only when the corresponding group is finite
    """
    generators = commutator_generators(twist)
    arrays = list(generators.values())
    n_arrays = [a.standard_form() for a in arrays]
    ntilde_structure = subgroup_structure(_flat(arrays))
    n_structure = subgroup_structure(_flat(n_arrays))
    data = CommGroupData(twist, generators, ntilde_structure, n_structure)
    limit = config.get_group_config()["max_group_order"]
    rows, cols = twist.H.order, twist.K.order
    denominator = _denominator([a for a in arrays + n_arrays if a.is_rational])

    n_lookup = None
    if n_structure.is_finite:
        _refuse_large(n_structure, "N", limit)
        n_codes = _closure(_codes(n_arrays, rows * cols, denominator), denominator, limit)
        if len(n_codes) != n_structure.order:
            raise InternalInconsistency(f"N enumerates to {len(n_codes)} elements, "
                                        f"structure says {n_structure}")
        data.n, n_lookup = _layer(data, n_codes, denominator, standard=True)

    if ntilde_structure.is_finite:
        _refuse_large(ntilde_structure, "Ntilde", limit)
        codes = _closure(_codes(arrays, rows * cols, denominator), denominator, limit)
        if len(codes) != ntilde_structure.order:
            raise InternalInconsistency(f"Ntilde enumerates to {len(codes)} elements, "
                                        f"structure says {ntilde_structure}")
        data.ntilde, _ = _layer(data, codes, denominator, standard=False)
        grid = codes.reshape(-1, rows, cols)
        data.inner = np.flatnonzero((grid == grid[:, :, :1]).all(axis=(1, 2))).tolist()
        data.s_structure = subgroup_structure(_flat([data.ntilde.elements[i] for i in data.inner]))
        if n_lookup is not None:
            data.ntilde_to_n = n_lookup.find(_normalize(codes, rows, cols, denominator, standard=True)).tolist()
            if len(codes) != len(data.inner) * data.n.order:
                raise InternalInconsistency("|Ntilde| differs from |S| |N|")

    logger.info(f"Commutator group of {twist.H.name} x {twist.K.name}: Ntilde = {ntilde_structure}, "
                f"N = {n_structure}, S = {data.s_structure}")
    return data


def intermediate_condition(twist: Twist, generators: Optional[Dict[Pair, PhaseArray]] = None) -> bool:
    """
        True when no commutator h k h^-1 k^-1 with h != 1, k != 1 is inner
    """
    generators = generators or commutator_generators(twist)
    for array in generators.values():
        kind = classify_automorphism(TwistedPerm(0, 0, array)).kind
        if kind != AutomorphismKind.OUTER:
            return False
    return True
