from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm, prod
from typing import List, Sequence, Tuple, Union

import numpy as np

from config import config
from phases import INFINITE, Phase

logger = config.get_logger(__name__)


@dataclass(frozen=True)
class AbelianStructure:
    """
    A finitely generated abelian group: torsion invariant factors
    d1 | d2 | ... (each at least 2) plus a free rank.
    """
    torsion: Tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"Invariant factors must be at least 2: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"Invariant factors must form a divisibility chain: {self.torsion}")

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Union[int, str]:
        return prod(self.torsion) if self.is_finite else INFINITE

    def __str__(self) -> str:
        parts = [f"Z{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def exgcd(a: int, b: int) -> np.ndarray:
    """
    Extended GCD as a row operation.

    Returns a 2x2 integer matrix M of determinant 1 with M @ [a, b] = [gcd(a, b), 0].
    If a divides b, M[0, 1] is 0.
    """
    a_sign = -1 if a < 0 else 1
    a *= a_sign
    b_sign = -1 if b < 0 else 1
    b *= b_sign

    # Euclid on the column [a, b], with the row operations tracked by the
    # augmented identity block
    M = np.array([[a, 1, 0],
                  [b, 0, 1]], dtype=object)
    M = M[::-1]
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1]

    g = M[0, 0]
    M = M[:, 1:].copy()
    M *= np.array([a_sign, b_sign], dtype=object)

    # Fix the determinant using M[0, 0] * a + M[0, 1] * b = g
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    return M


def _as_object_matrix(M) -> np.ndarray:
    A = np.array(M, dtype=object)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, 0), dtype=object)
    return np.vectorize(int, otypes=[object])(A) if A.size else A


def smith_normal_form(M) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
        Smith normal form with transforms
        Args:
            M: integer matrix (nested lists or numpy array)
        Returns:
            (U, S, V): object-dtype integer matrices with U @ M @ V == S,
            U and V unimodular, S diagonal with nonnegative entries
            d1 | d2 | ... followed by zeros
    """
    D = _as_object_matrix(M)
    rows, cols = D.shape
    U = np.eye(rows, dtype=object)
    V = np.eye(cols, dtype=object)

    def row_op(i: int, j: int, E: np.ndarray):
        D[[i, j]] = E @ D[[i, j]]
        U[[i, j]] = E @ U[[i, j]]

    def col_op(i: int, j: int, F: np.ndarray):
        D[:, [i, j]] = D[:, [i, j]] @ F
        V[:, [i, j]] = V[:, [i, j]] @ F

    def clear_col(i: int) -> bool:
        if (D[i + 1:, i] == 0).all():
            return False
        for j in range(i + 1, rows):
            row_op(i, j, exgcd(D[i, i], D[j, i]))
        return True

    def clear_row(i: int) -> bool:
        if (D[i, i + 1:] == 0).all():
            return False
        for j in range(i + 1, cols):
            col_op(i, j, exgcd(D[i, i], D[i, j]).T)
        return True

    for i in range(min(rows, cols)):
        # Bring a nonzero pivot into place if the remaining block has one
        block = D[i:, i:]
        nonzero = np.argwhere((block != 0).astype(bool))
        if len(nonzero) == 0:
            break
        r, c = nonzero[0]
        if r:
            swap = np.array([[0, 1], [1, 0]], dtype=object)
            row_op(i, i + r, swap)
        if c:
            swap = np.array([[0, 1], [1, 0]], dtype=object)
            col_op(i, i + c, swap)
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass

    # Divisibility chain: diag(a, b) -> diag(gcd, lcm) by unimodular moves
    size = min(rows, cols)
    changed = True
    while changed:
        changed = False
        for i in range(size):
            for j in range(i + 1, size):
                a, b = D[i, i], D[j, j]
                if a == 0 and b == 0:
                    continue
                if a != 0 and b % a == 0:
                    continue
                g = gcd(a, b)
                E = exgcd(a, b)
                s, t = E[0, 0], E[0, 1]
                # s*a + t*b = g
                P = np.array([[s, t], [-b // g, a // g]], dtype=object)
                Q = np.array([[1, -t * b // g], [1, s * a // g]], dtype=object)
                row_op(i, j, P)
                col_op(i, j, Q)
                changed = True

    for i in range(size):
        if D[i, i] < 0:
            D[i] = -D[i]
            U[i] = -U[i]

    return U, D, V


def _rank_of_diagonal(S: np.ndarray) -> int:
    return sum(1 for i in range(min(S.shape)) if S[i, i] != 0)


def left_kernel(B) -> np.ndarray:
    """Rows spanning the integer left kernel {c : c @ B == 0}."""
    B = _as_object_matrix(B)
    if B.shape[0] == 0:
        return np.zeros((0, 0), dtype=object)
    U, S, _ = smith_normal_form(B)
    return U[_rank_of_diagonal(S):]


def structure_of_relations(relations, generator_count: int) -> AbelianStructure:
    """
        Structure of Z^generator_count modulo the row span of relations
    """
    R = _as_object_matrix(relations)
    if R.size == 0:
        return AbelianStructure((), generator_count)
    _, S, _ = smith_normal_form(R)
    diagonal = [S[i, i] for i in range(min(S.shape))]
    rank = sum(1 for d in diagonal if d != 0)
    torsion = tuple(sorted(int(d) for d in diagonal if d > 1))
    return AbelianStructure(torsion, generator_count - rank)


def _coordinate_lattice(generators: Sequence[Sequence[Phase]]):
    """
    Clear denominators: rational parts become integers modulo a common
    modulus, irrational coefficients become integer vectors.
    """
    width = len(generators[0])
    symbols = sorted({s for vector in generators for p in vector for s in p.symbols})
    modulus = reduce(lcm, (p.rational_turn.denominator for v in generators for p in v), 1)
    scale = reduce(lcm, (c.denominator for v in generators for p in v for _, c in p.irr_coeffs), 1)
    rational = [[int(p.rational_turn * modulus) for p in v] for v in generators]
    irrational = [[int(p.coefficient(s) * scale) for p in v for s in symbols] for v in generators]
    return width, modulus, rational, irrational


def relation_lattice(generators: Sequence[Sequence[Phase]]) -> np.ndarray:
    """
        Integer relations among generator vectors
        Args:
            generators: vectors of phases, all of the same length
        Returns:
            np.ndarray: rows c with sum_i c_i * generator_i == 0 exactly
    """
    if not generators:
        return np.zeros((0, 0), dtype=object)
    r = len(generators)
    width, modulus, rational, irrational = _coordinate_lattice(generators)
    irr_width = len(irrational[0]) if irrational else 0
    # c @ irrational == 0 and c @ rational == 0 (mod modulus), written as the
    # left kernel of [[irrational, rational], [0, modulus * I]]
    B = np.zeros((r + width, irr_width + width), dtype=object)
    for i in range(r):
        B[i, :irr_width] = irrational[i]
        B[i, irr_width:] = rational[i]
    for j in range(width):
        B[r + j, irr_width + j] = modulus
    kernel = left_kernel(B)
    return kernel[:, :r] if kernel.size else np.zeros((0, r), dtype=object)


def subgroup_structure(generators: Sequence[Sequence[Phase]]) -> AbelianStructure:
    """
        Structure of the subgroup of the torus generated by phase vectors
        Args:
            generators: list of equal-length tuples of Phase
        Returns:
            AbelianStructure: torsion invariants and free rank
    """
    generators = [tuple(v) for v in generators]
    if not generators or all(all(p.is_identity for p in v) for v in generators):
        return AbelianStructure()
    relations = relation_lattice(generators)
    structure = structure_of_relations(relations, len(generators))
    logger.debug(f"Subgroup on {len(generators)} generators has structure {structure}")
    return structure


def invariant_factors(factors: Sequence[int]) -> Tuple[int, ...]:
    """
        Invariant factors of a direct product of cyclic groups
    """
    if not factors:
        return ()
    _, S, _ = smith_normal_form(np.diag(np.array(list(factors), dtype=object)))
    return tuple(int(S[i, i]) for i in range(len(factors)) if S[i, i] > 1)
