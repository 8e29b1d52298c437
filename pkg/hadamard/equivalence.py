from collections import Counter
from typing import List, Optional, Tuple

from config import config
from config.exceptions import BoundExceeded
from phases import Phase
from .matrix import HadamardMatrix

logger = config.get_logger(__name__)

Row = Tuple[Phase, ...]


def _phase_key(p: Phase):
    return (p.rational_turn, p.irr_coeffs)


def dephase(matrix: HadamardMatrix, row: int = 0, col: int = 0) -> List[Row]:
    """
        Scale rows and columns so that the given row and column become all
        ones, then move them to the front
    """
    a = matrix.angles
    n = matrix.n
    corner = a[row, col]
    rows = [row] + [i for i in range(n) if i != row]
    cols = [col] + [j for j in range(n) if j != col]
    return [tuple(a[i, j] / a[i, col] / a[row, j] * corner for j in cols) for i in rows]


def _sorted_row(row: Row) -> Tuple:
    return tuple(sorted(_phase_key(p) for p in row))


def _permutation_equivalent(a: List[Row], b: List[Row]) -> bool:
    """
    Backtracking over row assignments; a partial assignment survives only if
    the columns restricted to the assigned rows agree as multisets.
    """
    n = len(a)
    if Counter(_sorted_row(r) for r in a) != Counter(_sorted_row(r) for r in b):
        return False
    b_signatures = [_sorted_row(r) for r in b]
    a_signatures = [_sorted_row(r) for r in a]

    def columns(rows: List[Row]) -> Counter:
        return Counter(tuple(_phase_key(r[j]) for r in rows) for j in range(n))

    def search(assigned_a: List[Row], assigned_b: List[Row], used: set) -> bool:
        depth = len(assigned_a)
        if depth == n:
            return True
        candidate_row = a[depth]
        for index in range(n):
            if index in used or b_signatures[index] != a_signatures[depth]:
                continue
            next_a = assigned_a + [candidate_row]
            next_b = assigned_b + [b[index]]
            if columns(next_a) != columns(next_b):
                continue
            if search(next_a, next_b, used | {index}):
                return True
        return False

    # Row 0 of both dephased matrices is all ones and stays in place
    return search([a[0]], [b[0]], {0})


def hadamard_equivalent(first: HadamardMatrix, second: HadamardMatrix,
                        bound: Optional[int] = None) -> bool:
    """
        Decide whether second is obtained from first by permuting rows and
        columns and multiplying them by unit scalars
        Args:
            first: Hadamard matrix
            second: Hadamard matrix
            bound: largest size searched, defaults to the configured bound
        Returns:
            bool: True if the two matrices are equivalent
    """
    bound = bound or config.get_group_config()["equivalence_bound"]
    if first.n != second.n:
        return False
    if first.n > bound:
        raise BoundExceeded(f"Equivalence search limited to size {bound}, got {first.n}")
    target = dephase(second)
    for row in range(first.n):
        for col in range(first.n):
            if _permutation_equivalent(dephase(first, row, col), target):
                logger.debug(f"Equivalence found with pivot ({row}, {col})")
                return True
    return False
