import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from config import config
from config.exceptions import HadamardParseError, NotHadamardError, PhaseParseError, TwistShapeError
from groups import FinGroup, characters
from phases import Phase, PhaseArray, parse_phase

logger = config.get_logger(__name__)

_x = symbols("x")


@dataclass(frozen=True)
class HadamardMatrix:
    """
    An n x n matrix of unit phases; the complex entry at (i, j) is
    n^{-1/2} e^{2 pi i angles(i, j)}.
    """
    angles: PhaseArray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.angles.rows != self.angles.cols:
            raise HadamardParseError(f"Hadamard matrix must be square, got "
                                     f"{self.angles.rows}x{self.angles.cols}")

    @property
    def n(self) -> int:
        return self.angles.rows

    @property
    def is_rational(self) -> bool:
        return self.angles.is_rational

    def to_numpy(self) -> np.ndarray:
        """Unitary complex matrix with the n^{-1/2} scaling applied"""
        return self.angles.to_numpy() / np.sqrt(self.n)

    def conjugate_transpose(self) -> "HadamardMatrix":
        return HadamardMatrix(PhaseArray.from_function(self.n, self.n, lambda i, j: self.angles[j, i].conj()),
                              name=f"{self.name}*" if self.name else "")

    def to_strings(self) -> List[List[str]]:
        return self.angles.to_strings()

    def __str__(self) -> str:
        return "\n".join(", ".join(row) for row in self.to_strings())


@dataclass(frozen=True, eq=False)
class Twist:
    """
    A diagonal unitary twist over H x K, stored as a phase array whose rows
    are the elements of H and columns the elements of K.

    right_action selects the right regular representation for the H letters;
    it defaults to True exactly when H is non-abelian.
    """
    H: FinGroup
    K: FinGroup
    array: PhaseArray
    right_action: Optional[bool] = None

    def __post_init__(self):
        if (self.array.rows, self.array.cols) != (self.H.order, self.K.order):
            raise TwistShapeError(f"Twist over {self.H.name} x {self.K.name} needs a "
                                  f"{self.H.order}x{self.K.order} array, got "
                                  f"{self.array.rows}x{self.array.cols}")
        if self.right_action is None:
            object.__setattr__(self, "right_action", not self.H.is_abelian)

    @classmethod
    def ones(cls, H: FinGroup, K: FinGroup) -> "Twist":
        return cls(H, K, PhaseArray.ones(H.order, K.order))

    @classmethod
    def from_phases(cls, H: FinGroup, K: FinGroup, phases: Sequence[Union[str, Phase, int, Fraction]],
                    right_action: Optional[bool] = None) -> "Twist":
        """
            Build a twist from a flat list, row-major over H then K:
            entry i * |K| + j is the phase at (h_i, k_j)
        """
        expected = H.order * K.order
        if len(phases) != expected:
            raise TwistShapeError(f"Twist over {H.name} x {K.name} needs {expected} phases, got {len(phases)}")
        parsed = [parse_phase(p) for p in phases]
        return cls(H, K, PhaseArray(H.order, K.order, tuple(parsed)), right_action)

    @property
    def is_rational(self) -> bool:
        return self.array.is_rational

    def standard_form(self) -> "Twist":
        return twist_standard_form(self)

    def to_flat(self) -> List[str]:
        return [str(p) for p in self.array.entries]

    def __repr__(self) -> str:
        return f"Twist({self.H.name}, {self.K.name}, {self.array})"


def twist_standard_form(twist: Twist) -> Twist:
    """
        Multiply a twist by a row function and a column function so that its
        first row and first column are all ones. The commutator data of the
        twist does not change.
    """
    return Twist(twist.H, twist.K, twist.array.standard_form(), twist.right_action)


def fourier_matrix(group: FinGroup) -> HadamardMatrix:
    """
        Fourier matrix of a finite abelian group
        Args:
            group: abelian group
        Returns:
            HadamardMatrix: entry (i, j) is rho_j(i)
    """
    table = characters(group)
    return HadamardMatrix(PhaseArray.from_function(group.order, group.order, lambda i, j: table[j, i]),
                          name=f"F({group.name})")


def fourier_conjugate(group: FinGroup) -> HadamardMatrix:
    """Conjugate transpose of the Fourier matrix"""
    return fourier_matrix(group).conjugate_transpose()


def tensor_product(first: HadamardMatrix, second: HadamardMatrix) -> HadamardMatrix:
    """
        Kronecker product; row (i, j) is i * second.n + j
    """
    m = second.n

    def entry(r: int, c: int) -> Phase:
        return first.angles[r // m, c // m] * second.angles[r % m, c % m]

    size = first.n * m
    return HadamardMatrix(PhaseArray.from_function(size, size, entry))


def twisted_tensor(first: HadamardMatrix, second: HadamardMatrix,
                   twist: Union[Twist, PhaseArray]) -> HadamardMatrix:
    """
        The twisted tensor product (1 x second) T (first x 1)
        Args:
            first: Hadamard matrix over H
            second: Hadamard matrix over K
            twist: phases indexed by (h, k)
        Returns:
            HadamardMatrix: entry at ((i, j), (k, l)) is first(i, k) second(j, l) T(i, l)
    """
    array = twist.array if isinstance(twist, Twist) else twist
    if (array.rows, array.cols) != (first.n, second.n):
        raise TwistShapeError(f"Twist shape {array.rows}x{array.cols} does not match "
                              f"matrix sizes {first.n} and {second.n}")
    m = second.n

    def entry(r: int, c: int) -> Phase:
        i, j = divmod(r, m)
        k, l = divmod(c, m)
        return first.angles[i, k] * second.angles[j, l] * array[i, l]

    size = first.n * m
    return HadamardMatrix(PhaseArray.from_function(size, size, entry))


@lru_cache(maxsize=None)
def _cyclotomic(q: int) -> Poly:
    return Poly(cyclotomic_poly(q, _x), _x)


def roots_of_unity_sum_vanishes(turns: Sequence[Fraction]) -> bool:
    """
        Decide exactly whether sum_k e^{2 pi i turns_k} is zero, by testing
        divisibility of sum_k x^{q turns_k} by the q-th cyclotomic polynomial
    """
    q = reduce(lcm, (Fraction(t).denominator for t in turns), 1)
    counts = [0] * q
    for t in turns:
        counts[int(Fraction(t) * q) % q] += 1
    return Poly(list(reversed(counts)), _x).rem(_cyclotomic(q)).is_zero


def is_hadamard(matrix: Union[HadamardMatrix, PhaseArray]) -> bool:
    """
        Unitarity of the scaled phase matrix: exact for rational angles,
        numerical at the construction tolerance otherwise
    """
    angles = matrix.angles if isinstance(matrix, HadamardMatrix) else matrix
    if angles.rows != angles.cols:
        return False
    n = angles.rows
    if angles.is_rational:
        for i in range(n):
            for j in range(i + 1, n):
                turns = [(angles[i, k] / angles[j, k]).rational_turn for k in range(n)]
                if not roots_of_unity_sum_vanishes(turns):
                    return False
        return True
    tolerance = config.get_numerics_config()["construction_tolerance"]
    u = angles.to_numpy() / np.sqrt(n)
    return bool(np.allclose(u @ u.conj().T, np.eye(n), atol=tolerance))


def _not_hadamard_message(name: str) -> str:
    return f"Matrix {name} is not Hadamard" if name else "Matrix is not Hadamard"


def parse_real_hadamard(text: str, name: str = "") -> HadamardMatrix:
    """
        Parse a real Hadamard matrix written as lines of '+' and '-'
        Args:
            text: one row per line
            name: optional label carried into reports
        Returns:
            HadamardMatrix: '+' is angle 0 and '-' is angle 1/2
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise HadamardParseError("Empty Hadamard matrix")
    n = len(lines)
    rows = []
    for number, line in enumerate(lines, start=1):
        if len(line) != n:
            raise HadamardParseError(f"Line {number} has {len(line)} entries, expected {n}")
        invalid = set(line) - {"+", "-"}
        if invalid:
            raise HadamardParseError(f"Invalid characters {sorted(invalid)} on line {number}")
        rows.append([Phase() if c == "+" else Phase(Fraction(1, 2)) for c in line])
    matrix = HadamardMatrix(PhaseArray.from_rows(rows), name=name)
    if not is_hadamard(matrix):
        raise NotHadamardError(_not_hadamard_message(name))
    return matrix


def parse_complex_hadamard(text: str, name: str = "") -> HadamardMatrix:
    """
        Parse a complex Hadamard matrix: one row per line, comma-separated
        phase literals
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise HadamardParseError("Empty Hadamard matrix")
    try:
        rows = [[parse_phase(cell.strip()) for cell in line.split(",")] for line in lines]
    except PhaseParseError as e:
        raise HadamardParseError(f"Invalid phase in Hadamard matrix: {e}") from e
    if any(len(row) != len(rows) for row in rows):
        raise HadamardParseError(f"Hadamard matrix must be square, got {len(rows)} rows "
                                 f"of lengths {sorted({len(r) for r in rows})}")
    matrix = HadamardMatrix(PhaseArray.from_rows(rows), name=name)
    if not is_hadamard(matrix):
        raise NotHadamardError(_not_hadamard_message(name))
    return matrix


def load_hadamard_file(path: str) -> HadamardMatrix:
    """
        Read a matrix file in either the '+'/'-' or the comma-separated format
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    name = os.path.splitext(os.path.basename(path))[0]
    if "," in text or any(c.isdigit() for c in text):
        return parse_complex_hadamard(text, name=name)
    return parse_real_hadamard(text, name=name)


def load_catalog(directory: str) -> Dict[str, HadamardMatrix]:
    """
        Load every *.txt matrix in a directory, keyed by file stem
    """
    catalog = {}
    for entry in sorted(os.listdir(directory)):
        if entry.endswith(".txt"):
            matrix = load_hadamard_file(os.path.join(directory, entry))
            catalog[matrix.name] = matrix
    logger.info(f"Loaded {len(catalog)} Hadamard matrices from {directory}")
    return catalog
