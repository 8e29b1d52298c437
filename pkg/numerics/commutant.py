from functools import lru_cache
from typing import List, Union

import numpy as np

from config import config
from config.exceptions import BoundExceeded, InternalInconsistency, MemoryGuardError, NotHadamardError
from groups import AbelianGroup
from hadamard import HadamardMatrix, fourier_matrix, is_hadamard
from .algebra import accumulate_span, matrix_units, null_space, row_space

logger = config.get_logger(__name__)

ORIENTATIONS = ("U", "U*")


def _left(a: np.ndarray) -> np.ndarray:
    """Left multiplication by a on L^2(M_n), row-major vectorisation"""
    return np.kron(a, np.eye(a.shape[0]))


def _commutant(basis: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
        Elements of span(basis) commuting with y, as matrices
    """
    system = (y @ basis - basis @ y).reshape(basis.shape[0], -1).T
    solutions = null_space(system)
    return np.tensordot(solutions.T, basis, axes=1)


def _guard(entries: float):
    limit = config.get_numerics_config()["memory_guard_entries"]
    if entries > limit:
        raise MemoryGuardError(f"Representation needs {entries:.2e} complex entries, the guard is {limit:.0e}")


class CommutantTower:
    """
    The square of D (diagonal), u D u* and M_n, iterated horizontally. The
    relative commutant at level k is the commutant of u D u* inside the k-th
    algebra of the tower started from C in D:

        level 0: D on C^n
        level 1: span{x e1 y : x, y in D} on L^2(M_n), e1 onto L^2(u D u*)
        level 2: span{x e2 y : x, y in level 1} on L^2(<M_n, e1>), e2 onto L^2(M_n)
    """

    def __init__(self, u: np.ndarray):
        self.u = u
        self.n = u.shape[0]
        n = self.n
        self.y = u @ np.diag(np.arange(1, n + 1)).astype(complex) @ u.conj().T
        self.logger = config.get_logger(type(self).__name__)

    def level0(self) -> np.ndarray:
        return _commutant(matrix_units(self.n, diagonal=True), self.y)

    def _e1(self) -> np.ndarray:
        conjugated = self.u @ matrix_units(self.n, diagonal=True) @ self.u.conj().T
        q = conjugated.reshape(self.n, -1)
        return q.T @ q.conj()

    def _level1_algebra(self) -> np.ndarray:
        n = self.n
        e1 = self._e1()
        diagonal = np.array([_left(d) for d in matrix_units(n, diagonal=True)])
        products = (diagonal @ e1)[:, None] @ diagonal[None, :]
        return row_space(products.reshape(n ** 2, -1)).reshape(-1, n * n, n * n)

    def level1(self) -> np.ndarray:
        _guard(float(self.n) ** 6)
        basis = self._level1_algebra()
        self.logger.debug(f"Level 1 algebra has dimension {basis.shape[0]}")
        return _commutant(basis, _left(self.y))

    def level2(self) -> np.ndarray:
        n = self.n
        _guard(float(n) ** 9)
        e1 = self._e1()
        full = np.array([_left(a) for a in matrix_units(n)])
        # <M_n, e1> on L^2(M_n) and its own L^2 space
        frame = row_space(((full @ e1)[:, None] @ full[None, :]).reshape(n ** 4, -1)).reshape(-1, n * n, n * n)
        adjoint_frame = frame.conj().transpose(0, 2, 1)

        def regular(x: np.ndarray) -> np.ndarray:
            return np.einsum("iab,jba->ij", adjoint_frame, x @ frame)

        q = row_space(np.einsum("iab,jba->ji", adjoint_frame, full))
        e2 = q.T @ q.conj()
        lower = np.array([regular(x) for x in self._level1_algebra()])
        chunks = (((x @ e2)[None] @ lower).reshape(lower.shape[0], -1) for x in lower)
        size = frame.shape[0]
        basis = accumulate_span(chunks).reshape(-1, size, size)
        self.logger.debug(f"Level 2 algebra has dimension {basis.shape[0]} on L^2 of dimension {size}")
        return _commutant(basis, regular(_left(self.y)))

    def commutant(self, level: int) -> np.ndarray:
        return (self.level0, self.level1, self.level2)[level]()


def _oriented(u: np.ndarray, orientation: str) -> np.ndarray:
    return u if orientation == "U" else u.conj().T


def _fourier(n: int) -> np.ndarray:
    return fourier_matrix(AbelianGroup([n])).to_numpy()


@lru_cache(maxsize=None)
def validated_orientation() -> str:
    """
        The orientation passing the ladder: level 0 of F(Z2) is 1 and level
        1 of F(Z3) is 3
    """
    for orientation in ORIENTATIONS:
        level0 = CommutantTower(_oriented(_fourier(2), orientation)).level0().shape[0]
        level1 = CommutantTower(_oriented(_fourier(3), orientation)).level1().shape[0]
        if (level0, level1) == (1, 3):
            logger.info(f"Commutant orientation {orientation} validated")
            return orientation
        logger.warning(f"Orientation {orientation} fails validation with dimensions {level0}, {level1}")
    raise InternalInconsistency("No orientation reproduces the crossed product commutants")


def _tower(matrix: Union[HadamardMatrix, np.ndarray], level: int) -> CommutantTower:
    if level not in (0, 1, 2):
        raise ValueError(f"Relative commutants are computed for levels 0, 1 and 2, got {level}")
    if isinstance(matrix, HadamardMatrix):
        if not is_hadamard(matrix):
            name = f" {matrix.name}" if matrix.name else ""
            raise NotHadamardError(f"Matrix{name} is not Hadamard")
        u = matrix.to_numpy()
    else:
        u = np.asarray(matrix, dtype=complex)
        n = u.shape[0]
        if not np.allclose(np.abs(u) ** 2, 1 / n, atol=1e-9) or not np.allclose(u @ u.conj().T, np.eye(n)):
            raise NotHadamardError("Matrix is not a scaled Hadamard matrix")
    settings = config.get_numerics_config()
    limits = {1: settings["max_level1_size"], 2: settings["max_level2_size"]}
    if level in limits and u.shape[0] > limits[level]:
        raise BoundExceeded(f"Level {level} commutants are computed up to size {limits[level]}, got {u.shape[0]}")
    return CommutantTower(_oriented(u, validated_orientation()))


def relative_commutant_dims(matrix: Union[HadamardMatrix, np.ndarray], level: int) -> int:
    """
        Dimension of the level-th relative commutant of the Hadamard subfactor
        Args:
            matrix: Hadamard matrix, exact or as a scaled unitary array
            level: 0, 1 or 2
        Returns:
            int: nullity of the commutation system at the rank tolerance
    """
    dimension = _tower(matrix, level).commutant(level).shape[0]
    logger.info(f"Relative commutant at level {level}: dimension {dimension}")
    return dimension


def commutant_basis(matrix: Union[HadamardMatrix, np.ndarray], level: int = 1) -> List[np.ndarray]:
    return list(_tower(matrix, level).commutant(level))


def basis_is_abelian(basis: List[np.ndarray]) -> bool:
    """True when the basis commutes pairwise"""
    tolerance = config.get_numerics_config()["rank_tolerance"]
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            if np.abs(a @ b - b @ a).max() > tolerance * max(1.0, np.abs(a).max() * np.abs(b).max()):
                return False
    return True


def commutant_is_abelian(matrix: Union[HadamardMatrix, np.ndarray], level: int = 1) -> bool:
    return basis_is_abelian(commutant_basis(matrix, level))
