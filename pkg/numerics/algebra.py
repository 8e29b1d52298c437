from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from config import config
from config.exceptions import (
    IllConditionedTrace,
    InternalInconsistency,
    NonMarkovTrace,
    PrecisionError,
    SpecError,
)
from hadamard import HadamardMatrix

logger = config.get_logger(__name__)


def _settings() -> dict:
    return config.get_numerics_config()


def _check_gap(values: np.ndarray, tolerance: float, guard: float):
    """Singular values inside the guard band around the tolerance are ambiguous"""
    ambiguous = values[(values >= tolerance / guard) & (values <= tolerance * guard)]
    if ambiguous.size:
        raise PrecisionError(f"Rank decision ambiguous: singular value {ambiguous[0]:.3e} "
                             f"within a factor {guard} of tolerance {tolerance:.1e}")


def row_space(stack: np.ndarray, tolerance: Optional[float] = None) -> np.ndarray:
    """
        Orthonormal rows spanning the row space of stack
    """
    settings = _settings()
    tolerance = tolerance or settings["rank_tolerance"]
    if stack.shape[0] == 0:
        return stack
    _, s, vh = linalg.svd(stack, full_matrices=False)
    scale = max(float(s[0]), 1.0)
    _check_gap(s / scale, tolerance, settings["guard_band"])
    rank = int((s > tolerance * scale).sum())
    return vh[:rank]


def accumulate_span(chunks: Iterable[np.ndarray], tolerance: Optional[float] = None) -> np.ndarray:
    """Orthonormal basis of the span of row vectors supplied chunk by chunk"""
    basis = None
    for chunk in chunks:
        stack = chunk if basis is None else np.vstack([basis, chunk])
        basis = row_space(stack, tolerance)
    return basis


def null_space(system: np.ndarray, tolerance: Optional[float] = None) -> np.ndarray:
    """
        Orthonormal columns spanning the solutions of system @ c = 0
    """
    settings = _settings()
    tolerance = tolerance or settings["rank_tolerance"]
    columns = system.shape[1]
    _, s, vh = linalg.svd(system, full_matrices=system.shape[0] < columns)
    scale = max(float(s[0]), 1.0) if s.size else 1.0
    _check_gap(s / scale, tolerance, settings["guard_band"])
    rank = int((s > tolerance * scale).sum())
    logger.debug(f"Linear system {system.shape}: rank {rank}, nullity {columns - rank}")
    return vh[rank:].conj().T


def matrix_units(n: int, diagonal: bool = False) -> np.ndarray:
    if diagonal:
        units = np.zeros((n, n, n), dtype=complex)
        units[np.arange(n), np.arange(n), np.arange(n)] = 1
        return units
    return np.eye(n * n, dtype=complex).reshape(n * n, n, n)


class ConcreteAlgebra:
    """
    A finite-dimensional *-algebra of d x d matrices given by a linear basis,
    with the trace x -> Tr(density x). Closure under adjoint and products is
    checked on construction.
    """

    def __init__(self, basis: Union[np.ndarray, List[np.ndarray]], density: Optional[np.ndarray] = None,
                 name: str = "", verify: bool = True):
        self.basis = np.asarray(basis, dtype=complex)
        if self.basis.ndim != 3 or self.basis.shape[1] != self.basis.shape[2]:
            raise SpecError(f"Algebra basis must have shape (m, d, d), got {self.basis.shape}")
        self.d = self.basis.shape[1]
        self.density = np.eye(self.d, dtype=complex) / self.d if density is None else np.asarray(density, complex)
        self.name = name or f"algebra({self.dim} in M_{self.d})"
        self.logger = config.get_logger(type(self).__name__)
        if verify:
            self._verify()

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def scalars(cls, d: int) -> "ConcreteAlgebra":
        return cls(np.eye(d, dtype=complex)[None], name="C")

    @classmethod
    def diagonal(cls, d: int) -> "ConcreteAlgebra":
        return cls(matrix_units(d, diagonal=True), name=f"D_{d}")

    @classmethod
    def full(cls, d: int) -> "ConcreteAlgebra":
        return cls(matrix_units(d), name=f"M_{d}")

    def conjugated(self, u: np.ndarray, name: str = "") -> "ConcreteAlgebra":
        """u A u* for a unitary u"""
        return ConcreteAlgebra(u @ self.basis @ u.conj().T, self.density, name=name or f"u {self.name} u*")

    def trace(self, x: np.ndarray) -> complex:
        return complex(np.trace(self.density @ x))

    def coefficients(self, x: np.ndarray) -> Tuple[np.ndarray, float]:
        """Least squares coordinates of x in the basis and the residual norm"""
        flat = self.basis.reshape(self.dim, -1).T
        coeffs, *_ = linalg.lstsq(flat, x.reshape(-1))
        return coeffs, float(np.linalg.norm(flat @ coeffs - x.reshape(-1)))

    def contains(self, x: np.ndarray, tolerance: Optional[float] = None) -> bool:
        tolerance = tolerance or _settings()["construction_tolerance"]
        scale = max(1.0, float(np.linalg.norm(x)))
        return self.coefficients(x)[1] <= tolerance * scale

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        coeffs = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        return np.tensordot(coeffs, self.basis, axes=1)

    def _verify(self):
        settings = _settings()
        if not self.contains(np.eye(self.d)):
            raise SpecError(f"{self.name} does not contain the identity")
        for b in self.basis:
            if not self.contains(b.conj().T):
                raise SpecError(f"{self.name} is not closed under the adjoint")
        rng = np.random.default_rng(config.get_group_config()["random_seed"])
        for _ in range(settings["closure_samples"]):
            if not self.contains(self.random_element(rng) @ self.random_element(rng)):
                raise SpecError(f"{self.name} is not closed under products")
        self.logger.debug(f"Verified {self!r}")

    def __repr__(self) -> str:
        return f"ConcreteAlgebra({self.name}, dim={self.dim}, d={self.d})"


def _gram(algebra: ConcreteAlgebra, basis: np.ndarray) -> np.ndarray:
    gram = np.einsum("iab,jbc,ca->ij", basis.conj().transpose(0, 2, 1), basis, algebra.density)
    condition = np.linalg.cond(gram)
    limit = _settings()["condition_limit"]
    if condition > limit:
        raise IllConditionedTrace(f"Trace Gram matrix has condition number {condition:.2e} > {limit:.0e}")
    return gram


def conditional_expectation(large: ConcreteAlgebra, small: ConcreteAlgebra) -> Callable[[np.ndarray], np.ndarray]:
    """
        Trace preserving conditional expectation onto a subalgebra
        Args:
            large: the ambient algebra, whose trace is used
            small: a subalgebra of large
        Returns:
            Callable: x -> E(x), the orthogonal projection onto small in the
            trace inner product
    """
    for b in small.basis:
        if not large.contains(b):
            raise SpecError(f"{small.name} is not contained in {large.name}")
    gram = _gram(large, small.basis)
    adjoints = small.basis.conj().transpose(0, 2, 1)

    def expectation(x: np.ndarray) -> np.ndarray:
        rhs = np.array([large.trace(a @ x) for a in adjoints])
        coeffs = linalg.solve(gram, rhs, assume_a="her")
        return np.tensordot(coeffs, small.basis, axes=1)

    tolerance = _settings()["construction_tolerance"]
    rng = np.random.default_rng(config.get_group_config()["random_seed"])
    for b in small.basis:
        if not np.allclose(expectation(b), b, atol=tolerance * 10):
            raise InternalInconsistency(f"E does not fix {small.name}")
    b1, b2, a = small.random_element(rng), small.random_element(rng), large.random_element(rng)
    bimodule_tolerance = _settings()["rank_tolerance"] * max(1.0, np.abs(a).max())
    if not np.allclose(expectation(b1 @ a @ b2), b1 @ expectation(a) @ b2, atol=bimodule_tolerance):
        raise InternalInconsistency(f"E onto {small.name} is not a bimodule map; the trace is not tracial")
    return expectation


@dataclass
class _Centre:
    projections: List[np.ndarray]
    sizes: List[int]  # block size b, the block is M_b
    multiplicities: List[int]  # copies of C^b in the ambient space


def central_decomposition(algebra: ConcreteAlgebra) -> _Centre:
    """
        Minimal central projections from the spectral projections of a
        generic self-adjoint central element
    """
    m, d = algebra.dim, algebra.d
    basis = algebra.basis
    system = np.concatenate([(basis @ b - b @ basis).reshape(m, -1).T for b in basis], axis=0)
    centre = null_space(system)
    rng = np.random.default_rng(config.get_group_config()["random_seed"])
    z = np.tensordot(centre @ (1 + rng.random(centre.shape[1])), basis, axes=1)
    z = z + z.conj().T
    values, vectors = linalg.eigh(z)
    split = np.flatnonzero(np.diff(values) > np.sqrt(_settings()["rank_tolerance"])) + 1
    result = _Centre([], [], [])
    for group in np.split(np.arange(d), split):
        p = vectors[:, group] @ vectors[:, group].conj().T
        block = row_space((basis @ p).reshape(m, -1)).shape[0]
        size = int(round(np.sqrt(block)))
        if size * size != block or len(group) % size:
            raise InternalInconsistency(f"Central summand of dimension {block} is not a full matrix block")
        result.projections.append(p)
        result.sizes.append(size)
        result.multiplicities.append(len(group) // size)
    return result


def inclusion_matrix(small: ConcreteAlgebra, large: ConcreteAlgebra) -> np.ndarray:
    """
        Bratteli multiplicities: entry (i, j) counts copies of the i-th block
        of small inside the j-th block of large
    """
    lower, upper = central_decomposition(small), central_decomposition(large)
    matrix = np.zeros((len(lower.sizes), len(upper.sizes)), dtype=np.int64)
    for i, (q, b) in enumerate(zip(lower.projections, lower.sizes)):
        for j, (p, mult) in enumerate(zip(upper.projections, upper.multiplicities)):
            rank = float(np.trace(q @ p).real)
            value = rank / (b * mult)
            if abs(value - round(value)) > 1e-6:
                raise InternalInconsistency(f"Non-integer inclusion multiplicity {value}")
            matrix[i, j] = int(round(value))
    return matrix


def markov_modulus(matrix: np.ndarray) -> float:
    """1 / |Lambda|^2 with the operator norm of the inclusion matrix"""
    return 1.0 / linalg.norm(np.asarray(matrix, dtype=float), 2) ** 2


@dataclass
class TowerLevel:
    """
    B0 in B1 in B2 with B2 = <B1, e> represented on L^2(B1). left_regular
    maps elements of B1 to operators on L^2(B1).
    """
    small: ConcreteAlgebra
    large: ConcreteAlgebra
    extension: ConcreteAlgebra
    e: np.ndarray
    tau: float
    left_regular: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def trace(self, x: np.ndarray) -> float:
        return self.extension.trace(x)


def _orthonormal_basis(algebra: ConcreteAlgebra) -> np.ndarray:
    """Basis of L^2(algebra) orthonormal for the trace inner product"""
    gram = _gram(algebra, algebra.basis)
    values, vectors = linalg.eigh(gram)
    w = vectors @ np.diag(values ** -0.5) @ vectors.conj().T
    return np.tensordot(w.T, algebra.basis, axes=1)


def basic_construction(small: ConcreteAlgebra, large: ConcreteAlgebra, tau: Optional[float] = None) -> TowerLevel:
    """
        Jones basic construction of small in large on the GNS space of large
        Args:
            small: B0
            large: B1 with a Markov trace
            tau: Markov modulus, from the inclusion matrix when omitted
        Returns:
            TowerLevel: B2 = span{x e y}, the Jones projection e and tau
    """
    tolerance = _settings()["construction_tolerance"]
    frame = _orthonormal_basis(large)
    adjoint_frame = frame.conj().transpose(0, 2, 1)
    m = large.dim

    def left_regular(x: np.ndarray) -> np.ndarray:
        return np.einsum("iab,bc,jcd,da->ij", adjoint_frame, x, frame, large.density)

    coordinates = np.array([[large.trace(f @ s) for f in adjoint_frame] for s in small.basis])
    q = row_space(coordinates)
    e = q.T @ q.conj()
    operators = np.array([left_regular(x) for x in large.basis])
    products = (operators @ e)[:, None] @ operators[None, :]
    extension = ConcreteAlgebra(row_space(products.reshape(m * m, -1)).reshape(-1, m, m),
                                name=f"<{large.name}, e>")

    if not (np.allclose(e, e.conj().T, atol=tolerance) and np.allclose(e @ e, e, atol=tolerance)):
        raise InternalInconsistency("Jones projection is not a self-adjoint idempotent")
    expectation = conditional_expectation(large, small)
    for x, lx in zip(large.basis, operators):
        if not np.allclose(e @ lx @ e, left_regular(expectation(x)) @ e, atol=tolerance * 10):
            raise InternalInconsistency("e x e differs from E(x) e")

    lam = inclusion_matrix(small, large)
    tau = markov_modulus(lam) if tau is None else tau
    trace_e = extension.trace(e).real
    if abs(trace_e - tau) > tolerance:
        raise NonMarkovTrace(f"tr(e) = {trace_e:.12f} differs from tau = {tau:.12f}")
    for x, lx in zip(large.basis, operators):
        if abs(extension.trace(lx @ e) - tau * large.trace(x)) > tolerance:
            raise NonMarkovTrace("Trace does not satisfy tr(x e) = tau tr(x)")

    sizes = np.array(central_decomposition(large).sizes)
    predicted = int(((lam @ sizes) ** 2).sum())
    if extension.dim != predicted:
        raise InternalInconsistency(f"Basic construction has dimension {extension.dim}, "
                                    f"path algebra predicts {predicted}")
    logger.info(f"Basic construction of {small.name} in {large.name}: dim {extension.dim}, tau {tau:.6f}")
    return TowerLevel(small, large, extension, e, tau, left_regular)


def _unitary(matrix: Union[HadamardMatrix, np.ndarray]) -> np.ndarray:
    return matrix.to_numpy() if isinstance(matrix, HadamardMatrix) else np.asarray(matrix, dtype=complex)


def is_commuting_square(matrix: Union[HadamardMatrix, np.ndarray]) -> bool:
    """
        True when the square of the diagonal algebra, its conjugate by the
        unitary and M_n commutes: E onto the diagonal maps u D u* into the
        scalars
    """
    u = _unitary(matrix)
    n = u.shape[0]
    diagonal = ConcreteAlgebra.diagonal(n)
    expectation = conditional_expectation(ConcreteAlgebra.full(n), diagonal)
    tolerance = _settings()["construction_tolerance"]
    for x in diagonal.conjugated(u).basis:
        if not np.allclose(expectation(x), np.trace(x) / n * np.eye(n), atol=tolerance):
            return False
    return True
