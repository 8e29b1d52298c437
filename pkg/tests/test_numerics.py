import os

import numpy as np
import pytest

from config.exceptions import BoundExceeded, NotHadamardError, SpecError
from groups import AbelianGroup
from hadamard import fourier_conjugate, fourier_matrix, load_catalog, twisted_tensor
from numerics import (
    ConcreteAlgebra,
    basic_construction,
    basis_is_abelian,
    commutant_basis,
    commutant_is_abelian,
    conditional_expectation,
    inclusion_matrix,
    is_commuting_square,
    markov_modulus,
    relative_commutant_dims,
    validated_orientation,
)


def _twisted(twist):
    return twisted_tensor(fourier_conjugate(twist.H), fourier_matrix(twist.K), twist)


@pytest.mark.parametrize("n", [2, 3])
def test_basic_construction_of_scalars_in_diagonal(n):
    level = basic_construction(ConcreteAlgebra.scalars(n), ConcreteAlgebra.diagonal(n))
    assert level.extension.dim == n ** 2
    assert level.tau == pytest.approx(1 / n)
    assert level.trace(level.e) == pytest.approx(1 / n)


@pytest.mark.parametrize("n", [2, 3])
def test_basic_construction_of_diagonal_in_full(n):
    level = basic_construction(ConcreteAlgebra.diagonal(n), ConcreteAlgebra.full(n))
    assert level.extension.dim == n ** 3
    assert level.tau == pytest.approx(1 / n)


def test_inclusion_matrix_and_modulus():
    matrix = inclusion_matrix(ConcreteAlgebra.scalars(3), ConcreteAlgebra.diagonal(3))
    assert matrix.tolist() == [[1, 1, 1]]
    assert markov_modulus(matrix) == pytest.approx(1 / 3)


def test_conditional_expectation_onto_diagonal():
    expectation = conditional_expectation(ConcreteAlgebra.full(3), ConcreteAlgebra.diagonal(3))
    x = np.arange(9, dtype=complex).reshape(3, 3)
    assert np.allclose(expectation(x), np.diag(np.diag(x)))


def test_algebra_must_be_closed():
    units = np.zeros((2, 2, 2), dtype=complex)
    units[0] = np.eye(2)
    units[1] = [[0, 1], [0, 0]]
    with pytest.raises(SpecError):
        ConcreteAlgebra(units)


def test_commuting_square():
    assert is_commuting_square(fourier_matrix(AbelianGroup([3])))
    assert not is_commuting_square(np.eye(3))


def test_orientation_ladder():
    assert validated_orientation() in ("U", "U*")


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_fourier_levels_0_and_1(n):
    matrix = fourier_matrix(AbelianGroup([n]))
    assert relative_commutant_dims(matrix, 0) == 1
    assert relative_commutant_dims(matrix, 1) == n


@pytest.mark.parametrize("n", [2, 3])
def test_fourier_level_2(n):
    assert relative_commutant_dims(fourier_matrix(AbelianGroup([n])), 2) == n ** 2


@pytest.mark.parametrize("delta", ["1/8", "1/3", "t1"])
def test_index4_level_1(delta, index4):
    matrix = _twisted(index4(delta))
    assert relative_commutant_dims(matrix, 1) == 3


def test_first_relative_commutant_is_abelian(index4, fourier6):
    for matrix in (_twisted(index4("1/8")), _twisted(fourier6("0", "1/3")), fourier_matrix(AbelianGroup([5]))):
        assert commutant_is_abelian(matrix)
    assert basis_is_abelian(commutant_basis(fourier_matrix(AbelianGroup([4])), level=0))


@pytest.mark.slow
def test_16_7_level_1(twist_16_7):
    matrix = _twisted(twist_16_7)
    assert relative_commutant_dims(matrix, 1) == 7
    assert commutant_is_abelian(matrix)


def test_rejects_non_hadamard():
    with pytest.raises(NotHadamardError):
        relative_commutant_dims(np.eye(3), 1)


def test_size_guards():
    with pytest.raises(BoundExceeded):
        relative_commutant_dims(fourier_matrix(AbelianGroup([7])), 2)
    with pytest.raises(ValueError):
        relative_commutant_dims(fourier_matrix(AbelianGroup([2])), 3)


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("HADAMARD_CATALOG_DIR"), reason="HADAMARD_CATALOG_DIR is not set")
def test_catalog_commutants_are_abelian():
    catalog = load_catalog(os.environ["HADAMARD_CATALOG_DIR"])
    for name, matrix in catalog.items():
        if matrix.n > 16:
            continue
        assert commutant_is_abelian(matrix), name
