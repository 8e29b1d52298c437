import random

import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_smith

from groups import (
    AbelianStructure,
    invariant_factors,
    left_kernel,
    relation_lattice,
    smith_normal_form,
    structure_of_relations,
    subgroup_structure,
)
from phases import parse_phase


def _integer_determinant(M: np.ndarray) -> int:
    return int(Matrix(M.tolist()).det())


def _diagonal(S: np.ndarray):
    return [int(S[i, i]) for i in range(min(S.shape))]


def _random_matrices(count: int, square: bool = False):
    rng = random.Random(0)
    for _ in range(count):
        rows = rng.randint(1, 5)
        cols = rows if square else rng.randint(1, 5)
        yield [[rng.randint(-12, 12) for _ in range(cols)] for _ in range(rows)]


def test_smith_normal_form_properties():
    for M in _random_matrices(200):
        U, S, V = smith_normal_form(M)
        A = np.array(M, dtype=object)
        assert (U.dot(A).dot(V) == S).all()
        assert abs(_integer_determinant(U)) == 1
        assert abs(_integer_determinant(V)) == 1
        off_diagonal = S.copy()
        for i in range(min(S.shape)):
            off_diagonal[i, i] = 0
        assert not off_diagonal.any()
        diagonal = _diagonal(S)
        assert all(d >= 0 for d in diagonal)
        nonzero = [d for d in diagonal if d]
        assert diagonal[:len(nonzero)] == nonzero
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_smith_normal_form_agrees_with_sympy():
    for M in _random_matrices(60, square=True):
        ours = sorted(d for d in _diagonal(smith_normal_form(M)[1]) if d)
        reference = sympy_smith(Matrix(M), domain=ZZ)
        theirs = sorted(abs(int(reference[i, i])) for i in range(min(reference.shape)) if reference[i, i] != 0)
        assert ours == theirs


def test_structure_of_relations():
    # Z^3 / <(2, 0, 0), (0, 4, 6)> = Z2 + Z2 + Z
    structure = structure_of_relations([[2, 0, 0], [0, 4, 6]], 3)
    assert structure == AbelianStructure((2, 2), 1)
    assert str(structure) == "Z2 + Z2 + Z"
    assert not structure.is_finite


def test_left_kernel():
    B = [[1, 2], [2, 4], [0, 1]]
    kernel = left_kernel(B)
    assert kernel.shape[0] == 1
    assert not (kernel.dot(np.array(B, dtype=object))).any()


def test_invariant_factors():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([2, 4, 6]) == (2, 2, 12)
    assert invariant_factors([]) == ()


def test_invalid_structure():
    with pytest.raises(ValueError):
        AbelianStructure((4, 2))


def test_subgroup_structure_rational():
    # <1/4> and <1/6> in the circle generate the cyclic group of order 12
    generators = [(parse_phase("1/4"),), (parse_phase("1/6"),)]
    assert subgroup_structure(generators) == AbelianStructure((12,), 0)


def test_subgroup_structure_torus():
    generators = [(parse_phase("1/2"), parse_phase("0")), (parse_phase("0"), parse_phase("1/2"))]
    structure = subgroup_structure(generators)
    assert structure.torsion == (2, 2)
    assert structure.order == 4


def test_subgroup_structure_irrational():
    generators = [(parse_phase("t1"),), (parse_phase("t2"),), (parse_phase("1/2 + t1"),)]
    structure = subgroup_structure(generators)
    assert structure.free_rank == 2
    assert structure.torsion == (2,)


def test_relation_lattice_is_exact():
    generators = [(parse_phase("1/3"), parse_phase("t1")), (parse_phase("2/3"), parse_phase("2*t1"))]
    relations = relation_lattice(generators)
    for row in relations:
        total = [parse_phase("0")] * 2
        for c, vector in zip(row, generators):
            total = [t * p ** int(c) for t, p in zip(total, vector)]
        assert all(p.is_identity for p in total)
    assert len(relations) >= 1
