import random

import numpy as np
import pytest

from config.exceptions import BoundExceeded, HadamardParseError, NotHadamardError, TwistShapeError
from groups import AbelianGroup, parse_group
from hadamard import (
    HadamardMatrix,
    Twist,
    dephase,
    fourier_conjugate,
    fourier_matrix,
    hadamard_equivalent,
    is_hadamard,
    load_catalog,
    load_hadamard_file,
    parse_complex_hadamard,
    parse_real_hadamard,
    roots_of_unity_sum_vanishes,
    tensor_product,
    twist_standard_form,
    twisted_tensor,
)
from phases import PhaseArray, parse_phase

SYLVESTER_4 = """
++++
+-+-
++--
+--+
"""


@pytest.mark.parametrize("literal", ["Z1", "Z2", "Z5", "Z2xZ2", "Z6", "Z2xZ4"])
def test_fourier_matrix_is_hadamard(literal):
    matrix = fourier_matrix(parse_group(literal))
    assert is_hadamard(matrix)
    u = matrix.to_numpy()
    assert np.allclose(u @ u.conj().T, np.eye(matrix.n))


def test_fourier_conjugate():
    group = AbelianGroup([3])
    assert np.allclose(fourier_conjugate(group).to_numpy(), fourier_matrix(group).to_numpy().conj().T)


def test_vanishing_sums():
    assert roots_of_unity_sum_vanishes([parse_phase(x).rational_turn for x in ["0", "1/3", "2/3"]])
    assert not roots_of_unity_sum_vanishes([parse_phase(x).rational_turn for x in ["0", "1/3"]])
    # 1 + i - 1 - i
    assert roots_of_unity_sum_vanishes([parse_phase(x).rational_turn for x in ["0", "1/4", "1/2", "3/4"]])


def test_non_hadamard_detected():
    angles = PhaseArray.from_rows([["0", "0"], ["0", "1/4"]])
    assert not is_hadamard(HadamardMatrix(angles))


def test_tensor_product_matches_kron():
    first, second = fourier_matrix(AbelianGroup([2])), fourier_matrix(AbelianGroup([3]))
    product = tensor_product(first, second)
    assert np.allclose(product.to_numpy(), np.kron(first.to_numpy(), second.to_numpy()))


def test_twisted_tensor_with_trivial_twist_is_tensor_product():
    H, K = AbelianGroup([2]), AbelianGroup([3])
    first, second = fourier_conjugate(H), fourier_matrix(K)
    assert twisted_tensor(first, second, Twist.ones(H, K)) == tensor_product(first, second)


def test_twisted_tensor_entries():
    H, K = AbelianGroup([2]), AbelianGroup([2])
    twist = Twist.from_phases(H, K, ["0", "0", "0", "1/8"])
    first, second = fourier_conjugate(H), fourier_matrix(K)
    matrix = twisted_tensor(first, second, twist)
    for r in range(4):
        for c in range(4):
            i, j = divmod(r, 2)
            k, l = divmod(c, 2)
            assert matrix.angles[r, c] == first.angles[i, k] * second.angles[j, l] * twist.array[i, l]


def test_random_twists_give_hadamard_matrices():
    rng = random.Random(0)
    groups = [AbelianGroup([2]), AbelianGroup([3]), AbelianGroup([2, 2]), AbelianGroup([4])]
    for _ in range(200):
        H, K = rng.choice(groups), rng.choice(groups)
        phases = [f"{rng.randint(0, 11)}/{rng.choice([1, 2, 3, 4, 6, 8, 12])}" for _ in range(H.order * K.order)]
        twist = Twist.from_phases(H, K, phases)
        assert is_hadamard(twisted_tensor(fourier_conjugate(H), fourier_matrix(K), twist))


def test_irrational_twist_is_hadamard_numerically():
    H, K = AbelianGroup([2]), AbelianGroup([3])
    twist = Twist.from_phases(H, K, ["0", "0", "0", "0", "t1", "t2"])
    matrix = twisted_tensor(fourier_conjugate(H), fourier_matrix(K), twist)
    assert not matrix.is_rational
    assert is_hadamard(matrix)


def test_twist_shape_errors():
    H, K = AbelianGroup([2]), AbelianGroup([3])
    with pytest.raises(TwistShapeError):
        Twist.from_phases(H, K, ["0"] * 5)
    with pytest.raises(TwistShapeError):
        twisted_tensor(fourier_matrix(H), fourier_matrix(H), Twist.ones(H, K))


def test_twist_orientation_default(s3):
    assert Twist.ones(AbelianGroup([2]), s3).right_action is False
    assert Twist.ones(s3, AbelianGroup([2])).right_action is True


def test_twist_standard_form():
    H, K = AbelianGroup([2]), AbelianGroup([2])
    twist = Twist.from_phases(H, K, ["1/3", "1/5", "1/7", "1/2"])
    standard = twist_standard_form(twist)
    assert all(p.is_identity for p in standard.array.row(0))
    assert all(p.is_identity for p in standard.array.column(0))
    assert twist.standard_form().array == standard.array


def test_parse_real_hadamard():
    matrix = parse_real_hadamard(SYLVESTER_4, name="sylvester")
    assert matrix.n == 4
    assert matrix.name == "sylvester"
    assert matrix.angles[1, 1] == parse_phase("1/2")


def test_parse_real_hadamard_errors():
    with pytest.raises(HadamardParseError):
        parse_real_hadamard("++\n+")
    with pytest.raises(HadamardParseError):
        parse_real_hadamard("+x\n++")
    with pytest.raises(NotHadamardError):
        parse_real_hadamard("++\n++")


def test_parse_complex_hadamard():
    matrix = parse_complex_hadamard("0, 0\n0, 1/2")
    assert matrix.n == 2
    with pytest.raises(HadamardParseError):
        parse_complex_hadamard("0, 0\n0, 1/0")
    with pytest.raises(NotHadamardError):
        parse_complex_hadamard("0, 0\n0, 1/4")


def test_load_files(tmp_path):
    (tmp_path / "a.txt").write_text(SYLVESTER_4)
    (tmp_path / "b.txt").write_text("0, 0\n0, 1/2\n")
    (tmp_path / "notes.md").write_text("ignored")
    assert load_hadamard_file(str(tmp_path / "a.txt")).n == 4
    catalog = load_catalog(str(tmp_path))
    assert sorted(catalog) == ["a", "b"]


def test_dephase():
    rows = dephase(fourier_matrix(AbelianGroup([3])), 1, 2)
    assert all(p.is_identity for p in rows[0])
    assert all(row[0].is_identity for row in rows)


def test_index4_delta_i_is_fourier_z4():
    H = K = AbelianGroup([2])
    twist = Twist.from_phases(H, K, ["0", "0", "0", "1/4"])
    matrix = twisted_tensor(fourier_conjugate(H), fourier_matrix(K), twist)
    assert hadamard_equivalent(matrix, fourier_matrix(AbelianGroup([4])))
    assert not hadamard_equivalent(matrix, fourier_matrix(AbelianGroup([2, 2])))


def test_equivalence_under_permutation_and_phases():
    matrix = fourier_matrix(AbelianGroup([5]))
    rows = matrix.angles.to_rows()
    permuted = [rows[i] for i in (3, 0, 4, 1, 2)]
    scaled = [[p * parse_phase("1/7") for p in row] for row in permuted]
    other = HadamardMatrix(PhaseArray.from_rows(scaled))
    assert hadamard_equivalent(matrix, other)


def test_equivalence_bound():
    big = fourier_matrix(AbelianGroup([3, 3]))
    with pytest.raises(BoundExceeded):
        hadamard_equivalent(big, big, bound=8)
