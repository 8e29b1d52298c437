import operator
import random
from functools import reduce

import pytest

from config.exceptions import WordParseError
from groups import AbelianGroup
from words import (
    AutomorphismKind,
    Letter,
    TwistedPerm,
    classify_automorphism,
    commutator_formula,
    commutator_group,
    commutator_word,
    evaluate_word,
    intermediate_condition,
    normalize_word,
    parse_word,
    word_to_string,
)
from phases import PhaseArray, parse_phase
from tests.conftest import make_twist


def _random_word(rng: random.Random, twist, length: int):
    letters = []
    for _ in range(length):
        if rng.random() < 0.5:
            letters.append(Letter("h", rng.randrange(twist.H.order)))
        else:
            letters.append(Letter("k", rng.randrange(twist.K.order)))
    return tuple(letters)


@pytest.mark.parametrize("fixture", ["twist_16_7", "s3_twist"])
def test_evaluation_is_a_homomorphism(fixture, request):
    twist = request.getfixturevalue(fixture)
    rng = random.Random(7)
    for _ in range(500):
        u = _random_word(rng, twist, rng.randint(0, 6))
        v = _random_word(rng, twist, rng.randint(0, 6))
        joined = evaluate_word(twist, u + v)
        composed = evaluate_word(twist, u).compose(twist, evaluate_word(twist, v))
        assert joined == composed


def test_inverse(s3_twist):
    rng = random.Random(3)
    for _ in range(50):
        perm = evaluate_word(s3_twist, _random_word(rng, s3_twist, 5))
        assert perm.compose(s3_twist, perm.inverse(s3_twist)) == TwistedPerm.identity(s3_twist)


@pytest.mark.parametrize("fixture", ["twist_16_7", "s3_twist"])
def test_commutator_matches_closed_form(fixture, request):
    twist = request.getfixturevalue(fixture)
    for h in twist.H.elements:
        for k in twist.K.elements:
            perm = evaluate_word(twist, commutator_word(twist, h, k))
            assert perm.has_trivial_shift
            assert perm.array == commutator_formula(twist, h, k)


def test_trivial_twist_has_trivial_commutators(z2, z3):
    twist = make_twist(z2, z3, ["0"] * 6)
    for h in range(1, 2):
        for k in range(1, 3):
            perm = evaluate_word(twist, commutator_word(twist, h, k))
            assert classify_automorphism(perm).kind == AutomorphismKind.TRIVIAL


def test_normalize_word(z3):
    twist = make_twist(z3, z3, ["0"] * 9)
    word = (Letter("h", 1), Letter("h", 2), Letter("k", 1), Letter("k", 0), Letter("k", 1))
    assert normalize_word(word, twist) == (Letter("k", 2),)


def test_parse_word_and_back():
    group = AbelianGroup([2, 2])
    twist = make_twist(group, group, ["0"] * 16)
    word = parse_word("h[1,0] k[0,1] h[1,0]^-1 k[0,1]^-1", twist)
    assert len(word) == 4
    assert parse_word(word_to_string(twist, word), twist) == word
    assert evaluate_word(twist, "h[1,0] h[1,0]") == TwistedPerm.identity(twist)


@pytest.mark.parametrize("literal", ["x[1]", "h[a]", "h[1", "k[1,1]^x"])
def test_parse_word_errors(literal, z2):
    twist = make_twist(z2, z2, ["0"] * 4)
    with pytest.raises(WordParseError):
        parse_word(literal, twist)


def test_classification():
    inner = PhaseArray.from_rows([["0", "0", "0"], ["1/2", "1/2", "1/2"]])
    result = classify_automorphism(TwistedPerm(0, 0, inner))
    assert result.kind == AutomorphismKind.INNER
    assert str(result).startswith("Inner(u=(")
    column = PhaseArray.from_rows([["0", "1/3", "2/3"], ["0", "1/3", "2/3"]])
    assert classify_automorphism(TwistedPerm(0, 0, column)).kind == AutomorphismKind.TRIVIAL
    outer = PhaseArray.from_rows([["0", "0", "0"], ["0", "0", "1/2"]])
    assert classify_automorphism(TwistedPerm(0, 0, outer)).kind == AutomorphismKind.OUTER
    assert classify_automorphism(TwistedPerm(1, 0, column)).kind == AutomorphismKind.OUTER


def test_commutator_group_16_7(twist_16_7):
    data = commutator_group(twist_16_7)
    assert data.finite
    assert str(data.n_structure) == "Z2 + Z2 + Z2 + Z2"
    assert data.n.order == 16
    assert len(data.ntilde_to_n) == data.ntilde.order


def test_commutator_group_irrational(z2, z3):
    twist = make_twist(z2, z3, ["0"] * 4 + ["t1", "t2"])
    data = commutator_group(twist)
    assert not data.finite
    assert data.n_structure.free_rank == 2
    assert data.n is None


def test_intermediate_condition(index4, z2, z3):
    assert intermediate_condition(index4("1/8"))
    assert not intermediate_condition(index4("1/4"))
    assert not intermediate_condition(make_twist(z2, z3, ["0"] * 6))


# w, x generate H = Z2 x Z2 and y, z generate K; the -1 sits at (wx, yz)
LETTERS_16_7 = {"w": "h[0,1]", "x": "h[1,0]", "y": "k[0,1]", "z": "k[1,0]",
                "wx": "h[1,1]", "yz": "k[1,1]"}


def _square_word(h: str, k: str) -> str:
    return " ".join([LETTERS_16_7[h], LETTERS_16_7[k]] * 2)


@pytest.mark.parametrize("factors, product", [
    ([("w", "y"), ("w", "z")], ("w", "yz")),
    ([("x", "y"), ("x", "z")], ("x", "yz")),
    ([("w", "y"), ("x", "y")], ("wx", "y")),
    ([("w", "z"), ("x", "z")], ("wx", "z")),
    ([("w", "y"), ("w", "z"), ("x", "y"), ("x", "z")], ("wx", "yz")),
])
def test_relations_16_7(twist_16_7, factors, product):
    data = commutator_group(twist_16_7)
    left = reduce(operator.mul, (data.word_class(parse_word(_square_word(h, k), twist_16_7)) for h, k in factors))
    right = data.word_class(parse_word(_square_word(*product), twist_16_7))
    assert left == right
    assert right in data.n.index


def test_free_rank_of_irrational_twists(z2, z3):
    data = commutator_group(make_twist(z2, z2, ["0", "0", "0", "t1"]))
    assert data.n_structure.free_rank == 1
    phases = ["0"] * 9
    for position, symbol in zip([4, 5, 7, 8], ["t1", "t2", "t3", "t4"]):
        phases[position] = symbol
    data = commutator_group(make_twist(z3, z3, phases))
    assert not data.finite
    assert data.n_structure.free_rank == 4


def test_hk_fourth_power_index4(index4):
    word = "h[1] k[1] h[1] k[1] h[1] k[1] h[1] k[1]"
    result = classify_automorphism(evaluate_word(index4("1/8"), word))
    assert result.kind == AutomorphismKind.INNER
    assert result.u == (parse_phase("0"), parse_phase("1/2"))
    assert classify_automorphism(evaluate_word(index4("1/4"), word)).kind == AutomorphismKind.TRIVIAL


@pytest.mark.parametrize("fixture", ["twist_16_7", "s3_twist"])
def test_layer_tables_match_arrays(fixture, request):
    twist = request.getfixturevalue(fixture)
    data = commutator_group(twist)
    layer = data.n
    elements = layer.elements
    for a, x in enumerate(elements):
        for b, y in enumerate(elements):
            assert elements[layer.mul[a, b]] == (x * y).standard_form()
        for h in twist.H.elements:
            assert elements[layer.h_action[h, a]] == data.conjugate(x, h=h)
        for k in twist.K.elements:
            assert elements[layer.k_action[k, a]] == data.conjugate(x, k=k)
    for n, target in enumerate(data.ntilde_to_n):
        assert elements[target] == data.ntilde.elements[n].standard_form()
