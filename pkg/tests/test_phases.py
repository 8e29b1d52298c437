from fractions import Fraction

import numpy as np
import pytest

from config.exceptions import PhaseParseError
from phases import (
    INFINITE,
    Phase,
    PhaseArray,
    bind_symbols,
    is_column_function,
    is_product_form,
    parse_phase,
    phase_mul,
    phase_order,
)


def test_parse_rational_reduces_modulo_one():
    assert parse_phase("3/8") == Phase(Fraction(3, 8))
    assert parse_phase("5/4") == parse_phase("1/4")
    assert parse_phase("-1/4") == parse_phase("3/4")
    assert parse_phase("1").is_identity


def test_parse_irrational_terms():
    phase = parse_phase("1/4 + 1/2*t1 + t2")
    assert phase.rational_turn == Fraction(1, 4)
    assert phase.coefficient("t1") == Fraction(1, 2)
    assert phase.coefficient("t2") == 1
    assert phase.symbols == ("t1", "t2")
    assert not phase.is_rational


def test_canonical_string_parses_back():
    phase = parse_phase("0 + 1/1*t1")
    assert parse_phase(str(phase)) == phase


@pytest.mark.parametrize("literal", ["1/0", "", "abc", "1/4 +", "2*x1", "1/2*"])
def test_parse_errors(literal):
    with pytest.raises(PhaseParseError):
        parse_phase(literal)


def test_multiplication_and_conjugation():
    a, b = parse_phase("1/3"), parse_phase("2/3 + t1")
    product = phase_mul(a, b)
    assert product == parse_phase("t1")
    assert (b * b.conj()).is_identity
    assert b / b == Phase.identity()
    assert a ** 3 == Phase.identity()


def test_symbols_cancel():
    a = parse_phase("t1")
    assert (a * parse_phase("-1*t1")).is_identity


def test_orders():
    assert phase_order(parse_phase("3/8")) == 8
    assert phase_order(parse_phase("0")) == 1
    assert phase_order(parse_phase("1/2 + t3")) == INFINITE


def test_bindings_are_deterministic_and_irrational_looking():
    first = bind_symbols(["t1", "t2"])
    assert first == bind_symbols(["t2", "t1"])
    assert 0 < first["t1"] < 1
    assert first["t1"] != first["t2"]


def test_to_complex():
    assert parse_phase("1/4").to_complex() == pytest.approx(1j)
    assert parse_phase("1/2").to_complex() == pytest.approx(-1)


def test_array_forms():
    product = PhaseArray.from_rows([["0", "1/4"], ["1/3", "7/12"]])
    assert is_product_form(product)
    assert not is_column_function(product)
    column = PhaseArray.from_rows([["1/4", "1/2"], ["1/4", "1/2"]])
    assert is_column_function(column)
    assert column.standard_form().is_identity


def test_standard_form_normalizes_first_row_and_column():
    array = PhaseArray.from_rows([["1/5", "1/3"], ["1/7", "t1"]])
    standard = array.standard_form()
    assert all(p.is_identity for p in standard.row(0))
    assert all(p.is_identity for p in standard.column(0))
    assert standard[1, 1] == array[1, 1] * array[0, 0] / (array[0, 1] * array[1, 0])


def test_array_order_and_numpy():
    array = PhaseArray.from_rows([["0", "1/2"], ["1/3", "0"]])
    assert array.order() == 6
    values = array.to_numpy()
    assert values.shape == (2, 2)
    assert np.allclose(np.abs(values), 1)


def test_ragged_rows_rejected():
    with pytest.raises(PhaseParseError):
        PhaseArray.from_rows([["0", "0"], ["0"]])
