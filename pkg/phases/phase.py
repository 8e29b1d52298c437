import re
import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import prime

from config import config
from config.exceptions import PhaseParseError

logger = config.get_logger(__name__)

INFINITE = "Infinite"

_SYMBOL = re.compile(r"^t(\d+)$")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")

Rational = Union[int, Fraction, str]


def _fraction(value: Rational) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise PhaseParseError(f"Invalid rational literal {value!r}: {e}") from e


def _symbol_key(symbol: str) -> Tuple[int, str]:
    match = _SYMBOL.match(symbol)
    return (int(match.group(1)) if match else 0, symbol)


@dataclass(frozen=True)
class Phase:
    """
    A unit complex number e^{2 pi i x} stored additively.

    x is a rational turn in [0, 1) plus a formal combination of irrational
    symbols t1, t2, ... which are treated as rationally independent of each
    other and of 1.
    """
    rational_turn: Fraction = Fraction(0)
    irr_coeffs: Tuple[Tuple[str, Fraction], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rational_turn", Fraction(self.rational_turn) % 1)
        coeffs: Dict[str, Fraction] = {}
        for symbol, coeff in self.irr_coeffs:
            if not _SYMBOL.match(symbol):
                raise PhaseParseError(f"Invalid irrational symbol {symbol!r}")
            coeffs[symbol] = coeffs.get(symbol, Fraction(0)) + Fraction(coeff)
        normalized = tuple(sorted(((s, c) for s, c in coeffs.items() if c != 0),
                                  key=lambda item: _symbol_key(item[0])))
        object.__setattr__(self, "irr_coeffs", normalized)

    @classmethod
    def of(cls, turn: Rational = 0, irr: Optional[Mapping[str, Rational]] = None) -> "Phase":
        return cls(_fraction(turn), tuple((s, _fraction(c)) for s, c in (irr or {}).items()))

    @classmethod
    def identity(cls) -> "Phase":
        return cls()

    @property
    def is_rational(self) -> bool:
        return not self.irr_coeffs

    @property
    def is_identity(self) -> bool:
        return self.rational_turn == 0 and not self.irr_coeffs

    @property
    def symbols(self) -> Tuple[str, ...]:
        return tuple(s for s, _ in self.irr_coeffs)

    def coefficient(self, symbol: str) -> Fraction:
        return dict(self.irr_coeffs).get(symbol, Fraction(0))

    def __mul__(self, other: "Phase") -> "Phase":
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.rational_turn + other.rational_turn,
                     self.irr_coeffs + other.irr_coeffs)

    def conj(self) -> "Phase":
        return Phase(-self.rational_turn, tuple((s, -c) for s, c in self.irr_coeffs))

    def __invert__(self) -> "Phase":
        return self.conj()

    def __truediv__(self, other: "Phase") -> "Phase":
        return self * other.conj()

    def __pow__(self, exponent: int) -> "Phase":
        return Phase(self.rational_turn * exponent,
                     tuple((s, c * exponent) for s, c in self.irr_coeffs))

    def order(self) -> Union[int, str]:
        if self.irr_coeffs:
            return INFINITE
        return self.rational_turn.denominator

    def turn(self, bindings: Optional[Mapping[str, float]] = None) -> float:
        """
            Real-valued turn of this phase
            Args:
                bindings: float turn assigned to each irrational symbol,
                    defaults to bind_symbols() values
            Returns:
                float: the turn, not reduced modulo 1
        """
        value = float(self.rational_turn)
        if self.irr_coeffs:
            bindings = bindings or bind_symbols(self.symbols)
            value += sum(float(c) * bindings[s] for s, c in self.irr_coeffs)
        return value

    def to_complex(self, bindings: Optional[Mapping[str, float]] = None) -> complex:
        return cmath.exp(2j * cmath.pi * self.turn(bindings))

    def __str__(self) -> str:
        text = str(self.rational_turn)
        for symbol, coeff in self.irr_coeffs:
            text += f" + {coeff}*{symbol}"
        return text

    def __repr__(self) -> str:
        return f"Phase({str(self)!r})"


def phase_mul(a: Phase, b: Phase) -> Phase:
    return a * b


def phase_order(a: Phase) -> Union[int, str]:
    """
        Smallest n with a^n = 1, or INFINITE when a carries irrational symbols
    """
    return a.order()


def parse_phase(text: Union[str, int, Fraction, Phase]) -> Phase:
    """
        Parse a phase literal such as "3/8" or "1/4 + 1/2*t1"
        Args:
            text: the literal, a bare rational or an existing Phase
        Returns:
            Phase: the parsed phase in reduced form
    """
    if isinstance(text, Phase):
        return text
    if isinstance(text, (int, Fraction)):
        return Phase(Fraction(text))
    if not isinstance(text, str) or not text.strip():
        raise PhaseParseError(f"Empty or invalid phase literal {text!r}")

    turn = Fraction(0)
    coeffs: Dict[str, Fraction] = {}
    for term in text.split("+"):
        term = term.strip().replace(" ", "")
        if not term:
            raise PhaseParseError(f"Dangling '+' in phase literal {text!r}")
        if "*" in term:
            coeff_text, symbol = term.split("*", 1)
            if not _SYMBOL.match(symbol) or not _RATIONAL.match(coeff_text):
                raise PhaseParseError(f"Invalid irrational term {term!r} in {text!r}")
            coeffs[symbol] = coeffs.get(symbol, Fraction(0)) + _fraction(coeff_text)
        elif _SYMBOL.match(term):
            coeffs[term] = coeffs.get(term, Fraction(0)) + 1
        elif _RATIONAL.match(term):
            turn += _fraction(term)
        else:
            raise PhaseParseError(f"Invalid term {term!r} in phase literal {text!r}")
    return Phase(turn, tuple(coeffs.items()))


def bind_symbols(symbols: Iterable[str]) -> Dict[str, float]:
    """
        Deterministic real values for irrational symbols: tN is bound to the
        fractional part of sqrt(p_N), p_N the N-th prime.
    """
    bindings = {}
    for symbol in symbols:
        index, _ = _symbol_key(symbol)
        root = float(prime(max(index, 1))) ** 0.5
        bindings[symbol] = root - int(root)
    return bindings


@dataclass(frozen=True)
class PhaseArray:
    """
    A complete array of phases indexed by (row element, column element).

    Rows and columns are element indices of the groups H and K; entries are
    stored row-major.
    """
    rows: int
    cols: int
    entries: Tuple[Phase, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"PhaseArray needs {self.rows * self.cols} entries, "
                             f"got {len(self.entries)}")

    @classmethod
    def ones(cls, rows: int, cols: int) -> "PhaseArray":
        return cls(rows, cols, (Phase(),) * (rows * cols))

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Union[Phase, str, Fraction, int]]]) -> "PhaseArray":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise PhaseParseError("Ragged phase array")
        return cls(rows, cols, tuple(parse_phase(x) for r in data for x in r))

    @classmethod
    def from_function(cls, rows: int, cols: int, fn) -> "PhaseArray":
        return cls(rows, cols, tuple(fn(i, j) for i in range(rows) for j in range(cols)))

    def __getitem__(self, index: Tuple[int, int]) -> Phase:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Phase, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Phase, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Phase]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def _check_shape(self, other: "PhaseArray"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"Shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __mul__(self, other: "PhaseArray") -> "PhaseArray":
        if not isinstance(other, PhaseArray):
            return NotImplemented
        self._check_shape(other)
        return PhaseArray(self.rows, self.cols,
                          tuple(a * b for a, b in zip(self.entries, other.entries)))

    def conj(self) -> "PhaseArray":
        return PhaseArray(self.rows, self.cols, tuple(a.conj() for a in self.entries))

    def __truediv__(self, other: "PhaseArray") -> "PhaseArray":
        return self * other.conj()

    def __pow__(self, exponent: int) -> "PhaseArray":
        return PhaseArray(self.rows, self.cols, tuple(a ** exponent for a in self.entries))

    def shifted(self, row_source: Sequence[int], col_source: Sequence[int]) -> "PhaseArray":
        """
            Re-index the array: new(i, j) = old(row_source[i], col_source[j])
        """
        return PhaseArray(self.rows, self.cols,
                          tuple(self[row_source[i], col_source[j]]
                                for i in range(self.rows) for j in range(self.cols)))

    def scale_rows(self, factors: Sequence[Phase]) -> "PhaseArray":
        return PhaseArray.from_function(self.rows, self.cols, lambda i, j: self[i, j] * factors[i])

    def scale_columns(self, factors: Sequence[Phase]) -> "PhaseArray":
        return PhaseArray.from_function(self.rows, self.cols, lambda i, j: self[i, j] * factors[j])

    def column_normalized(self) -> "PhaseArray":
        return self.scale_columns([p.conj() for p in self.row(0)])

    def standard_form(self) -> "PhaseArray":
        normalized = self.column_normalized()
        return normalized.scale_rows([p.conj() for p in normalized.column(0)])

    @property
    def is_identity(self) -> bool:
        return all(p.is_identity for p in self.entries)

    @property
    def is_rational(self) -> bool:
        return all(p.is_rational for p in self.entries)

    @property
    def symbols(self) -> Tuple[str, ...]:
        found = {s for p in self.entries for s in p.symbols}
        return tuple(sorted(found, key=_symbol_key))

    def is_product_form(self) -> bool:
        corner = self[0, 0]
        return all(self[i, j] * corner == self[i, 0] * self[0, j]
                   for i in range(self.rows) for j in range(self.cols))

    def is_column_function(self) -> bool:
        return all(self[i, j] == self[0, j] for i in range(self.rows) for j in range(self.cols))

    def is_row_function(self) -> bool:
        return all(self[i, j] == self[i, 0] for i in range(self.rows) for j in range(self.cols))

    def order(self) -> Union[int, str]:
        orders = [p.order() for p in self.entries]
        if INFINITE in orders:
            return INFINITE
        return reduce(lcm, orders, 1)

    def to_numpy(self, bindings: Optional[Mapping[str, float]] = None):
        import numpy as np
        bindings = bindings or bind_symbols(self.symbols)
        return np.array([[self[i, j].to_complex(bindings) for j in range(self.cols)]
                         for i in range(self.rows)], dtype=complex)

    def to_strings(self) -> List[List[str]]:
        return [[str(p) for p in self.row(i)] for i in range(self.rows)]

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(p) for p in self.row(i)) for i in range(self.rows)) + "]"


def is_product_form(a: PhaseArray) -> bool:
    return a.is_product_form()


def is_column_function(a: PhaseArray) -> bool:
    return a.is_column_function()
