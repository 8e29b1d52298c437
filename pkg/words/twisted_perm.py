import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from config import config
from config.exceptions import GroupLiteralError, WordParseError
from hadamard import Twist
from phases import Phase, PhaseArray

logger = config.get_logger(__name__)


class Letter(NamedTuple):
    tag: str  # "h" or "k"
    element: int


Word = Tuple[Letter, ...]


def act(twist: Twist, array: PhaseArray, h: int = 0, k: int = 0) -> PhaseArray:
    """
        Shift an array over H x K by (h, k): K acts by the left regular
        representation, H by the left or right one depending on the twist
    """
    if h == 0 and k == 0:
        return array
    rows = twist.H.right_shift(h) if twist.right_action else twist.H.left_shift(h)
    return array.shifted(rows, twist.K.left_shift(k))


@dataclass(frozen=True)
class TwistedPerm:
    """
    An automorphism of l^inf(H x K): multiplication by a phase array after
    the shift by (h, k).
    """
    h: int
    k: int
    array: PhaseArray

    @classmethod
    def identity(cls, twist: Twist) -> "TwistedPerm":
        return cls(0, 0, PhaseArray.ones(twist.H.order, twist.K.order))

    @property
    def has_trivial_shift(self) -> bool:
        return self.h == 0 and self.k == 0

    def compose(self, twist: Twist, other: "TwistedPerm") -> "TwistedPerm":
        """(A1, s1) o (A2, s2) = (A1 . s1(A2), s1 s2)"""
        return TwistedPerm(twist.H.mul(self.h, other.h), twist.K.mul(self.k, other.k),
                           self.array * act(twist, other.array, self.h, self.k))

    def inverse(self, twist: Twist) -> "TwistedPerm":
        h_inv, k_inv = twist.H.inv(self.h), twist.K.inv(self.k)
        return TwistedPerm(h_inv, k_inv, act(twist, self.array.conj(), h_inv, k_inv))


def normalize_word(letters: Iterable[Letter], twist: Twist) -> Word:
    """
        Merge adjacent letters from the same group and drop identities
    """
    stack: List[Letter] = []
    for letter in letters:
        if letter.element == 0:
            continue
        if stack and stack[-1].tag == letter.tag:
            group = twist.H if letter.tag == "h" else twist.K
            merged = group.mul(stack.pop().element, letter.element)
            if merged != 0:
                stack.append(Letter(letter.tag, merged))
        else:
            stack.append(letter)
    return tuple(stack)


_TOKEN = re.compile(r"([hk])\[([^\]]*)\](?:\^(-?\d+))?")


def parse_word(text: str, twist: Twist) -> Word:
    """
        Parse a word literal such as "h[1] k[1,1] h[1]^-1 k[1,1]^-1"
        Args:
            text: whitespace separated letters; brackets give coordinates
            twist: supplies the groups H and K
        Returns:
            Word: normalized tuple of letters
    """
    letters = []
    for token in text.split():
        match = _TOKEN.fullmatch(token)
        if not match:
            raise WordParseError(f"Invalid letter {token!r} in word {text!r}")
        tag, coords, exponent = match.groups()
        group = twist.H if tag == "h" else twist.K
        try:
            element = group.element([int(c) for c in coords.split(",") if c.strip()])
        except (ValueError, GroupLiteralError) as e:
            raise WordParseError(f"Invalid coordinates in {token!r}: {e}") from e
        letters.append(Letter(tag, group.power(element, int(exponent or 1))))
    return normalize_word(letters, twist)


def commutator_word(twist: Twist, h: int, k: int) -> Word:
    """The word h k h^-1 k^-1"""
    return (Letter("h", h), Letter("k", k), Letter("h", twist.H.inv(h)), Letter("k", twist.K.inv(k)))


def generator_image(twist: Twist, letter: Letter) -> TwistedPerm:
    """
        h maps to (T rho_h(T*), shift (h, 1)); k maps to (1, shift (1, k))
    """
    if letter.tag == "h":
        t = twist.array
        return TwistedPerm(letter.element, 0, t * act(twist, t.conj(), letter.element, 0))
    ones = PhaseArray.ones(twist.H.order, twist.K.order)
    return TwistedPerm(0, letter.element, ones)


def evaluate_word(twist: Twist, word: Sequence[Letter]) -> TwistedPerm:
    """
        Evaluate a word of H * K as a twisted permutation
        Args:
            twist: the twist array and groups
            word: letters, or a word literal
        Returns:
            TwistedPerm: the composed automorphism
    """
    if isinstance(word, str):
        word = parse_word(word, twist)
    result = TwistedPerm.identity(twist)
    for letter in normalize_word(word, twist):
        result = result.compose(twist, generator_image(twist, letter))
    return result


def commutator_formula(twist: Twist, h: int, k: int) -> PhaseArray:
    """
        Closed form of the array of h k h^-1 k^-1:
        T rho_h(T*) rho_k(T*) rho_hk(T)
    """
    t = twist.array
    return t * act(twist, t.conj(), h, 0) * act(twist, t.conj(), 0, k) * act(twist, t, h, k)


class AutomorphismKind(str, Enum):
    TRIVIAL = "Trivial"
    INNER = "Inner"
    OUTER = "Outer"


@dataclass(frozen=True)
class Classification:
    kind: AutomorphismKind
    u: Optional[Tuple[Phase, ...]] = None

    def __str__(self) -> str:
        if self.kind == AutomorphismKind.INNER:
            return f"Inner(u=({', '.join(str(p) for p in self.u)}))"
        return self.kind.value


def classify_automorphism(perm: TwistedPerm) -> Classification:
    """
        Trivial, inner (with the implementing phase vector over H, u(1) = 1)
        or outer
    """
    if not perm.has_trivial_shift:
        return Classification(AutomorphismKind.OUTER)
    array = perm.array
    if array.is_column_function():
        return Classification(AutomorphismKind.TRIVIAL)
    if array.is_product_form():
        u = tuple(p / array[0, 0] for p in array.column(0))
        return Classification(AutomorphismKind.INNER, u)
    return Classification(AutomorphismKind.OUTER)


def word_to_string(twist: Twist, word: Sequence[Letter]) -> str:
    parts = []
    for letter in word:
        group = twist.H if letter.tag == "h" else twist.K
        parts.append(f"{letter.tag}[{','.join(str(c) for c in group.coords(letter.element))}]")
    return " ".join(parts)
