"""Finite binary words, exact dyadic rationals and complete prefix codes.

Binary words are plain strings over "0"/"1"; the empty word denotes the root
(the whole interval [0,1]). A word u addresses the dyadic interval
[u] = [.u, .u + 2^-|u|]. A complete prefix code is the ordered leaf list of a
finite full binary tree; everything downstream (tree diagrams, scaffolds,
certificates) lives in this address space.

No floating point anywhere: dyadics are normalized integer pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

Word = str

EMPTY: Word = ""

_ALPHABET = frozenset("01")


def check_word(u: Word) -> Word:
    if not _ALPHABET.issuperset(u):
        raise ValueError(f"not a binary word: {u!r}")
    return u


def word_to_text(u: Word) -> str:
    """Render a word; the empty word prints as 'e'."""
    return u if u else "e"


def word_from_text(text: str) -> Word:
    if text == "e":
        return EMPTY
    return check_word(text)


def is_prefix(u: Word, v: Word) -> bool:
    """True iff u is an initial segment of v (non-strict)."""
    return v.startswith(u)


def is_incomparable(u: Word, v: Word) -> bool:
    """True iff neither word prefixes the other, i.e. [u] and [v] are disjoint."""
    return not (v.startswith(u) or u.startswith(v))


def interval_less(u: Word, v: Word) -> bool:
    """[u] < [v]: every interior point of [u] below every interior point of [v].

    Only defined for incomparable words, where it coincides with
    lexicographic order.
    """
    if not is_incomparable(u, v):
        raise ValueError(f"comparable words have overlapping intervals: {u!r}, {v!r}")
    return u < v


def in_B_prime(u: Word) -> bool:
    """True iff u contains both digits (neither empty, all-0s nor all-1s)."""
    return "0" in u and "1" in u


@dataclass(frozen=True, slots=True)
class Dyadic:
    """Exact k/2^n in [0,1], normalized (odd numerator unless exponent 0)."""

    num: int
    exp: int

    def __post_init__(self):
        num, exp = self.num, self.exp
        if exp < 0 or num < 0 or num > (1 << exp):
            raise ValueError(f"not a normalized dyadic in [0,1]: {num}/2^{exp}")
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    # comparisons cross-multiply to a common exponent (tuple order on
    # (num, exp) would be wrong for fractions)
    def _cmp_key(self, other: "Dyadic") -> tuple[int, int]:
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp)

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(other)
        return a >= b

    @classmethod
    def from_fraction(cls, num: int, den: int) -> "Dyadic":
        if den <= 0 or den & (den - 1):
            raise ValueError(f"denominator must be a positive power of two: {den}")
        return cls(num, den.bit_length() - 1)

    def to_word(self) -> Word:
        """The finite expansion .s = self with trailing zeros stripped.

        Requires self < 1 (the value 1 has no finite word form with .s = 1).
        """
        if self.num == (1 << self.exp):
            raise ValueError("1 has no finite binary-word expansion")
        s = format(self.num, f"0{self.exp}b") if self.exp else ""
        return s.rstrip("0")

    def binary_str(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return "." + format(self.num, f"0{self.exp}b")

    def __str__(self) -> str:
        return f"{self.num}/{2 ** self.exp}" if self.exp else str(self.num)


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)


def word_to_dyadic(u: Word) -> Dyadic:
    """The left endpoint .u of [u]."""
    check_word(u)
    return Dyadic(int(u, 2) if u else 0, len(u))


def interval_endpoints(u: Word) -> tuple[Dyadic, Dyadic]:
    """Both endpoints of [u] = [.u, .u + 2^-|u|]."""
    check_word(u)
    k = int(u, 2) if u else 0
    return Dyadic(k, len(u)), Dyadic(k + 1, len(u))


def parse_dyadic(text: str) -> Dyadic:
    """Accept 'k/2^n', 'k/m' (m a power of two), '.bits', '0' or '1'."""
    text = text.strip()
    if text.startswith("."):
        bits = check_word(text[1:])
        return word_to_dyadic(bits)
    if "/" in text:
        num_s, den_s = text.split("/", 1)
        num = int(num_s)
        if den_s.startswith("2^"):
            exp = int(den_s[2:])
            return Dyadic(num, exp)
        return Dyadic.from_fraction(num, int(den_s))
    value = int(text)
    if value not in (0, 1):
        raise ValueError(f"integer dyadic must be 0 or 1: {text}")
    return Dyadic(value, 0)


def is_complete_prefix_code(branches) -> bool:
    """True iff branches are the left-to-right leaf list of a full binary tree.

    Equivalent characterization used here: words are in strictly increasing
    lexicographic order, pairwise incomparable, and the interval lengths sum
    to 1 with consecutive intervals abutting. A single scan with exact
    endpoint arithmetic covers all of it.
    """
    branches = list(branches)
    if not branches:
        return False
    pos_num, pos_exp = 0, 0  # running left endpoint as num/2^exp, unnormalized
    for u in branches:
        if not _ALPHABET.issuperset(u):
            return False
        # left endpoint of [u] must equal the running position
        e = max(pos_exp, len(u))
        if (pos_num << (e - pos_exp)) != ((int(u, 2) if u else 0) << (e - len(u))):
            return False
        pos_num = (pos_num << (e - pos_exp)) + (1 << (e - len(u)))
        pos_exp = e
    return pos_num == (1 << pos_exp)
