from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thompsonf.words import (
    Dyadic,
    ONE,
    ZERO,
    in_B_prime,
    interval_endpoints,
    interval_less,
    is_complete_prefix_code,
    is_incomparable,
    is_prefix,
    parse_dyadic,
    word_to_dyadic,
)

# normalized points of [0,1]: numerator drawn within the exponent's range
raw = st.integers(0, 12).flatmap(
    lambda e: st.tuples(st.integers(0, 2 ** e), st.just(e))
)


def as_fraction(d: Dyadic) -> Fraction:
    return Fraction(d.num, 2 ** d.exp)


@given(raw, raw)
def test_comparisons_match_fractions(a, b):
    x, y = Dyadic(*a), Dyadic(*b)
    assert (x < y) == (as_fraction(x) < as_fraction(y))
    assert (x <= y) == (as_fraction(x) <= as_fraction(y))
    assert (x == y) == (as_fraction(x) == as_fraction(y))


@given(raw)
def test_normal_form_is_canonical(a):
    x = Dyadic(*a)
    assert x.exp == 0 or x.num % 2 == 1
    assert x == Dyadic(x.num * 4, x.exp + 2)
    assert 0 <= as_fraction(x) <= 1


def test_range_is_unit_interval():
    with pytest.raises(ValueError):
        Dyadic(-1, 2)
    with pytest.raises(ValueError):
        Dyadic(5, 2)
    with pytest.raises(ValueError):
        Dyadic(1, -1)


def test_display():
    assert str(Dyadic(1, 1)) == "1/2"
    assert str(Dyadic(3, 2)) == "3/4"
    assert str(ONE) == "1"
    assert str(ZERO) == "0"
    assert Dyadic(5, 3).binary_str() == ".101"
    assert Dyadic(5, 3).to_word() == "101"
    assert Dyadic(1, 1).to_word() == "1"
    with pytest.raises(ValueError):
        ONE.to_word()


@pytest.mark.parametrize(
    "text, num, exp",
    [
        ("0", 0, 0),
        ("1", 1, 0),
        ("1/2", 1, 1),
        ("3/8", 3, 3),
        ("5/2^4", 5, 4),
        ("2/4", 1, 1),
        (".101", 5, 3),
        (".0", 0, 0),
    ],
)
def test_parse_dyadic(text, num, exp):
    assert parse_dyadic(text) == Dyadic(num, exp)


@pytest.mark.parametrize("text", ["1/3", "2/5", "x", "", "1/0", "9/8", "2"])
def test_parse_dyadic_rejects(text):
    with pytest.raises(ValueError):
        parse_dyadic(text)


@given(st.text(alphabet="01", min_size=0, max_size=12))
def test_word_interval_consistency(u):
    lo, hi = interval_endpoints(u)
    assert lo == word_to_dyadic(u)
    assert as_fraction(hi) - as_fraction(lo) == Fraction(1, 2 ** len(u))


@given(st.text(alphabet="01", max_size=8), st.text(alphabet="01", max_size=8))
def test_prefix_relations(u, v):
    assert is_prefix(u, v) == v.startswith(u)
    assert is_incomparable(u, v) == (not v.startswith(u) and not u.startswith(v))
    if is_incomparable(u, v):
        # disjoint intervals are totally ordered, matching lex order
        assert interval_less(u, v) != interval_less(v, u)
        assert interval_less(u, v) == (u < v)
    else:
        with pytest.raises(ValueError):
            interval_less(u, v)


def test_complete_prefix_codes():
    assert is_complete_prefix_code([""])
    assert is_complete_prefix_code(["0", "10", "11"])
    assert not is_complete_prefix_code(["0", "10"])
    assert not is_complete_prefix_code(["0", "1", "11"])
    assert not is_complete_prefix_code([])


def test_B_prime_membership():
    assert in_B_prime("01")
    assert in_B_prime("10")
    assert in_B_prime("101")
    assert not in_B_prime("0")
    assert not in_B_prime("11")
    assert not in_B_prime("")
