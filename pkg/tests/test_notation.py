import random

import pytest
from hypothesis import given, strategies as st

from conftest import ordinals, seeds, sequences
from ordsum.errors import DomainError, ParseError
from ordsum.notation import (
    format_ordinal,
    format_sequence,
    format_tree,
    parse_expression,
    parse_ordinal,
    parse_sequence,
    parse_tree,
)
from ordsum.ordinal import OMEGA, ZERO, nat, omega_power
from ordsum.randgen import random_tree
from ordsum.sequence import Approach, Const
from ordsum.sums import LEAF, Node

trees = seeds.map(lambda k: random_tree(random.Random(k)))


def test_format_examples():
    assert format_ordinal(ZERO) == "0"
    assert format_ordinal(omega_power(2, 2) + OMEGA) == "w^2*2 + w"
    assert format_ordinal(omega_power(OMEGA + nat(1))) == "w^(w + 1)"
    assert format_ordinal(omega_power(omega_power(OMEGA)) + nat(2)) == "w^(w^w) + 2"


def test_parse_examples():
    assert parse_ordinal("w^2*2 + w") == omega_power(2, 2) + OMEGA
    assert parse_ordinal("  w ^ ( w + 1 )") == omega_power(OMEGA + nat(1))
    s = parse_sequence("[1, w, w^w ; const 2]")
    assert s.prefix == (nat(1), OMEGA, omega_power(OMEGA)) and s.tail == Const(nat(2))
    assert parse_sequence("[ ; const 0]").prefix == ()
    assert parse_sequence("[ ; approach 0 ~ w^w]").tail == Approach(ZERO, omega_power(OMEGA))
    assert parse_tree("leaf") == LEAF
    assert parse_tree("node(rep(leaf))") == Node((), LEAF)
    assert parse_tree("node(leaf, rep(node(leaf, leaf)))") == Node((LEAF,), Node((LEAF, LEAF)))


def test_expression_operators():
    assert format_ordinal(parse_expression("w (+) 1")) == "w + 1"
    assert format_ordinal(parse_expression("1 + w")) == "w"
    assert format_ordinal(parse_expression("(w*2) (x) w")) == "w^2*2"
    assert format_ordinal(parse_expression("0 + 0")) == "0"
    assert format_ordinal(parse_expression("1 + w (x) w")) == "w^2"
    assert format_ordinal(parse_expression("(w + 1) (+) w")) == "w*2 + 1"


@pytest.mark.parametrize(
    "text", ["w^w^w", "w +", "[1 ; const]", "node(leaf", "w*", "3x", "[ ; bogus 1]", ""]
)
def test_rejects_bad_input(text):
    with pytest.raises(ParseError):
        if text.startswith("["):
            parse_sequence(text)
        elif text.startswith("node"):
            parse_tree(text)
        else:
            parse_ordinal(text)


def test_error_position():
    with pytest.raises(ParseError) as e:
        parse_ordinal("w^w^w")
    assert e.value.pos == 3
    assert "nested exponents need parentheses" in str(e.value)


def test_approach_needs_limit_mu():
    with pytest.raises(DomainError, match="mu must be limit"):
        parse_sequence("[ ; approach 0 ~ w + 1]")


@given(ordinals)
def test_ordinal_round_trip(a):
    assert parse_ordinal(format_ordinal(a)) == a


@given(sequences)
def test_sequence_round_trip(s):
    assert parse_sequence(format_sequence(s)) == s


@given(trees)
def test_tree_round_trip(t):
    assert parse_tree(format_tree(t)) == t


@given(ordinals, ordinals)
def test_printing_injective(a, b):
    assert (format_ordinal(a) == format_ordinal(b)) == (a == b)


@given(sequences, st.sampled_from([" ", "  ", "\t", "\n "]))
def test_whitespace_insensitive(s, ws):
    # pad around punctuation; splitting words or numerals would change tokens
    text = format_sequence(s)
    padded = "".join(f"{ws}{c}{ws}" if c in "[];,~+*^()" else c for c in text)
    assert parse_sequence(padded) == s
