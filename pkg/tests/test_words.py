from __future__ import annotations

import pytest
from conftest import eg_words, free_words
from hypothesis import given

from ordforge.errors import AlphabetMismatch, ParseError
from ordforge.words import IDENTITY, KLEIN_A, Word, a, concat, free_reduce, invert, parse_word, parse_word_list, x

P = parse_word


@pytest.mark.parametrize(
    "w1, w2, expected",
    [
        ("x1", "x1^-1", "1"),
        ("a[0]^2", "a[0]", "a[0]^3"),
        ("s1 s2", "s2^-1 s1", "s1^2"),
    ],
)
def test_concat_examples(w1, w2, expected):
    assert concat(P(w1), P(w2)) == P(expected)


@pytest.mark.parametrize(
    "w, expected",
    [
        ("", ""),
        ("x1^2 x2^-1", "x2 x1^-2"),
        ("a[3] a[5]^-2", "a[5]^2 a[3]^-1"),
    ],
)
def test_invert_examples(w, expected):
    assert invert(P(w)) == P(expected)


@pytest.mark.parametrize(
    "w, expected",
    [
        ("x1 x2 x2^-1 x1", "x1^2"),
        ("s1 s1^-1", ""),
        ("x1 x2 x1^-1", "x1 x2 x1^-1"),
    ],
)
def test_free_reduce_examples(w, expected):
    assert free_reduce(P(w)) == P(expected)


def test_free_reduce_accepts_raw_syllables():
    raw = [(x(1), 1), (x(2), 2), (x(2), -2), (x(1), -1)]
    assert free_reduce(raw) == IDENTITY


def test_concat_rejects_mixed_families():
    with pytest.raises(AlphabetMismatch):
        concat(P("x1"), P("a[0]"))


def test_extension_letters_mix_with_a_base():
    assert str(P("a[0]") * P("t")) == "a[0] t"


def test_canonical_storage():
    w = Word([(a(0), 2), (a(0), -2), (a(1), 0), (x(1), 1)])
    assert w.letters == ((x(1), 1),)
    assert str(IDENTITY) == "1"


@pytest.mark.parametrize(
    "text, printed",
    [
        ("a[-2]^3 a[4]", "a[-2]^3 a[4]"),
        ("b a", "b a"),
        ("x y^-1", "x1 x2^-1"),
        ("s1 s2^2", "s1 s2^2"),
        ("t^-1 a[0] t", "t^-1 a[0] t"),
        ("1", "1"),
        ("  ", "1"),
        ("a[ +3 ]", "a[3]"),
    ],
)
def test_parse_and_print(text, printed):
    assert str(P(text)) == printed


@pytest.mark.parametrize("bad", ["q", "a[", "x0", "s1^0", "a[1]^", "x1 ^2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        P(bad)


def test_parse_word_list():
    assert parse_word_list("s2 s1^-1, s1 s2 s1^-2") == [P("s2 s1^-1"), P("s1 s2 s1^-2")]
    assert parse_word_list("") == []
    assert parse_word_list("a,b")[0].letters == ((KLEIN_A, 1),)


@given(free_words, free_words, free_words)
def test_concat_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(eg_words)
def test_identity_is_two_sided(w):
    assert IDENTITY * w == w == w * IDENTITY


@given(free_words, free_words)
def test_invert_antihomomorphism(u, v):
    assert invert(u * v) == invert(v) * invert(u)


@given(eg_words)
def test_invert_involution(w):
    assert invert(invert(w)) == w
    assert (w * invert(w)).is_identity()


@given(free_words)
def test_free_reduce_idempotent_and_shortening(w):
    once = free_reduce(w)
    assert free_reduce(once) == once
    assert once.length <= w.length


@given(eg_words)
def test_print_parse_round_trip(w):
    assert P(str(w)) == w


@given(free_words)
def test_no_adjacent_cancellation(w):
    for (g1, e1), (g2, e2) in zip(w.letters, w.letters[1:]):
        assert g1 != g2
    assert all(e for _, e in w.letters)
