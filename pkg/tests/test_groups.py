from __future__ import annotations

import pytest
from conftest import eg_words, free_words, words_over
from hypothesis import given
from hypothesis import strategies as st
from oracles import EGAffine, burau, klein_map

from ordforge.braid import BraidWord
from ordforge.errors import (
    AlphabetMismatch,
    BallBudgetExceeded,
    IdentityHasNoLeadingTerm,
    ParseError,
    UnsupportedGroup,
    WindowExceeded,
)
from ordforge.groups import (
    BUILTIN_ACTIONS,
    INVERT,
    SHIFT,
    SHIFT_INV,
    BraidGroup,
    DirectWithZ,
    EGGroup,
    FreeGroup,
    KleinBottle,
    SemidirectByT,
    TAction,
    UVExtension,
    apply_taction,
    ball,
    ball_with_radii,
    check_taction,
    decompose,
    equal,
    leading_term,
    normal_form,
    parse_group,
)
from ordforge.words import IDENTITY, KLEIN_A, KLEIN_B, T, U, V, Z, Word, a, parse_word

P = parse_word
EG = EGGroup()
KLEIN = KleinBottle()
AFFINE = EGAffine(-40, 40)

klein_words = words_over([KLEIN_A, KLEIN_B])


# -- normal forms and equality ------------------------------------------------


@pytest.mark.parametrize(
    "ctx, w, expected",
    [
        (EG, "a[1] a[0]", "a[0]^-1 a[1]"),
        (EG, "a[2] a[0]", "a[0] a[2]"),
        (KLEIN, "b a", "a^-1 b"),
        (EG, "a[1]^2 a[0]", "a[0] a[1]^2"),
        (FreeGroup(2), "x1 x2 x2^-1", "x1"),
    ],
)
def test_normal_form_examples(ctx, w, expected):
    assert normal_form(ctx, P(w)) == P(expected)


@pytest.mark.parametrize(
    "ctx, w1, w2, expected",
    [
        (KLEIN, "b a", "a^-1 b", True),
        (FreeGroup(2), "x1 x2 x2^-1", "x1", True),
        (EG, "a[0] a[1]", "a[1] a[0]", False),
    ],
)
def test_equal_examples(ctx, w1, w2, expected):
    assert equal(ctx, P(w1), P(w2)) is expected


def test_eg_rule_by_hand():
    # a[1]^2 a[0]: each crossing of a[1] inverts a[0], twice gives a[0] back
    once = normal_form(EG, P("a[1] a[0]"))
    assert once == P("a[0]^-1 a[1]")
    twice = normal_form(EG, P("a[1]") * once)
    assert twice == P("a[0] a[1]^2")


@given(eg_words)
def test_eg_normal_form_idempotent_sorted(w):
    nf = normal_form(EG, w)
    assert normal_form(EG, nf) == nf
    indices = [g.index for g, _ in nf]
    assert indices == sorted(set(indices))
    assert equal(EG, w, nf)


@given(eg_words, eg_words)
def test_eg_equality_matches_affine_oracle(u, v):
    assert equal(EG, u, v) == AFFINE.equal(u, v)


@given(eg_words)
def test_eg_normal_form_matches_affine_oracle(w):
    assert AFFINE.equal(w, normal_form(EG, w))


@given(klein_words, klein_words)
def test_klein_equality_matches_affine_oracle(u, v):
    assert equal(KLEIN, u, v) == (klein_map(u) == klein_map(v))


@given(klein_words)
def test_klein_exponents_match_oracle(w):
    _, m, n = klein_map(w)
    assert KLEIN.exponents(w) == (m, n)


@pytest.mark.parametrize("i", range(-5, 6))
def test_eg_relations(i):
    assert equal(EG, Word([(a(i + 1), 1), (a(i), 1), (a(i + 1), -1)]), Word([(a(i), -1)]))
    for j in range(i + 2, i + 5):
        assert equal(EG, Word([(a(i), 1), (a(j), 1)]), Word([(a(j), 1), (a(i), 1)]))


def test_klein_relation():
    assert equal(KLEIN, P("b^-1 a b"), P("a^-1"))


def test_window_exceeded():
    small = EGGroup(window=4)
    with pytest.raises(WindowExceeded):
        small.normal_form(P("a[5]"))
    assert small.normal_form(P("a[4] a[-4]")) == P("a[-4] a[4]")


def test_braid_has_no_normal_form():
    with pytest.raises(UnsupportedGroup):
        normal_form(BraidGroup(3), P("s1"))


def test_alphabet_checks():
    with pytest.raises(AlphabetMismatch):
        FreeGroup(2).normal_form(P("x3"))
    with pytest.raises(AlphabetMismatch):
        BraidGroup(3).equal(P("s3"), P("s1"))
    with pytest.raises(AlphabetMismatch):
        KLEIN.normal_form(P("a[0]"))


# -- leading terms ------------------------------------------------------------


@pytest.mark.parametrize(
    "w, suffix, exponent",
    [
        ("a[-1]^2 a[3]^-5", 3, -5),
        ("a[1] a[0]", 1, 1),
    ],
)
def test_leading_term_examples(w, suffix, exponent):
    assert tuple(leading_term(P(w))) == (suffix, exponent)


def test_identity_has_no_leading_term():
    with pytest.raises(IdentityHasNoLeadingTerm):
        leading_term(IDENTITY)


@given(eg_words, st.integers(-4, 4).filter(bool))
def test_leading_term_of_powers(w, n):
    if EG.is_identity(w):
        return
    r, d = leading_term(w)
    assert tuple(leading_term(EG.power(w, n))) == (r, n * d)


@given(eg_words, eg_words)
def test_leading_term_dominance(g, h):
    if EG.is_identity(g) or EG.is_identity(h):
        return
    lg, lh = leading_term(g), leading_term(h)
    if lg.suffix < lh.suffix:
        assert leading_term(EG.multiply(g, h)) == lh
        assert leading_term(EG.multiply(h, g)) == lh


@given(eg_words)
def test_leading_term_matches_affine_oracle(w):
    expected = AFFINE.leading_term(w)
    if expected is None:
        assert EG.is_identity(w)
    else:
        assert tuple(leading_term(w)) == expected


# -- automorphisms ------------------------------------------------------------


@pytest.mark.parametrize(
    "action, w, power, expected",
    [
        (SHIFT, "a[0]", 1, "a[1]"),
        (SHIFT, "a[5]", -2, "a[3]"),
        (SHIFT_INV, "a[0]", 2, "a[2]"),
        (SHIFT_INV, "a[0]", 1, "a[1]^-1"),
        (INVERT, "a[0] a[1]", 1, "a[0]^-1 a[1]^-1"),
    ],
)
def test_apply_taction_examples(action, w, power, expected):
    assert apply_taction(action, P(w), power) == P(expected)


@pytest.mark.parametrize("name", sorted(BUILTIN_ACTIONS))
def test_builtin_actions_valid(name):
    assert check_taction(BUILTIN_ACTIONS[name], EGGroup(16), window=8) == []


def test_invalid_action_detected():
    # a_i -> a_i^2 is not an automorphism: the inverse rule does not undo it
    bad = TAction(
        "square",
        lambda i: Word([(a(i), 2)]),
        lambda i: Word([(a(i), 1)]),
        "a_i -> a_i^2",
    )
    assert check_taction(bad, EGGroup(16), window=4)


@pytest.mark.parametrize("name", sorted(BUILTIN_ACTIONS))
@given(u=eg_words, v=eg_words, power=st.integers(-2, 2))
def test_action_is_homomorphism(name, u, v, power):
    act = BUILTIN_ACTIONS[name]
    lhs = act.apply(EG.multiply(u, v), power, EG)
    rhs = EG.multiply(act.apply(u, power, EG), act.apply(v, power, EG))
    assert equal(EG, lhs, rhs)


# -- extensions -----------------------------------------------------------------


@pytest.mark.parametrize(
    "ctx, w, exps, base",
    [
        (UVExtension("J"), "u a[0]", {U: 1, V: 0}, "a[0]^-1"),
        (DirectWithZ(FreeGroup(2)), "z^3", {Z: 3}, "1"),
        (SemidirectByT(SHIFT), "a[0] t", {T: 1}, "a[1]"),
    ],
)
def test_decompose_examples(ctx, w, exps, base):
    form = decompose(ctx, P(w))
    assert {g: form.exponent(g) for g in exps} == exps
    assert form.base == P(base)


def test_decompose_unsupported():
    with pytest.raises(UnsupportedGroup):
        decompose(EG, P("a[0]"))


SHIFT_T = SemidirectByT(SHIFT)
SHIFTINV_T = SemidirectByT(SHIFT_INV)
J = UVExtension("J")
GU = UVExtension("GU")


@pytest.mark.parametrize("i", range(-4, 5))
def test_extension_relations(i):
    ai = Word([(a(i), 1)])
    assert equal(SHIFT_T, P("t^-1") * ai * P("t"), Word([(a(i + 1), 1)]))
    assert equal(SHIFTINV_T, P("t^-1") * ai * P("t"), Word([(a(i + 1), -1)]))
    assert equal(J, P("v^-1") * ai * P("v"), Word([(a(i + 1), 1)]))
    assert equal(J, P("u^-1") * ai * P("u"), Word([(a(i), -1)]))
    assert equal(GU, P("u^-1") * ai * P("u"), Word([(a(i), -1)]))
    assert equal(J, P("v^-1 u v"), P("u^-1"))


RELATORS = {
    "j": ["v^-1 a[0] v a[1]^-1", "v^-1 u v u", "u^-1 a[2] u a[2]", "a[1] a[0] a[1]^-1 a[0]", "a[0] a[3] a[0]^-1 a[3]^-1"],
    "gu": ["u^-1 a[1] u a[1]", "a[1] a[0] a[1]^-1 a[0]"],
    "eg:t=shift": ["t^-1 a[0] t a[1]^-1", "t^-1 a[-2] t a[-1]^-1", "a[2] a[1] a[2]^-1 a[1]"],
    "eg:t=shiftinv": ["t^-1 a[0] t a[1]", "a[2] a[1] a[2]^-1 a[1]"],
}


@pytest.mark.parametrize("descriptor", sorted(RELATORS))
@given(data=st.data())
def test_normal_form_invariant_under_relator_insertion(descriptor, data):
    ctx = parse_group(descriptor)
    letters = [g for g in ctx.default_generators()] + [Word([(a(1), 1)])]
    pieces = st.lists(st.sampled_from(letters + [~w for w in letters]), max_size=6)
    left = Word([s for w in data.draw(pieces) for s in w])
    right = Word([s for w in data.draw(pieces) for s in w])
    rel = P(data.draw(st.sampled_from(RELATORS[descriptor])))
    assert ctx.normal_form(left * rel * right) == ctx.normal_form(left * right)


@pytest.mark.parametrize("descriptor", sorted(RELATORS))
@given(data=st.data())
def test_decompose_recomposes(descriptor, data):
    ctx = parse_group(descriptor)
    gens = ctx.default_generators()
    pieces = st.lists(st.sampled_from(gens + [~w for w in gens]), max_size=8)
    w = Word([s for g in data.draw(pieces) for s in g])
    form = ctx.decompose(w)
    assert equal(ctx, form.recompose(), w)
    assert ctx.normal_form(form.recompose()) == ctx.normal_form(w)


@given(free_words)
def test_z_is_central(w):
    ctx = DirectWithZ(FreeGroup(2))
    assert equal(ctx, P("z") * w, w * P("z"))
    assert ctx.center_split(P("z^2")) == ("z", 2)


# -- descriptors ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text", ["free:2", "klein", "eg", "eg:t=shift", "eg:t=shiftinv", "gu", "j", "zx:free:2", "braid:3"]
)
def test_parse_group_round_trip(text):
    assert parse_group(text).descriptor == text


@pytest.mark.parametrize("bad", ["free:x", "braid:1", "eg:t=nope", "sl2", "free"])
def test_parse_group_errors(bad):
    with pytest.raises((ParseError, ValueError)):
        parse_group(bad)


# -- balls ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "ctx, gens, radius, size",
    [
        (KLEIN, "a,b", 1, 5),
        (KLEIN, "a,b", 2, 13),
        (FreeGroup(2), "x1,x2", 2, 17),
        (FreeGroup(2), "x1,x2", 3, 53),
    ],
)
def test_ball_sizes(ctx, gens, radius, size):
    from ordforge.words import parse_word_list

    assert len(ball(ctx, parse_word_list(gens), radius)) == size


def _oracle_ball(gens, radius, key):
    seen = {key(IDENTITY)}
    frontier = [IDENTITY]
    tokens = [t for g in gens for t in (g, ~g)]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for tok in tokens:
                cand = w * tok
                k = key(cand)
                if k not in seen:
                    seen.add(k)
                    nxt.append(cand)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("radius", [1, 2, 3, 4, 5])
def test_klein_ball_matches_affine_oracle(radius):
    gens = [Word.gen(KLEIN_A), Word.gen(KLEIN_B)]
    assert len(ball(KLEIN, gens, radius)) == _oracle_ball(gens, radius, klein_map)


@pytest.mark.parametrize("radius", [1, 2, 3, 4])
def test_eg_ball_matches_affine_oracle(radius):
    gens = [Word.gen(a(i)) for i in (-1, 0, 1)]
    assert len(ball(EG, gens, radius)) == _oracle_ball(gens, radius, AFFINE.map)


@pytest.mark.parametrize("strands, radius", [(3, 1), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3)])
def test_braid_ball_matches_burau_oracle(strands, radius):
    ctx = BraidGroup(strands)
    gens = ctx.default_generators()
    expected = _oracle_ball(gens, radius, lambda w: burau(BraidWord.from_word(w, strands).letters, strands))
    assert len(ball(ctx, gens, radius)) == expected


def test_braid_ball_b3_radius3():
    assert len(ball(BraidGroup(3), [P("s1"), P("s2")], 3)) == 47


@pytest.mark.parametrize("ctx", [KLEIN, FreeGroup(2), EG, J, BraidGroup(3)], ids=str)
def test_ball_monotone(ctx):
    gens = ctx.default_generators()
    small = {ctx.hash_key(w) for w in ball(ctx, gens, 2)}
    big = ball(ctx, gens, 3)
    assert small <= {ctx.hash_key(w) for w in big}
    for w in ball(ctx, gens, 2):
        assert any(ctx.equal(w, v) for v in big)


def test_ball_representatives_are_canonical():
    entries = ball_with_radii(KLEIN, [P("a"), P("b")], 2)
    assert [r for _, r in entries] == sorted(r for _, r in entries)
    assert [str(w) for w, _ in entries[:5]] == ["1", "a", "a^-1", "b", "b^-1"]
    assert ball(KLEIN, [P("a"), P("b")], 3) == ball(KLEIN, [P("a"), P("b")], 3)


def test_ball_errors():
    with pytest.raises(ValueError):
        ball(FreeGroup(2), [IDENTITY], 2)
    with pytest.raises(BallBudgetExceeded):
        ball(FreeGroup(2), [P("x1"), P("x2")], 6, budget=100)
    assert ball(FreeGroup(1), [], 3) == [IDENTITY]


@given(eg_words)
def test_equal_is_equivalence_on_samples(w):
    nf = normal_form(EG, w)
    assert equal(EG, w, w)
    assert equal(EG, w, nf) and equal(EG, nf, w)
    assert not equal(EG, w, EG.multiply(w, Word([(a(7), 1)])))


def test_free_group_of_rank_one_is_abelian():
    assert FreeGroup(1).abelian and not FreeGroup(2).abelian
    assert DirectWithZ(FreeGroup(1)).center_split(P("z x1")) == ("center", P("x1"))
    assert DirectWithZ(FreeGroup(2)).center_split(P("z x1")) == ("outer", P("x1"))


def test_t_letter_only_in_semidirect():
    with pytest.raises(AlphabetMismatch):
        J.normal_form(P("t"))
    with pytest.raises(AlphabetMismatch):
        GU.normal_form(P("v"))
