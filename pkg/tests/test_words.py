import pytest
from hypothesis import given
from hypothesis import strategies as st

from isolord.words import (
    EMPTY,
    Substitution,
    UnknownGenerator,
    Word,
    WordSyntaxError,
    apply,
    invert,
    parse_word,
    product,
    reduce,
)

from conftest import words

raw_letters = st.lists(st.tuples(st.sampled_from("xyz"), st.integers(-3, 3)), max_size=15)


def test_reduce_merges_exponents():
    assert reduce([("x", 1), ("x", 1)]).letters == (("x", 2),)


def test_reduce_cancels():
    assert reduce([("x", 1), ("x", -1)]) == EMPTY


def test_reduce_nested_cancellation():
    assert reduce([("x", 2), ("y", 1), ("y", -1), ("x", -1)]).letters == (("x", 1),)


def test_invert_examples():
    assert invert(Word([("x", 2), ("y", -1)])).letters == (("y", 1), ("x", -2))
    assert invert(EMPTY) == EMPTY


def test_apply_single_letter_and_inverse():
    delta = parse_word("y^2")
    s = Substitution({"g1": parse_word("x1") * delta})
    assert apply(s, parse_word("g1")) == parse_word("x1*y^2")
    assert apply(s, parse_word("g1^-1")) == parse_word("x1*y^2").inverse()
    assert apply(s, EMPTY) == EMPTY


def test_apply_unknown_generator():
    with pytest.raises(UnknownGenerator):
        apply(Substitution({"a": parse_word("x")}), parse_word("b"))


def test_parse_and_format_round_trip():
    w = parse_word("x^2*y^-3*x")
    assert str(w) == "x^2*y^-3*x"
    assert parse_word("1") == EMPTY
    assert str(EMPTY) == "1"


@pytest.mark.parametrize("text", ["x^0", "", "x**2", "x^", "2x", "x*"])
def test_parse_rejects(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text)


def test_parse_alphabet():
    with pytest.raises(UnknownGenerator):
        parse_word("x*q", alphabet={"x", "y"})


def test_length_and_powers():
    w = parse_word("x^2*y^-3")
    assert w.length == 5
    assert (w ** 3).length == 15
    assert w ** 0 == EMPTY
    assert w ** -2 == (w.inverse()) ** 2
    c = parse_word("x*y*x^-1")
    assert c ** 3 == parse_word("x*y^3*x^-1")


def test_big_exponents_are_exact():
    w = Word.gen("x", 10**30) * Word.gen("x", -(10**30) + 1)
    assert w == Word.gen("x")


@given(raw_letters)
def test_reduce_idempotent_and_reduced(letters):
    w = reduce(letters)
    assert reduce(w.letters) == w
    for (g1, _), (g2, _) in zip(w.letters, w.letters[1:]):
        assert g1 != g2
    assert all(e != 0 for _, e in w.letters)


@given(raw_letters, raw_letters)
def test_multiplication_matches_reduce_of_concatenation(a, b):
    u, v = reduce(a), reduce(b)
    assert u * v == reduce(list(a) + list(b))
    assert (u * v).length <= u.length + v.length


@given(words("xyz"), words("xyz"), words("xyz"))
def test_associativity(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(words("xyz"))
def test_inverse_involution(w):
    assert invert(invert(w)) == w
    assert w * w.inverse() == EMPTY
    assert w.inverse() * w == EMPTY


@given(words("xyz"), st.integers(-4, 4), st.integers(-4, 4))
def test_power_laws(w, a, b):
    assert (w ** a) * (w ** b) == w ** (a + b)


@given(words("ab"), words("ab"))
def test_substitution_is_a_homomorphism(u, v):
    s = Substitution({"a": parse_word("x*y^-2"), "b": parse_word("y*x")})
    assert apply(s, u * v) == apply(s, u) * apply(s, v)
    assert apply(s, u.inverse()) == apply(s, u).inverse()


@given(words("xy"))
def test_text_round_trip(w):
    assert parse_word(str(w)) == w


def test_product():
    assert product([parse_word("x"), parse_word("y"), parse_word("y^-1")]) == parse_word("x")
