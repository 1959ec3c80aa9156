import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adica.errors import (
    AlphabetMismatch, ErasingImage, NotEndomorphism, NotLeftProper, NotPrimitive,
    NotProperEnough, UnknownLetter,
)
from adica.words import (
    Alphabet, Morphism, apply, compose, conjugate, identity, incidence_matrix, is_primitive,
    left_conjugate, power, proper_products, properness, random_left_proper, right_conjugate,
    verify_conjugacy_identity, words_upto,
)
from oracles import all_words, compose_rules, substitute

LETTERS = "abc"


@st.composite
def morphisms(draw, letters=LETTERS, max_image=4):
    rules = {x: draw(st.text(alphabet=letters, min_size=1, max_size=max_image)) for x in letters}
    return Morphism(Alphabet(letters), Alphabet(letters), tuple(rules[x] for x in letters))


@st.composite
def left_proper(draw, letters=LETTERS):
    first = draw(st.sampled_from(letters))
    images = tuple(first + draw(st.text(alphabet=letters, max_size=3)) for _ in letters)
    return Morphism(Alphabet(letters), Alphabet(letters), images)


words = st.text(alphabet=LETTERS, max_size=12)


def test_alphabet_validation():
    assert list(Alphabet("ab")) == ["a", "b"]
    with pytest.raises(ValueError):
        Alphabet("aa")
    with pytest.raises(ValueError):
        Alphabet("a-")


def test_from_rules_and_str(fib):
    assert str(fib) == "{a->ab, b->a}"
    assert fib["a"] == "ab"
    assert fib.is_endomorphism
    # codomain letters outside the domain give a non-endomorphism
    m = Morphism.from_rules({"x": "ab"})
    assert not m.is_endomorphism
    assert str(m.codomain) == "ab"


def test_erasing_and_unknown_letters():
    with pytest.raises(ErasingImage):
        Morphism.from_rules({"a": "", "b": "a"})
    with pytest.raises(UnknownLetter):
        apply(Morphism.from_rules({"a": "ab", "b": "a"}), "abc")


def test_apply_examples(fib):
    assert apply(fib, "ab") == "aba"
    assert apply(fib, "") == ""
    assert apply(power(fib, 2), "a") == "aba"
    assert apply(power(fib, 5), "a") == "abaababaabaab"


def test_compose_convention(fib, zeta):
    assert compose(fib, zeta).as_dict() == {"a": "ababa", "b": "aba"}
    assert compose(zeta, fib).as_dict() == {"a": "aabab", "b": "aab"}


def test_compose_mismatch():
    with pytest.raises(AlphabetMismatch):
        compose(Morphism.from_rules({"a": "ab", "b": "a"}), Morphism.from_rules({"0": "00"}))


def test_incidence_rows_codomain_columns_domain(zeta):
    mat = incidence_matrix(zeta)
    assert mat.tolist() == [[2, 1], [1, 1]]
    assert mat["a", "a"] == 2 and mat["b", "a"] == 1


def test_primitivity(fib, twopoint, odometer):
    assert is_primitive(fib)
    assert is_primitive(twopoint)
    assert is_primitive(odometer)
    assert not is_primitive(Morphism.from_rules({"a": "ab", "b": "b"}))
    assert not is_primitive(Morphism.from_rules({"a": "b", "b": "a"}))


def test_primitivity_needs_high_power():
    # a cycle plus one chord: Wielandt-type example, needs (n-1)^2 + 1 = 10 on 4 letters
    m = Morphism.from_rules({"a": "b", "b": "c", "c": "d", "d": "ab"})
    assert is_primitive(m)


def test_properness_kinds(fib, zeta, twopoint):
    assert properness(fib).kind == "left"
    assert properness(zeta).kind == "both"
    assert properness(Morphism.from_rules({"a": "ab", "b": "bb"})).kind == "right"
    assert properness(twopoint).kind == "both"
    assert properness(Morphism.from_rules({"a": "ab", "b": "ba"})).kind == "neither"


def test_conjugates(fib, zeta):
    assert left_conjugate(fib).as_dict() == {"a": "ba", "b": "a"}
    assert right_conjugate(zeta).as_dict() == {"a": "baa", "b": "ba"}
    assert conjugate(fib) == left_conjugate(fib)
    with pytest.raises(NotProperEnough):
        conjugate(Morphism.from_rules({"a": "ab", "b": "ba"}))


def test_conjugacy_on_fibonacci(fib):
    rep = verify_conjugacy_identity(fib, 8)
    assert rep.holds
    assert rep.words_checked == 2 ** 9 - 1
    assert rep.literal_holds is False
    assert rep.literal_counterexample == (2, "a", "abaa", "aaba")


def test_conjugacy_wrong_side():
    m = Morphism.from_rules({"a": "ab", "b": "bb"})
    with pytest.raises(NotLeftProper):
        verify_conjugacy_identity(m, 4, side="left")
    rep = verify_conjugacy_identity(m, 6)
    assert rep.side == "right" and rep.holds


def test_proper_products_fibonacci(fib):
    st_, ts = proper_products(fib)
    assert st_.as_dict() == {"a": "aab", "b": "ab"}
    assert ts.as_dict() == {"a": "baa", "b": "ba"}
    for m in (st_, ts):
        assert properness(m).kind == "both"
        assert is_primitive(m)


def test_proper_products_single_letter():
    # the conjugate of a -> a is itself, so the products are a -> a as well
    st_, ts = proper_products(Morphism.from_rules({"a": "a"}))
    assert st_.as_dict() == ts.as_dict() == {"a": "a"}


def test_proper_products_rejections():
    with pytest.raises(NotEndomorphism):
        proper_products(Morphism.from_rules({"x": "ab"}))
    with pytest.raises(NotPrimitive):
        proper_products(Morphism.from_rules({"a": "ab", "b": "b"}))


def test_words_upto_matches_oracle():
    assert list(words_upto("ab", 3)) == list(all_words("ab", 3))


@given(morphisms(), morphisms(), words)
def test_composition_law(f, g, w):
    assert apply(compose(f, g), w) == apply(f, apply(g, w))
    assert compose(f, g).as_dict() == compose_rules(f.as_dict(), g.as_dict())


@given(morphisms(), words, words)
def test_morphism_law(f, u, v):
    assert apply(f, u + v) == apply(f, u) + apply(f, v)
    assert apply(f, u) == substitute(f.as_dict(), u)


@given(morphisms(), morphisms())
def test_incidence_of_composition_is_product(f, g):
    lhs = incidence_matrix(compose(f, g)).entries
    rhs = incidence_matrix(f).entries @ incidence_matrix(g).entries
    assert np.array_equal(lhs, rhs)


@given(morphisms())
def test_identity_is_neutral(f):
    e = identity(f.domain)
    assert compose(f, e) == f
    assert compose(e, f) == f


@given(left_proper())
def test_left_conjugate_is_right_proper_and_round_trips(m):
    tau = left_conjugate(m)
    assert properness(tau).is_right
    assert right_conjugate(tau) == m


@given(left_proper(), st.text(alphabet=LETTERS, max_size=6))
def test_conjugacy_identity_property(m, w):
    l = m[m.domain.letters[0]][0]
    assert apply(m, w) + l == l + apply(left_conjugate(m), w)


@settings(max_examples=50)
@given(left_proper())
def test_products_proper(m):
    if not is_primitive(m):
        return
    st_, ts = proper_products(m)
    assert properness(st_).kind == properness(ts).kind == "both"


def test_random_left_proper_batch():
    rng = random.Random(2024)
    for _ in range(120):
        m = random_left_proper(rng, rng.randint(2, 4))
        assert properness(m).is_left
        rep = verify_conjugacy_identity(m, 5, side="left")
        assert rep.holds, rep.counterexample
