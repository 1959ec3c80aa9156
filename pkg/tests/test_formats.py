import pytest
from hypothesis import given, strategies as st

from adica.errors import ErasingImage, ParseError, UnknownLetter, UnknownName
from adica.formats import (
    format_directive, format_morphism, load_directive, load_morphism, parse_directive,
    parse_morphism,
)
from adica.language import DirectiveSequence
from adica.s5 import CATALOG
from adica.words import Alphabet, Morphism


def strip(text):
    lines = (line.split("#", 1)[0].strip() for line in text.splitlines())
    return "\n".join(line for line in lines if line) + "\n"


@pytest.mark.parametrize("name", ["fib", "zeta", "twopoint", "odometer", "identity", "D"])
def test_morphism_round_trip_byte_identical(data, name):
    text = (data / f"{name}.mor").read_text()
    m = load_morphism(data / f"{name}.mor")
    assert format_morphism(m) == strip(text)
    assert parse_morphism(format_morphism(m)) == m


def test_declared_alphabet(data):
    m = load_morphism(data / "D.mor")
    assert m.declared and m == CATALOG["D"]
    # letters of the header missing from every image are kept in the codomain
    m = parse_morphism("alphabet: abc\na -> ab\nb -> a\n")
    assert str(m.codomain) == "abc"


@pytest.mark.parametrize("text,error", [
    ("a -> \n", ErasingImage),
    ("a => b\n", ParseError),
    ("ab -> a\n", ParseError),
    ("a -> b\na -> a\n", ParseError),
    ("alphabet: ab\na -> c\n", UnknownLetter),
    ("a -> b\nalphabet: ab\n", ParseError),
    ("# nothing\n", ParseError),
    ("a -> b-c\n", ParseError),
])
def test_morphism_errors(text, error):
    with pytest.raises(error):
        parse_morphism(text)


@given(st.dictionaries(st.sampled_from("abcd"), st.text(alphabet="abcd", min_size=1, max_size=5),
                       min_size=1))
def test_morphism_round_trip_property(rules):
    m = Morphism.from_rules(rules)
    text = format_morphism(m)
    assert parse_morphism(text) == m
    assert format_morphism(parse_morphism(text)) == text


def test_directive_files(data):
    d = load_directive(data / "fib.dir")
    assert len(d) == 39 and d.morphism(2).as_dict() == {"a": "ab", "b": "a"}
    assert d.morphism(2).name == "fib"
    d = load_directive(data / "s5_marked.dir")
    assert d.marks[:3] == (3, 11, 19)
    assert d.morphism(4) == CATALOG["E_bc"]


def test_directive_round_trip(data):
    for name in ("fib", "zeta", "odometer", "s5_marked", "s5_alternating"):
        d = load_directive(data / f"{name}.dir")
        text = format_directive(d)
        again = parse_directive(text, base_dir=data, catalog=CATALOG) if name.startswith("s5") else \
            parse_directive(f"use {d.morphism(2).name} = {name}.mor\n" + text, base_dir=data)
        assert again.morphisms == d.morphisms
        assert again.seeds == d.seeds and again.marks == d.marks


def test_directive_ranges_compress():
    d = DirectiveSequence([CATALOG["D"]] * 3 + [CATALOG["M"]], "aaab", marks=(3,))
    assert format_directive(d) == "2-4: D seed=a\n5: M seed=b\nmark 3\n"


@pytest.mark.parametrize("text,error", [
    ("3: D seed=a\n", ParseError),
    ("2: D seed=a\n4: D seed=a\n", ParseError),
    ("2: D seed=a\n2: D seed=a\n", ParseError),
    ("2: F seed=a\n", UnknownName),
    ("2: D seed=ab\n", ParseError),
    ("2: D seed=z\n", UnknownLetter),
    ("2: D a\n", ParseError),
    ("mark x\n2: D seed=a\n", ParseError),
    ("2-3: D seed=a\nmark 9\n", ParseError),
    ("", ParseError),
    ("use f = missing.mor\n2: f seed=a\n", ParseError),
])
def test_directive_errors(tmp_path, text, error):
    with pytest.raises(error):
        parse_directive(text, base_dir=tmp_path)


def test_directive_use_binding_overrides_catalog(tmp_path):
    (tmp_path / "d.mor").write_text("a -> ab\nb -> a\n")
    d = parse_directive("use D = d.mor\n2: D seed=a\n", base_dir=tmp_path)
    assert d.morphism(2).domain == Alphabet("ab")
