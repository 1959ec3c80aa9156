"""Alphabets, words and non-erasing morphisms.

Words are plain ``str`` objects whose characters are letters; a morphism
stores one image per domain letter and acts on words by concatenation.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .errors import (
    AlphabetMismatch,
    ErasingImage,
    NotEndomorphism,
    NotLeftProper,
    NotPrimitive,
    NotProperEnough,
    NotRightProper,
    UnknownLetter,
)

__all__ = [
    "Alphabet", "Morphism", "IncidenceMatrix", "Properness", "ConjugacyReport",
    "apply", "compose", "identity", "power", "incidence_matrix", "is_primitive",
    "properness", "left_conjugate", "right_conjugate", "conjugate",
    "verify_conjugacy_identity", "proper_products", "random_left_proper",
    "check_word",
]


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of single-character letters."""

    letters: str

    def __post_init__(self):
        letters = self.letters
        if not isinstance(letters, str):
            letters = "".join(letters)
            object.__setattr__(self, "letters", letters)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in alphabet {letters!r}")
        for x in letters:
            if not (x.isascii() and x.isalnum()):
                raise ValueError(f"letter {x!r} is not an ASCII alphanumeric")

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __contains__(self, letter):
        return letter in self.letters and len(letter) == 1

    def index(self, letter: str) -> int:
        return self.letters.index(letter)

    def same_letters(self, other: "Alphabet") -> bool:
        return set(self.letters) == set(other.letters)

    def __str__(self):
        return self.letters


def check_word(w: str, alphabet: Alphabet) -> str:
    for x in w:
        if x not in alphabet:
            raise UnknownLetter(f"letter {x!r} of {w!r} is not in alphabet {alphabet}")
    return w


@dataclass(frozen=True)
class Morphism:
    """A non-erasing morphism ``domain* -> codomain*``.

    ``images[i]`` is the image of ``domain.letters[i]``.  ``name`` and
    ``declared`` (whether the codomain came from an explicit header in a
    .mor file) do not take part in equality.
    """

    domain: Alphabet
    codomain: Alphabet
    images: tuple
    name: Optional[str] = field(default=None, compare=False)
    declared: bool = field(default=False, compare=False, repr=False)
    _table: dict = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(self.domain):
            raise ValueError("one image per domain letter is required")
        for x, img in zip(self.domain, images):
            if not img:
                raise ErasingImage(f"image of {x!r} is empty")
            check_word(img, self.codomain)
        object.__setattr__(self, "_table", dict(zip(self.domain.letters, images)))

    @classmethod
    def from_rules(cls, rules, codomain=None, name=None, declared=False) -> "Morphism":
        """Build from a ``{letter: image}`` mapping (or iterable of pairs).

        Without an explicit codomain, an endomorphism is assumed when every
        image letter belongs to the domain; otherwise the codomain is the
        sorted set of image letters.
        """
        pairs = list(rules.items()) if hasattr(rules, "items") else list(rules)
        domain = Alphabet("".join(x for x, _ in pairs))
        images = [img for _, img in pairs]
        if codomain is None:
            used = set("".join(images))
            if used <= set(domain.letters):
                codomain = domain
            else:
                codomain = Alphabet("".join(sorted(used)))
        elif not isinstance(codomain, Alphabet):
            codomain = Alphabet(codomain)
        return cls(domain, codomain, tuple(images), name=name, declared=declared)

    def __getitem__(self, letter: str) -> str:
        try:
            return self._table[letter]
        except KeyError:
            raise UnknownLetter(f"letter {letter!r} is not in domain {self.domain}") from None

    def __call__(self, w: str) -> str:
        return apply(self, w)

    def items(self):
        return self._table.items()

    def as_dict(self) -> dict:
        return dict(self._table)

    @property
    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def renamed(self, name):
        return Morphism(self.domain, self.codomain, self.images, name=name, declared=self.declared)

    def __str__(self):
        body = ", ".join(f"{x}->{img}" for x, img in self.items())
        return "{" + body + "}"


def apply(m: Morphism, w: str) -> str:
    table = m._table
    try:
        return "".join([table[x] for x in w])
    except KeyError:
        check_word(w, m.domain)
        raise


def identity(alphabet) -> Morphism:
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    return Morphism(alphabet, alphabet, tuple(alphabet.letters), name="id")


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """Return ``outer o inner`` (apply ``inner`` first)."""
    if not inner.codomain.same_letters(outer.domain):
        raise AlphabetMismatch(
            f"cannot compose: codomain {inner.codomain} of inner != domain {outer.domain} of outer")
    images = tuple(apply(outer, img) for img in inner.images)
    return Morphism(inner.domain, outer.codomain, images)


def power(m: Morphism, n: int) -> Morphism:
    if not m.is_endomorphism:
        raise NotEndomorphism(f"{m} is not an endomorphism")
    result = identity(m.domain)
    for _ in range(n):
        result = compose(m, result)
    return result


@dataclass(frozen=True)
class IncidenceMatrix:
    """``entries[i, j]`` counts occurrences of ``rows[i]`` in the image of ``cols[j]``."""

    entries: np.ndarray
    rows: Alphabet
    cols: Alphabet

    def __getitem__(self, key):
        x, y = key
        return int(self.entries[self.rows.index(x), self.cols.index(y)])

    def column(self, y: str) -> dict:
        j = self.cols.index(y)
        return {x: int(self.entries[i, j]) for i, x in enumerate(self.rows) if self.entries[i, j]}

    def __matmul__(self, other: "IncidenceMatrix") -> "IncidenceMatrix":
        if self.cols != other.rows:
            raise AlphabetMismatch("incidence matrices do not chain")
        return IncidenceMatrix(self.entries @ other.entries, self.rows, other.cols)

    def is_positive(self) -> bool:
        return bool((self.entries > 0).all())

    def tolist(self):
        return self.entries.tolist()


def incidence_matrix(m: Morphism) -> IncidenceMatrix:
    entries = np.zeros((len(m.codomain), len(m.domain)), dtype=np.int64)
    for j, img in enumerate(m.images):
        for x in img:
            entries[m.codomain.index(x), j] += 1
    return IncidenceMatrix(entries, m.codomain, m.domain)


def is_primitive(m: Morphism) -> bool:
    if not m.is_endomorphism:
        raise NotEndomorphism(f"{m} is not an endomorphism")
    k = len(m.domain)
    # boolean powers only: the zero pattern is all that matters
    base = (incidence_matrix(m).entries > 0).astype(np.int64)
    acc = base.copy()
    for _ in range((k - 1) ** 2 + 1):
        if acc.all():
            return True
        acc = np.minimum(acc @ base, 1)
    return bool(acc.all())


class Properness(NamedTuple):
    kind: str  # "left", "right", "both" or "neither"
    left: Optional[str]
    right: Optional[str]

    @property
    def is_left(self):
        return self.left is not None

    @property
    def is_right(self):
        return self.right is not None


def properness(m: Morphism) -> Properness:
    firsts = {img[0] for img in m.images}
    lasts = {img[-1] for img in m.images}
    left = firsts.pop() if len(firsts) == 1 else None
    right = lasts.pop() if len(lasts) == 1 else None
    if left and right:
        kind = "both"
    elif left:
        kind = "left"
    elif right:
        kind = "right"
    else:
        kind = "neither"
    return Properness(kind, left, right)


def left_conjugate(m: Morphism) -> Morphism:
    """Move the shared first letter of every image to its end."""
    l = properness(m).left
    if l is None:
        raise NotLeftProper(f"{m} is not left proper")
    return Morphism(m.domain, m.codomain, tuple(img[1:] + l for img in m.images))


def right_conjugate(m: Morphism) -> Morphism:
    """Move the shared last letter of every image to its front."""
    r = properness(m).right
    if r is None:
        raise NotRightProper(f"{m} is not right proper")
    return Morphism(m.domain, m.codomain, tuple(r + img[:-1] for img in m.images))


def conjugate(m: Morphism) -> Morphism:
    """Left conjugate when ``m`` is left proper, right conjugate otherwise."""
    p = properness(m)
    if p.is_left:
        return left_conjugate(m)
    if p.is_right:
        return right_conjugate(m)
    raise NotProperEnough(f"{m} is neither left nor right proper")


@dataclass
class ConjugacyReport:
    side: str
    witness: str
    conjugate: Morphism
    max_len: int
    words_checked: int
    counterexample: Optional[tuple] = None
    # literal iterated form sigma^n(a) l == l tau^n(a); None when not applicable
    literal_holds: Optional[bool] = None
    literal_counterexample: Optional[tuple] = None

    @property
    def holds(self) -> bool:
        return self.counterexample is None


_LITERAL_LEN_CAP = 1_000_000


def verify_conjugacy_identity(m: Morphism, max_len: int, side: Optional[str] = None) -> ConjugacyReport:
    """Check ``m(w) l == l tau(w)`` (left side) or ``r m(w) == tau(w) r``
    (right side) for every word ``w`` with ``|w| <= max_len``.

    The iterated statement ``m^n(a) l == l tau^n(a)`` is checked for
    ``n <= max_len`` as well, but only reported.
    """
    p = properness(m)
    if side is None:
        side = "left" if p.is_left else "right"
    if side == "left":
        if not p.is_left:
            raise NotLeftProper(f"{m} is not left proper")
        witness, tau = p.left, left_conjugate(m)
    elif side == "right":
        if not p.is_right:
            raise NotRightProper(f"{m} is not right proper")
        witness, tau = p.right, right_conjugate(m)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    def agrees(sw, tw):
        if side == "left":
            return sw + witness == witness + tw
        return witness + sw == tw + witness

    checked = 0
    counterexample = None
    # depth-first over words, images built incrementally
    stack = [("", "", "")]
    while stack:
        w, sw, tw = stack.pop()
        checked += 1
        if not agrees(sw, tw):
            counterexample = (w, sw, tw)
            break
        if len(w) < max_len:
            for x in reversed(m.domain.letters):
                stack.append((w + x, sw + m[x], tw + tau[x]))

    report = ConjugacyReport(side, witness, tau, max_len, checked, counterexample)
    if m.is_endomorphism:
        report.literal_holds = True
        for a in m.domain:
            sn, tn = a, a
            for n in range(1, max_len + 1):
                sn, tn = apply(m, sn), apply(tau, tn)
                if not agrees(sn, tn):
                    lhs, rhs = ((sn + witness, witness + tn) if side == "left"
                                else (witness + sn, tn + witness))
                    report.literal_holds = False
                    report.literal_counterexample = (n, a, lhs, rhs)
                    break
                if len(sn) > _LITERAL_LEN_CAP:
                    break
            if report.literal_holds is False:
                break
    return report


def proper_products(m: Morphism):
    """Return ``(m o tau, tau o m)`` with ``tau`` the conjugate of ``m``.

    Both products are proper; both are primitive when ``m`` is.
    """
    if not m.is_endomorphism:
        raise NotEndomorphism(f"{m} is not an endomorphism")
    tau = conjugate(m)
    if not is_primitive(m):
        raise NotPrimitive(f"{m} is not primitive")
    st, ts = compose(m, tau), compose(tau, m)
    for prod in (st, ts):
        assert properness(prod).kind == "both", prod
        assert is_primitive(prod), prod
    return st, ts


def random_left_proper(rng: random.Random, n_letters: int, max_image_len: int = 4) -> Morphism:
    """Random left-proper endomorphism on the first ``n_letters`` of a-z.

    Image lengths are uniform on ``1..max_image_len``; every image starts
    with one shared, randomly chosen letter.
    """
    letters = "abcdefghijklmnopqrstuvwxyz"[:n_letters]
    first = rng.choice(letters)
    images = []
    for _ in letters:
        k = rng.randint(1, max_image_len)
        images.append(first + "".join(rng.choice(letters) for _ in range(k - 1)))
    return Morphism(Alphabet(letters), Alphabet(letters), tuple(images))


def words_upto(alphabet: Iterable[str], max_len: int):
    """All words of length ``0..max_len`` in length-lexicographic order."""
    letters = list(alphabet)
    for k in range(max_len + 1):
        for t in itertools.product(letters, repeat=k):
            yield "".join(t)
