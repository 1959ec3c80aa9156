"""The five morphisms D, G, E_ab, E_bc, M on {a, b, c} and directives over them.

A directive over the catalog is validated against a marking
``n_0 < n_1 < ...``: every block ``sigma_{n_i} ... sigma_{n_{i+1} - 1}`` must
compose to a proper morphism whose images all contain a, b and c.  The
morphism at level 2 is a free slot and need not belong to the catalog.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .adic import DEFAULT_SCALE, build_bv
from .errors import (
    BlockNotProper, MissingLetter, NonCatalogMorphism, NotStabilized, UnknownName,
)
from .language import DirectiveSequence, complexity, factors, morse_hedlund_witness
from .words import Alphabet, Morphism, compose, incidence_matrix, properness

__all__ = [
    "CATALOG", "NAMES", "s5", "catalog_name", "BlockReport", "ValidatedDirective",
    "validate_directive", "search_marks", "telescoped", "HarnessReport",
    "complexity_harness", "build_rank3_bv", "DEFAULT_WINDOW",
]

ABC = Alphabet("abc")
NAMES = ("D", "G", "E_ab", "E_bc", "M")
_TABLE = {
    "D": ("ab", "b", "c"),
    "G": ("ba", "b", "c"),
    "E_ab": ("b", "a", "c"),
    "E_bc": ("a", "c", "b"),
    "M": ("a", "b", "b"),
}
CATALOG = {name: Morphism(ABC, ABC, images, name=name) for name, images in _TABLE.items()}
DEFAULT_WINDOW = 8


def s5(name: str) -> Morphism:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownName(f"{name!r} is not one of {', '.join(NAMES)}") from None


def catalog_name(m: Morphism) -> Optional[str]:
    for name, c in CATALOG.items():
        if c == m:
            return name
    return None


@dataclass
class BlockReport:
    start: int
    stop: int  # exclusive
    composition: Morphism
    properness: str
    occurrences: list  # incidence matrix rows a, b, c; columns a, b, c


@dataclass
class ValidatedDirective:
    directive: DirectiveSequence
    marks: tuple
    blocks: list = field(default_factory=list)


def _check_catalog(d: DirectiveSequence):
    for n in d.levels():
        if n >= 3 and catalog_name(d.morphism(n)) is None:
            raise NonCatalogMorphism(f"level {n}: {d.morphism(n)} is not in the catalog", level=n)


def _block(d: DirectiveSequence, lo: int, hi: int) -> Morphism:
    m = d.morphism(lo)
    for n in range(lo + 1, hi):
        m = compose(m, d.morphism(n))
    return m


def _block_problem(m: Morphism):
    """None when the block is valid, else ``("proper", kind)`` or ``("letter", x, y)``."""
    kind = properness(m).kind
    if kind != "both":
        return ("proper", kind)
    for y, img in m.items():
        for x in "abc":
            if x not in img:
                return ("letter", x, y)
    return None


def validate_directive(d: DirectiveSequence, marks=None) -> ValidatedDirective:
    """Check every block between consecutive marks."""
    marks = tuple(d.marks if marks is None else marks)
    _check_catalog(d)
    if len(marks) < 2:
        raise ValueError("at least two marks are needed to form a block")
    if any(b <= a for a, b in zip(marks, marks[1:])) or marks[0] < d.start or marks[-1] > d.stop + 1:
        raise ValueError(f"marks {marks} must increase within {d.start}..{d.stop + 1}")
    blocks = []
    for i, (lo, hi) in enumerate(zip(marks, marks[1:])):
        m = _block(d, lo, hi)
        problem = _block_problem(m)
        if problem and problem[0] == "proper":
            raise BlockNotProper(f"block {i} (levels {lo}..{hi - 1}) composes to {m}, "
                                 f"which is not proper ({problem[1]})", block=i)
        if problem:
            _, x, y = problem
            raise MissingLetter(f"block {i} (levels {lo}..{hi - 1}): letter {x!r} missing "
                                f"from the image {m[y]!r} of {y!r}", block=i, letter=x, image_of=y)
        blocks.append(BlockReport(lo, hi, m, "both", incidence_matrix(m).tolist()))
    return ValidatedDirective(d, marks, blocks)


def search_marks(d: DirectiveSequence, window: int = DEFAULT_WINDOW) -> Optional[tuple]:
    """Find marks made of valid blocks of length ``<= window``, or None.

    The first mark is taken in ``3 .. 2 + window``; the marking must end
    less than ``window`` levels before the end of the prefix.  Blocks whose
    letters have pairwise distinct images are tried first (the BV build
    needs injective blocks), then shorter blocks before longer ones.
    """
    _check_catalog(d)
    end = d.stop + 1
    if end - 3 < 1:
        return None

    @lru_cache(maxsize=None)
    def valid(lo, hi):
        return _block_problem(_block(d, lo, hi)) is None

    def candidates(p):
        qs = [q for q in range(p + 1, min(p + window, end) + 1) if valid(p, q)]
        return sorted(qs, key=lambda q: (len(set(_block(d, p, q).images)) < 3, q))

    @lru_cache(maxsize=None)
    def finish(p):
        # a marking ending at p is acceptable when the leftover is shorter than a window
        if end - p < window:
            return (p,)
        for q in candidates(p):
            rest = finish(q)
            if rest is not None:
                return (p,) + rest
        return None

    for first in range(3, min(3 + window, end)):
        for q in candidates(first):
            rest = finish(q)
            if rest is not None:
                return (first,) + rest
    return None


def telescoped(vd: ValidatedDirective) -> DirectiveSequence:
    """One level per block; levels before the first mark are folded into the first block.

    The seed of a block is the seed of its last level.
    """
    d, marks = vd.directive, vd.marks
    ms, seeds = [], []
    for i, b in enumerate(vd.blocks):
        m = b.composition
        if i == 0 and marks[0] > d.start:
            m = compose(_block(d, d.start, marks[0]), m)
        ms.append(m)
        seeds.append(d.seed(b.stop - 1))
    return DirectiveSequence(ms, "".join(seeds))


@dataclass
class HarnessReport:
    p: list  # p(1) .. p(N + 1)
    diff: list  # p(n + 1) - p(n), n = 1 .. N
    n_min: Optional[int]  # smallest n with diff <= 2 from n to N
    periodic_witness: Optional[int]
    stabilized: bool

    @property
    def holds(self) -> bool:
        """Bound holds on at least the upper half of the range."""
        return self.n_min is not None and self.n_min <= max(1, len(self.diff) // 2)


def complexity_harness(d: DirectiveSequence, n_max: int = 20, marks=None) -> HarnessReport:
    """Word complexity up to ``n_max + 1`` and where its differences stay below 3.

    With marks (given, or stored on the directive) the language is generated
    from the block compositions, which grow at every level.
    """
    marks = tuple(d.marks if marks is None else marks)
    source = telescoped(validate_directive(d, marks)) if len(marks) >= 2 else d
    lang = factors(source, n_max + 1)
    if not lang.stabilized:
        raise NotStabilized(f"factor language did not stabilize at length {n_max + 1}")
    prof = complexity(lang, n_max + 1)
    diff = prof.diff
    n_min = None
    for n in range(len(diff), 0, -1):
        if diff[n - 1] > 2:
            break
        n_min = n
    return HarnessReport(prof.p, diff, n_min, morse_hedlund_witness(prof), True)


def build_rank3_bv(vd: ValidatedDirective, depth: int, scale: int = DEFAULT_SCALE):
    """Strict-proper BV model reading the block compositions."""
    return build_bv(telescoped(vd), depth, "strict", scale)
