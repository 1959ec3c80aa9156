"""Factor languages of S-adic subshifts at finite scale.

A directive sequence ``(sigma_n, a_n)`` for ``n = 2, 3, ...`` generates the
subshift whose factors are the factors of the words
``sigma_2 ... sigma_n(a_n)``.  Everything here works on a finite prefix of
that sequence and says so in its results.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    AlphabetMismatch,
    InsufficientLanguage,
    NonGrowing,
    NotStabilized,
    UnknownLetter,
)
from .words import Alphabet, Morphism, apply

__all__ = [
    "DirectiveSequence", "FactorLanguage", "ComplexityProfile",
    "factors", "factors_of_word", "complexity", "morse_hedlund_witness",
    "recurrence_probe", "RecurrenceReport", "smallest_period",
]

# hard cap on the generated word length; past it enumeration stops uncertified
MAX_IMAGE_LEN = 4_000_000


@dataclass(frozen=True)
class DirectiveSequence:
    """Finite prefix ``(sigma_n, a_n)_{n = start .. start + len - 1}``.

    ``start`` is 2 for a full directive; tails obtained with :meth:`tail`
    keep the original level numbers.
    """

    morphisms: tuple
    seeds: str
    marks: tuple = ()
    start: int = 2

    def __post_init__(self):
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "marks", tuple(self.marks))
        if len(self.morphisms) != len(self.seeds):
            raise ValueError("one seed per morphism is required")
        for i, (m, a) in enumerate(zip(self.morphisms, self.seeds)):
            n = self.start + i
            if a not in m.domain:
                raise UnknownLetter(f"seed {a!r} at level {n} is not in {m.domain}")
            if i + 1 < len(self.morphisms):
                nxt = self.morphisms[i + 1]
                if not nxt.codomain.same_letters(m.domain):
                    raise AlphabetMismatch(
                        f"level {n + 1} codomain {nxt.codomain} does not match level {n} domain {m.domain}")
        prev = None
        for k in self.marks:
            # a mark one past the end closes a final block
            if not self.start <= k <= self.stop + 1:
                raise ValueError(f"mark {k} out of range {self.start}..{self.stop + 1}")
            if prev is not None and k <= prev:
                raise ValueError("marks must be strictly increasing")
            prev = k

    @classmethod
    def stationary(cls, m: Morphism, seed: str, length: int = 40) -> "DirectiveSequence":
        return cls((m,) * length, seed * length)

    @property
    def stop(self) -> int:
        """Last level of the prefix."""
        return self.start + len(self.morphisms) - 1

    def __len__(self):
        return len(self.morphisms)

    def levels(self):
        return range(self.start, self.stop + 1)

    def morphism(self, n: int) -> Morphism:
        if not self.start <= n <= self.stop:
            raise IndexError(f"level {n} outside {self.start}..{self.stop}")
        return self.morphisms[n - self.start]

    def seed(self, n: int) -> str:
        return self.seeds[n - self.start]

    def alphabet(self, n: int) -> Alphabet:
        """``A_n``: domain of ``sigma_n``; ``A_{start-1}`` is the first codomain."""
        if n == self.start - 1:
            return self.morphisms[0].codomain
        return self.morphism(n).domain

    def tail(self, n: int) -> "DirectiveSequence":
        i = n - self.start
        return DirectiveSequence(self.morphisms[i:], self.seeds[i:],
                                 tuple(k for k in self.marks if k >= n), start=n)

    def head(self, n: int) -> "DirectiveSequence":
        """Prefix up to and including level ``n``."""
        i = n - self.start + 1
        return DirectiveSequence(self.morphisms[:i], self.seeds[:i],
                                 tuple(k for k in self.marks if k <= n), start=self.start)

    def words(self):
        """Yield ``(n, sigma_start ... sigma_n(a_n))`` for each level."""
        for n in self.levels():
            w = self.seed(n)
            for k in range(n, self.start - 1, -1):
                w = apply(self.morphism(k), w)
                if len(w) > MAX_IMAGE_LEN:
                    return
            yield n, w


def factors_of_word(w: str, max_len: int) -> set:
    out = set()
    size = len(w)
    for k in range(1, max_len + 1):
        out.update(w[i:i + k] for i in range(size - k + 1))
    return out


@dataclass
class FactorLanguage:
    max_len: int
    by_length: dict  # length -> frozenset of factors
    stabilized: bool
    depth_used: int
    alphabet: Optional[Alphabet] = None

    def __contains__(self, w):
        return w in self.by_length.get(len(w), ())

    def of_length(self, n: int) -> frozenset:
        return self.by_length.get(n, frozenset())

    def all(self) -> set:
        out = set()
        for ws in self.by_length.values():
            out |= ws
        return out

    def upto(self, n: int) -> set:
        out = set()
        for k in range(1, n + 1):
            out |= self.of_length(k)
        return out

    def check_invariants(self) -> list:
        """Return violations of factoriality and extendability (empty if none)."""
        problems = []
        for k in range(2, self.max_len + 1):
            for w in self.of_length(k):
                for sub in (w[1:], w[:-1]):
                    if sub not in self.of_length(k - 1):
                        problems.append(("not factorial", w, sub))
        top = self.of_length(self.max_len)
        for k in range(1, self.max_len):
            for w in self.of_length(k):
                if not any(w in v for v in top):
                    problems.append(("not extendable", w))
        return problems


def factors(d: DirectiveSequence, max_len: int) -> FactorLanguage:
    """Words of length ``<= max_len`` occurring in some ``sigma_2...sigma_n(a_n)``.

    Enumeration stops once the accumulated factor set did not change from
    one level to the next while the current word has length at least
    ``2 * max_len``.  Otherwise the prefix (or the length cap) runs out and
    the language is returned with ``stabilized=False``.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if not len(d):
        raise ValueError("empty directive sequence")
    seen = set()
    longest = 0
    stabilized = False
    depth_used = d.start
    for n, w in d.words():
        depth_used = n
        before = len(seen)
        seen |= factors_of_word(w, max_len)
        grew = len(seen) != before
        longest = max(longest, len(w))
        if n > d.start and not grew and len(w) >= 2 * max_len:
            stabilized = True
            break
    if not stabilized and longest < 2 * max_len:
        raise NonGrowing(
            f"images stop at length {longest} < {2 * max_len} within levels {d.start}..{d.stop}")
    by_length = {k: frozenset(w for w in seen if len(w) == k) for k in range(1, max_len + 1)}
    return FactorLanguage(max_len, by_length, stabilized, depth_used, d.alphabet(d.start - 1))


@dataclass
class ComplexityProfile:
    p: list  # p[0] is p(1)
    certified: bool = True

    @property
    def diff(self) -> list:
        return [b - a for a, b in zip(self.p, self.p[1:])]

    @property
    def negative_differences(self) -> list:
        """1-based ``n`` with ``p(n+1) < p(n)``; only uncertified truncations produce these."""
        return [n for n, s in enumerate(self.diff, start=1) if s < 0]

    def __call__(self, n: int) -> int:
        return self.p[n - 1]

    def __len__(self):
        return len(self.p)


def complexity(lang: FactorLanguage, n_max: int, strict: bool = False) -> ComplexityProfile:
    """Count factors of each length ``1..n_max``.

    An unstabilized language yields a profile marked uncertified, or raises
    ``NotStabilized`` with ``strict=True``.
    """
    if n_max > lang.max_len:
        raise InsufficientLanguage(f"language only stores factors up to length {lang.max_len}")
    if strict and not lang.stabilized:
        raise NotStabilized("factor language did not stabilize on the directive prefix")
    return ComplexityProfile([len(lang.of_length(k)) for k in range(1, n_max + 1)],
                             certified=lang.stabilized)


def morse_hedlund_witness(profile) -> Optional[int]:
    """Smallest ``n`` with ``p(n) <= n``, or None."""
    values = profile.p if isinstance(profile, ComplexityProfile) else list(profile)
    for n, pn in enumerate(values, start=1):
        if pn <= n:
            return n
    return None


def smallest_period(w: str, max_period: Optional[int] = None) -> Optional[int]:
    """Smallest ``q`` with ``w[i] == w[i+q]`` everywhere, searched up to ``max_period``."""
    bound = len(w) if max_period is None else min(max_period, len(w))
    for q in range(1, bound + 1):
        if w[q:] == w[:-q]:
            return q
    return None


@dataclass
class RecurrenceReport:
    m: int
    window: int
    holds: bool
    gaps: list = field(default_factory=list)  # (window word, missing factor)


def recurrence_probe(d: DirectiveSequence, m: int, window: int,
                     lang: Optional[FactorLanguage] = None) -> RecurrenceReport:
    """Does every factor of length ``m`` occur in every factor of length ``window``?"""
    if m > window or m < 1:
        raise InsufficientLanguage(f"need 1 <= m <= window, got m={m}, window={window}")
    if lang is None:
        lang = factors(d, window)
    elif lang.max_len < window:
        raise InsufficientLanguage(f"language only stores factors up to length {lang.max_len}")
    gaps = []
    short = sorted(lang.of_length(m))
    for v in sorted(lang.of_length(window)):
        for u in short:
            if u not in v:
                gaps.append((v, u))
    return RecurrenceReport(m, window, not gaps, gaps)
