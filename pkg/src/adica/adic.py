"""Bratteli-Vershik models built from directive sequences.

The diagram reading ``sigma_n`` at level ``n`` models the S-adic subshift
when the morphisms are proper (or alternate left/right proper, using
conjugates), act injectively on the subshifts they map, and the language is
not periodic.  Infinite hypotheses are only checked up to an explicit
scale, and reports carry that scale.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from typing import Optional, Sequence

from .bratteli import (
    BratteliDiagram, build_from_morphisms, min_path, orbit_coding,
)
from .errors import (
    InsufficientLanguage,
    LevelOutOfRange,
    NotInjective,
    NotProper,
    NotProperEnough,
    NotStabilized,
    PeriodicLanguage,
)
from .language import (
    DirectiveSequence, FactorLanguage, complexity, factors, factors_of_word,
    morse_hedlund_witness,
)
from .words import Morphism, apply, check_word, left_conjugate, properness, right_conjugate

__all__ = [
    "alternate_conjugates", "check_injectivity", "Injectivity",
    "RankReport", "build_bv", "bv_morphisms", "TowerPartition", "tower_partition",
    "NestedReport", "check_nested", "CodingReport", "coding_vs_language",
    "DEFAULT_SCALE",
]

DEFAULT_SCALE = 8


def alternate_conjugates(ms: Sequence[Morphism], base_index: int = 2) -> list:
    """Left proper morphisms at even levels, right proper ones at odd levels.

    Each morphism is kept when it already has the required side and replaced
    by its conjugate otherwise.
    """
    out = []
    for n, m in enumerate(ms, start=base_index):
        p = properness(m)
        if not (p.is_left or p.is_right):
            raise NotProperEnough(f"level {n}: {m} is neither left nor right proper", level=n)
        if n % 2 == 0:
            out.append(m if p.is_left else right_conjugate(m))
        else:
            out.append(m if p.is_right else left_conjugate(m))
    return out


@dataclass
class Injectivity:
    verdict: str  # "NotInjective", "InjectiveAtScale" or "Unknown"
    scale: int
    witness: Optional[tuple] = None

    @property
    def injective(self) -> bool:
        return self.verdict == "InjectiveAtScale"


def check_injectivity(m: Morphism, lang: FactorLanguage, scale: int) -> Injectivity:
    """Exhaustive search for two distinct factors (length ``<= scale``) with equal images.

    ``lang`` must be the language of the subshift ``m`` is applied to.
    Letters of the domain are compared too, whether or not they occur.
    """
    if lang.max_len < scale:
        raise InsufficientLanguage(f"language stores factors up to {lang.max_len} < {scale}")
    seen = {}
    letters = list(m.domain)
    words = sorted(lang.upto(scale), key=lambda w: (len(w), w))
    for w in letters + [w for w in words if len(w) > 1 or w not in m.domain]:
        check_word(w, m.domain)
        img = apply(m, w)
        if img in seen:
            return Injectivity("NotInjective", scale, (seen[img], w))
        seen[img] = w
    return Injectivity("InjectiveAtScale", scale)


@dataclass
class RankReport:
    max_vertices: int
    periodic_tail_detected: bool
    verdict: str
    vertex_counts: list = field(default_factory=list)
    injectivity_scale: int = 0
    mode: str = "strict"

    def as_dict(self):
        return {
            "max_vertices": self.max_vertices,
            "periodic_tail_detected": self.periodic_tail_detected,
            "verdict": self.verdict,
            "vertex_counts": self.vertex_counts,
            "injectivity_scale": self.injectivity_scale,
            "mode": self.mode,
        }


def _check_depth(d: DirectiveSequence, depth: int):
    if depth < 2:
        raise LevelOutOfRange("depth must be at least 2")
    if d.start != 2:
        raise ValueError("a full directive sequence starting at level 2 is required")
    if d.stop < depth:
        raise LevelOutOfRange(f"directive prefix stops at level {d.stop} < depth {depth}")


def bv_morphisms(d: DirectiveSequence, depth: int, mode: str = "strict") -> list:
    """The morphisms read at levels ``2..depth`` in the given mode."""
    _check_depth(d, depth)
    ms = [d.morphism(n) for n in range(2, depth + 1)]
    if mode == "strict":
        for n, m in enumerate(ms, start=2):
            kind = properness(m).kind
            if kind != "both":
                raise NotProper(f"level {n}: {m} is not proper (properness: {kind})", level=n)
        return ms
    if mode in ("alt", "alternating"):
        try:
            return alternate_conjugates(ms)
        except NotProperEnough as e:
            raise NotProper(str(e), level=e.level) from None
    raise ValueError(f"unknown mode {mode!r}")


def _is_periodic(lang: FactorLanguage) -> Optional[int]:
    return morse_hedlund_witness(complexity(lang, lang.max_len))


def build_bv(d: DirectiveSequence, depth: int, mode: str = "strict",
             scale: int = DEFAULT_SCALE):
    """Diagram reading ``sigma_2 .. sigma_depth`` (or conjugates in ``alt`` mode).

    Hypotheses are checked in this order: properness, stabilization of the
    languages involved, non-periodicity of the language of the whole
    sequence, injectivity of each ``sigma_n`` on the language of the tail
    ``(sigma_k, a_k)_{k > n}``.  When several hypotheses fail the first
    failing one is raised and the others are attached as ``also``.
    """
    ms = bv_morphisms(d, depth, mode)
    cache = {}

    def language(n):
        key = n
        if key not in cache:
            lang = factors(d.tail(n), scale)
            if not lang.stabilized:
                raise NotStabilized(
                    f"language of the tail from level {n} did not stabilize at scale {scale}")
            cache[key] = lang
        return cache[key]

    failures = []
    whole = language(2)
    witness = _is_periodic(whole)
    if witness is not None:
        failures.append(PeriodicLanguage(
            f"language is periodic: p({witness}) <= {witness}", witness=witness))
    for n in range(2, depth + 1):
        if n + 1 > d.stop:
            raise NotStabilized(f"no tail beyond level {n} to check injectivity; extend the directive")
        res = check_injectivity(d.morphism(n), language(n + 1), scale)
        if not res.injective:
            u, v = res.witness
            failures.append(NotInjective(
                f"level {n}: {u!r} and {v!r} have the same image", level=n, witness=res.witness))
            break
    if failures:
        err = failures[0]
        err.also = failures[1:]
        raise err

    diag = build_from_morphisms(ms)
    periodic_tail = any(_is_periodic(lang) is not None for lang in cache.values())
    counts = diag.vertex_counts()
    max_vertices = max(counts[2:])
    verdict = "equicontinuous evidence" if max_vertices == 1 else "expansive-subshift evidence"
    report = RankReport(max_vertices, periodic_tail, verdict, counts, scale,
                        "strict" if mode == "strict" else "alt")
    return diag, report


@dataclass
class TowerPartition:
    level: int
    heights: dict  # letter of A_n -> |tau_n(c)|
    columns: dict  # letter of A_n -> tau_n(c)
    refinement: dict  # (c, j) at level n+1 -> containing (c', j') at level n

    @property
    def atoms(self) -> int:
        return sum(self.heights.values())

    def common_prefix_len(self) -> int:
        cols = list(self.columns.values())
        k = 0
        while all(len(c) > k and c[k] == cols[0][k] for c in cols):
            k += 1
        return k

    def common_suffix_len(self) -> int:
        cols = [c[::-1] for c in self.columns.values()]
        k = 0
        while all(len(c) > k and c[k] == cols[0][k] for c in cols):
            k += 1
        return k


def _columns(d: DirectiveSequence, n: int) -> dict:
    """``tau_n(c)`` for ``c`` in ``A_n``, with ``tau_1`` the identity."""
    if n == 1:
        return {c: c for c in d.alphabet(1)}
    cols = {}
    for c in d.alphabet(n):
        w = c
        for k in range(n, 1, -1):
            w = apply(d.morphism(k), w)
        cols[c] = w
    return cols


def tower_partition(d: DirectiveSequence, n: int) -> TowerPartition:
    """Towers ``T^j tau_n([c])`` at level ``n`` and where each level-``n+1`` atom sits."""
    if d.start != 2:
        raise ValueError("a full directive sequence starting at level 2 is required")
    if not 1 <= n or n + 1 > d.stop:
        raise LevelOutOfRange(f"level {n} needs the prefix to reach level {n + 1} (stops at {d.stop})")
    cols = _columns(d, n)
    heights = {c: len(w) for c, w in cols.items()}
    refinement = {}
    for c in d.alphabet(n + 1):
        img = d.morphism(n + 1)[c]
        offsets = [0] + list(accumulate(heights[x] for x in img))
        i = 0
        for j in range(offsets[-1]):
            while offsets[i + 1] <= j:
                i += 1
            refinement[(c, j)] = (img[i], j - offsets[i])
    return TowerPartition(n, heights, cols, refinement)


@dataclass
class NestedReport:
    level: int
    nested: bool
    sum_rule: dict  # c -> (|tau_{n+1}(c)|, [|tau_n(c_i)| ...])
    problems: list = field(default_factory=list)


def check_nested(d: DirectiveSequence, n: int) -> NestedReport:
    """Check that every level-``n+1`` atom lies inside a level-``n`` atom.

    Containment is checked on column words: the letter at position ``j`` of
    ``tau_{n+1}(c)`` must be the letter at ``j'`` of ``tau_n(c')``.
    """
    tp = tower_partition(d, n)
    upper = _columns(d, n + 1)
    problems = []
    sums = {}
    for c, col in upper.items():
        img = d.morphism(n + 1)[c]
        parts = [tp.heights[x] for x in img]
        sums[c] = (len(col), parts)
        if len(col) != sum(parts):
            problems.append(("sum rule", c, len(col), parts))
        for j in range(len(col)):
            cc, jj = tp.refinement[(c, j)]
            if not 0 <= jj < tp.heights[cc]:
                problems.append(("index", c, j, cc, jj))
            elif tp.columns[cc][jj] != col[j]:
                problems.append(("letter", c, j, cc, jj))
    return NestedReport(n, not problems, sums, problems)


@dataclass
class CodingReport:
    max_len: int
    equal: bool
    coding: str
    complete: bool
    only_in_coding: set = field(default_factory=set)
    only_in_language: set = field(default_factory=set)
    match_len: int = 0  # largest l <= max_len with equal factor sets up to length l


def coding_vs_language(d: DirectiveSequence, depth: int, steps: int, max_len: int,
                       mode: str = "strict", scale: int = DEFAULT_SCALE,
                       check_hypotheses: bool = True) -> CodingReport:
    """Compare the factors of a Vershik orbit coding with ``factors(d)``.

    The orbit starts at the minimal path from the seed ``a_depth`` and stops
    at the maximal path (no wrap-around).
    """
    if check_hypotheses:
        diag, _ = build_bv(d, depth, mode, scale)
    else:
        diag = build_from_morphisms(bv_morphisms(d, depth, mode))
    coding = orbit_coding(diag, min_path(diag, depth, top=d.seed(depth)), steps)
    lang = factors(d, max_len)
    got = factors_of_word(coding.word, max_len)
    want = lang.all()
    match = 0
    for k in range(1, max_len + 1):
        if {w for w in got if len(w) == k} != lang.of_length(k):
            break
        match = k
    return CodingReport(max_len, got == want, coding.word, coding.complete,
                        got - want, want - got, match)
