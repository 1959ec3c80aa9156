"""Ordered Bratteli diagrams and the Vershik successor map on finite paths.

Level ``i`` holds the vertex set ``V_i``; ``V_0`` is the single root
``ROOT``.  Every vertex ``v`` of ``V_i`` (``i >= 1``) owns an ordered fiber of
upward edges, stored as the tuple of their targets in ``V_{i-1}``.  Reading a
fiber gives the image of ``v`` under the morphism read at level ``i``.  By
convention each vertex of ``V_1`` has a single edge to the root.

An edge is identified by ``(level, source, fiber index)``.  A path of depth
``d`` starts at a vertex of ``V_d`` and stores one fiber index per level
``1..d``; the level-1 index is always 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    AlphabetMismatch, EmptyInput, InvalidCuts, InvalidDiagram, LevelOutOfRange, MaximalPath,
)
from .words import Alphabet, IncidenceMatrix, Morphism, compose, incidence_matrix

__all__ = [
    "ROOT", "BratteliDiagram", "Path", "Coding", "ExtremaReport",
    "build_from_morphisms", "read_morphism", "telescope", "is_simple", "simple_cuts",
    "min_path", "max_path", "unique_extrema_check", "vershik_successor",
    "orbit_coding", "export_dot", "column_word",
]

ROOT = "v0"


@dataclass(frozen=True)
class BratteliDiagram:
    levels: tuple  # levels[i]: vertex labels of V_i, in order
    fibers: tuple  # fibers[i][k]: ordered targets of the edges leaving levels[i][k]; fibers[0] == ()

    def __post_init__(self):
        if len(self.levels) != len(self.fibers):
            raise InvalidDiagram("one fiber table per level is required")
        if self.levels[0] != (ROOT,):
            raise InvalidDiagram("V_0 must be the single root vertex")
        for i in range(1, len(self.levels)):
            below = set(self.levels[i - 1])
            if len(self.fibers[i]) != len(self.levels[i]):
                raise InvalidDiagram(f"level {i}: one fiber per vertex is required")
            hit = set()
            for v, fib in zip(self.levels[i], self.fibers[i]):
                if not fib:
                    raise InvalidDiagram(f"vertex {v} at level {i} has no upward edge")
                if not set(fib) <= below:
                    raise InvalidDiagram(f"vertex {v} at level {i} has an edge to an unknown vertex")
                hit.update(fib)
            if hit != below:
                raise InvalidDiagram(f"some vertex of level {i - 1} has no downward edge")
        if len(self.levels) > 1 and any(fib != (ROOT,) for fib in self.fibers[1]):
            raise InvalidDiagram("every vertex of V_1 must have exactly one edge, to the root")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def fiber(self, level: int, v: str) -> tuple:
        return self.fibers[level][self.levels[level].index(v)]

    def vertex_counts(self) -> list:
        return [len(vs) for vs in self.levels]

    def edge_count(self, level: int) -> int:
        return sum(len(f) for f in self.fibers[level])

    def edges(self, level: int):
        """Yield ``(source, index, target)`` for the edges of ``E_level`` in canonical order."""
        for v, fib in zip(self.levels[level], self.fibers[level]):
            for k, t in enumerate(fib):
                yield v, k, t

    def level_one(self) -> dict:
        """The level-1 map, constant equal to the root."""
        return {v: ROOT for v in self.levels[1]}

    def truncate(self, depth: int) -> "BratteliDiagram":
        if not 0 <= depth <= self.depth:
            raise LevelOutOfRange(f"depth {depth} outside 0..{self.depth}")
        return BratteliDiagram(self.levels[:depth + 1], self.fibers[:depth + 1])


def build_from_morphisms(ms: Sequence[Morphism]) -> BratteliDiagram:
    """Diagram whose level ``n`` (``n >= 2``) reads ``ms[n - 2]``."""
    ms = list(ms)
    if not ms:
        raise EmptyInput("at least one morphism is needed to define V_1")
    levels = [(ROOT,), tuple(ms[0].codomain)]
    fibers = [(), tuple((ROOT,) for _ in ms[0].codomain)]
    for n, m in enumerate(ms, start=2):
        if n > 2 and not m.codomain.same_letters(ms[n - 3].domain):
            raise AlphabetMismatch(
                f"level {n}: codomain {m.codomain} does not match V_{n - 1} = {ms[n - 3].domain}")
        levels.append(tuple(m.domain))
        fibers.append(tuple(tuple(img) for img in m.images))
    return BratteliDiagram(tuple(levels), tuple(fibers))


def read_morphism(diag: BratteliDiagram, i: int) -> Morphism:
    """The morphism ``V_i -> V_{i-1}*`` given by the ordered fibers at level ``i``."""
    if not 2 <= i <= diag.depth:
        raise LevelOutOfRange(
            f"level {i} outside 2..{diag.depth} (level 1 is the constant map, see level_one())")
    return Morphism(Alphabet("".join(diag.levels[i])), Alphabet("".join(diag.levels[i - 1])),
                    tuple("".join(f) for f in diag.fibers[i]))


def telescope(diag: BratteliDiagram, cuts: Sequence[int]) -> BratteliDiagram:
    """Keep only the levels in ``cuts`` (level 1 is always kept).

    The new morphism between consecutive kept levels ``c < c'`` is
    ``sigma_{c+1} o ... o sigma_{c'}``, whose fibers carry the
    lexicographic order of the composed paths.
    """
    cuts = list(cuts)
    if cuts and cuts[0] != 1:
        cuts.insert(0, 1)
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise InvalidCuts(f"cuts {cuts} are not strictly increasing")
    if not cuts or cuts[-1] != diag.depth or cuts[0] < 1:
        raise InvalidCuts(f"cuts must lie in 1..{diag.depth} and contain the top level {diag.depth}")
    if diag.depth < 2:
        return diag
    ms = []
    for lo, hi in zip(cuts, cuts[1:]):
        m = read_morphism(diag, lo + 1)
        for n in range(lo + 2, hi + 1):
            m = compose(m, read_morphism(diag, n))
        ms.append(m)
    return build_from_morphisms(ms)


def _boolean(m: IncidenceMatrix):
    return (m.entries > 0).astype("int64")


def simple_cuts(diag: BratteliDiagram, witness_depth: Optional[int] = None) -> list:
    """Greedy telescoping levels ``1 = i_0 < i_1 < ...`` such that every vertex of
    ``V_{i_{k+1}}`` reaches every vertex of ``V_{i_k}``."""
    top = diag.depth if witness_depth is None else min(witness_depth, diag.depth)
    cuts = [1]
    acc = None
    for n in range(2, top + 1):
        step = _boolean(incidence_matrix(read_morphism(diag, n)))
        acc = step if acc is None else (acc @ step).clip(max=1)
        if acc.all():
            cuts.append(n)
            acc = None
    return cuts


def is_simple(diag: BratteliDiagram, witness_depth: Optional[int] = None) -> bool:
    """True iff some telescoping of the truncated diagram has only positive blocks.

    An incomplete trailing block can be merged into the last positive one
    (every vertex has an upward edge), so one positive block suffices.
    """
    top = diag.depth if witness_depth is None else min(witness_depth, diag.depth)
    if top < 2:
        return True
    return len(simple_cuts(diag, top)) > 1


@dataclass(frozen=True)
class Path:
    top: str
    indices: tuple  # fiber index per level 1..depth

    @property
    def depth(self) -> int:
        return len(self.indices)

    def vertices(self, diag: BratteliDiagram) -> list:
        """``[v_1, ..., v_depth]``: the source vertex of the edge at each level."""
        vs = [self.top]
        for i in range(self.depth, 1, -1):
            vs.append(diag.fiber(i, vs[-1])[self.indices[i - 1]])
        return vs[::-1]

    def edges(self, diag: BratteliDiagram) -> list:
        """Canonical edge keys ``(level, source, index)`` from level 1 upward."""
        return [(i, v, k) for i, (v, k) in enumerate(zip(self.vertices(diag), self.indices), start=1)]

    def is_valid(self, diag: BratteliDiagram) -> bool:
        if self.depth > diag.depth or self.top not in diag.levels[self.depth]:
            return False
        v = self.top
        for i in range(self.depth, 0, -1):
            fib = diag.fiber(i, v)
            if not 0 <= self.indices[i - 1] < len(fib):
                return False
            v = fib[self.indices[i - 1]]
        return True


def _check_depth(diag, depth):
    depth = diag.depth if depth is None else depth
    if not 1 <= depth <= diag.depth:
        raise LevelOutOfRange(f"depth {depth} outside 1..{diag.depth}")
    return depth


def min_path(diag: BratteliDiagram, depth: Optional[int] = None, top: Optional[str] = None) -> Path:
    depth = _check_depth(diag, depth)
    top = diag.levels[depth][0] if top is None else top
    return Path(top, (0,) * depth)


def max_path(diag: BratteliDiagram, depth: Optional[int] = None, top: Optional[str] = None) -> Path:
    depth = _check_depth(diag, depth)
    top = diag.levels[depth][0] if top is None else top
    indices = [0] * depth
    v = top
    for i in range(depth, 0, -1):
        fib = diag.fiber(i, v)
        indices[i - 1] = len(fib) - 1
        v = fib[-1]
    return Path(top, tuple(indices))


@dataclass
class ExtremaReport:
    depth: int
    # per level n >= 2: number of distinct targets of minimal (maximal) edges from V_n
    min_counts: dict
    max_counts: dict

    @property
    def min_paths(self) -> int:
        return self.min_counts.get(self.depth, 1)

    @property
    def max_paths(self) -> int:
        return self.max_counts.get(self.depth, 1)

    @property
    def unique(self) -> bool:
        return self.min_paths == 1 and self.max_paths == 1


def unique_extrema_check(diag: BratteliDiagram, depth: Optional[int] = None) -> ExtremaReport:
    """Count all-minimal and all-maximal paths below the top level.

    Below level ``n`` an all-minimal path is determined by the target of its
    level-``n`` edge, so the number of distinct all-minimal paths coming
    down from ``V_n`` is the number of distinct first targets.
    """
    depth = _check_depth(diag, depth)
    mins, maxs = {}, {}
    for n in range(2, depth + 1):
        mins[n] = len({f[0] for f in diag.fibers[n]})
        maxs[n] = len({f[-1] for f in diag.fibers[n]})
    return ExtremaReport(depth, mins, maxs)


def vershik_successor(diag: BratteliDiagram, p: Path, wrap: bool = False) -> Path:
    """Next path in the reverse-lexicographic order among paths with the same top vertex.

    The maximal path has no successor at finite depth; with ``wrap=True`` it
    is sent to the minimal path with the same top vertex instead.
    """
    vs = p.vertices(diag)
    for k in range(2, p.depth + 1):
        fib = diag.fiber(k, vs[k - 1])
        if p.indices[k - 1] < len(fib) - 1:
            indices = (0,) * (k - 1) + (p.indices[k - 1] + 1,) + p.indices[k:]
            return Path(p.top, indices)
    if wrap:
        return Path(p.top, (0,) * p.depth)
    raise MaximalPath(f"{p} is the maximal path of depth {p.depth} from {p.top}")


@dataclass
class Coding:
    word: str
    complete: bool  # False when the maximal path was hit before all steps


def orbit_coding(diag: BratteliDiagram, start: Path, steps: int) -> Coding:
    """The ``V_1`` vertices visited by ``start`` and its successive successors."""
    out = []
    p = start
    for i in range(steps):
        out.append(p.vertices(diag)[0])
        if i + 1 == steps:
            break
        try:
            p = vershik_successor(diag, p)
        except MaximalPath:
            return Coding("".join(out), False)
    return Coding("".join(out), True)


def column_word(diag: BratteliDiagram, top: str, depth: Optional[int] = None) -> str:
    """``sigma_2 ... sigma_depth(top)``: the V_1 labels of all paths from ``top`` in order."""
    depth = _check_depth(diag, depth)
    w = top
    for n in range(depth, 1, -1):
        w = "".join("".join(diag.fiber(n, x)) for x in w)
    return w


def _node(level, v):
    return f'"{level}:{v}"'


def export_dot(diag: BratteliDiagram) -> str:
    """Graphviz text with one rank per level and edges labelled by fiber index."""
    lines = ["digraph bratteli {", "  rankdir=BT;", "  node [shape=circle];"]
    for i, vs in enumerate(diag.levels):
        nodes = " ".join(f'{_node(i, v)} [label="{v}"];' for v in vs)
        lines.append(f"  {{ rank=same; {nodes} }}")
    for i in range(1, diag.depth + 1):
        for v, k, t in diag.edges(i):
            lines.append(f'  {_node(i, v)} -> {_node(i - 1, t)} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
