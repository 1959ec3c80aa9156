"""Text formats: ``.mor`` morphism files and ``.dir`` directive files.

.mor::

    # comment
    alphabet: abc        (optional; declares the codomain)
    a -> ab
    b -> b

.dir::

    use fib = fib.mor    (paths relative to the .dir file)
    2: fib seed=a
    3-40: fib seed=a     (a range of levels sharing one entry)
    mark 3

Catalog names (D, G, E_ab, E_bc, M) may be used in .dir files without a
``use`` line.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import AdicaError, ErasingImage, ParseError, UnknownLetter, UnknownName
from .language import DirectiveSequence
from .words import Alphabet, Morphism

__all__ = [
    "parse_morphism", "format_morphism", "load_morphism",
    "parse_directive", "format_directive", "load_directive",
]

_RULE = re.compile(r"^(\S+)\s*->\s*(.*)$")
_ENTRY = re.compile(r"^(\d+)(?:\s*-\s*(\d+))?\s*:\s*(\w+)\s+seed\s*=\s*(\S+)$")
_USE = re.compile(r"^use\s+(\w+)\s*=\s*(.+)$")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_morphism(text: str, name=None) -> Morphism:
    codomain = None
    rules = {}
    for lineno, line in _lines(text):
        if line.startswith("alphabet:"):
            if codomain is not None or rules:
                raise ParseError(f"line {lineno}: the alphabet header must come first, once")
            letters = "".join(line[len("alphabet:"):].split())
            try:
                codomain = Alphabet(letters)
            except ValueError as e:
                raise ParseError(f"line {lineno}: {e}") from None
            continue
        m = _RULE.match(line)
        if not m:
            raise ParseError(f"line {lineno}: expected '<letter> -> <word>', got {line!r}")
        letter, image = m.group(1), m.group(2).strip()
        if len(letter) != 1 or not (letter.isascii() and letter.isalnum()):
            raise ParseError(f"line {lineno}: {letter!r} is not a single ASCII alphanumeric letter")
        if letter in rules:
            raise ParseError(f"line {lineno}: second rule for {letter!r}")
        if not image:
            raise ErasingImage(f"line {lineno}: empty image for {letter!r}")
        if not all(x.isascii() and x.isalnum() for x in image):
            raise ParseError(f"line {lineno}: image {image!r} contains non-letter characters")
        if codomain is not None:
            for x in image:
                if x not in codomain:
                    raise UnknownLetter(f"line {lineno}: {x!r} is not in the declared alphabet {codomain}")
        rules[letter] = image
    if not rules:
        raise ParseError("no rules")
    return Morphism.from_rules(rules, codomain=codomain, name=name, declared=codomain is not None)


def format_morphism(m: Morphism) -> str:
    lines = [f"alphabet: {m.codomain}"] if m.declared else []
    lines += [f"{x} -> {img}" for x, img in m.items()]
    return "\n".join(lines) + "\n"


def load_morphism(path) -> Morphism:
    path = Path(path)
    return parse_morphism(path.read_text(encoding="utf-8"), name=path.stem)


def parse_directive(text: str, base_dir=None, catalog=None) -> DirectiveSequence:
    """Parse a .dir file; ``use`` paths are resolved against ``base_dir``."""
    if catalog is None:
        from .s5 import CATALOG as catalog
    base = Path(base_dir) if base_dir is not None else Path(".")
    bound = {}
    entries = {}
    marks = []
    for lineno, line in _lines(text):
        m = _USE.match(line)
        if m:
            name, rel = m.group(1), m.group(2).strip()
            try:
                bound[name] = load_morphism(base / rel).renamed(name)
            except OSError as e:
                raise ParseError(f"line {lineno}: cannot read {rel}: {e.strerror}") from None
            except AdicaError as e:
                raise type(e)(f"line {lineno} ({rel}): {e}") from None
            continue
        if line.startswith("mark"):
            parts = line.split()[1:]
            if not parts or not all(p.isdigit() for p in parts):
                raise ParseError(f"line {lineno}: expected 'mark <n>'")
            marks.extend(int(p) for p in parts)
            continue
        m = _ENTRY.match(line)
        if not m:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        name, seed = m.group(3), m.group(4)
        if name in bound:
            morphism = bound[name]
        elif name in catalog:
            morphism = catalog[name]
        else:
            raise UnknownName(f"line {lineno}: morphism {name!r} is neither bound by 'use' nor in the catalog")
        if len(seed) != 1:
            raise ParseError(f"line {lineno}: seed must be a single letter, got {seed!r}")
        if hi < lo:
            raise ParseError(f"line {lineno}: empty level range {lo}-{hi}")
        for n in range(lo, hi + 1):
            if n in entries:
                raise ParseError(f"line {lineno}: level {n} given twice")
            entries[n] = (morphism, seed)
    if not entries:
        raise ParseError("no directive entries")
    levels = sorted(entries)
    if levels != list(range(2, 2 + len(levels))):
        raise ParseError(f"levels must be consecutive from 2, got {levels[0]}..{levels[-1]} with gaps"
                         if levels[0] == 2 else f"levels must start at 2, got {levels[0]}")
    try:
        return DirectiveSequence([entries[n][0] for n in levels],
                                 "".join(entries[n][1] for n in levels), tuple(sorted(marks)))
    except ValueError as e:
        raise ParseError(str(e)) from None


def load_directive(path) -> DirectiveSequence:
    path = Path(path)
    return parse_directive(path.read_text(encoding="utf-8"), base_dir=path.parent)


def format_directive(d: DirectiveSequence, names=None) -> str:
    """Serialize with catalog or given names; consecutive equal entries become ranges."""
    from .s5 import catalog_name

    def label(m):
        if names and m in names:
            return names[m]
        return catalog_name(m) or m.name

    lines = []
    run = None
    for n in d.levels():
        key = (label(d.morphism(n)), d.seed(n))
        if key[0] is None:
            raise ValueError(f"level {n}: morphism has no name to write")
        if run and run[2] == key:
            run[1] = n
        else:
            if run:
                lines.append(run)
            run = [n, n, key]
    lines.append(run)
    out = []
    for lo, hi, (name, seed) in lines:
        span = f"{lo}" if lo == hi else f"{lo}-{hi}"
        out.append(f"{span}: {name} seed={seed}")
    out += [f"mark {k}" for k in d.marks]
    return "\n".join(out) + "\n"
