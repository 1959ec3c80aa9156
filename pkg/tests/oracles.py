"""Brute-force reference implementations used to cross-check the library.

Nothing here imports the algorithms under test; morphisms are plain dicts
and diagrams are walked by direct recursion.
"""
import itertools
import random

BLOCK_A = ["D", "E_bc", "D", "E_ab", "G", "M", "E_ab", "D"]
BLOCK_B = ["D", "E_bc", "G", "E_ab", "D", "M", "E_ab", "D"]

# images of a, b, c
S5_TABLE = {
    "D": {"a": "ab", "b": "b", "c": "c"},
    "G": {"a": "ba", "b": "b", "c": "c"},
    "E_ab": {"a": "b", "b": "a", "c": "c"},
    "E_bc": {"a": "a", "b": "c", "c": "b"},
    "M": {"a": "a", "b": "b", "c": "b"},
}


def substitute(rules, w):
    out = []
    for x in w:
        out.append(rules[x])
    return "".join(out)


def compose_rules(outer, inner):
    """Rules of outer o inner."""
    return {x: substitute(outer, img) for x, img in inner.items()}


def level_word(rules_list, seed):
    """rules_list[0] o ... o rules_list[-1] applied to seed."""
    w = seed
    for rules in reversed(rules_list):
        w = substitute(rules, w)
    return w


def all_factors(w, max_len):
    out = set()
    for i in range(len(w)):
        for j in range(i + 1, min(i + max_len, len(w)) + 1):
            out.add(w[i:j])
    return out


def stationary_factors(rules, seed, max_len, min_word_len=20000):
    """Factors of a long iterate of a primitive substitution."""
    w = seed
    while len(w) < min_word_len:
        w = substitute(rules, w)
    return all_factors(w, max_len)


def complexity_counts(facts, n_max):
    return [sum(1 for w in facts if len(w) == n) for n in range(1, n_max + 1)]


def paths_in_order(levels, fibers, top, depth):
    """All paths from ``top`` at ``depth``, highest level most significant.

    A path is the tuple of fiber indices for levels 1..depth.
    """
    if depth == 1:
        return [(0,)]
    out = []
    fib = fibers[depth][levels[depth].index(top)]
    for k, t in enumerate(fib):
        for below in paths_in_order(levels, fibers, t, depth - 1):
            out.append(below + (k,))
    return out


def path_bottom(levels, fibers, top, indices):
    v = top
    for level in range(len(indices), 1, -1):
        v = fibers[level][levels[level].index(v)][indices[level - 1]]
    return v


def random_morphism_chain(rng: random.Random, depth, max_vertices=3, max_image=3):
    """Rule dicts for levels 2..depth over alphabets of at most ``max_vertices`` letters.

    Each codomain letter occurs in some image, so every vertex has a downward edge.
    """
    pool = "abcdefgh"
    below = "".join(rng.sample(pool, rng.randint(1, max_vertices)))
    chain = []
    for _ in range(2, depth + 1):
        here = "".join(rng.sample(pool, rng.randint(1, max_vertices)))
        while True:
            rules = {x: "".join(rng.choice(below) for _ in range(rng.randint(1, max_image)))
                     for x in here}
            if set("".join(rules.values())) == set(below):
                break
        chain.append((below, here, rules))
        below = here
    return chain


def binary_increment_paths(bits):
    """Little-endian counter over ``bits`` digits, level 2 the least significant."""
    for k in range(2 ** bits):
        yield (0,) + tuple((k >> i) & 1 for i in range(bits))


def all_words(letters, max_len):
    for k in range(max_len + 1):
        for t in itertools.product(letters, repeat=k):
            yield "".join(t)


def block_image_triple(names):
    rules = {"a": "a", "b": "b", "c": "c"}
    for name in names:
        rules = compose_rules(rules, S5_TABLE[name])
    return rules
