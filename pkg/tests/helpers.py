"""Shared random generators and independent oracles for the test suite."""

from __future__ import annotations

from random import Random

from freegroups.graph import XDigraph, fold_all
from freegroups.subgroup import SubgroupGraph, stallings_graph
from freegroups.words import Alphabet, Word, free_reduce, identity, invert, multiply

AB = Alphabet.from_string("ab")
ABC = Alphabet.from_string("abc")
A1 = Alphabet.from_string("a")


def rand_word(rng: Random, alphabet: Alphabet, max_len: int, nontrivial: bool = False) -> Word:
    while True:
        n = rng.randint(0 if not nontrivial else 1, max_len)
        w = free_reduce(
            alphabet, [rng.randrange(alphabet.num_codes) for _ in range(n)]
        )
        if w.codes or not nontrivial:
            return w


def rand_gens(
    rng: Random, alphabet: Alphabet, max_gens: int, max_len: int
) -> list[Word]:
    return [
        rand_word(rng, alphabet, max_len, nontrivial=True)
        for _ in range(rng.randint(1, max_gens))
    ]


def rand_subgroup(
    rng: Random,
    alphabet: Alphabet,
    max_gens: int = 3,
    max_len: int = 6,
    max_vertices: int | None = None,
) -> SubgroupGraph:
    while True:
        g = stallings_graph(alphabet, rand_gens(rng, alphabet, max_gens, max_len))
        if not g.is_trivial() and (max_vertices is None or g.vertex_count <= max_vertices):
            return g


def product_words(gens: list[Word], depth: int) -> set[Word]:
    """All freely reduced products of at most `depth` generator factors.

    Breadth-first closure; every returned word certifiably lies in the
    subgroup generated by `gens`.
    """
    alphabet = gens[0].alphabet
    factors = [g for g in gens] + [invert(g) for g in gens]
    seen = {identity(alphabet)}
    frontier = [identity(alphabet)]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for f in factors:
                p = multiply(w, f)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return seen


def set_partitions(items: list[int]):
    """All partitions of a list, for the quotient enumeration oracle."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [partition[i] + [first]] + partition[i + 1 :]
        yield [[first]] + partition


def quotient_keys_by_partitions(k: SubgroupGraph) -> set[tuple]:
    """Canonical keys of all folded core quotients, computed the slow way:
    identify the blocks of every set partition of the vertices, then fold."""
    keys = set()
    for partition in set_partitions(list(range(k.vertex_count))):
        block_of = {}
        for i, block in enumerate(partition):
            for v in block:
                block_of[v] = i
        merged = XDigraph(
            k.alphabet,
            len(partition),
            [(block_of[o], x, block_of[t]) for o, x, t in k.graph.edges],
        )
        folded, vmap = fold_all(merged)
        sub = SubgroupGraph(folded, vmap[block_of[k.base]])
        keys.add(sub.canonical_key())
    return keys


def exponents_in(h, word: Word, limit: int = 40) -> set[int]:
    """Which powers word^n (1 <= n <= limit) lie in h; brute-force oracle."""
    from freegroups.subgroup import contains

    out = set()
    acc = identity(word.alphabet)
    for n in range(1, limit + 1):
        acc = multiply(acc, word)
        if contains(h, acc):
            out.add(n)
    return out
