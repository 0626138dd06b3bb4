"""Seeded samplers for morphisms, composable tuples and coloured words."""

from __future__ import annotations

import random

from .kgraph import KGraph, all_morphisms


class MorphismPool:
    """All morphisms up to a length bound, indexed by range vertex."""

    def __init__(self, graph: KGraph, max_len: int):
        self.graph = graph
        self.max_len = max_len
        self.all = all_morphisms(graph, max_len)
        self.by_range: dict = {}
        for lam in self.all:
            self.by_range.setdefault(lam._r, []).append(lam)

    def composable(self, n: int):
        """Every composable n-tuple, in enumeration order."""
        def rec(prefix):
            if len(prefix) == n:
                yield tuple(prefix)
                return
            cands = self.all if not prefix else self.by_range.get(prefix[-1]._s, [])
            for lam in cands:
                prefix.append(lam)
                yield from rec(prefix)
                prefix.pop()

        yield from rec([])

    def random_composable(self, rng: random.Random, n: int) -> tuple:
        out = [rng.choice(self.all)]
        while len(out) < n:
            out.append(rng.choice(self.by_range[out[-1]._s]))
        return tuple(out)


def random_edge_word(graph: KGraph, rng: random.Random, length: int) -> list:
    """A composable edge-index word of at most ``length`` edges, any colours."""
    if not graph.n_edges or length <= 0:
        return []
    word = [rng.randrange(graph.n_edges)]
    into: dict = {}
    for i in range(graph.n_edges):
        into.setdefault(graph.erng[i], []).append(i)
    while len(word) < length:
        cands = into.get(graph.esrc[word[-1]])
        if not cands:
            break
        word.append(rng.choice(cands))
    return word
