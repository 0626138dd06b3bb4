"""Small named k-graphs used by the tests, benchmarks and CLI examples."""

from __future__ import annotations

from functools import lru_cache

from .coeffs import IntegersMod
from .derived import product, pullback, skew
from .kgraph import Edge, KGraph, Skeleton, validate


@lru_cache(maxsize=None)
def b2() -> KGraph:
    """One vertex, two loops of colour 1."""
    skel = Skeleton(("v",), (Edge("f1", 1, "v", "v"), Edge("f2", 1, "v", "v")))
    return validate(skel, [], 1, name="B2")


@lru_cache(maxsize=None)
def t2() -> KGraph:
    """One vertex, one loop per colour, the single square ef = fe."""
    skel = Skeleton(("v",), (Edge("e", 1, "v", "v"), Edge("f", 2, "v", "v")))
    return validate(skel, [("e", "f", "f", "e")], 2, name="T2")


@lru_cache(maxsize=None)
def cube3() -> KGraph:
    """One vertex, one loop per colour in rank 3."""
    skel = Skeleton(("v",), (Edge("a", 1, "v", "v"), Edge("b", 2, "v", "v"), Edge("c", 3, "v", "v")))
    squares = [("a", "b", "b", "a"), ("a", "c", "c", "a"), ("b", "c", "c", "b")]
    return validate(skel, squares, 3, name="CUBE3")


@lru_cache(maxsize=None)
def twist2() -> KGraph:
    """One vertex, two loops per colour, squares a_i b_j = b_{i+j} a_i."""
    edges = (
        Edge("a0", 1, "v", "v"), Edge("a1", 1, "v", "v"),
        Edge("b0", 2, "v", "v"), Edge("b1", 2, "v", "v"),
    )
    squares = [(f"a{i}", f"b{j}", f"b{(i + j) % 2}", f"a{i}") for i in range(2) for j in range(2)]
    return validate(Skeleton(("v",), edges), squares, 2, name="TWIST2")


@lru_cache(maxsize=None)
def cycle2() -> KGraph:
    """The 1-graph of a directed 2-cycle u -> w -> u."""
    skel = Skeleton(("u", "w"), (Edge("x", 1, "u", "w"), Edge("y", 1, "w", "u")))
    return validate(skel, [], 1, name="CYCLE2")


@lru_cache(maxsize=None)
def b2xb2() -> KGraph:
    g = product(b2(), b2())
    g.name = "B2xB2"
    return g


@lru_cache(maxsize=None)
def b2cubed() -> KGraph:
    """Two loops per colour in rank 3, all squares from the product."""
    g = product(b2xb2(), b2())
    g.name = "B2^3"
    return g


@lru_cache(maxsize=None)
def b2_pullback() -> KGraph:
    """B2 pulled back along m -> m_1 + m_2."""
    g = pullback(b2(), [[1, 1]])
    g.name = "B2*[1,1]"
    return g


@lru_cache(maxsize=None)
def b2_skew() -> KGraph:
    """B2 skewed over Z/2 by the degree mod 2."""
    g = skew(b2(), IntegersMod(2), {"f1": 1, "f2": 1})
    g.name = "B2xZ/2"
    return g


@lru_cache(maxsize=None)
def t2xb2() -> KGraph:
    g = product(t2(), b2())
    g.name = "T2xB2"
    return g


@lru_cache(maxsize=None)
def twist2xb2() -> KGraph:
    """Two loops per colour in rank 3 with a nonzero 3-cube boundary."""
    g = product(twist2(), b2())
    g.name = "TWIST2xB2"
    return g


BUILDERS = {
    "B2": b2,
    "T2": t2,
    "CUBE3": cube3,
    "TWIST2": twist2,
    "CYCLE2": cycle2,
    "B2xB2": b2xb2,
    "B2^3": b2cubed,
    "B2*[1,1]": b2_pullback,
    "B2xZ/2": b2_skew,
    "T2xB2": t2xb2,
    "TWIST2xB2": twist2xb2,
}


def get(name: str) -> KGraph:
    return BUILDERS[name]()


def all_graphs() -> list:
    return [build() for build in BUILDERS.values()]
