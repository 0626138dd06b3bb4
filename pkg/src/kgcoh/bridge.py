"""From cubical to categorical 2-cocycles and back.

``shuffle`` sorts a coloured edge word into preferred order by square flips
and adds up φ over the squares crossed.  ``c_phi`` evaluates the shuffle
cost of the concatenation of two preferred words.  ``restrict_to_squares``
reads a cubical cochain off any categorical cocycle.

The product, pullback and skew combinators act on pairs of morphisms:
each cocycle is applied coordinatewise to the pair after projection.
"""

from __future__ import annotations

import random
import threading
from math import gcd
from typing import Callable

from . import kernel
from .coeffs import CoeffGroup, Integers, IntegersMod, RationalsMod1
from .cubical import (
    CubicalCochain,
    boundary_matrix,
    colours_of,
    cub_coboundary,
    cube_index,
    cubes,
    is_cub_2cocycle,
)
from .derived import ProductOrigin, PullbackOrigin, SkewOrigin
from .errors import GraphMismatch, NotACocycle, NotComposable, UnsupportedCoefficients
from .kgraph import KGraph, Morphism, compose, segment, unit, zero
from .sampling import MorphismPool
from .snf import smith_normal_form, transpose
from .verdict import Verdict


class ColouredWord:
    """A composable edge word in any colour order."""

    __slots__ = ("graph", "word")

    def __init__(self, graph: KGraph, word):
        word = tuple(word)
        for a, b in zip(word, word[1:]):
            if graph.esrc[a] != graph.erng[b]:
                raise NotComposable("edge word is not composable")
        self.graph = graph
        self.word = word

    @classmethod
    def from_ids(cls, graph: KGraph, ids) -> "ColouredWord":
        return cls(graph, [graph._eidx[e] for e in ids])

    @property
    def colours(self) -> tuple:
        return tuple(self.graph.colour[e] for e in self.word)

    @property
    def degree(self) -> tuple:
        d = [0] * self.graph.k
        for c in self.colours:
            d[c - 1] += 1
        return tuple(d)

    @property
    def ids(self) -> tuple:
        return tuple(self.graph._edge_ids[e] for e in self.word)

    def __eq__(self, other):
        return isinstance(other, ColouredWord) and self.graph is other.graph and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return ".".join(self.ids)

    def __repr__(self):
        return f"ColouredWord({self})"


def preferred_word(lam: Morphism) -> ColouredWord:
    return ColouredWord(lam.graph, lam.word)


def square_values(phi: CubicalCochain) -> list:
    """φ indexed by square-table position rather than cube order."""
    g = phi.graph
    index = cube_index(g, 2)
    return [phi.values[index[g.path([f, gg])]] for f, gg, _, _ in g.squares]


def _bubble(word, phi_sq, graph, grp):
    w, flips = kernel.sort_word(word, graph.colour, graph.rl_next, graph.rl_sq, graph.n_edges)
    return tuple(w), grp.sum(phi_sq[i] for i in flips)


def _random_moves(word, phi_sq, graph, grp, rng):
    w = list(word)
    col = graph.colour
    n = graph.n_edges
    total = grp.zero()
    while True:
        spots = [p for p in range(len(w) - 1) if col[w[p]] > col[w[p + 1]]]
        if not spots:
            return tuple(w), total
        p = rng.choice(spots)
        key = w[p] * n + w[p + 1]
        total = grp.add(total, phi_sq[graph.rl_sq[key]])
        w[p], w[p + 1] = divmod(graph.rl_next[key], n)


def shuffle(w: ColouredWord, phi: CubicalCochain, *, strategy: str = "bubble",
            rng: random.Random | None = None, check: bool = False):
    """Sort ``w`` to preferred order; return ``(sorted word, S_φ(w))``.

    ``strategy`` is "bubble" (left-to-right insertion) or "random" (a random
    allowable move at each step).  With ``check`` both run and NotACocycle is
    raised if they disagree.
    """
    if w.graph is not phi.graph:
        raise GraphMismatch("word and cochain on different graphs")
    phi_sq = square_values(phi)
    grp = phi.group
    if strategy == "bubble":
        out = _bubble(w.word, phi_sq, w.graph, grp)
    elif strategy == "random":
        out = _random_moves(w.word, phi_sq, w.graph, grp, rng or random.Random(0))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if check:
        other = _random_moves(w.word, phi_sq, w.graph, grp, rng or random.Random(0))
        if other != out:
            raise NotACocycle(f"shuffle of {w} depends on the move order")
    return ColouredWord(w.graph, out[0]), out[1]


# -- categorical cochains ---------------------------------------------------


class Cat1Evaluator:
    """A normalised function Λ -> A given by a Python callable."""

    def __init__(self, graph: KGraph, group: CoeffGroup, fn: Callable, label: str = "b"):
        self.graph = graph
        self.group = group
        self._fn = fn
        self.label = label

    def __call__(self, lam: Morphism):
        if not lam.word:
            return self.group.zero()
        return self._fn(lam)


class Cat2Cocycle:
    """Lazily evaluated categorical 2-cochain on composable pairs.

    Subclasses implement ``_eval``.  Values are memoised; concurrent writers
    can only store equal values, so the cache needs no read lock.
    """

    kind = "cocycle"

    def __init__(self, graph: KGraph, group: CoeffGroup):
        self.graph = graph
        self.group = group
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __call__(self, mu: Morphism, nu: Morphism):
        key = (mu, nu)
        got = self._cache.get(key)
        if got is None:
            if mu.graph is not self.graph or nu.graph is not self.graph:
                raise GraphMismatch("arguments from a different graph")
            if mu._s != nu._r:
                raise NotComposable(f"s({mu}) != r({nu})")
            got = self._eval(mu, nu)
            with self._lock:
                self._cache[key] = got
        return got

    def _eval(self, mu, nu):
        raise NotImplementedError

    def __add__(self, other):
        return SumCocycle(self, other)

    def __neg__(self):
        return NegCocycle(self)

    def __sub__(self, other):
        return SumCocycle(self, NegCocycle(other))

    def __repr__(self):
        return f"<{type(self).__name__} on {self.graph.name or 'graph'} over {self.group}>"


class ZeroCocycle(Cat2Cocycle):
    kind = "zero"

    def _eval(self, mu, nu):
        return self.group.zero()


class CubicalCocycle(Cat2Cocycle):
    """c_φ(μ, ν) = S_φ(μ̄ν̄)."""

    kind = "cubical"

    def __init__(self, phi: CubicalCochain):
        super().__init__(phi.graph, phi.group)
        self.phi = phi
        self._phi_sq = square_values(phi)

    def _eval(self, mu, nu):
        g = self.graph
        if not mu.word or not nu.word or g.colour[mu.word[-1]] <= g.colour[nu.word[0]]:
            return self.group.zero()
        return _bubble(mu.word + nu.word, self._phi_sq, g, self.group)[1]


def c_phi(phi: CubicalCochain, *, check: bool = False) -> CubicalCocycle:
    """The categorical cocycle of a cubical 2-cocycle.

    With ``check`` the cubical cocycle identity is verified first.
    """
    if phi.rank != 2:
        raise ValueError("expected a rank-2 cochain")
    if check:
        verdict = is_cub_2cocycle(phi)
        if not verdict:
            raise NotACocycle(verdict.detail)
    return CubicalCocycle(phi)


class CoboundaryCocycle(Cat2Cocycle):
    """(δb)(μ, ν) = b(μ) - b(μν) + b(ν)."""

    kind = "coboundary"

    def __init__(self, b):
        super().__init__(b.graph, b.group)
        self.b = b

    def _eval(self, mu, nu):
        grp = self.group
        return grp.add(grp.sub(self.b(mu), self.b(compose(mu, nu))), self.b(nu))


class SumCocycle(Cat2Cocycle):
    kind = "sum"

    def __init__(self, first: Cat2Cocycle, second: Cat2Cocycle):
        if first.graph is not second.graph or first.group != second.group:
            raise GraphMismatch("summands live on different graphs or groups")
        super().__init__(first.graph, first.group)
        self.first = first
        self.second = second

    def _eval(self, mu, nu):
        return self.group.add(self.first(mu, nu), self.second(mu, nu))


class NegCocycle(Cat2Cocycle):
    kind = "negate"

    def __init__(self, inner: Cat2Cocycle):
        super().__init__(inner.graph, inner.group)
        self.inner = inner

    def _eval(self, mu, nu):
        return self.group.neg(self.inner(mu, nu))


class OverrideCocycle(Cat2Cocycle):
    """``base`` with one value replaced; used to exercise failing checks."""

    kind = "override"

    def __init__(self, base: Cat2Cocycle, pair: tuple, value):
        super().__init__(base.graph, base.group)
        self.base = base
        self.pair = tuple(pair)
        self.value = base.group.coerce(value)

    def _eval(self, mu, nu):
        if (mu, nu) == self.pair:
            return self.value
        return self.base(mu, nu)


class PullbackCocycle(Cat2Cocycle):
    """((λ,m), (λ',m')) ↦ c(λ, λ') on a pulled-back graph."""

    kind = "pullback"

    def __init__(self, c: Cat2Cocycle, graph: KGraph):
        origin = graph.origin
        if not isinstance(origin, PullbackOrigin) or origin.base is not c.graph:
            raise GraphMismatch("graph is not a pullback of the cocycle's graph")
        super().__init__(graph, c.group)
        self.inner = c

    def _eval(self, mu, nu):
        proj = self.graph.origin.project
        return self.inner(proj(mu), proj(nu))


class ProductCocycle(Cat2Cocycle):
    """((λ1,λ2), (μ1,μ2)) ↦ c1(λ1,μ1) + c2(λ2,μ2)."""

    kind = "product"

    def __init__(self, c1: Cat2Cocycle, c2: Cat2Cocycle, graph: KGraph):
        origin = graph.origin
        if (not isinstance(origin, ProductOrigin) or origin.left is not c1.graph
                or origin.right is not c2.graph):
            raise GraphMismatch("graph is not the product of the cocycles' graphs")
        if c1.group != c2.group:
            raise GraphMismatch("product factors use different groups")
        super().__init__(graph, c1.group)
        self.c1 = c1
        self.c2 = c2

    def _eval(self, mu, nu):
        proj = self.graph.origin.project
        mu1, mu2 = proj(mu)
        nu1, nu2 = proj(nu)
        return self.group.add(self.c1(mu1, nu1), self.c2(mu2, nu2))


class SkewCocycle(Cat2Cocycle):
    """((μ,a), (ν,a+f(μ))) ↦ c(μ, ν) on a skew product."""

    kind = "skew"

    def __init__(self, c: Cat2Cocycle, graph: KGraph):
        origin = graph.origin
        if not isinstance(origin, SkewOrigin) or origin.base is not c.graph:
            raise GraphMismatch("graph is not a skew product of the cocycle's graph")
        super().__init__(graph, c.group)
        self.inner = c

    def _eval(self, mu, nu):
        proj = self.graph.origin.project
        return self.inner(proj(mu), proj(nu))


def build_cocycle(kind: str, *args) -> Cat2Cocycle:
    """Construct a combinator cocycle by name.

    kinds: coboundary(b), sum(c1, c2), negate(c), pullback(c, graph),
    product(c1, c2, graph), skew(c, graph).
    """
    makers = {
        "coboundary": CoboundaryCocycle,
        "sum": SumCocycle,
        "negate": NegCocycle,
        "pullback": PullbackCocycle,
        "product": ProductCocycle,
        "skew": SkewCocycle,
    }
    if kind not in makers:
        raise ValueError(f"unknown cocycle kind {kind!r}")
    return makers[kind](*args)


# -- checks -----------------------------------------------------------------


def cocycle_defect(c: Cat2Cocycle, l1: Morphism, l2: Morphism, l3: Morphism):
    """LHS - RHS of the categorical 2-cocycle identity."""
    grp = c.group
    l12 = compose(l1, l2)
    l23 = compose(l2, l3)
    lhs = grp.add(c(l1, l2), c(l12, l3))
    rhs = grp.add(c(l2, l3), c(l1, l23))
    return grp.sub(lhs, rhs)


def cat2_eval_and_check(c: Cat2Cocycle, *, max_len: int = 2, n_random: int = 500,
                        random_len: int = 4, seed: int = 0) -> Verdict:
    """Check normalisation and the cocycle identity on composable triples.

    Exhaustive over triples with every |λ_i| <= ``max_len``, then
    ``n_random`` seeded triples with |λ_i| <= ``random_len``.  The witness
    is the first failing triple.
    """
    grp = c.group
    z = grp.zero()
    checked = 0
    pool = MorphismPool(c.graph, max_len)
    for lam in pool.all:
        for pair in ((lam.graph.vertex(lam.r), lam), (lam, lam.graph.vertex(lam.s))):
            if c(*pair) != z:
                return Verdict(False, pair, "not normalised", checked)
    for triple in pool.composable(3):
        checked += 1
        if cocycle_defect(c, *triple) != z:
            return Verdict(False, triple, "cocycle identity fails", checked)
    if n_random:
        rng = random.Random(seed)
        big = MorphismPool(c.graph, random_len)
        for _ in range(n_random):
            triple = big.random_composable(rng, 3)
            checked += 1
            if cocycle_defect(c, *triple) != z:
                return Verdict(False, triple, "cocycle identity fails", checked)
    return Verdict(True, None, "", checked)


def square_sides(lam: Morphism) -> tuple:
    """(f, g, g', f') for a 2-cube lam = fg = g'f' with C(f) < C(g)."""
    i, j = colours_of(lam)
    k = lam.graph.k
    d = lam.degree
    ei, ej = unit(k, i), unit(k, j)
    return (segment(lam, zero(k), ei), segment(lam, ei, d),
            segment(lam, zero(k), ej), segment(lam, ej, d))


def restrict_to_squares(c: Cat2Cocycle) -> CubicalCochain:
    """φ_c(λ) = c(g', f') - c(f, g) on each square λ = fg = g'f'."""
    grp = c.group

    def value(lam):
        f, g, g2, f2 = square_sides(lam)
        return grp.sub(c(g2, f2), c(f, g))

    return CubicalCochain.from_function(c.graph, 2, grp, value)


def _apply_int_matrix(m: list, vec: list, grp: CoeffGroup) -> list:
    return [grp.sum(grp.mul(a, x) for a, x in zip(row, vec) if a) for row in m]


def cub_class_equal(phi1: CubicalCochain, phi2: CubicalCochain) -> Verdict:
    """Decide whether φ1 - φ2 = δ¹f; the certificate is such an f.

    The system δ¹f = ψ is diagonalised by Smith normal form, U·D·V = S, and
    solved coordinatewise in the coefficient group.  Over Q/Z every nonzero
    diagonal entry is invertible on the divisible group, so only the
    coordinates past the rank constrain ψ.
    """
    if phi1.graph is not phi2.graph or phi1.group != phi2.group:
        raise GraphMismatch("cochains live in different groups")
    grp = phi1.group
    if not isinstance(grp, (Integers, IntegersMod, RationalsMod1)):
        raise UnsupportedCoefficients(str(grp))
    g = phi1.graph
    psi = (phi1 - phi2).values
    n1 = len(cubes(g, 1))
    delta = transpose(boundary_matrix(g, 2).entries, n1) if psi else []
    snf = smith_normal_form(delta, n_cols=n1)
    b = _apply_int_matrix(snf.U, list(psi), grp)
    y = [grp.zero()] * n1
    for i, bi in enumerate(b):
        if i < snf.rank:
            s = snf.invariants[i]
            sol = _divide(grp, bi, s)
            if sol is None:
                return Verdict(False, None, f"coordinate {i} not divisible by {s}")
            y[i] = sol
        elif bi != grp.zero():
            return Verdict(False, None, f"coordinate {i} outside the image")
    f = CubicalCochain(g, 1, grp, _apply_int_matrix(snf.V, y, grp))
    if cub_coboundary(f).values != tuple(psi):
        raise AssertionError("class-equality certificate failed verification")
    return Verdict(True, f, "")


def _divide(grp: CoeffGroup, b, s: int):
    """Some y with s·y = b in grp, or None."""
    if isinstance(grp, Integers):
        return b // s if b % s == 0 else None
    if isinstance(grp, IntegersMod):
        n = grp.n
        g = gcd(s, n)
        if b % g:
            return None
        m = n // g
        if m == 1:
            return 0
        return (b // g) * pow(s // g, -1, m) % m
    return grp.coerce(b / s)
