"""Central extensions of a k-graph by an abelian group.

Every extension here is built from a cocycle and the group operations:
X_c, the trivial extension, sums Z(X, Y) and negatives.  Elements are
small immutable tuples so equality is structural.
"""

from __future__ import annotations

import random
from typing import Callable, NamedTuple

from .bridge import Cat2Cocycle, ZeroCocycle, cub_class_equal, c_phi
from .bridge import restrict_to_squares, square_sides
from .coeffs import CoeffGroup
from .cubical import CubicalCochain, is_cub_2cocycle
from .errors import BaseMismatch, NotComposable
from .kgraph import KGraph, Morphism, compose
from .sampling import MorphismPool
from .verdict import Verdict


class XcElem(NamedTuple):
    lam: Morphism
    a: object


class SumElem(NamedTuple):
    x: object
    y: object


class NegElem(NamedTuple):
    x: object


class Extension:
    """Contract: compose, iota, q, a_of, act and a canonical section."""

    graph: KGraph
    group: CoeffGroup

    def compose(self, x, y):
        raise NotImplementedError

    def iota(self, v: str, a):
        raise NotImplementedError

    def q(self, x) -> Morphism:
        raise NotImplementedError

    def a_of(self, x, y):
        """The unique a with x = a·y; requires q(x) = q(y)."""
        raise NotImplementedError

    def canonical(self, lam: Morphism):
        """A fixed normalised lift of lam."""
        raise NotImplementedError

    def act(self, a, x):
        return self.compose(self.iota(self.q(x).r, a), x)

    def element(self, lam: Morphism, a):
        """a·canonical(lam)."""
        return self.act(a, self.canonical(lam))

    def _same_fibre(self, x, y):
        if self.q(x) != self.q(y):
            raise ValueError("a_of needs elements over the same morphism")


class XcExtension(Extension):
    """Λ × A with (μ,a)(ν,b) = (μν, c(μ,ν) + a + b)."""

    def __init__(self, c: Cat2Cocycle):
        self.c = c
        self.graph = c.graph
        self.group = c.group

    def compose(self, x, y):
        if x.lam._s != y.lam._r:
            raise NotComposable(f"s({x.lam}) != r({y.lam})")
        grp = self.group
        return XcElem(compose(x.lam, y.lam), grp.add(self.c(x.lam, y.lam), grp.add(x.a, y.a)))

    def iota(self, v, a):
        return XcElem(self.graph.vertex(v), self.group.coerce(a))

    def q(self, x):
        return x.lam

    def a_of(self, x, y):
        self._same_fibre(x, y)
        return self.group.sub(x.a, y.a)

    def act(self, a, x):
        return XcElem(x.lam, self.group.add(a, x.a))

    def canonical(self, lam):
        return XcElem(lam, self.group.zero())


class TrivialExtension(XcExtension):
    """Λ × A with the untwisted product."""

    def __init__(self, graph: KGraph, group: CoeffGroup):
        super().__init__(ZeroCocycle(graph, group))


def xc_build(graph: KGraph, c: Cat2Cocycle) -> XcExtension:
    if c.graph is not graph:
        raise BaseMismatch("cocycle lives on another graph")
    return XcExtension(c)


class SumExtension(Extension):
    """Z(X, Y): classes [x, y] stored with y = canonical_Y(q(y))."""

    def __init__(self, X: Extension, Y: Extension):
        if X.graph is not Y.graph or X.group != Y.group:
            raise BaseMismatch("summands have different bases or groups")
        self.X = X
        self.Y = Y
        self.graph = X.graph
        self.group = X.group

    def pair(self, x, y) -> SumElem:
        """The class [x, y]; moves the fibre coordinate of y onto x."""
        lam = self.X.q(x)
        if self.Y.q(y) != lam:
            raise ValueError("[x, y] needs q(x) = q(y)")
        base = self.Y.canonical(lam)
        return SumElem(self.X.act(self.Y.a_of(y, base), x), base)

    def compose(self, u, w):
        return self.pair(self.X.compose(u.x, w.x), self.Y.compose(u.y, w.y))

    def iota(self, v, a):
        return self.pair(self.X.iota(v, a), self.Y.iota(v, self.group.zero()))

    def q(self, u):
        return self.X.q(u.x)

    def a_of(self, u, w):
        self._same_fibre(u, w)
        return self.group.add(self.X.a_of(u.x, w.x), self.Y.a_of(u.y, w.y))

    def act(self, a, u):
        return SumElem(self.X.act(a, u.x), u.y)

    def canonical(self, lam):
        return SumElem(self.X.canonical(lam), self.Y.canonical(lam))


def ext_sum(X: Extension, Y: Extension) -> SumExtension:
    return SumExtension(X, Y)


class NegExtension(Extension):
    """X̄: same composition, iota and action negated."""

    def __init__(self, X: Extension):
        self.X = X
        self.graph = X.graph
        self.group = X.group

    def compose(self, u, w):
        return NegElem(self.X.compose(u.x, w.x))

    def iota(self, v, a):
        return NegElem(self.X.iota(v, self.group.neg(a)))

    def q(self, u):
        return self.X.q(u.x)

    def a_of(self, u, w):
        return self.group.neg(self.X.a_of(u.x, w.x))

    def act(self, a, u):
        return NegElem(self.X.act(self.group.neg(a), u.x))

    def canonical(self, lam):
        return NegElem(self.X.canonical(lam))


def ext_neg(X: Extension) -> NegExtension:
    return NegExtension(X)


# -- sections ---------------------------------------------------------------


class Section:
    """A normalised right inverse of q."""

    def __init__(self, ext: Extension, fn: Callable, label: str = "section"):
        self.ext = ext
        self._fn = fn
        self.label = label

    def __call__(self, lam: Morphism):
        if not lam.word:
            return self.ext.iota(lam.r, self.ext.group.zero())
        return self._fn(lam)


def canonical_section(ext: Extension) -> Section:
    return Section(ext, ext.canonical, "canonical")


def edge_lift_section(ext: Extension, lifts: dict | None = None) -> Section:
    """Lift each edge (default: its canonical lift) and multiply along λ̄."""
    g = ext.graph
    table = {e.id: (lifts or {}).get(e.id) or ext.canonical(g.edge(e.id)) for e in g.edges}

    def fn(lam):
        ids = lam.edges
        out = table[ids[-1]]
        for e in reversed(ids[:-1]):
            out = ext.compose(table[e], out)
        return out

    return Section(ext, fn, "edge-lifts")


def perturbed_section(section: Section, b: Callable) -> Section:
    """σ'(λ) = b(λ)·σ(λ) for a normalised b."""
    ext = section.ext
    return Section(ext, lambda lam: ext.act(b(lam), section(lam)), "perturbed")


class SectionCocycle(Cat2Cocycle):
    """c_σ(μ, ν) = a(σ(μ)σ(ν), σ(μν))."""

    kind = "section"

    def __init__(self, ext: Extension, section: Section):
        super().__init__(ext.graph, ext.group)
        self.ext = ext
        self.section = section

    def _eval(self, mu, nu):
        ext = self.ext
        s = self.section
        return ext.a_of(ext.compose(s(mu), s(nu)), s(compose(mu, nu)))


def section_cocycle(ext: Extension, section: Section) -> SectionCocycle:
    return SectionCocycle(ext, section)


def square_extraction(ext: Extension, section: Section) -> CubicalCochain:
    """λ ↦ a(σ(f)σ(g), σ(g')σ(f')) on squares λ = fg = g'f'.

    On X_c with edge lifts (e, 0) this is c(f,g) - c(g',f'), the negative of
    ``restrict_to_squares(c)``.
    """
    grp = ext.group

    def value(lam):
        f, g, g2, f2 = square_sides(lam)
        return ext.a_of(ext.compose(section(f), section(g)), ext.compose(section(g2), section(f2)))

    return CubicalCochain.from_function(ext.graph, 2, grp, value)


# -- law suite --------------------------------------------------------------


def _pairs(graph: KGraph, rng: random.Random, n: int, max_len: int):
    pool = MorphismPool(graph, max_len)
    return [pool.random_composable(rng, 2) for _ in range(n)]


def _multiplicative(phi, dom: Extension, cod: Extension, samples) -> Verdict:
    for u, w in samples:
        if phi(dom.compose(u, w)) != cod.compose(phi(u), phi(w)):
            return Verdict(False, (u, w), "map is not multiplicative", len(samples))
        for z in (u, w):
            if cod.q(phi(z)) != dom.q(z):
                return Verdict(False, z, "map does not cover the base", len(samples))
    return Verdict(True, None, "", len(samples))


def _random_elem(ext: Extension, lam: Morphism, rng: random.Random):
    return ext.element(lam, ext.group.random(rng))


def _sum_elem(S: SumExtension, lam, rng):
    return S.pair(_random_elem(S.X, lam, rng), _random_elem(S.Y, lam, rng))


def unit_law(X: Extension, pairs, rng) -> Verdict:
    """Z(X, Trivial) ≅ X via [x, (λ, a)] ↦ a·x."""
    T = TrivialExtension(X.graph, X.group)
    S = SumExtension(X, T)

    def to_x(u):
        return X.act(u.y.a, u.x)

    def from_x(x):
        return S.pair(x, T.canonical(X.q(x)))

    samples = [(_sum_elem(S, m, rng), _sum_elem(S, n, rng)) for m, n in pairs]
    v = _multiplicative(to_x, S, X, samples)
    if not v:
        return v
    for u, w in samples:
        x = to_x(u)
        if from_x(x) != u or to_x(from_x(x)) != x:
            return Verdict(False, u, "unit map is not bijective", len(samples))
    return v


def inverse_law(X: Extension, pairs, rng) -> Verdict:
    """Z(X, X̄) ≅ Trivial via [x, ȳ] ↦ (q(x), a(x, y))."""
    T = TrivialExtension(X.graph, X.group)
    N = NegExtension(X)
    S = SumExtension(X, N)

    def to_t(u):
        return XcElem(X.q(u.x), X.a_of(u.x, u.y.x))

    samples = [(_sum_elem(S, m, rng), _sum_elem(S, n, rng)) for m, n in pairs]
    return _multiplicative(to_t, S, T, samples)


def commutativity_law(X: Extension, Y: Extension, pairs, rng) -> Verdict:
    """Z(X, Y) ≅ Z(Y, X) via [x, y] ↦ [y, x]."""
    S = SumExtension(X, Y)
    R = SumExtension(Y, X)
    samples = [(_sum_elem(S, m, rng), _sum_elem(S, n, rng)) for m, n in pairs]
    return _multiplicative(lambda u: R.pair(u.y, u.x), S, R, samples)


def a_of_additivity(X: Extension, Y: Extension, pairs, rng) -> Verdict:
    """a([x,y], [x',y']) = a(x,x') + a(y,y') for arbitrary representatives."""
    S = SumExtension(X, Y)
    grp = X.group
    for lam, _ in pairs:
        x, x2 = _random_elem(X, lam, rng), _random_elem(X, lam, rng)
        y, y2 = _random_elem(Y, lam, rng), _random_elem(Y, lam, rng)
        want = grp.add(X.a_of(x, x2), Y.a_of(y, y2))
        if S.a_of(S.pair(x, y), S.pair(x2, y2)) != want:
            return Verdict(False, (x, y, x2, y2), "a_of is not additive", len(pairs))
    return Verdict(True, None, "", len(pairs))


def action_laws(ext: Extension, pairs, rng) -> Verdict:
    """x = a(x,y)·y, a(b·x, x) = b, and centrality a·x = x·a."""
    grp = ext.group
    for lam, nu in pairs:
        x, y = _random_elem(ext, lam, rng), _random_elem(ext, lam, rng)
        if ext.act(ext.a_of(x, y), y) != x:
            return Verdict(False, (x, y), "x != a(x,y)·y")
        b = grp.random(rng)
        if ext.a_of(ext.act(b, x), x) != b:
            return Verdict(False, (x, b), "a(b·x, x) != b")
        left = ext.compose(ext.iota(lam.r, b), x)
        right = ext.compose(x, ext.iota(lam.s, b))
        if left != right:
            return Verdict(False, (x, b), "action is not central")
        w = _random_elem(ext, nu, rng)
        if ext.a_of(ext.compose(x, w), ext.compose(y, w)) != ext.a_of(x, y):
            return Verdict(False, (x, y, w), "a(x,y) != a(xw,yw)")
    return Verdict(True, None, "", len(pairs))


def ext_law_suite(graph: KGraph, group: CoeffGroup, cocycles: list, *,
                  n_pairs: int = 100, seed: int = 0, max_len: int = 3) -> dict:
    """Run every witness isomorphism and section check; returns named verdicts."""
    rng = random.Random(seed)
    report: dict = {}
    exts = [xc_build(graph, c) for c in cocycles]
    for i, (c, X) in enumerate(zip(cocycles, exts)):
        if c.group != group:
            raise BaseMismatch("cocycle group differs from the suite group")
        pairs = _pairs(graph, rng, n_pairs, max_len)
        report[f"{i}.canonical_section"] = _same_cocycle(section_cocycle(X, canonical_section(X)), c, pairs)
        report[f"{i}.action"] = action_laws(X, pairs, rng)
        report[f"{i}.unit"] = unit_law(X, pairs, rng)
        report[f"{i}.inverse"] = inverse_law(X, pairs, rng)
        phi_c = restrict_to_squares(c)
        extracted = square_extraction(X, edge_lift_section(X))
        ok = extracted == -phi_c and bool(is_cub_2cocycle(phi_c))
        ok = ok and bool(cub_class_equal(restrict_to_squares(c_phi(phi_c)), phi_c))
        report[f"{i}.square_extraction"] = Verdict(ok, None if ok else phi_c.as_dict())
    for i in range(len(exts)):
        for j in range(i + 1, len(exts)):
            pairs = _pairs(graph, rng, n_pairs, max_len)
            X, Y = exts[i], exts[j]
            report[f"{i}+{j}.commutativity"] = commutativity_law(X, Y, pairs, rng)
            report[f"{i}+{j}.a_of_additivity"] = a_of_additivity(X, Y, pairs, rng)
            report[f"{i}+{j}.sum_cocycle"] = sum_matches_cocycle_sum(X, Y, pairs, rng)
    return report


def sum_matches_cocycle_sum(X: XcExtension, Y: XcExtension, pairs, rng) -> Verdict:
    """Z(X_c1, X_c2) ≅ X_{c1+c2} via [(λ,a),(λ,b)] ↦ (λ, a+b)."""
    S = SumExtension(X, Y)
    target = XcExtension(X.c + Y.c)
    grp = X.group

    def fwd(u):
        return XcElem(u.x.lam, grp.add(u.x.a, u.y.a))

    samples = [(_sum_elem(S, m, rng), _sum_elem(S, n, rng)) for m, n in pairs]
    return _multiplicative(fwd, S, target, samples)


def _same_cocycle(c1: Cat2Cocycle, c2: Cat2Cocycle, pairs) -> Verdict:
    for mu, nu in pairs:
        if c1(mu, nu) != c2(mu, nu):
            return Verdict(False, (mu, nu), "cocycles differ", len(pairs))
    return Verdict(True, None, "", len(pairs))
