"""Path-groupoid elements over eventually periodic tails, and σ_c.

An :class:`EventualPath` is ``prefix · ρ_u · ρ_{s(ρ_u)} · ...`` where ρ_u is
the graph's degree-1_k block at u.  A :class:`GroupoidElem` ``(p, q, z)``
stands for ``(p z, d(p) - d(q), q z)``.

The canonical partition puts every ``Z(λ, s(λ))`` first, then enumerates
the remaining cylinders ``Z(μ, ν)`` (ν not a suffix of μ) by total length
and lexicographic order, removing earlier cylinders as it goes.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass

from .errors import NotComposable
from .kgraph import (
    Degree,
    KGraph,
    Morphism,
    all_morphisms,
    compose,
    dadd,
    degrees_of_size,
    djoin,
    dle,
    dscale,
    dsub,
    enumerate_paths,
    is_suffix,
    ones,
    segment,
    unit,
    zero,
)
from .verdict import Verdict


class EventualPath:
    """An infinite path that is eventually a chain of blocks."""

    __slots__ = ("prefix", "graph", "_expansions")

    def __init__(self, prefix: Morphism):
        self.prefix = prefix
        self.graph = prefix.graph
        self._expansions = [prefix]

    @property
    def r(self) -> str:
        return self.prefix.r

    def _expanded(self, n: Degree) -> Morphism:
        """prefix·ρ·...·ρ with just enough blocks to reach degree n."""
        base = self.prefix.degree
        t = max([0] + [a - b for a, b in zip(n, base)])
        exp = self._expansions
        while len(exp) <= t:
            last = exp[-1]
            exp.append(compose(last, self.graph.block(last.s)))
        return exp[t]

    def segment(self, m: Degree, n: Degree) -> Morphism:
        """x(m, n)."""
        return segment(self._expanded(n), m, n)

    def shift(self, p: Degree) -> "EventualPath":
        """σ^p x."""
        full = self._expanded(p)
        return EventualPath(segment(full, p, full.degree))

    def prepend(self, lam: Morphism) -> "EventualPath":
        """λ·x."""
        return EventualPath(compose(lam, self.prefix))

    def agrees_upto(self, other: "EventualPath", n: Degree) -> bool:
        k = self.graph.k
        return self.segment(zero(k), n) == other.segment(zero(k), n)

    def __repr__(self) -> str:
        return f"EventualPath({self.prefix}·ρ^∞)"


def tail_query(x: EventualPath, m: Degree, n: Degree) -> Morphism:
    return x.segment(m, n)


class GroupoidElem:
    """(p z, d(p) - d(q), q z) with s(p) = s(q) = r(z)."""

    __slots__ = ("p", "q", "tail", "_x", "_y")

    def __init__(self, p: Morphism, q: Morphism, tail: EventualPath):
        if p._s != q._s or p.s != tail.r:
            raise NotComposable("need s(p) = s(q) = r(tail)")
        self.p = p
        self.q = q
        self.tail = tail
        self._x = None
        self._y = None

    @property
    def graph(self) -> KGraph:
        return self.p.graph

    @property
    def x(self) -> EventualPath:
        if self._x is None:
            self._x = self.tail.prepend(self.p)
        return self._x

    @property
    def y(self) -> EventualPath:
        if self._y is None:
            self._y = self.tail.prepend(self.q)
        return self._y

    @property
    def dtilde(self) -> tuple:
        return dsub(self.p.degree, self.q.degree)

    @property
    def is_unit(self) -> bool:
        return self.p == self.q

    def inverse(self) -> "GroupoidElem":
        return GroupoidElem(self.q, self.p, self.tail)

    def extend(self, t: Degree) -> "GroupoidElem":
        """Same element presented with the tail shifted by t."""
        z = self.tail
        piece = z.segment(zero(self.graph.k), t)
        return GroupoidElem(compose(self.p, piece), compose(self.q, piece), z.shift(t))

    def __repr__(self) -> str:
        return f"GroupoidElem({self.p}, {self.q}; {self.tail})"


class ComposableTuple:
    """Paths p_0..p_n over one tail; g_i = (p_{i-1} z, ., p_i z)."""

    def __init__(self, paths, tail: EventualPath):
        paths = tuple(paths)
        if len({p._s for p in paths}) > 1 or paths[0].s != tail.r:
            raise NotComposable("all paths must share the tail's range as source")
        self.paths = paths
        self.tail = tail

    def __len__(self) -> int:
        return len(self.paths) - 1

    def g(self, i: int) -> GroupoidElem:
        return GroupoidElem(self.paths[i - 1], self.paths[i], self.tail)

    def product(self, i: int, j: int) -> GroupoidElem:
        """g_i g_{i+1} ... g_j."""
        return GroupoidElem(self.paths[i - 1], self.paths[j], self.tail)

    def extend(self, t: Degree) -> "ComposableTuple":
        z = self.tail
        piece = z.segment(zero(z.graph.k), t)
        return ComposableTuple([compose(p, piece) for p in self.paths], z.shift(t))

    def __repr__(self) -> str:
        return f"ComposableTuple({', '.join(map(str, self.paths))}; {self.tail})"


def in_cylinder(g: GroupoidElem, mu: Morphism, nu: Morphism) -> bool:
    """Is g in Z(μ, ν)?  Decided on a finite window of the tail."""
    if mu._s != nu._s or dsub(mu.degree, nu.degree) != g.dtilde:
        return False
    if mu._r != g.p._r or nu._r != g.q._r:
        return False
    k = g.graph.k
    t = tuple(max(0, a - b) for a, b in zip(mu.degree, g.p.degree))
    piece = g.tail.segment(zero(k), t)
    X = compose(g.p, piece)
    Y = compose(g.q, piece)
    if segment(X, zero(k), mu.degree) != mu or segment(Y, zero(k), nu.degree) != nu:
        return False
    return segment(X, mu.degree, X.degree) == segment(Y, nu.degree, Y.degree)


def xpart(g: GroupoidElem):
    """(λ, s(λ)) if g lies in some Z(λ, s(λ)), else None."""
    m = g.dtilde
    if any(a < 0 for a in m):
        return None
    p = g.p
    if segment(p, m, p.degree) != g.q:
        return None
    lam = segment(p, zero(g.graph.k), m)
    return lam, g.graph.vertex(lam.s)


class PartitionP:
    """The canonical disjoint cover of the groupoid by cylinder sets."""

    def __init__(self, graph: KGraph):
        self.graph = graph
        self.members: list = []  # remainder cylinders (μ, ν) in enumeration order
        self._stage_members: list = []  # stage n -> {dtilde: [member index]}
        self._by_dtilde: dict = {}
        self._removed: dict = {}
        self._lock = threading.Lock()

    @property
    def stages(self) -> int:
        return len(self._stage_members)

    def _ensure(self, n: int) -> None:
        if len(self._stage_members) > n:
            return
        with self._lock:
            while len(self._stage_members) <= n:
                self._build_stage(len(self._stage_members))

    def _build_stage(self, n: int) -> None:
        g = self.graph
        found = []
        for a in range(n + 1):
            mus = [m for d in degrees_of_size(g.k, a) for m in enumerate_paths(g, d)]
            nus = [m for d in degrees_of_size(g.k, n - a) for m in enumerate_paths(g, d)]
            for mu in mus:
                for nu in nus:
                    if nu._s == mu._s and not is_suffix(nu, mu):
                        found.append((mu, nu))
        found.sort(key=lambda pair: (pair[0].key(), pair[1].key()))
        bucket: dict = {}
        for pair in found:
            idx = len(self.members)
            self.members.append(pair)
            dt = dsub(pair[0].degree, pair[1].degree)
            bucket.setdefault(dt, []).append(idx)
            self._by_dtilde.setdefault(dt, []).append(idx)
        self._stage_members.append(bucket)

    def first_cover(self, g: GroupoidElem) -> int:
        """Index of the first enumerated remainder cylinder containing g."""
        dt = g.dtilde
        n = 0
        while True:
            self._ensure(n)
            for idx in self._stage_members[n].get(dt, ()):
                mu, nu = self.members[idx]
                if in_cylinder(g, mu, nu):
                    return idx
            n += 1

    def _child_removed(self, piece: tuple, j: int) -> bool:
        """Does Z(μ_j, ν_j) swallow some child of ``piece`` at the join degree?"""
        key = (piece, j)
        got = self._removed.get(key)
        if got is None:
            mu1, nu1 = piece
            mu2, nu2 = self.members[j]
            got = False
            if mu1._r == mu2._r and nu1._r == nu2._r:
                top = djoin(mu1.degree, mu2.degree)
                for alpha in enumerate_paths(self.graph, dsub(top, mu1.degree), v=mu1.s):
                    if _child_inside(compose(mu1, alpha), compose(nu1, alpha), mu2, nu2):
                        got = True
                        break
            self._removed[key] = got
        return got

    def locate(self, g: GroupoidElem) -> tuple:
        """The partition member (μ_g, ν_g) containing g."""
        hit = xpart(g)
        if hit is not None:
            return hit
        i = self.first_cover(g)
        piece = self.members[i]
        for j in self._by_dtilde[g.dtilde]:
            if j >= i:
                break
            if self._child_removed(piece, j):
                mu1, nu1 = piece
                top = djoin(mu1.degree, self.members[j][0].degree)
                alpha = g.x.segment(mu1.degree, top)
                piece = (compose(mu1, alpha), compose(nu1, alpha))
        return piece


def _child_inside(mu: Morphism, nu: Morphism, mu2: Morphism, nu2: Morphism) -> bool:
    """Z(μ, ν) ⊆ Z(μ2, ν2), given d(μ) >= d(μ2) and equal degree shifts."""
    k = mu.graph.k
    if not (dle(mu2.degree, mu.degree) and dle(nu2.degree, nu.degree)):
        return False
    if segment(mu, zero(k), mu2.degree) != mu2 or segment(nu, zero(k), nu2.degree) != nu2:
        return False
    return segment(mu, mu2.degree, mu.degree) == segment(nu, nu2.degree, nu.degree)


class RefinedPartition:
    """Each member (μ, ν) of a base partition split into (μτ, ντ), d(τ) = e_1."""

    def __init__(self, base: PartitionP):
        self.base = base
        self.graph = base.graph

    def split(self, g: GroupoidElem) -> tuple:
        """((μ_g, ν_g), λ_g) with λ_g the path separating the two levels."""
        mu, nu = self.base.locate(g)
        e1 = unit(self.graph.k, 1)
        lam = g.x.segment(mu.degree, dadd(mu.degree, e1))
        return (mu, nu), lam

    def locate(self, g: GroupoidElem) -> tuple:
        (mu, nu), lam = self.split(g)
        return compose(mu, lam), compose(nu, lam)


@dataclass(frozen=True)
class ABC:
    alpha: Morphism
    beta: Morphism
    gamma: Morphism
    g: tuple
    h: tuple
    gh: tuple


def choose_abc(P, pair: ComposableTuple, extra: int = 0) -> ABC:
    """Paths α, β, γ with μ_g α = μ_gh γ, ν_h β = ν_gh γ and ν_g α = μ_h β.

    N is d(μ_g) ∨ d(μ_gh) ∨ (d(μ_h) + d̃(g)), raised by ``extra``·1_k to
    produce alternative valid choices.
    """
    if len(pair) != 2:
        raise NotComposable("choose_abc needs a composable pair")
    g, h, gh = pair.g(1), pair.g(2), pair.product(1, 2)
    mg, ng = P.locate(g)
    mh, nh = P.locate(h)
    mgh, ngh = P.locate(gh)
    dg = g.dtilde
    k = pair.tail.graph.k
    top = djoin(djoin(mg.degree, mgh.degree), dadd(mh.degree, dg))
    top = dadd(top, dscale(extra, ones(k)))
    x, y = g.x, h.x
    alpha = x.segment(mg.degree, top)
    gamma = x.segment(mgh.degree, top)
    beta = y.segment(mh.degree, dsub(top, dg))
    if not (compose(mg, alpha) == compose(mgh, gamma)
            and compose(nh, beta) == compose(ngh, gamma)
            and compose(ng, alpha) == compose(mh, beta)):
        raise AssertionError("α, β, γ fail their defining equations")
    return ABC(alpha, beta, gamma, (mg, ng), (mh, nh), (mgh, ngh))


def sigma_eval(c, P, pair: ComposableTuple, extra: int = 0):
    """σ_c(g, h) for the pair of a composable 2-tuple."""
    grp = c.group
    t = choose_abc(P, pair, extra)

    def term(located, path):
        mu, nu = located
        return grp.sub(c(mu, path), c(nu, path))

    return grp.sub(grp.add(term(t.g, t.alpha), term(t.h, t.beta)), term(t.gh, t.gamma))


def functor_1cocycle(f, g: GroupoidElem):
    """f(p) - f(q) for a functor f: the induced groupoid 1-cocycle."""
    return f.group.sub(f(g.p), f(g.q))


class DegreeFunctor:
    """λ ↦ d(λ) with values in Z^k (tuples); enough of the group API for f(p) - f(q)."""

    def __init__(self, graph: KGraph):
        self.graph = graph
        self.group = _TupleGroup(graph.k)

    def __call__(self, lam: Morphism):
        return lam.degree


class _TupleGroup:
    def __init__(self, k):
        self.k = k

    def zero(self):
        return (0,) * self.k

    def add(self, a, b):
        return dadd(a, b)

    def sub(self, a, b):
        return dsub(a, b)


# -- sampling and suites ----------------------------------------------------


class TupleSampler:
    """Seeded composable tuples over random eventual tails."""

    def __init__(self, graph: KGraph, max_len: int = 2, tail_len: int = 1):
        self.graph = graph
        morphs = all_morphisms(graph, max(max_len, tail_len))
        self.by_source: dict = {}
        self.by_range: dict = {}
        for lam in morphs:
            if len(lam) <= max_len:
                self.by_source.setdefault(lam._s, []).append(lam)
            if len(lam) <= tail_len:
                self.by_range.setdefault(lam._r, []).append(lam)

    def sample(self, rng: random.Random, n: int, unit_rate: float = 0.1) -> ComposableTuple:
        v = rng.randrange(len(self.graph.vertices))
        tail = EventualPath(rng.choice(self.by_range[v]))
        paths = []
        for _ in range(n + 1):
            if paths and rng.random() < unit_rate:
                paths.append(paths[-1])
            else:
                paths.append(rng.choice(self.by_source[v]))
        return ComposableTuple(paths, tail)


def sigma_identity_suite(c, P, *, n_triples: int = 500, seed: int = 0, max_len: int = 2,
                         coboundary_of=None) -> dict:
    """Groupoid 2-cocycle identity on seeded triples.

    With ``coboundary_of=b`` (so c = δb) also checks
    σ_c(g, h) = a(g) + a(h) - a(gh) with a(g) = b(μ_g) - b(ν_g).
    """
    rng = random.Random(seed)
    sampler = TupleSampler(P.graph, max_len)
    grp = c.group
    report = {}
    for i in range(n_triples):
        t = sampler.sample(rng, 3)
        p = t.paths
        z = t.tail
        s12 = sigma_eval(c, P, ComposableTuple((p[0], p[1], p[2]), z))
        s12_3 = sigma_eval(c, P, ComposableTuple((p[0], p[2], p[3]), z))
        s23 = sigma_eval(c, P, ComposableTuple((p[1], p[2], p[3]), z))
        s1_23 = sigma_eval(c, P, ComposableTuple((p[0], p[1], p[3]), z))
        if grp.add(s12, s12_3) != grp.add(s23, s1_23):
            report["cocycle_identity"] = Verdict(False, t, "σ_c identity fails", i + 1)
            break
    else:
        report["cocycle_identity"] = Verdict(True, None, "", n_triples)
    if coboundary_of is not None:
        b = coboundary_of

        def a(g):
            mu, nu = P.locate(g)
            return grp.sub(b(mu), b(nu))

        for i in range(n_triples):
            t = sampler.sample(rng, 2)
            g, h, gh = t.g(1), t.g(2), t.product(1, 2)
            want = grp.sub(grp.add(a(g), a(h)), a(gh))
            if sigma_eval(c, P, t) != want:
                report["coboundary_identity"] = Verdict(False, t, "σ_δb != δa", i + 1)
                break
        else:
            report["coboundary_identity"] = Verdict(True, None, "", n_triples)
    return report


def choice_independence(c, P, *, n_pairs: int = 200, seed: int = 0, max_len: int = 2) -> Verdict:
    """σ_c is unchanged by enlarging N and by re-presenting the tail."""
    rng = random.Random(seed)
    sampler = TupleSampler(P.graph, max_len)
    k = P.graph.k
    for i in range(n_pairs):
        t = sampler.sample(rng, 2)
        base = sigma_eval(c, P, t)
        if sigma_eval(c, P, t, extra=1) != base:
            return Verdict(False, t, "value depends on N", i + 1)
        shift = tuple(rng.randint(0, 2) for _ in range(k))
        if sigma_eval(c, P, t.extend(shift)) != base:
            return Verdict(False, (t, shift), "value depends on the presentation", i + 1)
    return Verdict(True, None, "", n_pairs)


def refine_compare(c, P, *, n_pairs: int = 200, seed: int = 0, max_len: int = 2) -> Verdict:
    """σ^P - σ^Q = b(g) + b(h) - b(gh) for Q the e_1-refinement of P."""
    rng = random.Random(seed)
    Q = RefinedPartition(P)
    sampler = TupleSampler(P.graph, max_len)
    grp = c.group

    def b(g):
        (mu, nu), lam = Q.split(g)
        return grp.sub(c(mu, lam), c(nu, lam))

    for i in range(n_pairs):
        t = sampler.sample(rng, 2)
        g, h, gh = t.g(1), t.g(2), t.product(1, 2)
        lhs = grp.sub(sigma_eval(c, P, t), sigma_eval(c, Q, t))
        rhs = grp.sub(grp.add(b(g), b(h)), b(gh))
        if lhs != rhs:
            return Verdict(False, t, "refinement identity fails", i + 1)
    return Verdict(True, None, "", n_pairs)
