import random

import pytest
from hypothesis import given, strategies as st

from kgcoh import catalog
from kgcoh.bridge import Cat1Evaluator, CoboundaryCocycle, ZeroCocycle, c_phi
from kgcoh.coeffs import Integers, IntegersMod
from kgcoh.cubical import CubicalCochain, Functor1, is_cub_2cocycle
from kgcoh.errors import NotComposable
from kgcoh.groupoid import (
    ComposableTuple,
    DegreeFunctor,
    EventualPath,
    GroupoidElem,
    PartitionP,
    RefinedPartition,
    TupleSampler,
    choice_independence,
    choose_abc,
    functor_1cocycle,
    in_cylinder,
    refine_compare,
    sigma_eval,
    sigma_identity_suite,
    tail_query,
    xpart,
)
from kgcoh.kgraph import compose, dadd, dsub, mce, ones, zero

GRAPHS = ["B2", "T2", "TWIST2", "CYCLE2", "B2xB2"]


def _window_oracle(g, mu, nu, window=6):
    """Z(μ, ν) membership by comparing long finite windows of x and y."""
    x, y = g.x, g.y
    k = g.graph.k
    if dsub(mu.degree, nu.degree) != g.dtilde:
        return False
    if x.segment(zero(k), mu.degree) != mu or y.segment(zero(k), nu.degree) != nu:
        return False
    w = tuple([window] * k)
    return x.shift(mu.degree).agrees_upto(y.shift(nu.degree), w)


def _elements(name, n, seed=0, max_len=2):
    g = catalog.get(name)
    rng = random.Random(seed)
    sampler = TupleSampler(g, max_len=max_len, tail_len=2)
    return [sampler.sample(rng, 1, unit_rate=0.15).g(1) for _ in range(n)]


# -- eventual paths ----------------------------------------------------------


def test_tail_query_examples():
    b = catalog.b2()
    x = EventualPath(b.path(["f2"]))
    assert str(tail_query(x, (0,), (3,))) == "f2.f1.f1"
    assert str(tail_query(x, (1,), (2,))) == "f1"
    t = catalog.t2()
    z = EventualPath(t.vertex("v"))
    assert str(tail_query(z, (0, 0), (2, 1))) == "e.e.f"
    c = catalog.cycle2()
    y = EventualPath(c.vertex("u"))
    assert [str(tail_query(y, (i,), (i + 1,))) for i in range(4)] == ["y", "x", "y", "x"]


@pytest.mark.parametrize("name", GRAPHS + ["CUBE3"])
def test_shift_commutes_with_segments(name):
    g = catalog.get(name)
    rng = random.Random(1)
    sampler = TupleSampler(g, max_len=2, tail_len=3)
    k = g.k
    for _ in range(30):
        x = sampler.sample(rng, 0).tail
        p = tuple(rng.randint(0, 2) for _ in range(k))
        m = tuple(rng.randint(0, 2) for _ in range(k))
        n = dadd(m, tuple(rng.randint(0, 2) for _ in range(k)))
        assert x.shift(p).segment(m, n) == x.segment(dadd(p, m), dadd(p, n))
        assert x.segment(zero(k), n) == compose(x.segment(zero(k), m), x.segment(m, n))


def test_groupoid_elem_requires_common_source():
    c = catalog.cycle2()
    with pytest.raises(NotComposable):
        GroupoidElem(c.edge("x"), c.edge("y"), EventualPath(c.vertex("u")))


@pytest.mark.parametrize("name", GRAPHS)
def test_extend_is_the_same_element(name):
    rng = random.Random(3)
    for g in _elements(name, 30):
        t = tuple(rng.randint(0, 2) for _ in range(g.graph.k))
        h = g.extend(t)
        w = tuple([5] * g.graph.k)
        assert h.dtilde == g.dtilde
        assert h.x.agrees_upto(g.x, w) and h.y.agrees_upto(g.y, w)
        assert h.inverse().dtilde == tuple(-a for a in g.dtilde)


# -- cylinders ---------------------------------------------------------------


@pytest.mark.parametrize("name", GRAPHS)
def test_in_cylinder_against_window_oracle(name):
    from kgcoh.kgraph import all_morphisms

    graph = catalog.get(name)
    morphs = all_morphisms(graph, 2)
    hits = 0
    for g in _elements(name, 25, seed=4):
        for mu in morphs:
            for nu in morphs:
                if mu._s != nu._s:
                    continue
                got = in_cylinder(g, mu, nu)
                assert got == _window_oracle(g, mu, nu)
                hits += got
    assert hits


@pytest.mark.parametrize("name", GRAPHS)
def test_cylinder_intersection_is_union_over_mce(name):
    # Z(μ1,ν1) ∩ Z(μ2,ν2) is the union of Z(μ1α, ν1α) over μ1α = μ2β in
    # MCE(μ1, μ2) with ν1α = ν2β
    from kgcoh.kgraph import all_morphisms, segment

    graph = catalog.get(name)
    morphs = all_morphisms(graph, 1)
    cyl = [(m, n) for m in morphs for n in morphs if m._s == n._s]
    rng = random.Random(5)
    elems = _elements(name, 40, seed=6)
    for _ in range(60):
        (m1, n1), (m2, n2) = rng.choice(cyl), rng.choice(cyl)
        if dsub(m1.degree, n1.degree) != dsub(m2.degree, n2.degree):
            continue
        pieces = []
        for lam in mce(m1, m2):
            a = segment(lam, m1.degree, lam.degree)
            b = segment(lam, m2.degree, lam.degree)
            if n1._s == a._r and n2._s == b._r and compose(n1, a) == compose(n2, b):
                pieces.append((lam, compose(n1, a)))
        for g in elems:
            both = in_cylinder(g, m1, n1) and in_cylinder(g, m2, n2)
            assert both == any(in_cylinder(g, m, n) for m, n in pieces)


# -- the partition ------------------------------------------------------------


def test_locate_examples():
    b = catalog.b2()
    P = PartitionP(b)
    z = EventualPath(b.vertex("v"))
    f1, f2 = b.edge("f1"), b.edge("f2")
    unit = GroupoidElem(f1, f1, z)
    assert [str(x) for x in P.locate(unit)] == ["v", "v"]
    g = GroupoidElem(f2, b.vertex("v"), EventualPath(f1))
    assert xpart(g) is not None and [str(x) for x in P.locate(g)] == ["f2", "v"]
    h = GroupoidElem(f2, f1, z)
    mu, nu = P.locate(h)
    assert in_cylinder(h, mu, nu) and str(mu) == "f2" and str(nu) == "f1"


@pytest.mark.parametrize("name", GRAPHS)
def test_located_pieces_contain_the_element(name):
    P = PartitionP(catalog.get(name))
    Q = RefinedPartition(P)
    for g in _elements(name, 60, seed=7):
        mu, nu = P.locate(g)
        assert in_cylinder(g, mu, nu)
        assert in_cylinder(g, *Q.locate(g))


@pytest.mark.parametrize("name", GRAPHS)
def test_pieces_are_disjoint(name):
    # every element of a located piece locates back to that piece, so
    # distinct pieces cannot meet
    graph = catalog.get(name)
    P = PartitionP(graph)
    rng = random.Random(8)
    sampler = TupleSampler(graph, max_len=2, tail_len=2)
    from kgcoh.kgraph import enumerate_paths

    for g in _elements(name, 25, seed=9):
        mu, nu = P.locate(g)
        for _ in range(6):
            d = tuple(rng.randint(0, 1) for _ in range(graph.k))
            alphas = enumerate_paths(graph, d, v=mu.s)
            alpha = rng.choice(alphas)
            tail = EventualPath(rng.choice(sampler.by_range[alpha._s]))
            other = GroupoidElem(compose(mu, alpha), compose(nu, alpha), tail)
            assert P.locate(other) == (mu, nu)


@pytest.mark.parametrize("name", GRAPHS)
def test_location_is_presentation_invariant(name):
    P = PartitionP(catalog.get(name))
    rng = random.Random(10)
    for g in _elements(name, 30, seed=11):
        t = tuple(rng.randint(0, 2) for _ in range(g.graph.k))
        assert P.locate(g.extend(t)) == P.locate(g)


# -- σ_c ---------------------------------------------------------------------


def _cocycle(graph, grp, seed):
    rng = random.Random(seed)
    phi = CubicalCochain.random(graph, 2, grp, rng)
    while not is_cub_2cocycle(phi):
        phi = CubicalCochain.random(graph, 2, grp, rng)
    return c_phi(phi)


def _random_b(graph, grp, seed):
    rng = random.Random(seed)
    table = {}

    def fn(lam):
        if lam not in table:
            table[lam] = grp.random(rng)
        return table[lam]

    return Cat1Evaluator(graph, grp, fn)


def test_choose_abc_equations_hold_for_larger_n():
    t = catalog.t2()
    P = PartitionP(t)
    rng = random.Random(0)
    sampler = TupleSampler(t)
    for _ in range(40):
        pair = sampler.sample(rng, 2)
        for extra in (0, 1, 2):
            abc = choose_abc(P, pair, extra)
            assert compose(abc.g[0], abc.alpha) == compose(abc.gh[0], abc.gamma)
    with pytest.raises(NotComposable):
        choose_abc(P, sampler.sample(rng, 3))


def test_sigma_vanishes_on_units_and_for_zero():
    t = catalog.t2()
    P = PartitionP(t)
    grp = IntegersMod(4)
    c = _cocycle(t, grp, 1)
    rng = random.Random(2)
    sampler = TupleSampler(t)
    z = ZeroCocycle(t, grp)
    for _ in range(40):
        pair = sampler.sample(rng, 2)
        p = pair.paths
        assert sigma_eval(z, P, pair) == 0
        assert sigma_eval(c, P, ComposableTuple((p[0], p[0], p[1]), pair.tail)) == 0
        assert sigma_eval(c, P, ComposableTuple((p[0], p[1], p[1]), pair.tail)) == 0


def test_sigma_nonzero_somewhere_on_t2():
    t = catalog.t2()
    P = PartitionP(t)
    c = c_phi(CubicalCochain.from_mapping(t, 2, IntegersMod(4), {"e.f": 1}))
    rng = random.Random(3)
    sampler = TupleSampler(t)
    assert any(sigma_eval(c, P, sampler.sample(rng, 2)) for _ in range(200))


@pytest.mark.parametrize("name", ["T2", "TWIST2", "B2xB2", "B2*[1,1]", "CUBE3"])
def test_sigma_is_a_groupoid_cocycle(name):
    graph = catalog.get(name)
    P = PartitionP(graph)
    c = _cocycle(graph, IntegersMod(6), 4)
    report = sigma_identity_suite(c, P, n_triples=80, seed=1)
    assert all(report.values())
    assert choice_independence(c, P, n_pairs=40, seed=2)
    assert refine_compare(c, P, n_pairs=40, seed=3)


@pytest.mark.parametrize("name", ["B2", "T2", "TWIST2", "CYCLE2", "B2xZ/2"])
def test_sigma_of_a_coboundary_is_a_coboundary(name):
    graph = catalog.get(name)
    grp = IntegersMod(5)
    b = _random_b(graph, grp, 6)
    report = sigma_identity_suite(CoboundaryCocycle(b), PartitionP(graph), n_triples=60,
                                  seed=4, coboundary_of=b)
    assert all(report.values())


@given(st.integers(0, 10 ** 6))
def test_sigma_identity_random_seeds(seed):
    t = catalog.twist2()
    c = _cocycle(t, Integers(), seed)
    assert all(sigma_identity_suite(c, PartitionP(t), n_triples=15, seed=seed).values())


# -- 1-cocycles from functors ----------------------------------------------


def test_degree_functor_gives_dtilde():
    for name in GRAPHS:
        f = DegreeFunctor(catalog.get(name))
        for g in _elements(name, 20, seed=12):
            assert functor_1cocycle(f, g) == g.dtilde


def test_functor_example_on_b2():
    b = catalog.b2()
    F = Functor1(b, Integers(), {"f1": 1, "f2": 0})
    g = GroupoidElem(b.edge("f1"), b.vertex("v"), EventualPath(b.edge("f1")))
    assert functor_1cocycle(F, g) == 1
    h = GroupoidElem(b.edge("f2"), b.edge("f1"), EventualPath(b.vertex("v")))
    assert functor_1cocycle(F, h) == -1


@pytest.mark.parametrize("name", ["B2", "T2", "CYCLE2"])
def test_functor_cocycle_is_additive(name):
    graph = catalog.get(name)
    rng = random.Random(13)
    F = Functor1(graph, Integers(), {e.id: rng.randint(-3, 3) for e in graph.edges})
    sampler = TupleSampler(graph)
    for _ in range(50):
        t = sampler.sample(rng, 2)
        lhs = functor_1cocycle(F, t.product(1, 2))
        assert lhs == functor_1cocycle(F, t.g(1)) + functor_1cocycle(F, t.g(2))
        assert functor_1cocycle(F, t.g(1).extend(ones(graph.k))) == functor_1cocycle(F, t.g(1))
