import pytest

from kgcoh import catalog
from kgcoh.diagnostics import (
    APERIODIC,
    INCONCLUSIVE,
    PERIODIC,
    periodicity_diagnostics,
    reachable_from,
)
from kgcoh.errors import HasSources
from kgcoh.kgraph import Edge, Skeleton, compose, djoin, enumerate_paths, is_prefix, validate


def _has_common_extension(a, b):
    """Brute force: some path of degree d(a) ∨ d(b) extends both."""
    g = a.graph
    if a._r != b._r:
        return False
    top = djoin(a.degree, b.degree)
    return any(is_prefix(a, lam) and is_prefix(b, lam) for lam in enumerate_paths(g, top, v=a.r))


def test_anchor_verdicts():
    assert periodicity_diagnostics(catalog.b2(), (3,)).aperiodicity == APERIODIC
    rep = periodicity_diagnostics(catalog.t2(), (1, 1))
    assert rep.aperiodicity == PERIODIC
    assert [str(x) for x in rep.witness] == ["e", "v"]
    assert periodicity_diagnostics(catalog.cycle2(), (2,)).aperiodicity == PERIODIC
    assert periodicity_diagnostics(catalog.b2(), (0,)).aperiodicity == INCONCLUSIVE


@pytest.mark.parametrize("name,bound", [("B2", (3,)), ("B2xB2", (1, 1)), ("B2xZ/2", (2,)), ("TWIST2", (1, 1))])
def test_separators_really_separate(name, bound):
    rep = periodicity_diagnostics(catalog.get(name), bound)
    assert rep.aperiodicity == APERIODIC and rep.separators
    assert len(rep.separators) == rep.pairs_checked
    for (a, b), tau in rep.separators.items():
        assert not _has_common_extension(compose(a, tau), compose(b, tau))


@pytest.mark.parametrize("name,bound", [("T2", (1, 1)), ("CYCLE2", (2,)), ("B2*[1,1]", (1, 1))])
def test_periodic_witness_has_no_separator(name, bound):
    g = catalog.get(name)
    rep = periodicity_diagnostics(g, bound)
    if rep.aperiodicity != PERIODIC:
        pytest.fail("expected a periodic witness")
    a, b = rep.witness
    taus = []
    for d in _degrees_upto(bound):
        taus += enumerate_paths(g, d, v=a.s)
    assert taus
    assert all(_has_common_extension(compose(a, t), compose(b, t)) for t in taus)


def _degrees_upto(bound):
    out = [()]
    for n in bound:
        out = [d + (x,) for d in out for x in range(n + 1)]
    return out


def test_cofinal_catalog_graphs():
    for name in ("B2", "T2", "CYCLE2", "B2xZ/2"):
        rep = periodicity_diagnostics(catalog.get(name), (1,) * catalog.get(name).k)
        assert rep.cofinal and rep.cofinality_witness is None


def test_two_loops_not_cofinal():
    # u and w each carry a loop; c runs from w into u, so nothing leaves u
    edges = (Edge("a", 1, "u", "u"), Edge("b", 1, "w", "w"), Edge("c", 1, "w", "u"))
    g = validate(Skeleton(("u", "w"), edges), [], 1)
    rep = periodicity_diagnostics(g, (2,))
    assert not rep.cofinal
    prefix, missing = rep.cofinality_witness
    assert missing == "w"
    assert reachable_from(g, 0) == {0}
    assert reachable_from(g, 1) == {0, 1}


def test_sources_rejected():
    edges = (Edge("a", 1, "u", "u"), Edge("c", 1, "w", "u"))
    g = validate(Skeleton(("u", "w"), edges), [], 1)
    with pytest.raises(HasSources) as err:
        periodicity_diagnostics(g, (1,))
    assert "w" in str(err.value)
