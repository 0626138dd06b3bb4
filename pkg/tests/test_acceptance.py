"""One test per acceptance criterion; each prints a single PASS/FAIL line.

All checks are exact (integer, modular or Fraction arithmetic), so the
tolerance is equality.
"""

import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from kgcoh import catalog
from kgcoh.bridge import (
    Cat1Evaluator,
    CoboundaryCocycle,
    ColouredWord,
    c_phi,
    cat2_eval_and_check,
    cub_class_equal,
    restrict_to_squares,
    shuffle,
)
from kgcoh.cli import main
from kgcoh.coeffs import IntegersMod, RationalsMod1
from kgcoh.cubical import CubicalCochain, boundary_matrix, cub_coboundary, cubes, homology, is_cub_2cocycle
from kgcoh.extensions import ext_law_suite
from kgcoh.groupoid import PartitionP, choice_independence, refine_compare, sigma_identity_suite
from kgcoh.kgraph import compose
from kgcoh.sampling import MorphismPool, random_edge_word
from kgcoh.snf import matmul

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def verdict(capsys):
    def report(n, label, ok, detail=""):
        with capsys.disabled():
            tail = f" - {detail}" if detail and not ok else ""
            print(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}: {label}{tail}")
        assert ok, detail
    return report


def _cocycle(g, grp, rng):
    phi = CubicalCochain.random(g, 2, grp, rng)
    while not is_cub_2cocycle(phi):
        phi = CubicalCochain.random(g, 2, grp, rng)
    return phi


def test_01_boundary_squares_to_zero(verdict):
    bad = []
    for name in catalog.BUILDERS:
        g = catalog.get(name)
        for r in range(1, g.k):
            low, high = boundary_matrix(g, r).entries, boundary_matrix(g, r + 1).entries
            if low and high and any(x for row in matmul(low, high) for x in row):
                bad.append((name, r))
    verdict(1, f"∂∂ = 0 on {len(catalog.BUILDERS)} catalog graphs", not bad, str(bad))


def test_02_homology_anchors(verdict):
    import sympy
    from sympy.matrices.normalforms import invariant_factors

    b = [str(homology(catalog.b2(), r)) for r in (0, 1)]
    t = [homology(catalog.t2(), r) for r in range(3)]
    # oracle: ranks over Q and sympy invariant factors
    g = catalog.t2()
    oracle = []
    for r in range(3):
        n = len(cubes(g, r))
        low = boundary_matrix(g, r).entries if r else []
        high = boundary_matrix(g, r + 1).entries
        rank = lambda m: sympy.Matrix(m).rank() if m and m[0] else 0  # noqa: E731
        tors = [] if not (high and high[0]) else [
            int(x) for x in invariant_factors(sympy.Matrix(high), domain=sympy.ZZ) if abs(int(x)) > 1]
        oracle.append((n - rank(low) - rank(high), tuple(tors)))
    ok = b == ["Z", "Z^2"] and [(h.free_rank, h.torsion) for h in t] == oracle == [(1, ()), (2, ()), (1, ())]
    verdict(2, f"H(B2) = {b}, H(T2) = {[str(h) for h in t]}", ok)


def test_03_shuffle_confluence(verdict):
    rng = random.Random(2024)
    total = 0
    failures = []
    for name in catalog.BUILDERS:
        g = catalog.get(name)
        if g.k < 2:
            phi = CubicalCochain.zero(g, 2, RationalsMod1())
        else:
            phi = _cocycle(g, RationalsMod1(), rng)
        for _ in range(1000):
            w = ColouredWord(g, random_edge_word(g, rng, rng.randint(1, 7)))
            a = shuffle(w, phi, strategy="bubble")
            b = shuffle(w, phi, strategy="random", rng=rng)
            total += 1
            if a != b:
                failures.append((name, w))
    verdict(3, f"bubble and random-move shuffles agree on {total} words", not failures, str(failures[:3]))


def test_04_c_phi_is_a_cocycle(verdict):
    rng = random.Random(4)
    t = catalog.t2()
    theta = CubicalCochain.from_mapping(t, 2, RationalsMod1(), {"e.f": Fraction(1, 4)})
    cube = _cocycle(catalog.cube3(), RationalsMod1(), rng)
    checked = 0
    results = []
    for phi in (theta, cube):
        v = cat2_eval_and_check(c_phi(phi), max_len=2, n_random=500, random_len=4, seed=4)
        checked += v.checked
        results.append(bool(v))
    verdict(4, f"cocycle identity on {checked} triples (T2, CUBE3)", all(results))


def test_05_values_on_edges_and_preferred_pairs(verdict):
    rng = random.Random(5)
    bad = []
    edge_pairs = preferred = 0
    for name in ("T2", "CUBE3", "TWIST2", "B2xB2", "TWIST2xB2"):
        g = catalog.get(name)
        phi = _cocycle(g, IntegersMod(7), rng)
        c = c_phi(phi)
        edges = [g.edge(e.id) for e in g.edges]
        for f, h in itertools.product(edges, edges):
            if f._s != h._r:
                continue
            edge_pairs += 1
            cf, ch = g.colour[f.word[0]], g.colour[h.word[0]]
            want = phi(compose(f, h)) if cf > ch else 0
            if c(f, h) != want:
                bad.append((name, f, h))
        for mu, nu in MorphismPool(g, 3).composable(2):
            if mu.word + nu.word == compose(mu, nu).word:
                preferred += 1
                if c(mu, nu) != 0:
                    bad.append((name, mu, nu))
    verdict(5, f"{edge_pairs} edge pairs and {preferred} preferred pairs", not bad, str(bad[:3]))


def test_06_round_trips(verdict):
    t = catalog.t2()
    grp = IntegersMod(4)
    n = len(cubes(t, 2))
    count = 0
    ok = True
    for vals in itertools.product(range(4), repeat=n):
        phi = CubicalCochain(t, 2, grp, vals)
        if is_cub_2cocycle(phi):
            count += 1
            ok &= restrict_to_squares(c_phi(phi)) == phi
    rng = random.Random(6)
    pool = MorphismPool(t, 4)
    for _ in range(200):
        p1 = CubicalCochain.random(t, 2, grp, rng)
        p2 = CubicalCochain.random(t, 2, grp, rng)
        mu, nu = pool.random_composable(rng, 2)
        ok &= c_phi(p1 + p2)(mu, nu) == grp.add(c_phi(p1)(mu, nu), c_phi(p2)(mu, nu))
    verdict(6, f"φ_(c_φ) = φ for all {count} cocycles; additivity on 200 pairs", ok and count == 4 ** n)


def test_07_coboundaries_map_to_coboundaries(verdict):
    rng = random.Random(7)
    ok = True
    runs = 0
    for name, n in (("T2", 4), ("TWIST2", 5)):
        g = catalog.get(name)
        grp = IntegersMod(n)
        pool = MorphismPool(g, 4)
        for _ in range(50):
            f = CubicalCochain.random(g, 1, grp, rng)
            values = dict(zip(cubes(g, 1), f.values))
            edge_val = {str(e): v for e, v in values.items()}

            def minus_b(lam, edge_val=edge_val, grp=grp):
                # b sums f over the edges of the preferred word λ̄
                return grp.neg(grp.sum(edge_val[e] for e in lam.edges))

            c = c_phi(cub_coboundary(f))
            dg = CoboundaryCocycle(Cat1Evaluator(g, grp, minus_b))
            for _ in range(200):
                mu, nu = pool.random_composable(rng, 2)
                ok &= c(mu, nu) == dg(mu, nu)
            runs += 1
    verdict(7, f"c_(δf) = δg, g = -b(λ̄), for {runs} cochains × 200 pairs (T2/Z4, TWIST2/Z5)", ok)


def test_08_extension_laws(verdict):
    rng = random.Random(8)
    bad = {}
    for name, grp in (("T2", RationalsMod1()), ("TWIST2", IntegersMod(4)), ("CUBE3", IntegersMod(3))):
        g = catalog.get(name)
        cs = [c_phi(_cocycle(g, grp, rng)), c_phi(_cocycle(g, grp, rng))]
        report = ext_law_suite(g, grp, cs, n_pairs=100, seed=8)
        bad.update({f"{name}:{k}": v.detail for k, v in report.items() if not v})
    verdict(8, "sections, unit/inverse/commutativity maps and a_of additivity", not bad, str(bad))


def test_09_sigma_suite(verdict):
    t = catalog.t2()
    P = PartitionP(t)
    theta = c_phi(CubicalCochain.from_mapping(t, 2, RationalsMod1(), {"e.f": Fraction(1, 4)}))
    ident = sigma_identity_suite(theta, P, n_triples=500, seed=9)
    choice = choice_independence(theta, P, n_pairs=200, seed=9)
    refine = refine_compare(theta, P, n_pairs=200, seed=9)
    grp = IntegersMod(5)
    r = random.Random(9)
    table = {}

    def b(lam):
        if lam not in table:
            table[lam] = grp.random(r)
        return table[lam]

    b = Cat1Evaluator(t, grp, b)
    cob = sigma_identity_suite(CoboundaryCocycle(b), P, n_triples=500, seed=9, coboundary_of=b)
    ok = all(ident.values()) and choice and refine and all(cob.values())
    verdict(9, "σ_c cocycle, choice independence, coboundary and refinement identities", ok)


def test_10_nontrivial_class_on_t2(verdict):
    t = catalog.t2()
    grp = IntegersMod(2)
    sq = CubicalCochain.from_mapping(t, 2, grp, {"e.f": 1})
    v = cub_class_equal(CubicalCochain.zero(t, 2, grp), sq)
    verdict(10, "class-equal(0, φ_sq=1) over Z/2 on T2 is false", not v)


GOLDEN_RUNS = {
    "validate": ["validate", "--graph", str(ROOT / "data" / "t2.kg")],
    "homology": ["homology", "--graph", str(ROOT / "data" / "cube3.kg")],
    "bridge-roundtrip": ["bridge-roundtrip", "--graph", str(ROOT / "data" / "t2.kg"),
                         "--phi", str(ROOT / "data" / "theta.cc")],
    "sigma-check": ["sigma-check", "--graph", str(ROOT / "data" / "t2.kg"),
                    "--phi", str(ROOT / "data" / "theta.cc"), "--triples", "40", "--seed", "3"],
}


def test_11_cli_golden_files(verdict, capsys):
    mismatched = []
    for name, argv in GOLDEN_RUNS.items():
        code = main(argv + ["--format", "structured"])
        out = capsys.readouterr().out
        if code != 0 or out != (GOLDEN / f"{name}.json").read_text(encoding="utf-8"):
            mismatched.append(name)
    verdict(11, f"{len(GOLDEN_RUNS)} structured reports match byte-for-byte", not mismatched, str(mismatched))
