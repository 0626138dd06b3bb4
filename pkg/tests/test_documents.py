import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from kgcoh import catalog
from kgcoh.bridge import CoboundaryCocycle, CubicalCocycle, cat2_eval_and_check
from kgcoh.coeffs import IntegersMod, RationalsMod1
from kgcoh.cubical import CubicalCochain
from kgcoh.documents import (
    cochain_to_doc,
    cubical_to_document,
    emit,
    emit_graph,
    graph_to_doc,
    parse,
    parse_cochain,
    parse_graph,
)
from kgcoh.errors import IncompleteSquares, ParseError, ValidationError

DATA = Path(__file__).resolve().parent.parent / "data"
GRAPH_FILES = sorted(DATA.glob("*.kg"))
COCHAIN_FILES = sorted(DATA.glob("*.cc"))


@pytest.mark.parametrize("path", GRAPH_FILES, ids=lambda p: p.name)
def test_graph_files_round_trip_byte_for_byte(path):
    text = path.read_text(encoding="utf-8")
    assert emit_graph(parse_graph(path)) == text


@pytest.mark.parametrize("path", COCHAIN_FILES, ids=lambda p: p.name)
def test_cochain_files_round_trip_byte_for_byte(path):
    text = path.read_text(encoding="utf-8")
    assert emit(cochain_to_doc(parse_cochain(path))) == text


@pytest.mark.parametrize("name", list(catalog.BUILDERS))
def test_catalog_graphs_survive_serialisation(name):
    g = catalog.get(name)
    text = emit_graph(g)
    h = parse_graph(text)
    assert emit_graph(h) == text
    assert graph_to_doc(h) == json.loads(text)
    assert [str(b) for b in map(h.block, h.vertices)] == [str(b) for b in map(g.block, g.vertices)]


def test_t2_file_matches_catalog():
    assert emit_graph(catalog.t2()) == (DATA / "t2.kg").read_text(encoding="utf-8")


def _t2_doc(**changes):
    doc = graph_to_doc(catalog.t2())
    doc.update(changes)
    return emit(doc)


def test_colour_out_of_range_is_a_parse_error_with_line():
    doc = graph_to_doc(catalog.t2())
    doc["edges"][1]["colour"] = 3
    text = emit(doc)
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert "colour 3" in str(err.value)
    want = next(i for i, line in enumerate(text.splitlines(), 1) if '"f"' in line)
    assert err.value.line == want


def test_malformed_documents():
    with pytest.raises(ParseError) as err:
        parse_graph('{\n  "k": 2,\n  "vertices": [\n}')
    assert err.value.line == 4
    with pytest.raises(ParseError):
        parse_graph("[1, 2]")
    with pytest.raises(ParseError):
        parse_graph(_t2_doc(colour_map={}))
    with pytest.raises(ParseError):
        parse_graph(_t2_doc(k=-1))
    with pytest.raises(ParseError):
        parse_graph(_t2_doc(squares=[["e", "f", "f"]]))
    with pytest.raises(ParseError):
        parse_graph(_t2_doc(type="cochain"))


def test_invalid_graph_is_a_validation_error():
    with pytest.raises(IncompleteSquares):
        parse_graph(_t2_doc(squares=[]))
    with pytest.raises(ValidationError):
        parse_graph(_t2_doc(vertices=["v", "e"]))


def test_cochain_documents():
    cd = parse_cochain(DATA / "theta.cc")
    assert isinstance(cd.coeff, RationalsMod1) and cd.values == {"e.f": Fraction(1, 4)}
    c = cd.cocycle(catalog.t2())
    assert isinstance(c, CubicalCocycle)
    cob = parse_cochain(DATA / "t2_coboundary.cc").cocycle(catalog.t2())
    assert isinstance(cob, CoboundaryCocycle) and cat2_eval_and_check(cob, n_random=50)
    t = catalog.t2()
    assert cob(t.edge("e"), t.edge("f")) == (1 + 0 - 3) % 4
    assert parse_cochain(DATA / "b2_functor.cc").cocycle(catalog.b2()) is None
    assert parse(DATA / "b2_functor.cc").kind == "functor1"
    assert parse(DATA / "b2.kg").k == 1


def test_cochain_errors():
    base = {"type": "cochain", "coeff": "Z/4", "kind": "cubical2", "values": {"e.f": 1}}
    for change in ({"coeff": "Z/0"}, {"kind": "cubical3"}, {"values": {"e.f": 4}},
                   {"values": {"e.f": "1/2"}}, {"values": {"e.f": True}}, {"values": []}):
        with pytest.raises(ParseError):
            parse_cochain(emit({**base, **change}))
    with pytest.raises(ParseError):
        parse_cochain(emit({**base, "coeff": "Q/Z", "values": {"e.f": "5/4"}}))
    with pytest.raises(ValidationError):
        parse_cochain(emit({**base, "values": {"e": 1}})).cochain(catalog.t2())
    with pytest.raises(ValidationError):
        parse_cochain(emit({**base, "kind": "functor1", "values": {"g": 1}})).cochain(catalog.t2())


@given(st.integers(0, 10 ** 6), st.sampled_from(["TWIST2", "B2xB2", "CUBE3"]))
def test_cubical_cochain_round_trip(seed, name):
    g = catalog.get(name)
    rng = random.Random(seed)
    for grp in (IntegersMod(5), RationalsMod1()):
        phi = CubicalCochain.random(g, 2, grp, rng)
        text = emit(cochain_to_doc(cubical_to_document(phi)))
        back = parse_cochain(text)
        assert back.cochain(g) == phi
        assert emit(cochain_to_doc(back)) == text
