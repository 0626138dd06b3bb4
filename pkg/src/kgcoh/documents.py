"""JSON documents for graphs and cochains.

Serialisation is canonical: sorted keys, two-space indent, trailing
newline, edges sorted by id and squares by their preferred word.  Values in
Q/Z are written as ``"p/q"`` strings.

Graph document::

    {"type": "graph", "k": 2, "vertices": ["v"],
     "edges": [{"id": "e", "colour": 1, "source": "v", "range": "v"}, ...],
     "squares": [["e", "f", "f", "e"]],
     "blocks": {"v": ["e", "f"]}}            # optional

Cochain document::

    {"type": "cochain", "coeff": "Q/Z", "kind": "cubical2",
     "values": {"e.f": "1/4"}}

``kind`` is ``cubical2`` (values on squares, keyed by preferred word),
``functor1`` (values on edges) or ``cat-coboundary`` (a finitely supported
1-cochain keyed by morphism words; its coboundary is the cocycle).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bridge import Cat1Evaluator, CoboundaryCocycle, c_phi
from .coeffs import CoeffGroup, IntegersMod, RationalsMod1, parse_coeff
from .cubical import CubicalCochain, Functor1, cube_index
from .errors import KGCohError, ParseError, ValidationError
from .kgraph import Edge, KGraph, Skeleton, validate

COCHAIN_KINDS = ("cubical2", "functor1", "cat-coboundary")


def _line_of(text: str, token: str) -> int:
    needle = json.dumps(token, ensure_ascii=False)
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return 0


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    if not isinstance(doc, dict):
        raise ParseError(1, "document must be a JSON object")
    return doc


def _read(source) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if isinstance(source, str) and "\n" not in source and not source.lstrip().startswith(("{", "[")):
        return Path(source).read_text(encoding="utf-8")
    return source


def parse_graph(source, name: str | None = None) -> KGraph:
    """Parse a graph document (path or text) into a validated KGraph."""
    text = _read(source)
    doc = _load(text)
    if doc.get("type", "graph") != "graph":
        raise ParseError(_line_of(text, "type"), "not a graph document")
    unknown = set(doc) - {"type", "k", "vertices", "edges", "squares", "blocks", "name"}
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(_line_of(text, key), f"unknown field {key!r}")
    k = doc.get("k")
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ParseError(_line_of(text, "k"), "k must be a nonnegative integer")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ParseError(_line_of(text, "vertices"), "vertices must be a list of strings")
    edges = []
    for rec in doc.get("edges", []):
        if not isinstance(rec, dict) or set(rec) != {"id", "colour", "source", "range"}:
            raise ParseError(_line_of(text, "edges"), f"bad edge record {rec!r}")
        colour = rec["colour"]
        if not isinstance(colour, int) or isinstance(colour, bool) or not 1 <= colour <= k:
            raise ParseError(_line_of(text, rec["id"]), f"edge {rec['id']} has colour {colour} outside 1..{k}")
        edges.append(Edge(rec["id"], colour, rec["source"], rec["range"]))
    squares = doc.get("squares", [])
    if not isinstance(squares, list) or not all(isinstance(s, list) and len(s) == 4 for s in squares):
        raise ParseError(_line_of(text, "squares"), "squares must be a list of 4-element lists")
    blocks = doc.get("blocks")
    if blocks is not None and not isinstance(blocks, dict):
        raise ParseError(_line_of(text, "blocks"), "blocks must map vertices to edge lists")
    try:
        return validate(Skeleton(tuple(vertices), tuple(edges)), squares, k,
                        blocks=blocks, name=name or doc.get("name"))
    except ValidationError:
        raise
    except KGCohError as exc:
        raise ValidationError(str(exc)) from exc


def graph_to_doc(g: KGraph) -> dict:
    doc = {
        "type": "graph",
        "k": g.k,
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "colour": e.colour, "source": e.source, "range": e.range} for e in g.edges],
        "squares": [list(sq) for sq in g.squares],
    }
    if g.block_overrides:
        doc["blocks"] = {v: list(ids) for v, ids in g.block_overrides.items()}
    return doc


def emit(doc: dict) -> str:
    """Canonical JSON text."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_graph(g: KGraph) -> str:
    return emit(graph_to_doc(g))


@dataclass
class CochainDocument:
    coeff: CoeffGroup
    kind: str
    values: dict  # raw keys -> coerced group elements

    def cochain(self, g: KGraph):
        """The in-memory object: CubicalCochain, Functor1 or Cat1Evaluator."""
        try:
            if self.kind == "cubical2":
                index = cube_index(g, 2)
                for key in self.values:
                    if g.parse_morphism(key) not in index:
                        raise ValidationError(f"{key} is not a square")
                return CubicalCochain.from_mapping(g, 2, self.coeff, self.values)
            if self.kind == "functor1":
                for key in self.values:
                    if key not in g._eidx:
                        raise ValidationError(f"{key} is not an edge")
                return Functor1(g, self.coeff, self.values)
            table = {g.parse_morphism(key): v for key, v in self.values.items()}
        except (KeyError, KGCohError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"cochain does not fit the graph: {exc}") from exc
        grp = self.coeff
        return Cat1Evaluator(g, grp, lambda lam: table.get(lam, grp.zero()), "table")

    def cocycle(self, g: KGraph):
        """The categorical 2-cocycle this document denotes, when it has one."""
        obj = self.cochain(g)
        if self.kind == "cubical2":
            return c_phi(obj)
        if self.kind == "cat-coboundary":
            return CoboundaryCocycle(obj)
        return None


def _parse_value(grp: CoeffGroup, raw, text: str, key: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise ParseError(_line_of(text, key), f"value for {key} must be an integer or 'p/q'")
    try:
        val = Fraction(raw) if isinstance(raw, str) else Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ParseError(_line_of(text, key), f"bad value {raw!r}") from None
    if isinstance(grp, RationalsMod1):
        if not 0 <= val < 1:
            raise ParseError(_line_of(text, key), f"Q/Z value {raw} must lie in [0, 1)")
        return val
    if val.denominator != 1:
        raise ParseError(_line_of(text, key), f"value {raw} is not an integer")
    if isinstance(grp, IntegersMod) and not 0 <= val < grp.n:
        raise ParseError(_line_of(text, key), f"value {raw} outside 0..{grp.n - 1}")
    return grp.coerce(int(val))


def parse_cochain(source) -> CochainDocument:
    text = _read(source)
    doc = _load(text)
    if doc.get("type", "cochain") != "cochain":
        raise ParseError(_line_of(text, "type"), "not a cochain document")
    try:
        grp = parse_coeff(str(doc.get("coeff", "")))
    except ParseError as exc:
        raise ParseError(_line_of(text, "coeff"), exc.reason) from None
    kind = doc.get("kind")
    if kind not in COCHAIN_KINDS:
        raise ParseError(_line_of(text, "kind"), f"kind must be one of {', '.join(COCHAIN_KINDS)}")
    raw = doc.get("values", {})
    if not isinstance(raw, dict):
        raise ParseError(_line_of(text, "values"), "values must be an object")
    values = {key: _parse_value(grp, v, text, key) for key, v in raw.items()}
    return CochainDocument(grp, kind, values)


def cochain_to_doc(cd: CochainDocument) -> dict:
    return {
        "type": "cochain",
        "coeff": cd.coeff.name,
        "kind": cd.kind,
        "values": {k: cd.coeff.fmt(v) for k, v in sorted(cd.values.items())},
    }


def cubical_to_document(phi: CubicalCochain) -> CochainDocument:
    z = phi.group.zero()
    return CochainDocument(phi.group, "cubical2", {str(lam): v for lam, v in phi.items() if v != z})


def parse(source):
    """Parse either document type, dispatching on ``type``."""
    text = _read(source)
    doc = _load(text)
    if doc.get("type") == "cochain" or "coeff" in doc:
        return parse_cochain(text)
    return parse_graph(text)
