"""Product, pullback and skew-product k-graphs.

Each derived graph keeps an ``origin`` object that projects its morphisms
back to the source graph(s); the combinator cocycles use these projections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffs import CoeffGroup, IntegersMod
from .errors import InfiniteResult, InvalidFunctor, ValidationError
from .kgraph import (
    Edge,
    KGraph,
    Morphism,
    Skeleton,
    compose,
    enumerate_paths,
    segment,
    validate,
    zero,
)


def _pair(a: str, b) -> str:
    return f"({a},{b})"


@dataclass(frozen=True)
class ProductOrigin:
    left: KGraph
    right: KGraph
    vertex_of: dict  # product vertex index -> (left vertex, right vertex)
    edge_of: dict  # product edge index -> ("L", left edge, right vertex) | ("R", left vertex, right edge)

    def project(self, lam: Morphism) -> tuple:
        """Split lam into its two coordinate morphisms."""
        g1, g2 = self.left, self.right
        v1, v2 = self.vertex_of[lam._r]
        left = [self.edge_of[e][1] for e in lam.word if self.edge_of[e][0] == "L"]
        right = [self.edge_of[e][2] for e in lam.word if self.edge_of[e][0] == "R"]
        # normal form puts all left colours first, so the left part sits at
        # right-vertex r(lam_2) and the right part at left-vertex s(lam_1)
        lam1 = g1.path(left) if left else g1.vertex(v1)
        lam2 = g2.path(right) if right else g2.vertex(v2)
        return lam1, lam2


def product(g1: KGraph, g2: KGraph) -> KGraph:
    """The (k1+k2)-graph g1 × g2; colours of g2 are shifted by k1."""
    k1 = g1.k
    vertices = []
    vertex_of = {}
    for a in g1.vertices:
        for b in g2.vertices:
            vertex_of[len(vertices)] = (a, b)
            vertices.append(_pair(a, b))
    edges = []
    tags = {}
    for e in g1.edges:
        for b in g2.vertices:
            eid = _pair(e.id, b)
            tags[eid] = ("L", e.id, b)
            edges.append(Edge(eid, e.colour, _pair(e.source, b), _pair(e.range, b)))
    for a in g1.vertices:
        for e in g2.edges:
            eid = _pair(a, e.id)
            tags[eid] = ("R", a, e.id)
            edges.append(Edge(eid, k1 + e.colour, _pair(a, e.source), _pair(a, e.range)))
    squares = []
    for f, g, g2_, f2 in g1.squares:
        for b in g2.vertices:
            squares.append(tuple(_pair(x, b) for x in (f, g, g2_, f2)))
    for a in g1.vertices:
        for f, g, g2_, f2 in g2.squares:
            squares.append(tuple(_pair(a, x) for x in (f, g, g2_, f2)))
    for e in g1.edges:
        for e2 in g2.edges:
            squares.append((
                _pair(e.id, e2.range),
                _pair(e.source, e2.id),
                _pair(e.range, e2.id),
                _pair(e.id, e2.source),
            ))
    skel = Skeleton(tuple(vertices), tuple(edges))
    name = f"{g1.name or 'G1'}x{g2.name or 'G2'}"
    graph = validate(skel, squares, g1.k + g2.k, name=name)
    edge_of = {graph._eidx[eid]: tag for eid, tag in tags.items()}
    graph.origin = ProductOrigin(g1, g2, vertex_of, edge_of)
    return graph


@dataclass(frozen=True)
class PullbackOrigin:
    base: KGraph
    matrix: tuple  # k rows, l columns
    edge_of: dict  # pulled-back edge index -> (base morphism, colour j)

    def column(self, j: int) -> tuple:
        return tuple(row[j - 1] for row in self.matrix)

    def project(self, lam: Morphism) -> Morphism:
        base = self.base
        out = base.vertex(lam.r)
        for e in reversed(lam.word):
            out = compose(self.edge_of[e][0], out)
        return out


def pullback(g: KGraph, matrix) -> KGraph:
    """Pull g back along the monoid map N^l -> N^k given by a k×l matrix."""
    matrix = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(matrix) != g.k or any(x < 0 for row in matrix for x in row):
        raise ValidationError("pullback needs a k×l nonnegative integer matrix")
    l = len(matrix[0]) if matrix else 0
    if any(len(row) != l for row in matrix):
        raise ValidationError("ragged pullback matrix")
    cols = [tuple(row[j] for row in matrix) for j in range(l)]
    edges = []
    lookup = {}
    base_of = {}
    for j in range(1, l + 1):
        for lam in enumerate_paths(g, cols[j - 1]):
            word = str(lam) if lam.word else f"{lam.r}"
            eid = f"({word}:{j})"
            lookup[(lam, j)] = eid
            base_of[eid] = (lam, j)
            edges.append(Edge(eid, j, lam.s, lam.r))
    squares = []
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            for lam1 in enumerate_paths(g, cols[i - 1]):
                for lam2 in enumerate_paths(g, cols[j - 1], v=lam1.s):
                    lam = compose(lam1, lam2)
                    mu2 = segment(lam, zero(g.k), cols[j - 1])
                    mu1 = segment(lam, cols[j - 1], lam.degree)
                    squares.append((lookup[(lam1, i)], lookup[(lam2, j)],
                                    lookup[(mu2, j)], lookup[(mu1, i)]))
    skel = Skeleton(tuple(g.vertices), tuple(edges))
    graph = validate(skel, squares, l, name=f"pullback({g.name or 'G'})")
    edge_of = {graph._eidx[eid]: val for eid, val in base_of.items()}
    graph.origin = PullbackOrigin(g, matrix, edge_of)
    return graph


@dataclass(frozen=True)
class SkewOrigin:
    base: KGraph
    group: CoeffGroup
    values: dict  # base edge id -> group element
    vertex_of: dict  # skew vertex index -> (base vertex, a)
    edge_of: dict  # skew edge index -> base edge id

    def project(self, lam: Morphism) -> Morphism:
        base = self.base
        if not lam.word:
            return base.vertex(self.vertex_of[lam._r][0])
        return base.path([self.edge_of[e] for e in lam.word])

    def label(self, lam: Morphism):
        """The group coordinate a of r(lam) = (r(mu), a)."""
        return self.vertex_of[lam._r][1]

    def functor(self, mu: Morphism):
        grp = self.group
        return grp.sum(self.values[mu.graph._edge_ids[e]] for e in mu.word)


def skew(g: KGraph, group: CoeffGroup, values: dict) -> KGraph:
    """Skew product g ×_f A for a finite cyclic A and edge values f."""
    if not isinstance(group, IntegersMod):
        raise InfiniteResult(f"skew product over {group} has infinitely many vertices")
    vals = {}
    for e in g.edges:
        if e.id not in values:
            raise InvalidFunctor(f"no value for edge {e.id}")
        vals[e.id] = group.coerce(values[e.id])
    for f, gg, g2, f2 in g.squares:
        if group.add(vals[f], vals[gg]) != group.add(vals[g2], vals[f2]):
            raise InvalidFunctor(f"values disagree on square {f}.{gg}")
    n = group.n
    vertices = []
    vertex_of = {}
    for v in g.vertices:
        for a in range(n):
            vertex_of[len(vertices)] = (v, a)
            vertices.append(_pair(v, a))
    edges = []
    tags = {}
    for e in g.edges:
        for a in range(n):
            eid = _pair(e.id, a)
            tags[eid] = e.id
            edges.append(Edge(eid, e.colour, _pair(e.source, (a + vals[e.id]) % n), _pair(e.range, a)))
    squares = []
    for f, gg, g2, f2 in g.squares:
        for a in range(n):
            squares.append((
                _pair(f, a),
                _pair(gg, (a + vals[f]) % n),
                _pair(g2, a),
                _pair(f2, (a + vals[g2]) % n),
            ))
    skel = Skeleton(tuple(vertices), tuple(edges))
    graph = validate(skel, squares, g.k, name=f"skew({g.name or 'G'})")
    edge_of = {graph._eidx[eid]: base for eid, base in tags.items()}
    graph.origin = SkewOrigin(g, group, vals, vertex_of, edge_of)
    return graph


def derive_graph(kind: str, *args) -> KGraph:
    """Dispatch to :func:`product`, :func:`pullback` or :func:`skew`."""
    makers = {"product": product, "pullback": pullback, "skew": skew}
    if kind not in makers:
        raise ValueError(f"unknown derived graph kind {kind!r}")
    return makers[kind](*args)
