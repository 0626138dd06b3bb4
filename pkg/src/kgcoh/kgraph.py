"""Finite k-graphs presented by a coloured skeleton and a square table.

A morphism is stored in its preferred factorisation: the edge word sorted to
nondecreasing colour.  Words read range-to-source left to right, so
``compose(mu, nu)`` needs ``s(mu) == r(nu)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import kernel
from .errors import (
    CubeInconsistency,
    DegreeOutOfRange,
    DuplicateSquare,
    GraphMismatch,
    IncompleteSquares,
    NotComposable,
    ValidationError,
)

Degree = tuple

# -- degree arithmetic ------------------------------------------------------


def zero(k: int) -> Degree:
    return (0,) * k


def unit(k: int, i: int) -> Degree:
    """The generator e_i (colours are 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(k))


def ones(k: int) -> Degree:
    return (1,) * k


def dadd(m: Degree, n: Degree) -> Degree:
    return tuple(a + b for a, b in zip(m, n))


def dsub(m: Degree, n: Degree) -> Degree:
    """Signed difference; callers check ``dle`` when they need N^k."""
    return tuple(a - b for a, b in zip(m, n))


def dle(m: Degree, n: Degree) -> bool:
    return all(a <= b for a, b in zip(m, n))


def djoin(m: Degree, n: Degree) -> Degree:
    return tuple(max(a, b) for a, b in zip(m, n))


def dmeet(m: Degree, n: Degree) -> Degree:
    return tuple(min(a, b) for a, b in zip(m, n))


def dscale(t: int, m: Degree) -> Degree:
    return tuple(t * a for a in m)


def colour_sequence(m: Degree) -> list[int]:
    """Sorted colour word of a degree: colour i repeated m_i times."""
    out: list[int] = []
    for i, c in enumerate(m):
        out.extend([i + 1] * c)
    return out


def degree_key(d: Degree) -> tuple:
    """Enumeration order on degrees: total size, then colour-set lex."""
    return (sum(d), tuple(-x for x in d))


# -- skeleton data ----------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    id: str
    colour: int
    source: str
    range: str


@dataclass(frozen=True)
class Skeleton:
    vertices: tuple
    edges: tuple

    def has_sources(self, k: int):
        """Return ``(vertex, colour)`` lacking an incoming edge, else None."""
        seen = {(e.range, e.colour) for e in self.edges}
        for v in self.vertices:
            for c in range(1, k + 1):
                if (v, c) not in seen:
                    return v, c
        return None


Square = tuple  # (f, g, g', f') edge ids with fg = g'f'


class Morphism:
    """An element of the k-graph in preferred normal form."""

    __slots__ = ("graph", "word", "_r", "_s", "degree", "_hash")

    def __init__(self, graph: "KGraph", word: tuple, r: int, s: int, degree: Degree):
        self.graph = graph
        self.word = word
        self._r = r
        self._s = s
        self.degree = degree
        self._hash = hash((word, r, s))

    @property
    def r(self) -> str:
        return self.graph.vertices[self._r]

    @property
    def s(self) -> str:
        return self.graph.vertices[self._s]

    @property
    def d(self) -> Degree:
        return self.degree

    @property
    def edges(self) -> tuple:
        ids = self.graph._edge_ids
        return tuple(ids[i] for i in self.word)

    def __len__(self) -> int:
        return len(self.word)

    @property
    def is_vertex(self) -> bool:
        return not self.word

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.graph is other.graph
            and self.word == other.word
            and self._r == other._r
            and self._s == other._s
        )

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def key(self) -> tuple:
        return (degree_key(self.degree), self.word, self._r)

    def __lt__(self, other: "Morphism") -> bool:
        return self.key() < other.key()

    def __str__(self) -> str:
        if not self.word:
            return self.r
        return ".".join(self.edges)

    def __repr__(self) -> str:
        return f"Morphism({self})"

    def segment(self, m: Degree, n: Degree) -> "Morphism":
        return segment(self, m, n)


class KGraph:
    """Validated, immutable k-graph.  Build through :func:`validate`."""

    def __init__(self, k, vertices, edges, squares, blocks, origin, name):
        self.k = k
        self.vertices = vertices
        self.edges = edges
        self.squares = squares
        self.origin = origin
        self.name = name
        self._vidx = {v: i for i, v in enumerate(vertices)}
        self._eidx = {e.id: i for i, e in enumerate(edges)}
        self._edge_ids = tuple(e.id for e in edges)
        n = len(edges)
        self.n_edges = n
        self.colour = kernel.table(e.colour for e in edges)
        self.esrc = [self._vidx[e.source] for e in edges]
        self.erng = [self._vidx[e.range] for e in edges]
        lr_next = [-1] * (n * n)
        rl_next = [-1] * (n * n)
        lr_sq = [-1] * (n * n)
        rl_sq = [-1] * (n * n)
        for idx, (f, g, g2, f2) in enumerate(squares):
            a, b = self._eidx[f], self._eidx[g]
            c, d = self._eidx[g2], self._eidx[f2]
            lr_next[a * n + b] = c * n + d
            lr_sq[a * n + b] = idx
            rl_next[c * n + d] = a * n + b
            rl_sq[c * n + d] = idx
        self.lr_next = kernel.table(lr_next)
        self.rl_next = kernel.table(rl_next)
        self.lr_sq = kernel.table(lr_sq)
        self.rl_sq = kernel.table(rl_sq)
        self._square_index = {(sq[0], sq[1]): i for i, sq in enumerate(squares)}
        self._paths: dict = {}
        self._cubes: dict = {}
        self._into: dict = {}
        for i, e in enumerate(edges):
            self._into.setdefault((e.colour, self._vidx[e.range]), []).append(i)
        self._block_override = dict(blocks or {})
        self._blocks: dict = {}

    # -- constructors of morphisms --

    @property
    def skeleton(self) -> Skeleton:
        return Skeleton(self.vertices, self.edges)

    def vertex(self, v: str) -> Morphism:
        i = self._vidx[v]
        return Morphism(self, (), i, i, zero(self.k))

    def edge(self, e: str) -> Morphism:
        i = self._eidx[e]
        return Morphism(self, (i,), self.erng[i], self.esrc[i], unit(self.k, self.colour[i]))

    def path(self, ids: Iterable[str]) -> Morphism:
        """Compose edges left to right; the result is normalised."""
        ids = list(ids)
        if not ids:
            raise ValueError("empty path; use vertex()")
        word = [self._eidx[e] for e in ids]
        for a, b in zip(word, word[1:]):
            if self.esrc[a] != self.erng[b]:
                raise NotComposable(f"{self._edge_ids[a]} then {self._edge_ids[b]}")
        return self._from_word(word, self.erng[word[0]], self.esrc[word[-1]])

    def parse_morphism(self, text: str) -> Morphism:
        """Inverse of ``str(Morphism)``: a vertex id or dot-joined edge ids."""
        if text in self._vidx:
            return self.vertex(text)
        return self.path(text.split("."))

    def _from_word(self, word, r: int, s: int) -> Morphism:
        w, _ = kernel.sort_word(word, self.colour, self.rl_next, self.rl_sq, self.n_edges)
        deg = [0] * self.k
        for e in w:
            deg[self.colour[e] - 1] += 1
        return Morphism(self, tuple(w), r, s, tuple(deg))

    def square_id(self, index: int) -> str:
        f, g, _, _ = self.squares[index]
        return f"{f}.{g}"

    def edges_into(self, colour: int, v: int) -> list:
        return self._into.get((colour, v), [])

    # -- enumeration --

    def paths(self, n: Degree, v: str | None = None, w: str | None = None) -> list:
        return enumerate_paths(self, n, v, w)

    def block(self, v: str) -> Morphism:
        """The degree-1_k block used to build eventual paths at ``v``."""
        got = self._blocks.get(v)
        if got is None:
            if v in self._block_override:
                got = self.path(self._block_override[v])
            else:
                cands = enumerate_paths(self, ones(self.k), v=v)
                if not cands:
                    raise ValidationError(f"no degree-1_k path with range {v}")
                got = cands[0]
            self._blocks[v] = got
        return got

    @property
    def block_overrides(self) -> dict:
        return dict(self._block_override)

    def __repr__(self) -> str:
        label = self.name or "KGraph"
        return f"<{label}: k={self.k}, {len(self.vertices)} vertices, {len(self.edges)} edges>"


# -- validation -------------------------------------------------------------


def validate(
    skeleton: Skeleton,
    squares: Iterable[Sequence[str]],
    k: int,
    *,
    blocks: Mapping[str, Sequence[str]] | None = None,
    origin=None,
    name: str | None = None,
) -> KGraph:
    """Check a skeleton plus square table and return the k-graph.

    Raises IncompleteSquares, DuplicateSquare or CubeInconsistency when the
    table fails to present a k-graph; other malformations raise
    ValidationError.
    """
    if k < 0:
        raise ValidationError("rank must be nonnegative")
    vertices = tuple(skeleton.vertices)
    if len(set(vertices)) != len(vertices):
        raise ValidationError("duplicate vertex id")
    vset = set(vertices)
    edges = tuple(sorted(skeleton.edges, key=lambda e: e.id))
    eid = {e.id: e for e in edges}
    if len(eid) != len(edges):
        raise ValidationError("duplicate edge id")
    for x in list(vertices) + list(eid):
        if not x or "." in x:
            raise ValidationError(f"identifier {x!r} is empty or contains '.'")
    if vset & set(eid):
        raise ValidationError("vertex and edge ids must be disjoint")
    for e in edges:
        if not 1 <= e.colour <= k:
            raise ValidationError(f"edge {e.id} has colour {e.colour} outside 1..{k}")
        if e.source not in vset or e.range not in vset:
            raise ValidationError(f"edge {e.id} has an undeclared endpoint")

    left: dict = {}
    right: dict = {}
    table = []
    for sq in squares:
        sq = tuple(sq)
        if len(sq) != 4 or any(x not in eid for x in sq):
            raise ValidationError(f"malformed square {sq}")
        f, g, g2, f2 = (eid[x] for x in sq)
        if not (f.colour == f2.colour < g.colour == g2.colour):
            raise ValidationError(f"square {sq} has the wrong colour shape")
        if not (g.range == f.source and f2.range == g2.source
                and g2.range == f.range and f2.source == g.source):
            raise ValidationError(f"square {sq} has mismatched endpoints")
        if (f.id, g.id) in left:
            raise DuplicateSquare((f.id, g.id))
        if (g2.id, f2.id) in right:
            raise DuplicateSquare((g2.id, f2.id))
        left[(f.id, g.id)] = sq
        right[(g2.id, f2.id)] = sq
        table.append(sq)

    into: dict = {}
    for e in edges:
        into.setdefault(e.range, []).append(e)
    for a in edges:
        for b in into.get(a.source, []):
            if a.colour < b.colour and (a.id, b.id) not in left:
                raise IncompleteSquares((a.id, b.id))
            if a.colour > b.colour and (a.id, b.id) not in right:
                raise IncompleteSquares((a.id, b.id))

    table.sort(key=lambda sq: (sq[0], sq[1]))
    graph = KGraph(k, vertices, edges, tuple(table), blocks, origin, name)
    _check_cubes(graph)
    if blocks:
        for v, ids in blocks.items():
            if v not in vset:
                raise ValidationError(f"block for unknown vertex {v}")
            b = graph.path(ids)
            if b.r != v or b.degree != ones(k):
                raise ValidationError(f"block at {v} must have range {v} and degree 1_k")
    return graph


def _flip(graph: KGraph, a: int, b: int) -> tuple:
    n = graph.n_edges
    key = a * n + b
    packed = graph.lr_next[key] if graph.colour[a] < graph.colour[b] else graph.rl_next[key]
    return divmod(packed, n)


def _check_cubes(graph: KGraph) -> None:
    """Both three-flip routes from fgh to hgf must agree."""
    col = graph.colour
    into: dict = {}
    for i in range(graph.n_edges):
        into.setdefault(graph.erng[i], []).append(i)
    for f in range(graph.n_edges):
        for g in into.get(graph.esrc[f], []):
            if col[g] <= col[f]:
                continue
            for h in into.get(graph.esrc[g], []):
                if col[h] <= col[g]:
                    continue
                g1, f1 = _flip(graph, f, g)
                h1, f2 = _flip(graph, f1, h)
                h2, g2 = _flip(graph, g1, h1)
                h1b, g1b = _flip(graph, g, h)
                h2b, f1b = _flip(graph, f, h1b)
                g2b, f2b = _flip(graph, f1b, g1b)
                if (h2, g2, f2) != (h2b, g2b, f2b):
                    ids = graph._edge_ids
                    raise CubeInconsistency((ids[f], ids[g], ids[h]))


# -- morphism arithmetic ----------------------------------------------------


def compose(mu: Morphism, nu: Morphism) -> Morphism:
    """Normal form of mu·nu; requires s(mu) = r(nu)."""
    g = mu.graph
    if g is not nu.graph:
        raise GraphMismatch("morphisms from different graphs")
    if mu._s != nu._r:
        raise NotComposable(f"s({mu}) = {mu.s} but r({nu}) = {nu.r}")
    if not nu.word:
        return mu
    if not mu.word:
        return nu
    deg = dadd(mu.degree, nu.degree)
    if g.colour[mu.word[-1]] <= g.colour[nu.word[0]]:
        return Morphism(g, mu.word + nu.word, mu._r, nu._s, deg)
    w, _ = kernel.sort_word(mu.word + nu.word, g.colour, g.rl_next, g.rl_sq, g.n_edges)
    return Morphism(g, tuple(w), mu._r, nu._s, deg)


def segment(lam: Morphism, m: Degree, n: Degree) -> Morphism:
    """The unique factor lam(m, n) of degree n - m."""
    g = lam.graph
    d = lam.degree
    m = tuple(m)
    n = tuple(n)
    if len(m) != g.k or len(n) != g.k or not (dle(zero(g.k), m) and dle(m, n) and dle(n, d)):
        raise DegreeOutOfRange(f"need 0 <= {m} <= {n} <= {d}")
    if m == n:
        a = sum(m)
        if a == 0:
            return Morphism(g, (), lam._r, lam._r, zero(g.k))
        if a == len(lam.word):
            return Morphism(g, (), lam._s, lam._s, zero(g.k))
    elif sum(m) == 0 and n == d:
        return lam
    target = colour_sequence(m) + colour_sequence(dsub(n, m)) + colour_sequence(dsub(d, n))
    w = kernel.rewrite_word(lam.word, target, g.colour, g.lr_next, g.rl_next, g.n_edges)
    a, b = sum(m), sum(n)
    if a == b:
        v = g.erng[w[a]]
        return Morphism(g, (), v, v, zero(g.k))
    piece = tuple(w[a:b])
    return Morphism(g, piece, g.erng[piece[0]], g.esrc[piece[-1]], dsub(n, m))


def enumerate_paths(g: KGraph, n: Degree, v: str | None = None, w: str | None = None) -> list:
    """All morphisms of degree n, optionally with range v and/or source w.

    Order is lexicographic on the edge-index word (edges are indexed in
    sorted id order).
    """
    n = tuple(n)
    if len(n) != g.k or any(x < 0 for x in n):
        raise DegreeOutOfRange(f"bad degree {n}")
    full = g._paths.get(n)
    if full is None:
        full = _build_paths(g, n)
        g._paths[n] = full
    if v is None and w is None:
        return list(full)
    vi = g._vidx[v] if v is not None else None
    wi = g._vidx[w] if w is not None else None
    return [
        lam
        for lam in full
        if (vi is None or lam._r == vi) and (wi is None or lam._s == wi)
    ]


def _build_paths(g: KGraph, n: Degree) -> list:
    if sum(n) == 0:
        return [Morphism(g, (), i, i, n) for i in range(len(g.vertices))]
    seq = colour_sequence(n)
    by_colour: dict = {}
    for i in range(g.n_edges):
        by_colour.setdefault(g.colour[i], []).append(i)
    out = []

    def extend(word, pos):
        if pos == len(seq):
            out.append(Morphism(g, tuple(word), g.erng[word[0]], g.esrc[word[-1]], n))
            return
        for e in by_colour.get(seq[pos], ()):
            if pos == 0 or g.erng[e] == g.esrc[word[-1]]:
                word.append(e)
                extend(word, pos + 1)
                word.pop()

    extend([], 0)
    return out


def is_prefix(mu: Morphism, lam: Morphism) -> bool:
    """True iff lam = mu·alpha for some alpha."""
    if mu._r != lam._r or not dle(mu.degree, lam.degree):
        return False
    return segment(lam, zero(lam.graph.k), mu.degree) == mu


def is_suffix(nu: Morphism, lam: Morphism) -> bool:
    """True iff lam = beta·nu for some beta."""
    if nu._s != lam._s or not dle(nu.degree, lam.degree):
        return False
    return segment(lam, dsub(lam.degree, nu.degree), lam.degree) == nu


def mce(mu: Morphism, nu: Morphism) -> list:
    """Minimal common extensions of mu and nu, in enumeration order."""
    if mu.graph is not nu.graph:
        raise GraphMismatch("morphisms from different graphs")
    if mu._r != nu._r:
        return []
    top = djoin(mu.degree, nu.degree)
    out = []
    for alpha in enumerate_paths(mu.graph, dsub(top, mu.degree), v=mu.s):
        lam = compose(mu, alpha)
        if segment(lam, zero(mu.graph.k), nu.degree) == nu:
            out.append(lam)
    return out


def all_morphisms(g: KGraph, max_len: int) -> list:
    """Every morphism with |lam| <= max_len, in enumeration order."""
    out = []
    for size in range(max_len + 1):
        for d in degrees_of_size(g.k, size):
            out.extend(enumerate_paths(g, d))
    return out


def degrees_of_size(k: int, size: int) -> list:
    """All degrees with |d| = size, sorted by :func:`degree_key`."""
    out = []

    def rec(prefix, left):
        if len(prefix) == k - 1:
            out.append(tuple(prefix) + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a)

    if k == 0:
        return [()] if size == 0 else []
    rec([], size)
    return sorted(out, key=degree_key)
