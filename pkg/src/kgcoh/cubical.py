"""Cubical chains and cochains of a k-graph.

Q_r is the set of morphisms of degree at most 1_k with r edges.  Cube order
is fixed: by colour set (lexicographic on the sorted colour tuple), then by
edge word, so matrix layouts are stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .coeffs import CoeffGroup, Integers, IntegersMod
from .errors import IndexOutOfRange, NotACocycle, UnsupportedCoefficients
from .kgraph import (
    KGraph,
    Morphism,
    degree_key,
    dsub,
    enumerate_paths,
    segment,
    unit,
    zero,
)
from .snf import FinAbGroup, ext_orders, hom_ext_orders, smith_normal_form
from .verdict import Verdict


def cubes(g: KGraph, r: int) -> list:
    """All of Q_r(g) in the fixed cube order."""
    got = g._cubes.get(r)
    if got is None:
        if r < 0 or r > g.k:
            got = []
        else:
            degs = []
            for mask in range(1 << g.k):
                d = tuple((mask >> i) & 1 for i in range(g.k))
                if sum(d) == r:
                    degs.append(d)
            degs.sort(key=degree_key)
            got = [lam for d in degs for lam in enumerate_paths(g, d)]
        g._cubes[r] = got
    return list(got)


def cube_index(g: KGraph, r: int) -> dict:
    key = ("index", r)
    got = g._cubes.get(key)
    if got is None:
        got = {lam: i for i, lam in enumerate(cubes(g, r))}
        g._cubes[key] = got
    return got


def colours_of(lam: Morphism) -> list:
    """The colours i_1 < ... < i_r present in a cube."""
    return [i + 1 for i, x in enumerate(lam.degree) if x]


def face(lam: Morphism, j: int, side: int) -> Morphism:
    """F_j^0(lam) = lam(0, d - e_{i_j}) and F_j^1(lam) = lam(e_{i_j}, d)."""
    cols = colours_of(lam)
    if not 1 <= j <= len(cols):
        raise IndexOutOfRange(f"face index {j} outside 1..{len(cols)}")
    k = lam.graph.k
    e = unit(k, cols[j - 1])
    d = lam.degree
    if side == 0:
        return segment(lam, zero(k), dsub(d, e))
    if side == 1:
        return segment(lam, e, d)
    raise IndexOutOfRange("face side must be 0 or 1")


def boundary_terms(lam: Morphism) -> list:
    """``[(sign, face), ...]`` for the boundary of a cube."""
    out = []
    for j in range(1, len(lam) + 1):
        for side in (0, 1):
            out.append(((-1) ** (j + side), face(lam, j, side)))
    return out


@dataclass(frozen=True)
class BoundaryMatrix:
    """Matrix of the boundary map C_r -> C_{r-1} in cube bases."""

    rows: tuple  # Q_{r-1}
    cols: tuple  # Q_r
    entries: list

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.cols))


def boundary_matrix(g: KGraph, r: int) -> BoundaryMatrix:
    rows = cubes(g, r - 1) if r >= 1 else []
    cols = cubes(g, r)
    index = cube_index(g, r - 1) if r >= 1 else {}
    entries = [[0] * len(cols) for _ in rows]
    if r >= 1:
        for c, lam in enumerate(cols):
            for sign, fc in boundary_terms(lam):
                entries[index[fc]][c] += sign
    return BoundaryMatrix(tuple(rows), tuple(cols), entries)


def _snf(bm: BoundaryMatrix):
    return smith_normal_form(bm.entries, n_cols=len(bm.cols))


def homology(g: KGraph, r: int) -> FinAbGroup:
    """H_r = ker ∂_r / im ∂_{r+1} in invariant-factor form."""
    n = len(cubes(g, r))
    rank_r = _snf(boundary_matrix(g, r)).rank if r >= 1 else 0
    above = _snf(boundary_matrix(g, r + 1))
    free = n - rank_r - above.rank
    return FinAbGroup(free, tuple(d for d in above.invariants if d > 1))


def cohomology(g: KGraph, r: int, coeff: CoeffGroup) -> FinAbGroup:
    """H^r(g; A) for A = Z or Z/n, by universal coefficients.

    The cubical chain complex is free, so
    H^r(A) = Hom(H_r, A) ⊕ Ext(H_{r-1}, A).
    """
    h_r = homology(g, r)
    h_prev = homology(g, r - 1) if r >= 1 else FinAbGroup()
    if isinstance(coeff, Integers):
        return FinAbGroup.from_cyclic(h_r.free_rank, list(h_prev.torsion))
    if isinstance(coeff, IntegersMod):
        n = coeff.n
        return FinAbGroup.from_cyclic(0, hom_ext_orders(h_r, n) + ext_orders(h_prev, n))
    raise UnsupportedCoefficients(f"group-level cohomology over {coeff} is not supported")


class CubicalCochain:
    """A function Q_r(g) -> A stored as a tuple in cube order."""

    __slots__ = ("graph", "rank", "group", "values")

    def __init__(self, graph: KGraph, rank: int, group: CoeffGroup, values):
        values = tuple(values)
        if len(values) != len(cubes(graph, rank)):
            raise ValueError(f"a rank-{rank} cochain needs {len(cubes(graph, rank))} values")
        self.graph = graph
        self.rank = rank
        self.group = group
        self.values = values

    @classmethod
    def zero(cls, graph: KGraph, rank: int, group: CoeffGroup) -> "CubicalCochain":
        return cls(graph, rank, group, [group.zero()] * len(cubes(graph, rank)))

    @classmethod
    def from_mapping(cls, graph: KGraph, rank: int, group: CoeffGroup, table: Mapping) -> "CubicalCochain":
        """Build from ``{cube or cube-string: value}``; missing cubes are 0."""
        index = cube_index(graph, rank)
        vals = [group.zero()] * len(index)
        for key, value in table.items():
            lam = graph.parse_morphism(key) if isinstance(key, str) else key
            if lam not in index:
                raise KeyError(f"{lam} is not a rank-{rank} cube")
            vals[index[lam]] = group.coerce(value)
        return cls(graph, rank, group, vals)

    @classmethod
    def from_function(cls, graph: KGraph, rank: int, group: CoeffGroup, fn: Callable) -> "CubicalCochain":
        return cls(graph, rank, group, [fn(lam) for lam in cubes(graph, rank)])

    @classmethod
    def random(cls, graph: KGraph, rank: int, group: CoeffGroup, rng) -> "CubicalCochain":
        return cls(graph, rank, group, [group.random(rng) for _ in cubes(graph, rank)])

    def __call__(self, lam: Morphism):
        return self.values[cube_index(self.graph, self.rank)[lam]]

    def items(self):
        return zip(cubes(self.graph, self.rank), self.values)

    def _check(self, other: "CubicalCochain"):
        if other.graph is not self.graph or other.rank != self.rank or other.group != self.group:
            raise ValueError("cochains live in different groups")

    def __add__(self, other):
        self._check(other)
        add = self.group.add
        return CubicalCochain(self.graph, self.rank, self.group, [add(a, b) for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return CubicalCochain(self.graph, self.rank, self.group, [self.group.neg(a) for a in self.values])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, CubicalCochain):
            return NotImplemented
        return (self.graph is other.graph and self.rank == other.rank
                and self.group == other.group and self.values == other.values)

    def __hash__(self):
        return hash((self.rank, self.values))

    def is_zero(self) -> bool:
        z = self.group.zero()
        return all(v == z for v in self.values)

    def as_dict(self) -> dict:
        return {str(lam): self.group.fmt(v) for lam, v in self.items()}

    def __repr__(self):
        return f"CubicalCochain(rank={self.rank}, {self.group}, {self.as_dict()})"


def cub_coboundary(f: CubicalCochain) -> CubicalCochain:
    """(δf)(lam) = f(∂lam) on Q_{r+1}."""
    grp = f.group

    def value(lam):
        total = grp.zero()
        for sign, fc in boundary_terms(lam):
            total = grp.add(total, grp.mul(sign, f(fc)))
        return total

    return CubicalCochain.from_function(f.graph, f.rank + 1, grp, value)


def is_cub_2cocycle(phi: CubicalCochain) -> Verdict:
    """Check the six-face identity on every 3-cube; witness is a failing cube."""
    if phi.rank != 2:
        raise ValueError("expected a rank-2 cochain")
    grp = phi.group
    checked = 0
    for lam in cubes(phi.graph, 3):
        checked += 1
        lhs = grp.sum([phi(face(lam, 3, 0)), phi(face(lam, 2, 1)), phi(face(lam, 1, 0))])
        rhs = grp.sum([phi(face(lam, 1, 1)), phi(face(lam, 2, 0)), phi(face(lam, 3, 1))])
        if lhs != rhs:
            return Verdict(False, lam, f"identity fails on cube {lam}", checked)
    return Verdict(True, None, "", checked)


class Functor1:
    """Evaluator lam -> sum of an edge function along lam's edges."""

    def __init__(self, graph: KGraph, group: CoeffGroup, edge_values: Mapping):
        self.graph = graph
        self.group = group
        self._vals = [group.coerce(edge_values.get(e.id, 0)) for e in graph.edges]

    def __call__(self, lam: Morphism):
        vals = self._vals
        return self.group.sum(vals[e] for e in lam.word)

    def edge_values(self) -> dict:
        return {e.id: v for e, v in zip(self.graph.edges, self._vals)}

    def restrict(self) -> CubicalCochain:
        return CubicalCochain.from_function(self.graph, 1, self.group, self)


def extend_1cocycle(f: CubicalCochain) -> Functor1:
    """The unique functor agreeing with a cubical 1-cocycle on edges."""
    if f.rank != 1:
        raise ValueError("expected a rank-1 cochain")
    if not cub_coboundary(f).is_zero():
        raise NotACocycle("δ¹f is nonzero")
    return Functor1(f.graph, f.group, {str(e): v for e, v in f.items()})
