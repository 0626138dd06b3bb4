"""Smith normal form over Z and finitely generated abelian groups.

Matrices are lists of rows of Python ints, so arithmetic never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: list, b: list) -> list:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(a))]


def transpose(m: list, n_cols: int | None = None) -> list:
    if not m:
        return [[] for _ in range(n_cols or 0)]
    return [list(col) for col in zip(*m)]


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == D`` with U, V unimodular and D diagonal."""

    invariants: tuple  # nonzero diagonal entries, each dividing the next
    rank: int
    U: list = field(repr=False)
    V: list = field(repr=False)
    D: list = field(repr=False)


def smith_normal_form(matrix: list, n_cols: int | None = None) -> SmithForm:
    """Compute the Smith normal form with transforms.

    ``n_cols`` gives the width when the matrix has no rows.
    """
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if a else (n_cols or 0)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover in row/column t to the pivot
                bi, bj = t, t
                for i in range(t + 1, m):
                    if a[i][t] and abs(a[i][t]) < abs(a[bi][bj]):
                        bi, bj = i, t
                for j in range(t + 1, n):
                    if a[t][j] and abs(a[t][j]) < abs(a[bi][bj]):
                        bi, bj = t, j
                swap_rows(t, bi)
                swap_cols(t, bj)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    invariants = tuple(a[i][i] for i in range(t))
    return SmithForm(invariants, t, U, V, a)


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s with d_1 | d_2 | ... and d_i >= 2."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion factors must be at least 2")

    @classmethod
    def from_cyclic(cls, free_rank: int, orders) -> "FinAbGroup":
        """Normalise a direct sum of cyclic groups Z/o (o = 0 means Z)."""
        finite = [o for o in orders if o != 1]
        free = free_rank + sum(1 for o in finite if o == 0)
        finite = [abs(o) for o in finite if o != 0]
        if not finite:
            return cls(free, ())
        diag = [[o if i == j else 0 for j in range(len(finite))] for i, o in enumerate(finite)]
        inv = smith_normal_form(diag).invariants
        return cls(free, tuple(d for d in inv if d > 1))

    @property
    def order(self):
        """Cardinality, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.describe()


def hom_ext_orders(h: FinAbGroup, n: int) -> list:
    """Cyclic orders of Hom(h, Z/n), listed as a direct sum."""
    return [n] * h.free_rank + [gcd(d, n) for d in h.torsion]


def ext_orders(h: FinAbGroup, n: int) -> list:
    """Cyclic orders of Ext(h, Z/n); free summands contribute nothing."""
    return [gcd(d, n) for d in h.torsion]


def integer_rank(matrix: list) -> int:
    return smith_normal_form(matrix).rank
