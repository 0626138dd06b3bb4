"""Bounded aperiodicity and cofinality checks.

Both properties quantify over infinitely many paths, so these are
semi-decisions up to a degree bound and the report says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HasSources
from .groupoid import EventualPath
from .kgraph import KGraph, Morphism, compose, dadd, dscale, enumerate_paths, mce, ones

APERIODIC = "VERIFIED-APERIODIC-UP-TO-BOUND"
PERIODIC = "PERIODIC-WITNESS"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class DiagnosticsReport:
    bound: tuple
    aperiodicity: str
    witness: tuple | None
    pairs_checked: int
    cofinal: bool
    cofinality_witness: tuple | None
    paths_checked: int
    separators: dict = field(default_factory=dict, repr=False)


def _upto(g: KGraph, bound: tuple) -> list:
    """Every morphism of degree <= bound, in enumeration order."""
    degs = [()]
    for b in bound:
        degs = [d + (x,) for d in degs for x in range(b + 1)]
    out = []
    for d in sorted(degs, key=lambda d: (sum(d), tuple(-x for x in d))):
        out.extend(enumerate_paths(g, d))
    return out


def reachable_from(g: KGraph, u: int) -> set:
    """Vertices v with vΛu nonempty."""
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        for e in range(g.n_edges):
            if g.esrc[e] == w and g.erng[e] not in seen:
                seen.add(g.erng[e])
                stack.append(g.erng[e])
    return seen


def periodicity_diagnostics(g: KGraph, bound) -> DiagnosticsReport:
    bound = tuple(bound)
    src = g.skeleton.has_sources(g.k)
    if src is not None:
        raise HasSources(*src)
    paths = _upto(g, bound)
    status = INCONCLUSIVE if sum(bound) == 0 else APERIODIC
    witness = None
    checked = 0
    separators = {}
    if sum(bound):
        for i, a in enumerate(paths):
            for b in paths[:i]:
                if a._s != b._s:
                    continue
                checked += 1
                tau = _separator(g, a, b, paths)
                if tau is None:
                    status, witness = PERIODIC, (a, b)
                    break
                separators[(a, b)] = tau
            if witness:
                break
    cofinal, cwit = True, None
    n_vertices = len(g.vertices)
    for prefix in paths:
        x = EventualPath(prefix)
        far = x.segment(prefix.degree, dadd(prefix.degree, dscale(n_vertices, ones(g.k))))
        reach = reachable_from(g, far._s)
        if len(reach) < n_vertices:
            missing = next(v for v in range(n_vertices) if v not in reach)
            cofinal, cwit = False, (prefix, g.vertices[missing])
            break
    return DiagnosticsReport(bound, status, witness, checked, cofinal, cwit, len(paths), separators)


def _separator(g: KGraph, a: Morphism, b: Morphism, paths: list):
    """Some τ with d(τ) <= bound and MCE(aτ, bτ) empty, else None."""
    for tau in paths:
        if tau._r != a._s:
            continue
        if not mce(compose(a, tau), compose(b, tau)):
            return tau
    return None
