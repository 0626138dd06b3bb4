"""Cohomology of finite higher-rank graphs.

Cubical homology, categorical 2-cocycles, central extensions and
path-groupoid 2-cocycles, computed exactly.
"""

__version__ = "0.1.0"

from .coeffs import Integers, IntegersMod, RationalsMod1, parse_coeff
from .kgraph import Edge, KGraph, Morphism, Skeleton, compose, enumerate_paths, mce, segment, validate
from .kernel import BACKEND

__all__ = [
    "BACKEND",
    "Edge",
    "Integers",
    "IntegersMod",
    "KGraph",
    "Morphism",
    "RationalsMod1",
    "Skeleton",
    "compose",
    "enumerate_paths",
    "mce",
    "parse_coeff",
    "segment",
    "validate",
]
