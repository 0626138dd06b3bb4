"""Exact coefficient groups.

Elements are plain Python values: ``int`` for Z, an ``int`` in ``range(n)``
for Z/n, and a reduced ``Fraction`` in [0, 1) for Q/Z.  Circle-valued data
is carried in Q/Z, written additively.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError


class CoeffGroup:
    """Abelian group contract used by every cochain and cocycle."""

    name: str = "?"

    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, n: int, a):
        raise NotImplementedError

    def coerce(self, value):
        """Map an int, Fraction or ``"p/q"`` string into the group."""
        raise NotImplementedError

    def fmt(self, a):
        """JSON-friendly form: an int, or a ``"p/q"`` (or ``"0"``) string for Q/Z."""
        return a

    def random(self, rng: _random.Random):
        raise NotImplementedError

    def sum(self, values):
        total = self.zero()
        for v in values:
            total = self.add(total, v)
        return total

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Integers(CoeffGroup):
    bound: int = 20  # range used by random()

    name = "Z"

    def zero(self):
        return 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, n, a):
        return n * a

    def coerce(self, value):
        if isinstance(value, bool):
            raise ValueError("booleans are not group elements")
        if isinstance(value, int):
            return value
        if isinstance(value, str):
            return int(value)
        f = Fraction(value)
        if f.denominator != 1:
            raise ValueError(f"{value} is not an integer")
        return int(f)

    def random(self, rng):
        return rng.randint(-self.bound, self.bound)

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("Z")


@dataclass(frozen=True)
class IntegersMod(CoeffGroup):
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")

    @property
    def name(self):
        return f"Z/{self.n}"

    def zero(self):
        return 0

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return -a % self.n

    def mul(self, n, a):
        return n * a % self.n

    def coerce(self, value):
        return Integers().coerce(value) % self.n

    def random(self, rng):
        return rng.randrange(self.n)


@dataclass(frozen=True)
class RationalsMod1(CoeffGroup):
    max_den: int = 12  # denominators used by random()

    name = "Q/Z"

    def zero(self):
        return Fraction(0)

    def add(self, a, b):
        return (a + b) % 1

    def neg(self, a):
        return -a % 1

    def mul(self, n, a):
        return n * a % 1

    def coerce(self, value):
        if isinstance(value, bool):
            raise ValueError("booleans are not group elements")
        return Fraction(value) % 1

    def fmt(self, a):
        return str(a)

    def random(self, rng):
        q = rng.randint(1, self.max_den)
        return Fraction(rng.randrange(q), q)

    def __eq__(self, other):
        return isinstance(other, RationalsMod1)

    def __hash__(self):
        return hash("Q/Z")


def parse_coeff(text: str) -> CoeffGroup:
    """Parse ``"Z"``, ``"Z/n"`` or ``"Q/Z"``."""
    t = text.strip()
    if t == "Z":
        return Integers()
    if t == "Q/Z":
        return RationalsMod1()
    if t.startswith("Z/"):
        try:
            return IntegersMod(int(t[2:]))
        except ValueError:
            pass
    raise ParseError(0, f"unknown coefficient group {text!r}")
