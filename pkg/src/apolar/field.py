"""Exact base fields: the rationals and prime fields F_p.

Scalars are plain Python values: :class:`fractions.Fraction` over Q and
``int`` in ``[0, p)`` over F_p.  A :class:`Field` knows how to canonicalise,
invert and compare them; everything else is ordinary Python arithmetic
followed by :meth:`Field.convert`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import CharacteristicError, PreconditionError

# products of two reduced residues must fit in int64 inside the kernels
MAX_PRIME = 2**31 - 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p == 0:
            return
        if self.p in (2, 3):
            raise CharacteristicError(f"characteristic {self.p} is not supported (need char != 2, 3)")
        if not is_prime(self.p):
            raise PreconditionError(f"{self.p} is not a prime")
        if self.p > MAX_PRIME:
            raise PreconditionError(f"prime {self.p} exceeds the supported bound {MAX_PRIME}")

    @classmethod
    def parse(cls, spec: str) -> "Field":
        """Parse ``"q"`` or ``"fp:P"``."""
        s = spec.strip().lower()
        if s in ("q", "qq", "rational", "0"):
            return cls(0)
        if s.startswith("fp:"):
            try:
                return cls(int(s[3:]))
            except ValueError:
                raise PreconditionError(f"bad field descriptor {spec!r}") from None
        raise PreconditionError(f"bad field descriptor {spec!r} (expected 'q' or 'fp:P')")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def descriptor(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    def convert(self, x):
        """Canonical representative of ``x`` (int, Fraction or str)."""
        if self.p == 0:
            if isinstance(x, Fraction):
                return x
            return Fraction(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / x
        return pow(int(x), -1, self.p)

    def neg(self, x):
        return -x if self.p == 0 else (-x) % self.p

    def random_element(self, rng: random.Random, nonzero: bool = False, bound: int = 9):
        """Uniform over F_p; small integers in ``[-bound, bound]`` over Q."""
        while True:
            if self.p == 0:
                x = Fraction(rng.randint(-bound, bound))
            else:
                x = rng.randrange(self.p)
            if not (nonzero and x == 0):
                return x

    def to_json(self, x):
        """JSON-friendly form of a scalar: int where possible, else ``"a/b"``."""
        if self.p == 0 and x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        return int(x)


QQ = Field(0)
DEFAULT_PRIME = 65537
