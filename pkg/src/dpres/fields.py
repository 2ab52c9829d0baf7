"""Exact scalar arithmetic over GF(p) or the rationals.

Scalars are plain ints reduced into [0, p) over a prime field and
fractions.Fraction over the rationals.  Everything is exact; no floats.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """GF(p) for prime p, or the rationals when constructed with p=None."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not is_prime(p):
            raise ValueError(f"field modulus must be prime, got {p}")
        self.p = p

    @property
    def char(self) -> int:
        return self.p if self.p is not None else 0

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def of(self, n):
        """Embed an int (or Fraction, over the rationals) into the field."""
        if self.p is None:
            return Fraction(n)
        if isinstance(n, Fraction):
            if n.denominator == 1:
                return n.numerator % self.p
            return (n.numerator * pow(n.denominator, self.p - 2, self.p)) % self.p
        return n % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / a
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random(self, rng):
        if self.p is None:
            return Fraction(rng.randint(-9, 9))
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        while True:
            c = self.random(rng)
            if c:
                return c

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field(None)
