"""Exact scalar arithmetic for the supported coefficient rings.

Three commutative rings with identity are supported: the integers, the
rationals and the residue rings Z/m for any modulus m >= 2 (composite
moduli included).  Scalars are plain Python values kept in canonical
form: arbitrary-precision ints, reduced ``Fraction`` values, residues in
``[0, m)``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ParseError


class Ring:
    """Descriptor of one coefficient ring plus its element arithmetic."""

    kind = ""

    def canon(self, value):
        raise NotImplementedError

    def from_int(self, n: int):
        """Canonical image of an integer in this ring."""
        raise NotImplementedError

    def add(self, a, b):
        return self.canon(a + b)

    def sub(self, a, b):
        return self.canon(a - b)

    def mul(self, a, b):
        return self.canon(a * b)

    def neg(self, a):
        return self.canon(-a)

    def eq(self, a, b) -> bool:
        return a == b

    def characteristic(self) -> int:
        raise NotImplementedError

    def is_k_torsion_free(self, k: int) -> bool:
        """True iff k*r = 0 forces r = 0 in this ring."""
        raise NotImplementedError

    def random(self, rng):
        """One scalar, deterministic given the rng state."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, value) -> str:
        raise NotImplementedError

    def __repr__(self):
        return str(self)

    def __hash__(self):
        return hash(str(self))

    def __eq__(self, other):
        return isinstance(other, Ring) and str(self) == str(other)


class IntegerRing(Ring):
    kind = "int"
    zero = 0
    one = 1

    def canon(self, value):
        if not isinstance(value, int):
            raise TypeError("integer ring scalar must be int, got %r" % (value,))
        return value

    def from_int(self, n):
        return n

    def characteristic(self):
        return 0

    def is_k_torsion_free(self, k):
        if k < 1:
            raise ValueError("k must be >= 1")
        return True

    def random(self, rng):
        return rng.randint(-4, 4)

    def parse(self, text):
        try:
            return int(text)
        except ValueError:
            raise ParseError("bad integer scalar: %r" % text) from None

    def format(self, value):
        return str(value)

    def __str__(self):
        return "int"


class RationalRing(Ring):
    kind = "rat"
    zero = Fraction(0)
    one = Fraction(1)

    def canon(self, value):
        if isinstance(value, int):
            return Fraction(value)
        if not isinstance(value, Fraction):
            raise TypeError("rational scalar must be Fraction or int, got %r" % (value,))
        return value

    def from_int(self, n):
        return Fraction(n)

    def characteristic(self):
        return 0

    def is_k_torsion_free(self, k):
        if k < 1:
            raise ValueError("k must be >= 1")
        return True

    def random(self, rng):
        return Fraction(rng.randint(-4, 4), rng.randint(1, 4))

    def parse(self, text):
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad rational scalar: %r" % text) from None

    def format(self, value):
        if value.denominator == 1:
            return str(value.numerator)
        return "%d/%d" % (value.numerator, value.denominator)

    def __str__(self):
        return "rat"


class ModRing(Ring):
    """Z/m with canonical residues in [0, m); m >= 2, composite allowed."""

    kind = "zmod"

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = modulus
        self.zero = 0
        self.one = 1 % modulus

    def canon(self, value):
        if not isinstance(value, int):
            raise TypeError("Z/m scalar must be int, got %r" % (value,))
        return value % self.modulus

    def from_int(self, n):
        return n % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def characteristic(self):
        return self.modulus

    def is_k_torsion_free(self, k):
        # k*r = 0 (mod m) has a nonzero solution r = m/gcd(k, m) iff gcd > 1.
        if k < 1:
            raise ValueError("k must be >= 1")
        return math.gcd(k, self.modulus) == 1

    def is_prime_modulus(self) -> bool:
        m = self.modulus
        if m < 4:
            return True
        if m % 2 == 0:
            return False
        f = 3
        while f * f <= m:
            if m % f == 0:
                return False
            f += 2
        return True

    def random(self, rng):
        return rng.randrange(self.modulus)

    def parse(self, text):
        try:
            return int(text) % self.modulus
        except ValueError:
            raise ParseError("bad Z/%d scalar: %r" % (self.modulus, text)) from None

    def format(self, value):
        return str(value)

    def __str__(self):
        return "zmod:%d" % self.modulus


INTEGERS = IntegerRing()
RATIONALS = RationalRing()


def parse_ring(text: str) -> Ring:
    """Parse a ring literal: "int", "rat" or "zmod:m" with m >= 2."""
    text = text.strip()
    if text == "int":
        return INTEGERS
    if text == "rat":
        return RATIONALS
    if text.startswith("zmod:"):
        try:
            m = int(text[5:])
        except ValueError:
            raise ParseError("bad modulus in ring literal %r" % text) from None
        if m < 2:
            raise ParseError("modulus must be >= 2 in %r" % text)
        return ModRing(m)
    raise ParseError("unknown ring literal %r (expected int, rat or zmod:m)" % text)
