"""Elements of the incidence algebra of a finite poset.

An element is a coefficient vector over the comparable-pair basis;
multiplication is convolution over intervals.  All values are immutable
and every operation is pure.
"""

from __future__ import annotations

from .errors import MismatchError, ParseError
from .poset import Poset
from .rings import Ring, parse_ring


class FiElement:
    __slots__ = ("poset", "ring", "coeffs")

    def __init__(self, poset: Poset, ring: Ring, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != poset.num_pairs:
            raise ValueError(
                "coefficient vector has length %d, basis has %d"
                % (len(coeffs), poset.num_pairs)
            )
        self.poset = poset
        self.ring = ring
        self.coeffs = coeffs

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(poset, ring):
        return FiElement(poset, ring, [ring.zero] * poset.num_pairs)

    @staticmethod
    def from_dict(poset, ring, entries):
        coeffs = [ring.zero] * poset.num_pairs
        for (x, y), c in entries.items():
            coeffs[poset.index(x, y)] = ring.canon(c)
        return FiElement(poset, ring, coeffs)

    def coeff(self, x, y):
        return self.coeffs[self.poset.index(x, y)]

    # -- linear structure -------------------------------------------------

    def _check(self, other):
        if self.poset != other.poset:
            raise MismatchError("elements live over different posets")
        if self.ring != other.ring:
            raise MismatchError("elements live over different rings")

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        return FiElement(
            self.poset, self.ring, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        sub = self.ring.sub
        return FiElement(
            self.poset, self.ring, [sub(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        neg = self.ring.neg
        return FiElement(self.poset, self.ring, [neg(a) for a in self.coeffs])

    def scale(self, scalar):
        mul = self.ring.mul
        scalar = self.ring.canon(scalar)
        return FiElement(self.poset, self.ring, [mul(scalar, a) for a in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, FiElement)
            and self.poset == other.poset
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.poset, self.ring, self.coeffs))

    def is_zero(self):
        z = self.ring.zero
        return all(c == z for c in self.coeffs)

    # -- algebra ----------------------------------------------------------

    def __mul__(self, other):
        """Convolution: out(x,y) = sum over x <= z <= y of a(x,z) b(z,y)."""
        self._check(other)
        ring = self.ring
        a, b = self.coeffs, other.coeffs
        zero = ring.zero
        out = []
        for row in self.poset.mult_triples:
            acc = zero
            for i, j in row:
                ai = a[i]
                if ai != zero:
                    bj = b[j]
                    if bj != zero:
                        acc = ring.add(acc, ring.mul(ai, bj))
            out.append(acc)
        return FiElement(self.poset, ring, out)

    def commutator(self, other):
        return self * other - other * self

    def diagonal_part(self):
        """Keep only the coefficients at pairs (x, x)."""
        zero = self.ring.zero
        out = [
            c if x == y else zero
            for c, (x, y) in zip(self.coeffs, self.poset.pairs)
        ]
        return FiElement(self.poset, self.ring, out)

    def restrict(self, x, y):
        """Restriction to the interval [x, y], defined for x < y only.

        Keeps the corner coefficient at (x, y), the row (x, v) for
        x <= v < y and the column (u, y) for x < u <= y; everything else
        is dropped.
        """
        p = self.poset
        if not p.less(x, y):
            raise ValueError("restriction needs x < y, got %r, %r" % (x, y))
        zero = self.ring.zero
        out = [zero] * p.num_pairs
        out[p.index(x, y)] = self.coeffs[p.index(x, y)]
        for v in p.interval(x, y):
            if v != y:
                k = p.index(x, v)
                out[k] = self.coeffs[k]
        for u in p.interval(x, y):
            if u != x:
                k = p.index(u, y)
                out[k] = self.coeffs[k]
        return FiElement(p, self.ring, out)

    def is_central(self) -> bool:
        """Diagonal with equal diagonal values along every x < y."""
        p = self.poset
        zero = self.ring.zero
        for c, (x, y) in zip(self.coeffs, p.pairs):
            if x != y and c != zero:
                return False
        for (x, y) in p.pairs:
            if x != y and self.coeff(x, x) != self.coeff(y, y):
                return False
        return True

    def __repr__(self):
        terms = [
            "%s*e[%s,%s]" % (self.ring.format(c), x, y)
            for c, (x, y) in zip(self.coeffs, self.poset.pairs)
            if c != self.ring.zero
        ]
        return "FiElement(%s)" % (" + ".join(terms) if terms else "0")


def basis_element(poset, ring, x, y) -> FiElement:
    """The element with coefficient one at (x, y) and zero elsewhere."""
    coeffs = [ring.zero] * poset.num_pairs
    coeffs[poset.index(x, y)] = ring.one
    return FiElement(poset, ring, coeffs)


def identity_element(poset, ring) -> FiElement:
    """The two-sided identity: sum of e_xx over all elements."""
    coeffs = [ring.zero] * poset.num_pairs
    for x in poset.elements:
        coeffs[poset.index(x, x)] = ring.one
    return FiElement(poset, ring, coeffs)


def from_int_vector(poset, ring, vec) -> FiElement:
    """Canonicalize an integer coefficient vector into the given ring."""
    return FiElement(poset, ring, [ring.from_int(v) for v in vec])


# -- file format --------------------------------------------------------


def parse_element(poset: Poset, text: str) -> FiElement:
    """Parse the element file format.

    Header line ``ring: <literal>``; then lines ``x y coeff``.  Unlisted
    pairs are zero; ``#`` starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].startswith("ring:"):
        raise ParseError("element file must start with a 'ring: <literal>' header")
    ring = parse_ring(lines[0][5:].strip())
    coeffs = [ring.zero] * poset.num_pairs
    seen = set()
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("bad element line %r (expected 'x y coeff')" % line)
        x, y, lit = parts
        try:
            k = poset.index(x, y)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if k in seen:
            raise ParseError("duplicate pair (%s, %s) in element file" % (x, y))
        seen.add(k)
        coeffs[k] = ring.parse(lit)
    return FiElement(poset, ring, coeffs)


def format_element(el: FiElement) -> str:
    """Canonical text form; re-reading and re-writing is byte-identical."""
    out = ["ring: %s" % el.ring]
    for c, (x, y) in zip(el.coeffs, el.poset.pairs):
        if c != el.ring.zero:
            out.append("%s %s %s" % (x, y, el.ring.format(c)))
    return "\n".join(out) + "\n"
