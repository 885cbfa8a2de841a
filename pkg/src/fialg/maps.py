"""Linear endomorphisms of the incidence algebra.

A map is stored as a B x B scalar matrix over the pair basis; column j
holds the coefficients of the image of basis pair j.
"""

from __future__ import annotations

from .elements import FiElement, basis_element
from .errors import MismatchError, ParseError
from .poset import Poset
from .rings import Ring, parse_ring


class LinMap:
    __slots__ = ("poset", "ring", "columns")

    def __init__(self, poset: Poset, ring: Ring, columns):
        columns = tuple(tuple(col) for col in columns)
        b = poset.num_pairs
        if len(columns) != b or any(len(col) != b for col in columns):
            raise ValueError("matrix shape does not match basis size %d" % b)
        self.poset = poset
        self.ring = ring
        self.columns = columns

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(poset, ring):
        b = poset.num_pairs
        z = ring.zero
        return LinMap(poset, ring, [[z] * b for _ in range(b)])

    @staticmethod
    def identity(poset, ring):
        b = poset.num_pairs
        z, o = ring.zero, ring.one
        return LinMap(poset, ring, [[o if r == j else z for r in range(b)] for j in range(b)])

    @staticmethod
    def from_images(images):
        """Build a map from the list of basis images, in index order."""
        first = images[0]
        return LinMap(first.poset, first.ring, [im.coeffs for im in images])

    @staticmethod
    def from_rows(poset, ring, rows):
        b = poset.num_pairs
        return LinMap(poset, ring, [[rows[r][j] for r in range(b)] for j in range(b)])

    def entry(self, r: int, j: int):
        """Coefficient of basis pair r in the image of basis pair j."""
        return self.columns[j][r]

    def image_of_basis(self, j: int) -> FiElement:
        return FiElement(self.poset, self.ring, self.columns[j])

    # -- action and algebra -----------------------------------------------

    def _check(self, other):
        if self.poset != other.poset:
            raise MismatchError("maps live over different posets")
        if self.ring != other.ring:
            raise MismatchError("maps live over different rings")

    def apply(self, el: FiElement) -> FiElement:
        if el.poset != self.poset or el.ring != self.ring:
            raise MismatchError("map and element live over different posets or rings")
        ring = self.ring
        zero = ring.zero
        b = self.poset.num_pairs
        out = [zero] * b
        for j, vj in enumerate(el.coeffs):
            if vj != zero:
                col = self.columns[j]
                for r in range(b):
                    c = col[r]
                    if c != zero:
                        out[r] = ring.add(out[r], ring.mul(c, vj))
        return FiElement(self.poset, ring, out)

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        return LinMap(
            self.poset,
            self.ring,
            [[add(a, b) for a, b in zip(ca, cb)] for ca, cb in zip(self.columns, other.columns)],
        )

    def __sub__(self, other):
        self._check(other)
        sub = self.ring.sub
        return LinMap(
            self.poset,
            self.ring,
            [[sub(a, b) for a, b in zip(ca, cb)] for ca, cb in zip(self.columns, other.columns)],
        )

    def __neg__(self):
        neg = self.ring.neg
        return LinMap(self.poset, self.ring, [[neg(a) for a in col] for col in self.columns])

    def scale(self, scalar):
        mul = self.ring.mul
        scalar = self.ring.canon(scalar)
        return LinMap(self.poset, self.ring, [[mul(scalar, a) for a in col] for col in self.columns])

    def compose(self, other) -> "LinMap":
        """self after other: (self.compose(other))(a) = self(other(a))."""
        self._check(other)
        return LinMap(
            self.poset, self.ring, [self.apply(other.image_of_basis(j)).coeffs for j in range(self.poset.num_pairs)]
        )

    def __eq__(self, other):
        return (
            isinstance(other, LinMap)
            and self.poset == other.poset
            and self.ring == other.ring
            and self.columns == other.columns
        )

    def __hash__(self):
        return hash((self.poset, self.ring, self.columns))

    def is_zero(self):
        z = self.ring.zero
        return all(c == z for col in self.columns for c in col)

    def __repr__(self):
        return "LinMap(%d x %d over %s)" % (self.poset.num_pairs, self.poset.num_pairs, self.ring)


def inner_derivation(beta: FiElement) -> LinMap:
    """The commutator map a -> beta*a - a*beta; always a derivation."""
    p, ring = beta.poset, beta.ring
    images = []
    for (x, y) in p.pairs:
        e = basis_element(p, ring, x, y)
        images.append(beta * e - e * beta)
    return LinMap.from_images(images)


# -- file format --------------------------------------------------------


def parse_map(poset: Poset, text: str) -> LinMap:
    """Parse the map file format.

    Header ``ring: <literal>``; then lines
    ``x y : u1 v1 c1 ; u2 v2 c2 ; ...`` meaning the image of e_xy is the
    stated combination.  Omitted basis lines mean zero image.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].startswith("ring:"):
        raise ParseError("map file must start with a 'ring: <literal>' header")
    ring = parse_ring(lines[0][5:].strip())
    b = poset.num_pairs
    cols = [[ring.zero] * b for _ in range(b)]
    seen = set()
    for line in lines[1:]:
        if ":" not in line:
            raise ParseError("bad map line %r (expected 'x y : terms')" % line)
        head, body = line.split(":", 1)
        hp = head.split()
        if len(hp) != 2:
            raise ParseError("bad map line head %r" % head)
        try:
            j = poset.index(hp[0], hp[1])
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if j in seen:
            raise ParseError("duplicate basis line for (%s, %s)" % (hp[0], hp[1]))
        seen.add(j)
        body = body.strip()
        if not body:
            continue
        for term in body.split(";"):
            tp = term.split()
            if len(tp) != 3:
                raise ParseError("bad map term %r (expected 'u v c')" % term.strip())
            u, v, lit = tp
            try:
                r = poset.index(u, v)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
            cols[j][r] = ring.add(cols[j][r], ring.parse(lit))
    return LinMap(poset, ring, cols)


def format_map(m: LinMap) -> str:
    """Canonical text form: basis lines in index order, nonzero terms
    sorted by target index; zero columns omitted."""
    out = ["ring: %s" % m.ring]
    zero = m.ring.zero
    for j, (x, y) in enumerate(m.poset.pairs):
        col = m.columns[j]
        terms = [
            "%s %s %s" % (u, v, m.ring.format(col[r]))
            for r, (u, v) in enumerate(m.poset.pairs)
            if col[r] != zero
        ]
        if terms:
            out.append("%s %s : %s" % (x, y, " ; ".join(terms)))
    return "\n".join(out) + "\n"
