"""Finite posets and the indexed basis of comparable pairs.

A poset is built from a list of element names and a list of relations
``a <= b``; the reflexive-transitive closure is computed and antisymmetry
is checked at construction.  The basis of the incidence algebra is the
list of all comparable pairs ``(x, y)`` with ``x <= y``, ordered by the
topological position of ``x`` and then of ``y``, which makes every index
and every emitted file deterministic.
"""

from __future__ import annotations

from .errors import ParseError

DEFAULT_MAX_ELEMENTS = 64


class Poset:
    """Immutable finite poset; safe to share, all queries are pure."""

    def __init__(self, elements, relations, max_elements=DEFAULT_MAX_ELEMENTS):
        elements = list(elements)
        if len(elements) > max_elements:
            raise ParseError(
                "poset has %d elements, cap is %d" % (len(elements), max_elements)
            )
        seen = set()
        for name in elements:
            if name in seen:
                raise ParseError("duplicate element name %r" % name)
            seen.add(name)
        self.elements = tuple(elements)
        n = len(elements)
        self._pos = {x: i for i, x in enumerate(self.elements)}

        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[i][i] = True
        for a, b in relations:
            if a not in self._pos:
                raise ParseError("relation references unknown element %r" % a)
            if b not in self._pos:
                raise ParseError("relation references unknown element %r" % b)
            leq[self._pos[a]][self._pos[b]] = True
        # Warshall closure; fine at the 64-element cap.
        for k in range(n):
            rowk = leq[k]
            for i in range(n):
                if leq[i][k]:
                    rowi = leq[i]
                    for j in range(n):
                        if rowk[j]:
                            rowi[j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j] and leq[j][i]:
                    raise ParseError("not a partial order")
        self._leq = leq

        # Height = longest chain strictly below; refine ties by first appearance.
        height = [0] * n
        order = sorted(range(n), key=lambda i: sum(leq[j][i] for j in range(n)))
        for i in order:
            below = [height[j] for j in range(n) if leq[j][i] and j != i]
            height[i] = max(below) + 1 if below else 0
        topo = sorted(range(n), key=lambda i: (height[i], i))
        self._toporder = {idx: rank for rank, idx in enumerate(topo)}

        pairs = [
            (self.elements[i], self.elements[j])
            for i in range(n)
            for j in range(n)
            if leq[i][j]
        ]
        pairs.sort(key=lambda p: (self._toporder[self._pos[p[0]]], self._toporder[self._pos[p[1]]]))
        self.pairs = tuple(pairs)
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}

        self._intervals = {}
        self._mult = None
        self._rmoves = None
        self._lmoves = None
        self._hash = hash((self.elements, self.pairs))

    # -- basic queries -------------------------------------------------

    @property
    def num_pairs(self) -> int:
        return len(self.pairs)

    def _idx(self, x):
        try:
            return self._pos[x]
        except KeyError:
            raise ValueError("unknown element %r" % (x,)) from None

    def leq(self, x, y) -> bool:
        return self._leq[self._idx(x)][self._idx(y)]

    def less(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def index(self, x, y) -> int:
        try:
            return self.pair_index[(x, y)]
        except KeyError:
            raise ValueError("(%r, %r) is not a comparable pair" % (x, y)) from None

    def interval(self, x, y):
        """All z with x <= z <= y, in element order."""
        if not self.leq(x, y):
            raise ValueError("empty interval request: %r is not <= %r" % (x, y))
        key = (x, y)
        got = self._intervals.get(key)
        if got is None:
            xi, yi = self._pos[x], self._pos[y]
            got = [z for z in self.elements
                   if self._leq[xi][self._pos[z]] and self._leq[self._pos[z]][yi]]
            self._intervals[key] = got
        return list(got)

    def strict_pairs(self):
        return [(x, y) for (x, y) in self.pairs if x != y]

    def components(self):
        """Connected components of the comparability graph, deterministic order."""
        n = len(self.elements)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(n):
            for j in range(n):
                if self._leq[i][j]:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(self.elements[i])
        return tuple(tuple(groups[r]) for r in sorted(groups))

    # -- multiplication structure ---------------------------------------

    @property
    def mult_triples(self):
        """Per pair k = (x,y): list of (i, j) with i = index(x,z), j = index(z,y).

        The convolution of two coefficient vectors a, b is then
        out[k] = sum(a[i] * b[j]).
        """
        if self._mult is None:
            table = []
            for (x, y) in self.pairs:
                row = [
                    (self.pair_index[(x, z)], self.pair_index[(z, y)])
                    for z in self.interval(x, y)
                ]
                table.append(tuple(row))
            self._mult = tuple(table)
        return self._mult

    def right_mult_moves(self, b: int):
        """Sparse action of right multiplication by basis pair b = (u,v).

        Returns tuples (src, dst): (w * e_uv)[dst] += w[src].
        """
        if self._rmoves is None:
            self._build_moves()
        return self._rmoves[b]

    def left_mult_moves(self, b: int):
        """Sparse action of left multiplication by basis pair b = (u,v):
        (e_uv * w)[dst] += w[src]."""
        if self._lmoves is None:
            self._build_moves()
        return self._lmoves[b]

    def _build_moves(self):
        rmoves = []
        lmoves = []
        for (u, v) in self.pairs:
            r = [
                (self.pair_index[(x, u)], self.pair_index[(x, v)])
                for x in self.elements
                if self.leq(x, u)
            ]
            l = [
                (self.pair_index[(v, y)], self.pair_index[(u, y)])
                for y in self.elements
                if self.leq(v, y)
            ]
            rmoves.append(tuple(r))
            lmoves.append(tuple(l))
        self._rmoves = tuple(rmoves)
        self._lmoves = tuple(lmoves)

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Poset(%d elements, %d pairs)" % (len(self.elements), self.num_pairs)


def parse_poset(text: str, max_elements=DEFAULT_MAX_ELEMENTS) -> Poset:
    """Parse the poset file format.

    First non-comment line: whitespace-separated element names.  Each
    further non-comment line: ``a < b``.  ``#`` starts a comment.  The
    stored order is the reflexive-transitive closure of the relations.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty poset file")
    elements = lines[0].split()
    relations = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[1] != "<":
            raise ParseError("bad relation line %r (expected 'a < b')" % line)
        relations.append((parts[0], parts[2]))
    return Poset(elements, relations, max_elements=max_elements)


def chain(k: int) -> Poset:
    """The chain 1 < 2 < ... < k."""
    names = [str(i + 1) for i in range(k)]
    return Poset(names, [(names[i], names[i + 1]) for i in range(k - 1)])


def antichain(k: int) -> Poset:
    names = [str(i + 1) for i in range(k)]
    return Poset(names, [])


def diamond() -> Poset:
    """1 < {2, 3} < 4."""
    return Poset(["1", "2", "3", "4"], [("1", "2"), ("1", "3"), ("2", "4"), ("3", "4")])


def n_poset() -> Poset:
    """The 4-element N shape: 1 < 3, 2 < 3, 2 < 4."""
    return Poset(["1", "2", "3", "4"], [("1", "3"), ("2", "3"), ("2", "4")])


def poset_info(p: Poset) -> str:
    """Human-readable summary used by the CLI."""
    out = []
    out.append("elements: %s" % " ".join(p.elements))
    out.append("size: %d" % len(p.elements))
    out.append("comparable pairs: %d" % p.num_pairs)
    for (x, y) in p.pairs:
        out.append("  %s %s" % (x, y))
    return "\n".join(out) + "\n"
