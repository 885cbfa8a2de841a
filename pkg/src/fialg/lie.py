"""Iterated commutators and exact verification of Leibniz-type identities.

The central identity for a linear map L and arity n says that applying L
to a left-nested commutator of n arguments equals the sum of the n
nested commutators with L moved through one slot at a time.  Both sides
are multilinear, so checking all n-tuples of basis pairs is exhaustive;
witnesses are therefore always basis tuples, and the lexicographically
first failing tuple is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .elements import FiElement
from .errors import GuardExceeded, MismatchError
from .linsolve import LinSystem
from .maps import LinMap
from .poset import Poset

DEFAULT_TUPLE_GUARD = 200_000


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an exhaustive identity check over basis tuples."""

    verdict: bool
    witness: tuple | None  # (tuple of basis indices, left value, right value)
    tuples_checked: int


def nested_commutator(items) -> FiElement:
    """Left-nested commutator: one item is itself; two items give
    a*b - b*a; each further item is bracketed on from the right."""
    if not items:
        raise ValueError("nested commutator of an empty list")
    acc = items[0]
    for x in items[1:]:
        acc = acc.commutator(x)
    return acc


def _comm_basis(ring, vec, b, rmoves, lmoves, npairs):
    """Commutator of a coefficient vector with basis pair b, via the
    sparse one-sided multiplication moves."""
    zero = ring.zero
    out = [zero] * npairs
    for s, d in rmoves[b]:
        v = vec[s]
        if v != zero:
            out[d] = ring.add(out[d], v)
    for s, d in lmoves[b]:
        v = vec[s]
        if v != zero:
            out[d] = ring.sub(out[d], v)
    return out


def is_derivation(L: LinMap) -> CheckReport:
    """Exhaustive product-rule check over all basis pairs."""
    p, ring = L.poset, L.ring
    b = p.num_pairs
    zero = ring.zero
    checked = 0
    for i in range(b):
        xi, yi = p.pairs[i]
        ei = None
        for j in range(b):
            xj, yj = p.pairs[j]
            checked += 1
            # Product of two basis pairs is either a basis pair or zero.
            if yi == xj:
                lhs = L.image_of_basis(p.index(xi, yj))
            else:
                lhs = FiElement(p, ring, [zero] * b)
            li = L.image_of_basis(i)
            lj = L.image_of_basis(j)
            rhs_vec = _comm_free_products(p, ring, li, j, lj, i)
            rhs = FiElement(p, ring, rhs_vec)
            if lhs != rhs:
                return CheckReport(False, ((i, j), lhs, rhs), checked)
    return CheckReport(True, None, checked)


def _comm_free_products(p, ring, li, j, lj, i):
    """Coefficients of li * e_j + e_i * lj via sparse moves."""
    zero = ring.zero
    out = [zero] * p.num_pairs
    for s, d in p.right_mult_moves(j):
        v = li.coeffs[s]
        if v != zero:
            out[d] = ring.add(out[d], v)
    for s, d in p.left_mult_moves(i):
        v = lj.coeffs[s]
        if v != zero:
            out[d] = ring.add(out[d], v)
    return out


def is_lie_n_derivation(L: LinMap, n: int, guard: int = DEFAULT_TUPLE_GUARD) -> CheckReport:
    """Exhaustive check of the arity-n Leibniz identity on basis tuples.

    Raises GuardExceeded when the number of tuples passes the guard; that
    is a resource condition, not a verdict.
    """
    if n < 2:
        raise ValueError("arity must be >= 2")
    p, ring = L.poset, L.ring
    b = p.num_pairs
    if b**n > guard:
        raise GuardExceeded(
            "%d**%d basis tuples exceed the guard of %d" % (b, n, guard)
        )
    rmoves = [p.right_mult_moves(k) for k in range(b)]
    lmoves = [p.left_mult_moves(k) for k in range(b)]
    zero = ring.zero
    counter = [0]

    def basis_vec(j):
        v = [zero] * b
        v[j] = ring.one
        return v

    def descend(depth, prefix, value, terms):
        # value: coefficients of the nested commutator of the prefix.
        # terms[k]: same commutator but with L already applied in slot k.
        for j in range(b):
            new_value = (
                _comm_basis(ring, value, j, rmoves, lmoves, b) if depth else basis_vec(j)
            )
            new_terms = [
                _comm_basis(ring, t, j, rmoves, lmoves, b) for t in terms
            ]
            if depth:
                lej = FiElement(p, ring, L.columns[j])
                ve = FiElement(p, ring, value)
                new_terms.append(ve.commutator(lej).coeffs)
            else:
                new_terms.append(L.columns[j])
            if depth + 1 == n:
                counter[0] += 1
                lhs = L.apply(FiElement(p, ring, new_value))
                acc = [zero] * b
                for t in new_terms:
                    acc = [ring.add(x, y) for x, y in zip(acc, t)]
                rhs = FiElement(p, ring, acc)
                if lhs != rhs:
                    return (tuple(prefix) + (j,), lhs, rhs)
            else:
                hit = descend(depth + 1, prefix + [j], new_value, new_terms)
                if hit is not None:
                    return hit
        return None

    witness = descend(0, [], [], [])
    return CheckReport(witness is None, witness, counter[0])


# -- constraint systems ---------------------------------------------------
#
# The unknown is the B x B matrix M of a linear map; flat column r*B + j
# is the coefficient of basis pair r in the image of basis pair j.  The
# identity constraints have integer coefficients independent of the ring,
# so the rows are built once per (poset, arity) and reused.


def _normalize_row(row: dict):
    items = [(c, v) for c, v in sorted(row.items()) if v]
    if not items:
        return None
    if items[0][1] < 0:
        items = [(c, -v) for c, v in items]
    return tuple(items)


@lru_cache(maxsize=None)
def _rc_by_dst(poset: Poset, b: int):
    """Per output index r: the (source, sign) pairs of the map
    w -> w*e_b - e_b*w."""
    out = [[] for _ in range(poset.num_pairs)]
    for s, d in poset.right_mult_moves(b):
        out[d].append((s, 1))
    for s, d in poset.left_mult_moves(b):
        out[d].append((s, -1))
    return tuple(tuple(x) for x in out)


def _comm_basis_int(poset, vec, b):
    out = [0] * poset.num_pairs
    for s, d in poset.right_mult_moves(b):
        out[d] += vec[s]
    for s, d in poset.left_mult_moves(b):
        out[d] -= vec[s]
    return out


@lru_cache(maxsize=None)
def lie_constraint_int_rows(poset: Poset, n: int, guard: int = DEFAULT_TUPLE_GUARD):
    """Deduplicated integer rows of the arity-n identity constraints.

    One defect block per basis tuple, B rows each, built incrementally:
    extending a tuple by basis pair b turns the defect D into
    (w -> w*e_b - e_b*w) o D plus the product-rule defect of the pair
    (prefix value, e_b), which is linear in the unknown matrix.
    """
    if n < 2:
        raise ValueError("arity must be >= 2")
    b = poset.num_pairs
    if b**n > guard:
        raise GuardExceeded(
            "%d**%d basis tuples exceed the guard of %d" % (b, n, guard)
        )
    mult = poset.mult_triples
    seen = {}

    def delta_row(r, v, new_v, jb, rc_r):
        """Row r of the product-rule defect block of (v, e_jb)."""
        row = {}
        base = r * b
        for j, w in enumerate(new_v):
            if w:
                row[base + j] = w
        for s, sgn in rc_r:
            sb = s * b
            for j, vj in enumerate(v):
                if vj:
                    c = sb + j
                    val = row.get(c, 0) - sgn * vj
                    if val:
                        row[c] = val
                    else:
                        row.pop(c, None)
        for i, j in mult[r]:
            vi = v[i]
            if vi:
                c = j * b + jb
                val = row.get(c, 0) - vi
                if val:
                    row[c] = val
                else:
                    row.pop(c, None)
            vj = v[j]
            if vj:
                c = i * b + jb
                val = row.get(c, 0) + vj
                if val:
                    row[c] = val
                else:
                    row.pop(c, None)
        return row

    def emit(row):
        key = _normalize_row(row)
        if key is not None and key not in seen:
            seen[key] = None

    def descend(depth, v, dblock):
        for j in range(b):
            new_v = _comm_basis_int(poset, v, j)
            rc = _rc_by_dst(poset, j)
            if depth + 1 == n:
                for r in range(b):
                    row = delta_row(r, v, new_v, j, rc[r])
                    for s, sgn in rc[r]:
                        src = dblock[s]
                        if src:
                            for c, val in src.items():
                                nv = row.get(c, 0) + sgn * val
                                if nv:
                                    row[c] = nv
                                else:
                                    row.pop(c, None)
                    emit(row)
            else:
                new_block = []
                for r in range(b):
                    row = delta_row(r, v, new_v, j, rc[r])
                    for s, sgn in rc[r]:
                        src = dblock[s]
                        if src:
                            for c, val in src.items():
                                nv = row.get(c, 0) + sgn * val
                                if nv:
                                    row[c] = nv
                                else:
                                    row.pop(c, None)
                    new_block.append(row)
                descend(depth + 1, new_v, new_block)

    empty = [{} for _ in range(b)]
    for j0 in range(b):
        v0 = [0] * b
        v0[j0] = 1
        if n == 1:
            break
        descend(1, v0, empty)
    return tuple(seen)


@lru_cache(maxsize=None)
def derivation_constraint_int_rows(poset: Poset):
    """Deduplicated integer rows of the product-rule constraints."""
    b = poset.num_pairs
    seen = {}
    rm_by_dst = []
    lm_by_dst = []
    for k in range(b):
        rm = [[] for _ in range(b)]
        for s, d in poset.right_mult_moves(k):
            rm[d].append(s)
        rm_by_dst.append(rm)
        lm = [[] for _ in range(b)]
        for s, d in poset.left_mult_moves(k):
            lm[d].append(s)
        lm_by_dst.append(lm)
    for i in range(b):
        xi, yi = poset.pairs[i]
        for j in range(b):
            xj, yj = poset.pairs[j]
            prod = poset.pair_index[(xi, yj)] if yi == xj else None
            for r in range(b):
                row = {}
                if prod is not None:
                    row[r * b + prod] = 1
                for s in rm_by_dst[j][r]:
                    c = s * b + i
                    row[c] = row.get(c, 0) - 1
                for s in lm_by_dst[i][r]:
                    c = s * b + j
                    row[c] = row.get(c, 0) - 1
                key = _normalize_row(row)
                if key is not None and key not in seen:
                    seen[key] = None
    return tuple(seen)


def _unknown_labels(poset: Poset):
    labels = []
    for r in range(poset.num_pairs):
        tr = poset.pairs[r]
        for j in range(poset.num_pairs):
            sj = poset.pairs[j]
            labels.append("L[%s,%s <- %s,%s]" % (tr[0], tr[1], sj[0], sj[1]))
    return tuple(labels)


def _int_rows_to_system(poset, ring, int_rows) -> LinSystem:
    b = poset.num_pairs
    ncols = b * b
    conv = ring.from_int
    zero = ring.zero
    dense = []
    for row in int_rows:
        vec = [zero] * ncols
        for c, v in row:
            vec[c] = conv(v)
        dense.append(tuple(vec))
    rhs = tuple([zero] * len(dense))
    return LinSystem(ring, tuple(dense), rhs, _unknown_labels(poset))


def lie_n_constraint_system(
    poset: Poset, ring, n: int, guard: int = DEFAULT_TUPLE_GUARD
) -> LinSystem:
    """Homogeneous system whose solutions are exactly the maps satisfying
    the arity-n identity."""
    return _int_rows_to_system(poset, ring, lie_constraint_int_rows(poset, n, guard))


def derivation_constraint_system(poset: Poset, ring) -> LinSystem:
    """Homogeneous system whose solutions are exactly the derivations."""
    return _int_rows_to_system(poset, ring, derivation_constraint_int_rows(poset))


def linmap_from_flat(poset, ring, flat) -> LinMap:
    """Inverse of the flat unknown layout used by the constraint systems."""
    b = poset.num_pairs
    cols = [[flat[r * b + j] for r in range(b)] for j in range(b)]
    return LinMap(poset, ring, cols)


def flat_from_linmap(L: LinMap):
    b = L.poset.num_pairs
    return tuple(L.columns[j][r] for r in range(b) for j in range(b))
