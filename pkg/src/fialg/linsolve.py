"""Exact linear systems over the supported rings.

All solvers are exact.  Field systems (rationals, prime moduli) go
through Gaussian elimination; systems over the integers or a composite
modulus are lifted to the integers and solved through the Smith normal
form.  Row reduction over the integers is unimodular, so the integer row
lattice, and with it the solution set over every ring, is preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rings import IntegerRing, ModRing, RationalRing, Ring

# numpy's int64 holds products of residues for moduli below 2**31.
_NUMPY_PRIME_LIMIT = 1 << 31


@dataclass(frozen=True)
class LinSystem:
    """Dense exact system A x = b with labelled columns."""

    ring: Ring
    rows: tuple
    rhs: tuple
    labels: tuple = ()

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else len(self.labels)


@dataclass(frozen=True)
class SolutionModule:
    """Solutions of a system as particular vector plus generator span."""

    ring: Ring
    ncols: int
    solvable: bool
    particular: tuple | None
    generators: tuple


def _xgcd(a: int, b: int):
    """g, s, t with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _combine(ca: int, rowa: dict, cb: int, rowb: dict) -> dict:
    out = dict(rowa) if ca == 1 else {k: ca * v for k, v in rowa.items()}
    for k, v in rowb.items():
        s = out.get(k, 0) + cb * v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _divide_content(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class _IntEchelon:
    """Online row echelon over the integers with sparse rows.

    With normalize=True rows may be rescaled (content division), which
    keeps entries small and is valid when only the rational row space
    matters.  With normalize=False every update is unimodular, so the
    integer row lattice is preserved exactly; required when the reduced
    matrix is reused over Z or Z/m.
    """

    def __init__(self, normalize: bool):
        self.normalize = normalize
        self.pivots = {}

    def insert(self, row: dict):
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                if self.normalize:
                    row = _divide_content(row)
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                self.pivots[c] = row
                return
            a, b = piv[c], row[c]
            if self.normalize:
                g = math.gcd(a, b)
                row = _combine(a // g, row, -(b // g), piv)
                row = _divide_content(row)
            elif b % a == 0:
                row = _combine(1, row, -(b // a), piv)
            else:
                # 2x2 unimodular update: det [[s, t], [-b/g, a/g]] = 1.
                g, s, t = _xgcd(a, b)
                new_piv = _combine(s, piv, t, row)
                row = _combine(a // g, row, -(b // g), piv)
                self.pivots[c] = new_piv

    def reduced_rows(self):
        return [self.pivots[c] for c in sorted(self.pivots)]


def smith_normal_form(a):
    """Diagonalize an integer matrix: U A V = D with d1 | d2 | ...

    U and V are unimodular; the products are verified exactly before
    returning.  Input is a list of equal-length integer rows.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    M = [list(row) for row in a]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def row_sub(i, j, q):
        if q:
            Mi, Mj = M[i], M[j]
            for k in range(n):
                Mi[k] -= q * Mj[k]
            Ui, Uj = U[i], U[j]
            for k in range(m):
                Ui[k] -= q * Uj[k]

    def col_sub(i, j, q):
        if q:
            for row in M:
                row[i] -= q * row[j]
            for row in V:
                row[i] -= q * row[j]

    def negate_row(i):
        M[i] = [-v for v in M[i]]
        U[i] = [-v for v in U[i]]

    t = 0
    limit = min(m, n)
    while t < limit:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(M[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    row_sub(i, t, M[i][t] // M[t][t])
                    if M[i][t]:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    col_sub(j, t, M[t][j] // M[t][t])
                    if M[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if dirty:
                continue
            if M[t][t] < 0:
                negate_row(t)
            d = M[t][t]
            viol = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % d:
                        viol = i
                        break
                if viol is not None:
                    break
            if viol is None:
                break
            # Pull the offending row up so the pivot becomes the gcd.
            row_sub(t, viol, -1)
        t += 1

    _check_snf(a, M, U, V, m, n)
    return U, M, V


def _check_snf(a, D, U, V, m, n):
    av = [
        [sum(a[i][k] * V[k][j] for k in range(n)) for j in range(n)]
        for i in range(m)
    ]
    uav = [
        [sum(U[i][k] * av[k][j] for k in range(m)) for j in range(n)]
        for i in range(m)
    ]
    assert uav == D, "Smith normal form postcondition failed: UAV != D"
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            assert i == j or D[i][j] == 0, "off-diagonal entry in D"
    for i in range(len(diag) - 1):
        if diag[i] == 0:
            assert diag[i + 1] == 0, "zero before nonzero on the diagonal"
        else:
            assert diag[i + 1] % diag[i] == 0, "divisibility chain broken"
    assert all(d >= 0 for d in diag)


def exact_det(a) -> int:
    """Exact integer determinant (fraction-free elimination)."""
    n = len(a)
    M = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            found = None
            for i in range(k + 1, n):
                if M[i][k]:
                    found = i
                    break
            if found is None:
                return 0
            M[k], M[found] = M[found], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# -- solving ------------------------------------------------------------


def solve(system: LinSystem) -> SolutionModule:
    """Solve A x = b exactly; infeasibility is a value, not an error."""
    ring = system.ring
    ncols = system.ncols
    sparse = []
    for row, b in zip(system.rows, system.rhs):
        sparse.append(_lift_row(ring, row, b, ncols))
    return solve_int_rows(sparse, ncols, ring)


def _lift_row(ring, row, b, ncols):
    """Sparse integer lift of one equation; column ncols carries -b."""
    if isinstance(ring, RationalRing):
        vals = [Fraction(v) for v in row] + [Fraction(-ring.canon(b))]
        den = 1
        for v in vals:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in vals]
    else:
        ints = [int(v) for v in row] + [-int(b)]
    out = {i: v for i, v in enumerate(ints[:ncols]) if v}
    if ints[ncols]:
        out[ncols] = ints[ncols]
    return out


def solve_int_rows(rows, ncols, ring, force_path=None) -> SolutionModule:
    """Core solver on sparse integer rows (column ncols holds -b).

    force_path is for cross-checks in tests: "field" or "snf".
    """
    if isinstance(ring, RationalRing):
        return _solve_rational(rows, ncols, ring)
    if isinstance(ring, ModRing) and force_path != "snf":
        if ring.is_prime_modulus() and ring.modulus < _NUMPY_PRIME_LIMIT:
            return _solve_modp(rows, ncols, ring)
    if force_path == "field":
        raise ValueError("field path requires a field ring")
    return _solve_snf(rows, ncols, ring)


def _solve_rational(rows, ncols, ring) -> SolutionModule:
    ech = _IntEchelon(normalize=True)
    for row in rows:
        ech.insert(row)
    if ncols in ech.pivots:
        return SolutionModule(ring, ncols, False, None, ())
    pivots = ech.pivots
    pivot_cols = sorted(pivots)
    free_cols = [c for c in range(ncols) if c not in pivots]

    def back_substitute(assign):
        # assign: preset values on free columns (and implicit 1 on col ncols).
        x = {c: Fraction(v) for c, v in assign.items()}
        for c in reversed(pivot_cols):
            row = pivots[c]
            acc = Fraction(0)
            for c2, v in row.items():
                if c2 == c:
                    continue
                if c2 == ncols:
                    acc += v
                else:
                    acc += v * x.get(c2, Fraction(0))
            x[c] = -acc / row[c]
        return tuple(x.get(c, Fraction(0)) for c in range(ncols))

    particular = back_substitute({})
    gens = []
    for f in free_cols:
        hom = {c: pivots[c] for c in pivot_cols}
        # Solve the homogeneous system with x[f] = 1.
        x = {f: Fraction(1)}
        for c in reversed(pivot_cols):
            row = hom[c]
            acc = Fraction(0)
            for c2, v in row.items():
                if c2 != c and c2 != ncols:
                    acc += v * x.get(c2, Fraction(0))
            x[c] = -acc / row[c]
        gens.append(tuple(x.get(c, Fraction(0)) for c in range(ncols)))
    return SolutionModule(ring, ncols, True, particular, tuple(gens))


def _solve_modp(rows, ncols, ring) -> SolutionModule:
    p = ring.modulus
    if not rows:
        rows = [{}]
    A = np.zeros((len(rows), ncols + 1), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            A[i, c] = v % p
    nrows = A.shape[0]
    r = 0
    pivot_cols = []
    for c in range(ncols + 1):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivot_cols.append(c)
        r += 1
    if pivot_cols and pivot_cols[-1] == ncols:
        return SolutionModule(ring, ncols, False, None, ())
    particular = [0] * ncols
    for i, c in enumerate(pivot_cols):
        particular[c] = int(-A[i, ncols]) % p
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    gens = []
    for f in free_cols:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivot_cols):
            v[c] = int(-A[i, f]) % p
        gens.append(tuple(v))
    return SolutionModule(ring, ncols, True, tuple(particular), tuple(gens))


def _solve_snf(rows, ncols, ring) -> SolutionModule:
    modulus = ring.modulus if isinstance(ring, ModRing) else None
    ech = _IntEchelon(normalize=False)
    for row in rows:
        ech.insert(row)
    reduced = ech.reduced_rows()
    A = []
    b = []
    for row in reduced:
        A.append([row.get(c, 0) for c in range(ncols)])
        b.append(-row.get(ncols, 0))
    if not A:
        A = [[0] * ncols]
        b = [0]
    k = len(A)
    U, D, V = smith_normal_form(A)
    c = [sum(U[i][j] * b[j] for j in range(k)) for i in range(k)]

    y = [0] * ncols
    for i in range(k):
        d = D[i][i] if i < ncols else 0
        ci = c[i]
        if modulus is None:
            if d == 0:
                if ci != 0:
                    return SolutionModule(ring, ncols, False, None, ())
            elif ci % d == 0:
                if i < ncols:
                    y[i] = ci // d
            else:
                return SolutionModule(ring, ncols, False, None, ())
        else:
            g = math.gcd(d, modulus)
            if ci % g:
                return SolutionModule(ring, ncols, False, None, ())
            if i < ncols and g != modulus:
                step = modulus // g
                y[i] = (ci // g) * pow(d // g, -1, step) % step

    def times_v(vec):
        return [sum(V[r][j] * vec[j] for j in range(ncols)) for r in range(ncols)]

    particular = times_v(y)
    gens = []
    for j in range(ncols):
        d = D[j][j] if j < k else 0
        col = [V[r][j] for r in range(ncols)]
        if modulus is None:
            if d == 0:
                gens.append(col)
        else:
            g = math.gcd(d, modulus)
            if g > 1:
                scaled = [(modulus // g) * v % modulus for v in col]
                if any(scaled):
                    gens.append(scaled)
    if modulus is not None:
        particular = [v % modulus for v in particular]
    conv = ring.from_int
    return SolutionModule(
        ring,
        ncols,
        True,
        tuple(conv(v) for v in particular),
        tuple(tuple(conv(v) for v in g) for g in gens),
    )


# -- sampling and membership ----------------------------------------------


def sample_solution(sol: SolutionModule, ring: Ring, seed) -> tuple:
    """particular + random ring combination of the generators.

    Uniform coefficients over Z/m; small bounded integers otherwise.
    Deterministic for a fixed seed.
    """
    import random

    if not sol.solvable:
        raise ValueError("cannot sample from an infeasible solution module")
    rng = random.Random(seed)
    out = list(sol.particular)
    for gen in sol.generators:
        if isinstance(ring, ModRing):
            coef = rng.randrange(ring.modulus)
        else:
            coef = rng.randint(-3, 3)
        if coef:
            coef = ring.from_int(coef)
            for i, v in enumerate(gen):
                out[i] = ring.add(out[i], ring.mul(coef, v))
    return tuple(out)


def module_contains(sol: SolutionModule, ring: Ring, vector) -> bool:
    """Exact membership of a vector in particular + span(generators)."""
    if not sol.solvable:
        return False
    target = [ring.sub(ring.canon(v), p) for v, p in zip(vector, sol.particular)]
    if not sol.generators:
        return all(v == ring.zero for v in target)
    rows = []
    for i in range(sol.ncols):
        row = tuple(gen[i] for gen in sol.generators)
        rows.append(row)
    sub = LinSystem(ring, tuple(rows), tuple(target))
    return solve(sub).solvable
