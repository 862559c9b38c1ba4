"""Exact integer lattice linear algebra.

Matrices are immutable tuples of tuples of Python ints, so every
factorization is arbitrary-precision and reproducible.  The module provides
the four primitives the rest of the package is built on:

* Smith normal form with unimodular transforms (``smith_decompose``),
* canonical Hermite row form (``hermite_rows``), used to make quotient maps
  and coordinate maps deterministic,
* saturation of a sublattice (``saturate``),
* quotient and coordinate maps for a sublattice (``quotient_map``,
  ``unimodular_coordinates``).

No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; ``entries`` is a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")
            for x in row:
                if not isinstance(x, int):
                    raise TypeError("entries must be ints")

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        return IntMatrix(len(rows), ncols, rows)

    @staticmethod
    def from_columns(cols, nrows=None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if nrows is None:
            if not cols:
                raise ValueError("need nrows for an empty column list")
            nrows = len(cols[0])
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return IntMatrix(nrows, len(cols), rows)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        ot = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries
        )
        if self.rows and other.cols == 0:
            out = tuple(() for _ in range(self.rows))
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vector) -> tuple:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return det_int([list(r) for r in self.entries])

    def rank(self) -> int:
        return rank_int([list(r) for r in self.entries])

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.entries) for j, x in enumerate(row) if i != j)


def det_int(rows) -> int:
    """Bareiss fraction-free determinant of a square list-of-lists."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def rank_int(rows) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    col = 0
    while rank < len(a) and col < ncols:
        piv = None
        for i in range(rank, len(a)):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        for i in range(rank + 1, len(a)):
            if a[i][col] != 0:
                x = a[i][col]
                a[i] = [pv * b - x * c for b, c in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return rank


def _swap_rows(a, u, i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _add_row(a, u, dst, src, q):
    # row dst += q * row src
    a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
    u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]


def _add_col(a, v, dst, src, q):
    for row in a:
        row[dst] += q * row[src]
    for row in v:
        row[dst] += q * row[src]


def smith_decompose(m: IntMatrix):
    """Smith normal form: returns unimodular (u, v) and diagonal d with u·m·v = d.

    The diagonal of d is nonnegative and satisfies the divisibility chain
    d1 | d2 | ... ; u and v have determinant ±1.
    """
    R, C = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(R)] for i in range(R)]
    v = [[int(i == j) for j in range(C)] for i in range(C)]

    def pivot_search(t):
        best = None
        for i in range(t, R):
            for j in range(t, C):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(R, C):
        pos = pivot_search(t)
        if pos is None:
            break
        if pos[0] != t:
            _swap_rows(a, u, t, pos[0])
        if pos[1] != t:
            _swap_cols(a, v, t, pos[1])
        while True:
            # clear column t below and row t to the right
            dirty = False
            for i in range(t + 1, R):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    _add_row(a, u, i, t, -q)
                    if a[i][t] != 0:
                        _swap_rows(a, u, t, i)
                        dirty = True
            for j in range(t + 1, C):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    _add_col(a, v, j, t, -q)
                    if a[t][j] != 0:
                        _swap_cols(a, v, t, j)
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the remaining block by the pivot
        piv = a[t][t]
        offender = None
        for i in range(t + 1, R):
            for j in range(t + 1, C):
                if a[i][j] % piv != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            _add_row(a, u, t, offender, 1)
            continue  # re-run clearing at the same t
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return (
        IntMatrix.from_rows(u),
        IntMatrix.from_rows(a),
        IntMatrix.from_rows(v),
    )


def hermite_rows(m: IntMatrix) -> IntMatrix:
    """Canonical row Hermite normal form of the row lattice of m.

    Zero rows are dropped; pivots are positive and strictly move right;
    entries above a pivot are reduced into [0, pivot).  Two matrices have
    the same row lattice iff their Hermite forms are equal, which is what
    makes quotient maps reproducible.
    """
    rows = [list(r) for r in m.entries if any(r)]
    n = m.cols
    h = []
    col = 0
    while rows and col < n:
        sel = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not sel:
            col += 1
            continue
        # gcd-reduce until a single row has a nonzero entry in this column
        while len(sel) > 1:
            sel.sort(key=lambda r: abs(r[col]))
            r0 = sel[0]
            out = [r0]
            for r in sel[1:]:
                q = r[col] // r0[col]
                rr = [x - q * y for x, y in zip(r, r0)]
                if rr[col] != 0:
                    out.append(rr)
                elif any(rr):
                    rest.append(rr)
            if len(out) == 1:
                sel = out
                break
            sel = out
        piv = sel[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        h.append(piv)
        rows = [r for r in rest if any(r)]
        col += 1
    # reduce entries above each pivot
    for i in range(len(h)):
        lead = next(j for j, x in enumerate(h[i]) if x != 0)
        p = h[i][lead]
        for k in range(i):
            q = h[k][lead] // p
            if q:
                h[k] = [x - q * y for x, y in zip(h[k], h[i])]
    return IntMatrix.from_rows(h) if h else IntMatrix.zero(0, n)


def hermite_columns(m: IntMatrix) -> IntMatrix:
    """Column Hermite form: canonical basis (as columns) of the column lattice."""
    return hermite_rows(m.transpose()).transpose()


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Canonical basis (columns) of {x in Z^cols : m·x = 0}; always saturated."""
    _, d, v = smith_decompose(m)
    r = sum(1 for i in range(min(d.rows, d.cols)) if d.entries[i][i] != 0)
    cols = [v.column(j) for j in range(r, m.cols)]
    if not cols:
        return IntMatrix.zero(m.cols, 0)
    return hermite_columns(IntMatrix.from_columns(cols, nrows=m.cols))


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (integer result asserted)."""
    n = m.rows
    if n != m.cols:
        raise ValueError("not square")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    inv = []
    for i in range(n):
        row = a[i][n:]
        assert all(x.denominator == 1 for x in row), "matrix was not unimodular"
        inv.append([int(x) for x in row])
    return IntMatrix.from_rows(inv)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient_rank given by an integer basis (columns)."""

    ambient_rank: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_rank:
            raise ValueError("basis rows must equal ambient rank")
        if self.basis.cols and self.basis.rank() != self.basis.cols:
            raise ValueError("basis columns must be linearly independent")

    @property
    def rank(self) -> int:
        return self.basis.cols

    @staticmethod
    def from_generators(ambient_rank: int, generators) -> "Sublattice":
        """Sublattice spanned by arbitrary (possibly dependent) generators."""
        gens = [tuple(int(x) for x in g) for g in generators if any(g)]
        if not gens:
            return Sublattice(ambient_rank, IntMatrix.zero(ambient_rank, 0))
        h = hermite_columns(IntMatrix.from_columns(gens, nrows=ambient_rank))
        return Sublattice(ambient_rank, h)

    def contains(self, vector) -> bool:
        return solve_in_columns(self.basis, vector) is not None


def solve_in_columns(basis: IntMatrix, vector):
    """Integer coordinates of `vector` in the given column basis, or None.

    Solves basis·x = vector exactly; returns None when the vector is not in
    the spanned lattice (non-integral or inconsistent system).
    """
    if len(vector) != basis.rows:
        raise ValueError("vector length mismatch")
    if basis.cols == 0:
        return () if all(x == 0 for x in vector) else None
    u, d, v = smith_decompose(basis)
    w = u.apply(vector)
    y = []
    for i in range(basis.cols):
        di = d.entries[i][i]
        if di == 0:
            return None
        if w[i] % di != 0:
            return None
        y.append(w[i] // di)
    for i in range(basis.cols, basis.rows):
        if w[i] != 0:
            return None
    return v.apply(tuple(y))


def saturate(s: Sublattice) -> Sublattice:
    """The saturation: the largest sublattice of the same rank containing s."""
    if s.rank == 0:
        return Sublattice(s.ambient_rank, IntMatrix.zero(s.ambient_rank, 0))
    ann = integer_kernel(s.basis.transpose())  # columns annihilating s
    if ann.cols == 0:
        basis = hermite_columns(IntMatrix.identity(s.ambient_rank))
        return Sublattice(s.ambient_rank, basis)
    sat = integer_kernel(ann.transpose())
    return Sublattice(s.ambient_rank, sat)


def quotient_map(ambient_rank: int, s: Sublattice) -> IntMatrix:
    """Surjection Z^n -> Z^(n-rank) whose kernel is saturate(s).

    Rows form the canonical Hermite basis of the annihilator lattice of s,
    so the output is deterministic.
    """
    if s.ambient_rank != ambient_rank:
        raise ValueError("ambient rank mismatch")
    if s.rank == 0:
        return IntMatrix.identity(ambient_rank)
    ann = integer_kernel(s.basis.transpose())
    if ann.cols == 0:
        return IntMatrix.zero(0, ambient_rank)
    return hermite_rows(ann.transpose())


def unimodular_coordinates(s: Sublattice) -> IntMatrix:
    """A rank × ambient map restricting to a lattice isomorphism saturate(s) -> Z^rank.

    Canonical: rows are reduced modulo the quotient map's row lattice.
    """
    sat = saturate(s)
    r = sat.rank
    if r == 0:
        return IntMatrix.zero(0, s.ambient_rank)
    h = sat.basis
    u, d, v = smith_decompose(h)
    for i in range(r):
        assert d.entries[i][i] == 1, "saturated basis must have unit elementary divisors"
    # c = v · d⁺ · u  satisfies c·h = identity
    dplus = IntMatrix.from_rows(
        [[int(i == j) for j in range(s.ambient_rank)] for i in range(r)]
    )
    c = v.mul(dplus).mul(u)
    # canonical representative: reduce rows modulo the annihilator row lattice
    pi = quotient_map(s.ambient_rank, s)
    rows = [list(row) for row in c.entries]
    for prow in pi.entries:
        lead = next(j for j, x in enumerate(prow) if x != 0)
        p = prow[lead]
        for i in range(len(rows)):
            q = rows[i][lead] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], prow)]
    out = IntMatrix.from_rows(rows)
    assert out.mul(h).entries == IntMatrix.identity(r).entries
    return out
