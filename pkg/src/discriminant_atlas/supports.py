"""Tuples of finite lattice point sets and their defect combinatorics.

A ``Support`` is a finite set of integer points; a ``SupportTuple`` is an
ordered list of supports in a common ambient lattice Z^n.  Index subsets
are plain ``frozenset`` objects of 0-based positions into the tuple.

The central quantity is the defect of a subtuple: the dimension of the
lattice spanned by the translated union of its sets minus the number of
sets.  Everything downstream (classification, the BK poset, the
discriminant reports) is expressed through defects, quotient tuples and
Cayley sets defined here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptySubset, EmptySupport, FullSubset
from .intlinalg import (
    IntMatrix,
    Sublattice,
    hermite_columns,
    quotient_map,
    rank_int,
    solve_in_columns,
)

IndexSubset = frozenset


@dataclass(frozen=True)
class Support:
    """A finite set of integer points, stored sorted and deduplicated."""

    points: tuple

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(x) for x in p) for p in self.points}))
        if not pts:
            raise EmptySupport("a support must contain at least one point")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise ValueError("all points of a support must have equal dimension")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        """Dimension of the ambient lattice (not of the affine span)."""
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def translated(self, shift) -> "Support":
        return Support(tuple(tuple(a + b for a, b in zip(p, shift)) for p in self.points))

    def differences(self):
        """Points relative to the lexicographically smallest one."""
        base = self.points[0]
        return [tuple(a - b for a, b in zip(p, base)) for p in self.points[1:]]


@dataclass(frozen=True)
class SupportTuple:
    """Ordered list of supports in Z^ambient_rank; order is significant."""

    ambient_rank: int
    supports: tuple

    def __post_init__(self):
        sups = tuple(s if isinstance(s, Support) else Support(tuple(s)) for s in self.supports)
        if not sups:
            raise EmptySupport("a support tuple must contain at least one support")
        for s in sups:
            if s.dim != self.ambient_rank:
                raise ValueError("support dimension differs from ambient rank")
        object.__setattr__(self, "supports", sups)

    def __len__(self) -> int:
        return len(self.supports)

    @property
    def all_indices(self) -> frozenset:
        return frozenset(range(len(self.supports)))

    def subtuple(self, indices) -> "SupportTuple":
        idx = sorted(indices)
        if not idx:
            raise EmptySubset("subtuple of an empty index set")
        return SupportTuple(self.ambient_rank, tuple(self.supports[i] for i in idx))


def make_tuple(ambient_rank: int, supports) -> SupportTuple:
    """Convenience constructor from plain nested lists."""
    return SupportTuple(ambient_rank, tuple(Support(tuple(map(tuple, s))) for s in supports))


@dataclass(frozen=True)
class Normalization:
    """Record of what ``normalize`` did: per-support shifts and the span basis.

    ``basis`` has the original ambient rank many rows and one column per new
    coordinate; original_point = basis · new_point + translation.
    """

    translations: tuple
    basis: IntMatrix
    original_rank: int


def span_basis(t: SupportTuple, indices) -> IntMatrix:
    """Canonical basis (columns) of the lattice spanned by the translated union."""
    if not indices:
        raise EmptySubset("span of an empty subtuple")
    gens = []
    for i in sorted(indices):
        gens.extend(t.supports[i].differences())
    gens = [g for g in gens if any(g)]
    if not gens:
        return IntMatrix.zero(t.ambient_rank, 0)
    return hermite_columns(IntMatrix.from_columns(gens, nrows=t.ambient_rank))


def span_dim(t: SupportTuple, indices) -> int:
    if not indices:
        return 0
    gens = []
    for i in sorted(indices):
        gens.extend(t.supports[i].differences())
    return rank_int(gens) if gens else 0


def defect(t: SupportTuple, s) -> int:
    """dim(affine span of the Minkowski sum over s) minus |s|."""
    s = frozenset(s)
    if not s:
        raise EmptySubset("defect of the empty subtuple")
    if not s <= t.all_indices:
        raise ValueError("index out of range")
    return span_dim(t, s) - len(s)


def normalize(t: SupportTuple):
    """Translate every support to contain the origin and restrict coordinates
    to the lattice the tuple spans, so that the normalized tuple generates
    Z^d exactly.

    Returns (normalized tuple, Normalization record).  Discriminant-level
    invariants are unchanged by this: the analysis of a tuple equals the
    analysis of its normalized form.
    """
    translations = tuple(s.points[0] for s in t.supports)
    shifted = [s.translated(tuple(-x for x in tr)) for s, tr in zip(t.supports, translations)]
    basis = span_basis(t, t.all_indices)
    d = basis.cols
    new_supports = []
    for s in shifted:
        pts = []
        for p in s.points:
            coords = solve_in_columns(basis, p)
            assert coords is not None, "point outside the spanned lattice"
            pts.append(coords)
        new_supports.append(Support(tuple(pts)))
    normalized = SupportTuple(d, tuple(new_supports))
    return normalized, Normalization(translations, basis, t.ambient_rank)


def quotient_tuple(t: SupportTuple, b) -> SupportTuple:
    """Project the complement of b by the quotient killing the saturated span of b.

    The projection is Hermite-normalized, so results are deterministic.
    Duplicate images inside one support collapse.
    """
    b = frozenset(b)
    if not b:
        raise EmptySubset("quotient by the empty subtuple")
    if not b <= t.all_indices:
        raise ValueError("index out of range")
    rest = sorted(t.all_indices - b)
    if not rest:
        raise FullSubset("quotient would leave no supports")
    basis = span_basis(t, b)
    pi = quotient_map(t.ambient_rank, Sublattice.from_generators(t.ambient_rank, basis.columns()))
    new = tuple(
        Support(tuple(pi.apply(p) for p in t.supports[i].points)) for i in rest
    )
    return SupportTuple(pi.rows, new)


def minkowski_sum(supports) -> Support:
    """Pointwise sum of a non-empty list of supports, deduplicated."""
    supports = list(supports)
    if not supports:
        raise EmptySubset("Minkowski sum of an empty list")
    acc = {tuple(p) for p in supports[0].points}
    for s in supports[1:]:
        acc = {tuple(a + b for a, b in zip(p, q)) for p in acc for q in s.points}
    return Support(tuple(acc))


def cayley_set(t: SupportTuple) -> Support:
    """The union of A_i × {e_i} inside Z^(ambient_rank + k)."""
    k = len(t)
    pts = []
    for i, s in enumerate(t.supports):
        tag = tuple(int(j == i) for j in range(k))
        for p in s.points:
            pts.append(tuple(p) + tag)
    return Support(tuple(pts))
