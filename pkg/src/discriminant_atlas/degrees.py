"""Degree formulas for resultants and discriminant components.

Four independent routes are implemented and cross-checked against each
other in the test suite:

* resultant degree as a mixed volume of the simplex-lifted tuple,
* the circuit sum for the mixed discriminant of a unique circuit,
* the all-subtuples sum for essential linearly dependent tuples,
* the face-lattice degree formula for discriminants of a single set,
  evaluated only on a certified-smooth path where all Euler obstructions
  are signs.

When the smoothness certificate fails, degrees are reported as
``Unsupported`` with the failing vertex in the reason instead of a silently
wrong number.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial

from .bkposet import BkPoset, LIR, PosetElement, build_poset
from .classify import BK, classify, is_irreducible_bk
from .errors import (
    InvariantViolation,
    NonnegativeDefect,
    NotBK,
    NotEssentialDependent,
    NotLinearlyDependent,
    NotUniqueCircuit,
)
from .supports import Support, SupportTuple, cayley_set, defect, normalize
from .volumes import (
    Face,
    face_lattice,
    mixed_volume,
    mixed_volume_fixed,
    normalized_volume,
    restricted_point_sets,
)

NOT_A_HYPERSURFACE = "NotAHypersurfaceWarning"


@dataclass(frozen=True)
class Unsupported:
    """A value this artifact declines to compute, with the reason why."""

    reason: str


@dataclass(frozen=True)
class FlatTuple:
    """A negative-defect subtuple lifted by simplex factors to zero defect."""

    base: SupportTuple
    delta: int
    lifted: SupportTuple


@dataclass(frozen=True)
class EulerDatum:
    face: Face
    value: object  # int or Unsupported


def gbinom(n: int, k: int) -> int:
    """Generalized binomial coefficient for integer (possibly negative) n."""
    num = 1
    for i in range(k):
        num *= n - i
    q, r = divmod(num, factorial(k))
    assert r == 0
    return q


def flat_tuple(t: SupportTuple, m) -> FlatTuple:
    """Lift the subtuple m by products with the standard delta-simplex.

    The lifted tuple lives in (span rank + delta) dimensions and has zero
    defect; for the minimal subtuple of minimal defect it is an irreducible
    BK-tuple, which is asserted."""
    m = frozenset(m)
    d = defect(t, m)
    if d >= 0:
        raise NonnegativeDefect(f"subtuple {sorted(m)} has defect {d} >= 0")
    delta = -d
    base_sets, rank = restricted_point_sets(t, m)
    base = SupportTuple(rank, tuple(Support(tuple(s)) for s in base_sets))
    simplex = [(0,) * delta] + [
        tuple(int(i == j) for j in range(delta)) for i in range(delta)
    ]
    lifted_sets = []
    for s in base_sets:
        lifted_sets.append(
            Support(tuple(tuple(p) + v for p in s for v in simplex))
        )
    lifted = SupportTuple(rank + delta, tuple(lifted_sets))
    if defect(lifted, lifted.all_indices) != 0:
        raise InvariantViolation("lifted tuple must have zero defect")
    if not is_irreducible_bk(lifted):
        raise InvariantViolation(
            "lifted tuple of the minimal subtuple must be irreducible",
            payload=sorted(m),
        )
    return FlatTuple(base=base, delta=delta, lifted=lifted)


def resultant_degree(t: SupportTuple, m) -> int:
    """Degree of the sparse resultant of the minimal subtuple m."""
    ft = flat_tuple(t, m)
    deg = mixed_volume(ft.lifted)
    if deg <= 0:
        raise InvariantViolation("resultant degree must be positive")
    return deg


def circuit_mixed_degree(t: SupportTuple, c) -> int:
    """Degree of the mixed discriminant when c is the unique circuit:
    the sum over members of the mixed volume of the circuit minus that
    member, measured in the saturated span of the circuit."""
    from .classify import circuits as circuit_list

    c = frozenset(c)
    found = circuit_list(t)
    if len(found) != 1 or found[0] != c:
        raise NotUniqueCircuit(f"{sorted(c)} is not the unique circuit")
    total = 0
    for i in sorted(c):
        rest = c - {i}
        if rest:
            sets, r = restricted_point_sets(t, rest, span_indices=c)
            total += mixed_volume_fixed(sets, r)
        else:
            total += 1  # empty tuple in the rank-0 lattice
    if total <= 0:
        raise InvariantViolation("circuit degree must be positive")
    return total


def essential_resultant_degree(t: SupportTuple) -> int:
    """Degree of the resultant of an essential linearly dependent tuple:
    the sum of mixed volumes of all subtuples of cardinality = span dim."""
    cls = classify(t)
    if cls.kind != "LinearlyDependent" or not cls.essential:
        raise NotEssentialDependent("tuple is not essential linearly dependent")
    all_sets, d = restricted_point_sets(t, t.all_indices)
    total = 0
    for comb_idx in combinations(range(len(t)), d):
        total += mixed_volume_fixed([all_sets[i] for i in comb_idx], d)
    if total <= 0:
        raise InvariantViolation("essential resultant degree must be positive")
    return total


# ---------------------------------------------------------------------------
# face-formula path


def _normalize_support(a: Support) -> Support:
    t, _ = normalize(SupportTuple(a.dim, (a,)))
    return t.supports[0]


@lru_cache(maxsize=None)
def _smooth_certificate(points: tuple):
    """None when the projective toric variety of the (normalized) set is
    smooth: at every vertex the edge directions form a lattice basis and
    their first lattice points belong to the set.  Otherwise a reason."""
    a = Support(points)
    d = len(points[0])
    faces = face_lattice(a)
    vertices = [f for f in faces if f.dim == 0]
    edges = [f for f in faces if f.dim == 1]
    ptset = set(points)
    from math import gcd

    for vf in vertices:
        v = vf.subset.points[0]
        at_v = [e for e in edges if v in e.subset.points]
        if len(at_v) != d:
            return f"vertex {v} has {len(at_v)} edges, expected {d}"
        gens = []
        for e in at_v:
            other = max(e.subset.points, key=lambda p: sum((x - y) ** 2 for x, y in zip(p, v)))
            diff = tuple(x - y for x, y in zip(other, v))
            g = 0
            for x in diff:
                g = gcd(g, x)
            prim = tuple(x // g for x in diff)
            if tuple(x + y for x, y in zip(v, prim)) not in ptset:
                return f"edge at vertex {v} misses its first lattice point"
            gens.append(prim)
        from .intlinalg import det_int

        if abs(det_int(gens)) != 1:
            return f"vertex cone at {v} is not unimodular"
    return None


def signed_euler_obstruction(a: Support, f: Face):
    """(-1)^(codim of the face) on the certified-smooth path, else Unsupported."""
    norm = _normalize_support(a)
    reason = _smooth_certificate(norm.points)
    if reason is not None:
        return Unsupported(f"Euler obstruction outside the smooth case: {reason}")
    pts, r = _span_dims_of(a)
    return (-1) ** (r - f.dim)


def _span_dims_of(a: Support):
    from .volumes import restrict_to_span

    return restrict_to_span(a.points)


def matsui_takeuchi_degree(a: Support, codim: int):
    """Face-lattice degree of the discriminant of a single set at the given
    codimension; Unsupported outside the smooth path or when the evaluated
    sum is non-positive (dual-defective input)."""
    norm = _normalize_support(a)
    reason = _smooth_certificate(norm.points)
    if reason is not None:
        return Unsupported(f"Euler obstruction outside the smooth case: {reason}")
    d = len(norm.points[0])
    total = 0
    for f in face_lattice(norm):
        e = (-1) ** (d - f.dim)
        factor = gbinom(f.dim - 1, codim) + (-1) ** (codim + 1) * (codim + 1)
        total += e * factor * normalized_volume(f.subset)
    if total <= 0:
        return Unsupported(
            f"{NOT_A_HYPERSURFACE}: formula value {total} at codimension {codim}"
        )
    return total


def lir_degree(c: int) -> int:
    """Degree of the discriminant of a linear irreducible tuple of c sets."""
    if c < 1:
        raise ValueError("need at least one set")
    return c * (c + 1) // 2


def component_degree(p: BkPoset, element: PosetElement):
    """Degree of the component attached to a poset element, via the face sum
    over the Cayley set of its principal ideal; cross-checked exactly
    against the general-codimension formula."""
    sub = p.base.subtuple(element.principal_ideal)
    cay = cayley_set(sub)
    norm = _normalize_support(cay)
    reason = _smooth_certificate(norm.points)
    if reason is not None:
        return Unsupported(f"Euler obstruction outside the smooth case: {reason}")
    d = len(norm.points[0])
    lir = element.irr_class == LIR
    total2 = 0  # doubled to keep the lir branch integral until the end
    for f in face_lattice(norm):
        e = (-1) ** (d - f.dim)
        vol = normalized_volume(f.subset)
        if lir:
            total2 += e * (f.dim + 1) * (f.dim - 4) * vol
        else:
            total2 += 2 * e * (f.dim + 1) * vol
    assert total2 % 2 == 0, "the lir branch must halve exactly"
    deg = total2 // 2
    check = matsui_takeuchi_degree(cay, 2 if lir else 1)
    if isinstance(check, Unsupported) or check != deg:
        raise InvariantViolation(
            "component degree disagrees with the face formula",
            payload=(element.id, deg, check),
        )
    if deg <= 0:
        return Unsupported(
            f"{NOT_A_HYPERSURFACE}: component value {deg} for element {element.id}"
        )
    return deg


def cayley_degree(t: SupportTuple, poset: BkPoset | None = None):
    """Degree of the Cayley discriminant of a BK-tuple: the product of the
    component degrees over maximal poset elements."""
    if poset is None:
        if classify(t).kind != BK:
            raise NotBK("Cayley degree requires a BK-tuple")
        poset = build_poset(t)
    prod = 1
    for i in poset.maximal_elements():
        deg = component_degree(poset, poset.elements[i])
        if isinstance(deg, Unsupported):
            return deg
        prod *= deg
    return prod
