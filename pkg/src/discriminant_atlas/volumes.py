"""Exact lattice volumes, mixed volumes, and face lattices.

Volume convention: ``normalized_volume`` is d! times the Euclidean volume of
the convex hull measured in unimodular coordinates of the saturated span of
the set (d = dimension of the span).  A point has volume 1, the standard
simplex has volume 1, and the mixed volume of d copies of A equals the
volume of A.  With this normalization every formula downstream is
integer-exact, which the code asserts instead of rounding.

The geometry is deliberately low-tech: candidate facet normals are derived
from point subsets with exact integer arithmetic.  Interior points are
discarded first by a midpoint filter and, for large sets, an exact
rational-arithmetic feasibility LP.  This is entirely adequate at the
intended scale (small supports, dimension at most ~7).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, gcd

from .errors import ArityMismatch, EmptySubset, NonzeroDefect
from .intlinalg import Sublattice, det_int, rank_int, saturate, unimodular_coordinates
from .supports import Support, SupportTuple, defect, minkowski_sum, span_basis

_LP_THRESHOLD = 40

_nvol_cache = {}


# ---------------------------------------------------------------------------
# coordinate restriction


def restrict_to_span(points):
    """Map points into unimodular coordinates of the saturated span of their
    differences.  Returns (restricted points, span dimension)."""
    pts = sorted({tuple(p) for p in points})
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    n = len(base)
    r = rank_int(diffs) if diffs else 0
    if r == n:
        return [tuple(a - b for a, b in zip(p, base)) for p in pts], n
    sub = Sublattice.from_generators(n, diffs)
    cmap = unimodular_coordinates(sub)
    return [cmap.apply(tuple(a - b for a, b in zip(p, base))) for p in pts], r


# ---------------------------------------------------------------------------
# convex-hull machinery (exact)


def _prune_midpoints(pts):
    """Drop points that are midpoints of two other points; extreme points survive."""
    ptset = set(pts)
    out = set(pts)
    lst = list(pts)
    m = len(lst)
    for i in range(m):
        p = lst[i]
        for j in range(i + 1, m):
            q = lst[j]
            s = tuple(a + b for a, b in zip(p, q))
            if all(x % 2 == 0 for x in s):
                mid = tuple(x // 2 for x in s)
                if mid != p and mid != q and mid in ptset:
                    out.discard(mid)
    return sorted(out)


def _in_convex_hull(p, pts) -> bool:
    """Exact feasibility LP: is p a convex combination of pts?  Bland's rule."""
    d = len(p)
    m = len(pts)
    if m == 0:
        return False
    nrows = d + 1
    b = [Fraction(x) for x in p] + [Fraction(1)]
    rows = [[Fraction(q[i]) for q in pts] for i in range(d)] + [[Fraction(1)] * m]
    for i in range(nrows):
        if b[i] < 0:
            b[i] = -b[i]
            rows[i] = [-x for x in rows[i]]
    ncols = m + nrows
    tab = [rows[i] + [Fraction(int(i == j)) for j in range(nrows)] + [b[i]] for i in range(nrows)]
    basis = [m + i for i in range(nrows)]
    obj = [Fraction(0)] * (ncols + 1)
    for trow in tab:
        obj = [x + y for x, y in zip(obj, trow)]
    while True:
        enter = None
        for j in range(m):
            if j not in basis and obj[j] > 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(nrows):
            if tab[i][enter] > 0:
                ratio = tab[i][ncols] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return False
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        if f != 0:
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    return obj[ncols] == 0


def _extreme_candidates(pts):
    cand = _prune_midpoints(pts)
    if len(cand) > _LP_THRESHOLD:
        cand = [p for p in cand if not _in_convex_hull(p, [q for q in cand if q != p])]
    return cand


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return v
    return tuple(x // g for x in v)


def _hyperplane_normal(points):
    """Primitive normal of the affine hyperplane through d points in Z^d,
    via cofactor expansion; None if the points are affinely dependent."""
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    d = len(base)
    normal = []
    for j in range(d):
        minor = [[row[i] for i in range(d) if i != j] for row in diffs]
        sign = 1 if j % 2 == 0 else -1
        normal.append(sign * det_int(minor))
    if all(x == 0 for x in normal):
        return None
    return _primitive(tuple(normal))


def facets(points, d):
    """Facets of conv(points) for a full-dimensional point set in Z^d.

    Returns a list of (normal, offset, on_indices) with the inner-pointing
    convention n·x >= c for all points, n primitive, and on_indices the
    indices (into `points`) lying on the facet.
    """
    if d == 0:
        return []
    pts = [tuple(p) for p in points]
    if d == 1:
        vals = [p[0] for p in pts]
        lo, hi = min(vals), max(vals)
        return [
            ((1,), lo, frozenset(i for i, v in enumerate(vals) if v == lo)),
            ((-1,), -hi, frozenset(i for i, v in enumerate(vals) if v == hi)),
        ]
    cand = _extreme_candidates(set(pts))
    seen = set()
    out = []
    for comb_pts in combinations(cand, d):
        nrm = _hyperplane_normal(comb_pts)
        if nrm is None:
            continue
        c = sum(a * b for a, b in zip(nrm, comb_pts[0]))
        key = (nrm, c)
        negkey = (tuple(-x for x in nrm), -c)
        if key in seen or negkey in seen:
            continue
        lt = gt = False
        for p in cand:
            v = sum(a * b for a, b in zip(nrm, p))
            if v < c:
                lt = True
            elif v > c:
                gt = True
            if lt and gt:
                break
        if lt and gt:
            continue
        if lt:
            nrm, c = tuple(-x for x in nrm), -c
        seen.add((nrm, c))
        on = frozenset(
            i for i, p in enumerate(pts) if sum(a * b for a, b in zip(nrm, p)) == c
        )
        out.append((nrm, c, on))
    out.sort(key=lambda f: (f[0], f[1]))
    return out


def _nvol_full(pts, d) -> int:
    """d! · EuclVol(conv pts) for a full-dimensional set in Z^d."""
    if d == 0:
        return 1
    key = (tuple(sorted(pts)), d)
    hit = _nvol_cache.get(key)
    if hit is not None:
        return hit
    if d == 1:
        vals = [p[0] for p in pts]
        res = max(vals) - min(vals)
    elif d == 2:
        res = _shoelace_hull(pts)
    else:
        pts = sorted(set(pts))
        v0 = pts[0]
        total = 0
        for nrm, c, on in facets(pts, d):
            h = sum(a * b for a, b in zip(nrm, v0)) - c
            if h == 0:
                continue
            face_pts = [pts[i] for i in sorted(on)]
            sub, r = restrict_to_span(face_pts)
            assert r == d - 1
            total += abs(h) * _nvol_full(tuple(sub), d - 1)
        res = total
    _nvol_cache[key] = res
    return res


def _shoelace_hull(pts) -> int:
    """2·area of the convex hull of integer points in Z^2 (monotone chain)."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return 0

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return 0
    s = 0
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s)


def _nvol_in_ambient(pts, d) -> int:
    """d! · EuclVol in the given Z^d coordinates; 0 for lower-dimensional sets."""
    pts = sorted(set(map(tuple, pts)))
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    if (rank_int(diffs) if diffs else 0) < d:
        return 0
    return _nvol_full(tuple(pts), d)


# ---------------------------------------------------------------------------
# public volume operations


def normalized_volume(a: Support) -> int:
    """Lattice-normalized volume of conv(a) inside the saturated span."""
    pts, r = restrict_to_span(a.points)
    return _nvol_full(tuple(pts), r)


def mixed_volume_fixed(point_sets, d) -> int:
    """Polarization mixed volume of d point sets in fixed Z^d coordinates.

    Lower-dimensional tuples give 0.  The alternating sum is asserted to be
    an exact nonnegative integer multiple of 1 (never rounded).
    """
    if len(point_sets) != d:
        raise ArityMismatch(f"need exactly {d} sets, got {len(point_sets)}")
    if d == 0:
        return 1
    total = Fraction(0)
    dfact = factorial(d)
    sets = [sorted({tuple(p) for p in s}) for s in point_sets]
    for mask in range(1, 1 << d):
        chosen = [sets[i] for i in range(d) if mask >> i & 1]
        acc = {(0,) * d}
        for s in chosen:
            acc = {tuple(a + b for a, b in zip(p, q)) for p in acc for q in s}
        sign = -1 if (d - len(chosen)) % 2 else 1
        total += sign * Fraction(_nvol_in_ambient(acc, d), dfact)
    assert total.denominator == 1, "polarization sum must be an integer"
    mv = int(total)
    assert mv >= 0, "mixed volume must be nonnegative"
    return mv


def restricted_point_sets(t: SupportTuple, set_indices, span_indices=None):
    """Per-set translated supports in unimodular coordinates of the saturated
    span of `span_indices` (defaults to the chosen sets themselves).

    The chosen sets must span inside the spanning subtuple; degree formulas
    use this to measure subtuples in the lattice of a larger subtuple.
    """
    idx = sorted(set_indices)
    span_idx = sorted(span_indices) if span_indices is not None else idx
    basis = span_basis(t, span_idx)
    sub = Sublattice(t.ambient_rank, basis)
    sat = saturate(sub)
    r = sat.rank
    if r == t.ambient_rank:
        out = []
        for i in idx:
            base = t.supports[i].points[0]
            out.append([tuple(a - b for a, b in zip(p, base)) for p in t.supports[i].points])
        return out, r
    cmap = unimodular_coordinates(sub)
    out = []
    for i in idx:
        base = t.supports[i].points[0]
        out.append([cmap.apply(tuple(a - b for a, b in zip(p, base))) for p in t.supports[i].points])
    return out, r


def mixed_volume(t: SupportTuple) -> int:
    """Mixed volume of the tuple, computed in the saturated span of the union.

    Requires as many supports as the span dimension (the square case).  The
    value equals the generic Bernstein root count in the original torus.
    """
    sets, r = restricted_point_sets(t, t.all_indices)
    if len(sets) != r:
        raise ArityMismatch(
            f"tuple has {len(sets)} supports but spans a rank-{r} lattice"
        )
    return mixed_volume_fixed(sets, r)


def mixed_volume_in_span(t: SupportTuple, s) -> int:
    """Mixed volume of the subtuple s inside the saturated span of its sum."""
    s = frozenset(s)
    if not s:
        raise EmptySubset("mixed volume of an empty subtuple")
    if defect(t, s) != 0:
        raise NonzeroDefect(f"subtuple {sorted(s)} has nonzero defect")
    sets, r = restricted_point_sets(t, s)
    return mixed_volume_fixed(sets, r)


def integer_simplex(k: int, m: int):
    """All lattice points of {a in Z^k, a >= 0, sum a = m}; count C(m+k-1, k-1)."""
    if k == 0:
        return [()] if m == 0 else []
    out = []

    def rec(prefix, rem, slots):
        if slots == 1:
            out.append(tuple(prefix) + (rem,))
            return
        for v in range(rem + 1):
            rec(prefix + [v], rem - v, slots - 1)

    rec([], m, k)
    assert len(out) == comb(m + k - 1, k - 1)
    return out


def cayley_volume_rhs(t: SupportTuple) -> int:
    """Sum over the integer simplex of mixed volumes of repeated supports.

    With d the span dimension of the Minkowski sum, this equals the
    normalized volume of the Cayley set of the tuple (checked as the
    module's primary self-oracle in the test suite)."""
    k = len(t)
    sets, d = restricted_point_sets(t, t.all_indices)
    total = 0
    for a in integer_simplex(k, d):
        repeated = []
        for i, mult in enumerate(a):
            repeated.extend([sets[i]] * mult)
        total += mixed_volume_fixed(repeated, d)
    return total


# ---------------------------------------------------------------------------
# face lattice


@dataclass(frozen=True)
class Face:
    """A face of conv(A), reported as the subset of A lying on it."""

    subset: Support
    dim: int
    codim_in_a: int


def face_lattice(a: Support):
    """All faces of conv(a), including vertices and the improper face a itself.

    Each face is reported as the full subset of points of `a` on the face.
    """
    pts, r = restrict_to_span(a.points)
    orig = sorted({tuple(p) for p in a.points})
    index_of = {p: i for i, p in enumerate(pts)}
    n = len(pts)
    all_idx = frozenset(range(n))
    found = {all_idx}
    if r > 0:
        base_faces = [on for _, _, on in facets(pts, r)]
        found.update(base_faces)
        frontier = list(base_faces)
        while frontier:
            nxt = []
            for f in frontier:
                for g in base_faces:
                    h = f & g
                    if h and h not in found:
                        found.add(h)
                        nxt.append(h)
            frontier = nxt
    faces = []
    for f in sorted(found, key=lambda f: (len(f), sorted(f))):
        fpts = [pts[i] for i in sorted(f)]
        fdim = rank_int([tuple(x - y for x, y in zip(p, fpts[0])) for p in fpts[1:]]) if len(fpts) > 1 else 0
        subset = Support(tuple(orig[i] for i in sorted(f)))
        faces.append(Face(subset, fdim, r - fdim))
    faces.sort(key=lambda face: (face.dim, face.subset.points))
    return faces
