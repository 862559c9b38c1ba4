"""Shared test helpers: small-case unimodular equivalence and oracles."""

from itertools import product

from discriminant_atlas.intlinalg import det_int, rank_int
from discriminant_atlas.supports import SupportTuple, normalize


def _diff_vectors(support):
    pts = support.points
    return [
        tuple(a - b for a, b in zip(p, q)) for p in pts for q in pts if p != q
    ]


def _aligned(points):
    base = min(points)
    return tuple(sorted(tuple(a - b for a, b in zip(p, base)) for p in points))


def unimodular_equivalent(t1: SupportTuple, t2: SupportTuple) -> bool:
    """Whether a lattice isomorphism plus per-set translations maps t1 onto t2
    (setwise, preserving the order of the supports).  Exhaustive search over
    images of a difference basis; intended for small test instances only.
    """
    n1, _ = normalize(t1)
    n2, _ = normalize(t2)
    if n1.ambient_rank != n2.ambient_rank or len(n1) != len(n2):
        return False
    if [len(s) for s in n1.supports] != [len(s) for s in n2.supports]:
        return False
    d = n1.ambient_rank
    if d == 0:
        return True
    # pick d independent difference vectors from t1, remembering their set
    basis = []
    tags = []
    for i, s in enumerate(n1.supports):
        for v in _diff_vectors(s):
            if rank_int(basis + [v]) == len(basis) + 1:
                basis.append(v)
                tags.append(i)
            if len(basis) == d:
                break
        if len(basis) == d:
            break
    assert len(basis) == d, "normalized tuple must span"
    candidates = [_diff_vectors(n2.supports[i]) for i in tags]
    for images in product(*candidates):
        g = _solve_map(basis, images, d)
        if g is None or abs(det_int(g)) != 1:
            continue
        if all(
            _aligned([_apply(g, p) for p in a.points]) == _aligned(b.points)
            for a, b in zip(n1.supports, n2.supports)
        ):
            return True
    return False


def _apply(g, p):
    return tuple(sum(g[i][j] * p[j] for j in range(len(p))) for i in range(len(g)))


def _solve_map(basis, images, d):
    """Integer matrix g with g·basis[j] = images[j] for every j, or None."""
    from fractions import Fraction

    # row i of g solves  sum_k g[i][k] * basis[j][k] = images[j][i]  over j
    bmat = [[Fraction(x) for x in basis[j]] for j in range(d)]
    rows = []
    for i in range(d):
        rhs = [Fraction(images[j][i]) for j in range(d)]
        sol = _solve_linear(bmat, rhs)
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        rows.append([int(x) for x in sol])
    return rows


def _solve_linear(a, b):
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def maps_into_unit_simplex(t: SupportTuple, bound: int = 3) -> bool:
    """Search for a unimodular map sending every support (up to translation)
    into the vertex set of the standard simplex; dimension <= 2 only."""
    norm, _ = normalize(t)
    d = norm.ambient_rank
    assert d <= 2
    simplex = {(0,) * d} | {tuple(int(i == j) for j in range(d)) for i in range(d)}
    mats = []
    if d == 1:
        mats = [[[1]], [[-1]]]
    else:
        rng = range(-bound, bound + 1)
        for a, b, c, e in product(rng, rng, rng, rng):
            if abs(a * e - b * c) == 1:
                mats.append([[a, b], [c, e]])
    for g in mats:
        ok = True
        for s in norm.supports:
            img = [_apply(g, p) for p in s.points]
            placed = False
            for target in simplex:
                shift = tuple(x - y for x, y in zip(target, img[0]))
                if all(tuple(x + dx for x, dx in zip(p, shift)) in simplex for p in img):
                    placed = True
                    break
            if not placed:
                ok = False
                break
        if ok:
            return True
    return False
