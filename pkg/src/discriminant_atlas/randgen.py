"""Seeded random instance generators and the built-in example corpus.

The generators use rejection sampling against the classifier, so every
returned tuple really has the advertised class.  They are deliberately
small: the whole point of the artifact is exact desk-scale verification.
"""

from __future__ import annotations

import random

from .classify import BK, LINEARLY_DEPENDENT, classify
from .supports import Support, SupportTuple, make_tuple


def random_support(rng: random.Random, rank: int, max_points: int, coord_bound: int) -> Support:
    npts = rng.randint(2, max_points)
    pts = set()
    guard = 0
    while len(pts) < npts and guard < 50:
        guard += 1
        pts.add(tuple(rng.randint(0, coord_bound) for _ in range(rank)))
    return Support(tuple(pts))


def random_support_tuple(
    rng: random.Random, rank: int, k: int, max_points: int, coord_bound: int
) -> SupportTuple:
    return SupportTuple(
        rank, tuple(random_support(rng, rank, max_points, coord_bound) for _ in range(k))
    )


def random_bk_tuple(
    rng: random.Random,
    max_rank: int = 3,
    max_points: int = 4,
    coord_bound: int = 2,
    max_tries: int = 400,
) -> SupportTuple:
    """A random BK-tuple (k supports spanning rank k), by rejection."""
    for _ in range(max_tries):
        rank = rng.randint(1, max_rank)
        t = random_support_tuple(rng, rank, rank, max_points, coord_bound)
        if classify(t).kind == BK:
            return t
    raise RuntimeError("failed to sample a BK tuple")


def random_dependent_tuple(
    rng: random.Random,
    max_rank: int = 2,
    max_points: int = 3,
    coord_bound: int = 2,
    max_tries: int = 400,
) -> SupportTuple:
    """A random linearly dependent tuple (one extra support forces it)."""
    for _ in range(max_tries):
        rank = rng.randint(1, max_rank)
        k = rank + rng.randint(1, 2)
        t = random_support_tuple(rng, rank, k, max_points, coord_bound)
        if classify(t).kind == LINEARLY_DEPENDENT:
            return t
    raise RuntimeError("failed to sample a dependent tuple")


def random_essential_dependent_tuple(
    rng: random.Random,
    rank: int = 2,
    extra: int = 1,
    max_points: int = 4,
    coord_bound: int = 2,
    max_tries: int = 400,
) -> SupportTuple:
    """Essential linearly dependent: rank+extra supports, each full-dimensional.

    Full-dimensional sets make every subtuple of cardinality <= rank have
    nonnegative defect, so essentiality holds by construction; it is still
    re-checked via the classifier.
    """
    for _ in range(max_tries):
        sups = []
        for _ in range(rank + extra):
            base = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
            extra_pts = {
                tuple(rng.randint(0, coord_bound) for _ in range(rank))
                for _ in range(rng.randint(0, max_points - rank - 1))
            }
            sups.append(Support(tuple(set(base) | extra_pts | {(0,) * rank})))
        t = SupportTuple(rank, tuple(sups))
        cls = classify(t)
        if cls.kind == LINEARLY_DEPENDENT and cls.essential:
            return t
    raise RuntimeError("failed to sample an essential dependent tuple")


def builtin_corpus():
    """Named worked examples exercised by `atlas selfcheck` and the tests."""
    docs = []

    def add(name, rank, supports):
        docs.append(
            (
                name,
                {
                    "schema_version": "1",
                    "ambient_rank": rank,
                    "supports": supports,
                },
            )
        )

    add("chain", 2, [[[0, 0], [1, 0]], [[0, 0], [1, 0], [0, 1]]])
    add(
        "v_shape",
        3,
        [
            [[0, 0, 0], [1, 0, 0]],
            [[0, 0, 0], [0, 1, 0]],
            [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
        ],
    )
    add(
        "irreducible_pair",
        2,
        [[[0, 0], [1, 0], [0, 1]], [[0, 0], [1, 0], [0, 1]]],
    )
    add("univariate_quadratic", 1, [[[0], [1], [2]]])
    add(
        "sylvester_1_1",
        2,
        [[[0, 0], [1, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]],
    )
    add("three_segments", 1, [[[0], [1]], [[0], [1]], [[0], [1]]])
    add(
        "disjoint_blocks",
        4,
        [
            [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]],
            [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]],
            [[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        ],
    )
    add("doubled_segment_block", 2, [[[0, 0], [1, 0], [0, 1]], [[0, 0], [0, 2]]])
    add("unsaturated_separated", 2, [[[0, 0], [2, 0]], [[0, 0], [0, 1], [0, 2]]])
    add("single_point_pair", 2, [[[0, 0]], [[0, 0], [1, 0], [0, 1]]])
    return docs
