import random

import pytest

from discriminant_atlas.errors import EmptySubset, EmptySupport, FullSubset
from discriminant_atlas.intlinalg import IntMatrix
from discriminant_atlas.supports import (
    Support,
    SupportTuple,
    cayley_set,
    defect,
    make_tuple,
    minkowski_sum,
    normalize,
    quotient_tuple,
    span_dim,
)

from .util import unimodular_equivalent


def seg(*vals):
    return [[v] for v in vals]


def test_support_validation():
    with pytest.raises(EmptySupport):
        Support(())
    s = Support(((1, 2), (1, 2), (0, 0)))
    assert s.points == ((0, 0), (1, 2))  # deduplicated and sorted


def test_normalize_translation():
    t = make_tuple(1, [seg(5, 6)])
    n, meta = normalize(t)
    assert n.supports[0].points == ((0,), (1,))
    assert meta.translations == ((5,),)


def test_normalize_span_restriction():
    t = make_tuple(2, [[[0, 0], [2, 2]]])
    n, meta = normalize(t)
    assert n.ambient_rank == 1
    assert n.supports[0].points == ((0,), (1,))
    # the basis column maps normalized coordinates back to the original span
    assert meta.basis.apply((1,)) == (2, 2)


def test_normalize_identity_on_normalized():
    t = make_tuple(2, [[[0, 0], [1, 0]], [[0, 0], [0, 1]]])
    n, _ = normalize(t)
    assert n == t


def test_defect_examples():
    t = make_tuple(1, [seg(0, 1), seg(0, 1)])
    assert defect(t, {0, 1}) == -1
    simplex3 = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    t2 = make_tuple(3, [simplex3])
    assert defect(t2, {0}) == 2
    t3 = make_tuple(2, [[[0, 0], [1, 0]], [[0, 0], [0, 1]]])
    assert defect(t3, {0, 1}) == 0
    with pytest.raises(EmptySubset):
        defect(t3, set())


def test_defect_invariance():
    rng = random.Random(3)
    for _ in range(20):
        rank = rng.randint(1, 3)
        k = rng.randint(1, 3)
        sups = [
            [tuple(rng.randint(-2, 2) for _ in range(rank)) for _ in range(rng.randint(1, 4))]
            for _ in range(k)
        ]
        t = make_tuple(rank, sups)
        shift = [tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(k)]
        t_shifted = SupportTuple(
            rank, tuple(s.translated(sh) for s, sh in zip(t.supports, shift))
        )
        subsets = [frozenset({i}) for i in range(k)] + [frozenset(range(k))]
        for s in subsets:
            assert defect(t, s) == defect(t_shifted, s)


def test_defect_monotone_step():
    rng = random.Random(4)
    for _ in range(20):
        rank = rng.randint(1, 3)
        k = rng.randint(2, 4)
        sups = [
            [tuple(rng.randint(0, 2) for _ in range(rank)) for _ in range(rng.randint(1, 3))]
            for _ in range(k)
        ]
        t = make_tuple(rank, sups)
        s = frozenset(rng.sample(range(k), rng.randint(1, k - 1)))
        extra = rng.choice([i for i in range(k) if i not in s])
        before = defect(t, s)
        after = defect(t, s | {extra})
        assert -1 <= after - before <= rank


def test_quotient_tuple_examples():
    t = make_tuple(2, [[[0, 0], [1, 0]], [[0, 0], [1, 0], [0, 1]]])
    q = quotient_tuple(t, {0})
    assert q.ambient_rank == 1
    assert q.supports[0].points == ((0,), (1,))

    t2 = make_tuple(1, [seg(0, 1), seg(0, 2)])
    q2 = quotient_tuple(t2, {0})
    assert q2.ambient_rank == 0
    assert q2.supports[0].points == ((),)

    t3 = make_tuple(
        3,
        [
            [[0, 0, 0], [1, 0, 0]],
            [[0, 0, 0], [0, 1, 0]],
            [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
        ],
    )
    q3 = quotient_tuple(t3, {0, 1})
    assert q3.ambient_rank == 1
    assert q3.supports[0].points == ((0,), (1,))

    with pytest.raises(FullSubset):
        quotient_tuple(t2, {0, 1})
    with pytest.raises(EmptySubset):
        quotient_tuple(t2, set())


def test_quotient_composition_identity():
    # n/k ≅ (n/l)/(k/l) for nested zero-defect subsets, up to a lattice map
    t = make_tuple(
        3,
        [
            [[0, 0, 0], [1, 0, 0]],
            [[0, 0, 0], [1, 0, 0], [0, 1, 0]],
            [[0, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
        ],
    )
    k = {0, 1}
    l = {0}
    direct = quotient_tuple(t, k)
    step1 = quotient_tuple(t, l)  # supports now indexed 1,2 -> positions 0,1
    step2 = quotient_tuple(step1, {0})  # kill the image of support 1
    assert unimodular_equivalent(direct, step2)


def test_quotient_composition_identity_random():
    rng = random.Random(9)
    done = 0
    while done < 10:
        rank = rng.randint(2, 3)
        k = rank + 1
        sups = [
            [tuple(rng.randint(0, 2) for _ in range(rank)) for _ in range(rng.randint(2, 3))]
            for _ in range(k)
        ]
        t = make_tuple(rank, sups)
        if span_dim(t, {0}) != 1 or span_dim(t, {0, 1}) != 2:
            continue
        if defect(t, {0}) != 0 or defect(t, {0, 1}) != 0:
            continue
        direct = quotient_tuple(t, {0, 1})
        step = quotient_tuple(quotient_tuple(t, {0}), {0})
        assert unimodular_equivalent(direct, step)
        done += 1


def test_minkowski_sum():
    a = Support(((0,), (1,)))
    assert minkowski_sum([a, a]).points == ((0,), (1,), (2,))
    assert minkowski_sum([a, Support(((0,),))]).points == a.points
    e1 = Support(((0, 0), (1, 0)))
    e2 = Support(((0, 0), (0, 1)))
    assert minkowski_sum([e1, e2]).points == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_cayley_set_examples():
    t = make_tuple(1, [seg(0, 1), seg(0, 1)])
    assert cayley_set(t).points == ((0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0))
    t2 = make_tuple(1, [seg(0, 1)])
    assert cayley_set(t2).points == ((0, 1), (1, 1))
    t3 = make_tuple(1, [[[0]], [[0]]])
    assert cayley_set(t3).points == ((0, 0, 1), (0, 1, 0))


def test_cayley_span_dimension():
    rng = random.Random(12)
    for _ in range(20):
        rank = rng.randint(1, 3)
        k = rng.randint(1, 3)
        sups = [
            [tuple(rng.randint(0, 2) for _ in range(rank)) for _ in range(rng.randint(1, 4))]
            for _ in range(k)
        ]
        t = make_tuple(rank, sups)
        cay = cayley_set(t)
        cay_tuple = SupportTuple(rank + k, (cay,))
        d = span_dim(t, t.all_indices)
        assert span_dim(cay_tuple, {0}) == d + k - 1
