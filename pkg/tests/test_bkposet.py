import random
from itertools import combinations

import pytest

from discriminant_atlas.bkposet import (
    LIR,
    NIR,
    build_poset,
    enumerate_bk_subtuples,
    maximal_filtration,
    poset_queries,
)
from discriminant_atlas.classify import is_irreducible_bk, subset_dims
from discriminant_atlas.errors import NotBK
from discriminant_atlas.randgen import random_bk_tuple
from discriminant_atlas.supports import SupportTuple, make_tuple, normalize
from discriminant_atlas.volumes import mixed_volume

from .util import maps_into_unit_simplex

CHAIN = make_tuple(2, [[[0, 0], [1, 0]], [[0, 0], [1, 0], [0, 1]]])
V_SHAPE = make_tuple(
    3,
    [
        [[0, 0, 0], [1, 0, 0]],
        [[0, 0, 0], [0, 1, 0]],
        [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
    ],
)
SIMPLEX_PAIR = make_tuple(2, [[[0, 0], [1, 0], [0, 1]]] * 2)


def test_enumerate_examples():
    assert enumerate_bk_subtuples(CHAIN) == [
        frozenset(),
        frozenset({0}),
        frozenset({0, 1}),
    ]
    assert enumerate_bk_subtuples(V_SHAPE) == [
        frozenset(),
        frozenset({0}),
        frozenset({1}),
        frozenset({0, 1}),
        frozenset({0, 1, 2}),
    ]
    assert enumerate_bk_subtuples(SIMPLEX_PAIR) == [frozenset(), frozenset({0, 1})]
    with pytest.raises(NotBK):
        enumerate_bk_subtuples(make_tuple(1, [[[0], [1]], [[0], [1]]]))


def test_build_poset_chain():
    p = build_poset(CHAIN)
    assert len(p) == 2
    by_block = {tuple(sorted(e.block)): e for e in p.elements}
    assert set(by_block) == {(0,), (1,)}
    for e in p.elements:
        assert e.irr_class == LIR
        assert e.quotient.supports[0].points == ((0,), (1,))
    lower = by_block[(0,)]
    upper = by_block[(1,)]
    assert lower.principal_ideal == frozenset({0})
    assert upper.principal_ideal == frozenset({0, 1})
    i, j = p.elements.index(lower), p.elements.index(upper)
    assert p.covers == ((i, j),) or p.covers == ((j, i),)
    assert p.heights[i] == 0 and p.heights[j] == 1


def test_build_poset_v_shape():
    p = build_poset(V_SHAPE)
    assert len(p) == 3
    by_block = {tuple(sorted(e.block)): e for e in p.elements}
    assert set(by_block) == {(0,), (1,), (2,)}
    assert all(e.irr_class == LIR for e in p.elements)
    top = by_block[(2,)]
    assert top.principal_ideal == frozenset({0, 1, 2})
    assert top.quotient.supports[0].points == ((0,), (1,))
    maximal = p.maximal_elements()
    assert [p.elements[i].block for i in maximal] == [frozenset({2})]
    assert p.is_simple
    heights = {tuple(sorted(e.block)): p.heights[i] for i, e in enumerate(p.elements)}
    assert heights == {(0,): 0, (1,): 0, (2,): 1}


def test_build_poset_irreducible():
    p = build_poset(SIMPLEX_PAIR)
    assert len(p) == 1
    e = p.elements[0]
    assert e.block == frozenset({0, 1})
    assert e.irr_class == LIR
    norm, _ = normalize(SIMPLEX_PAIR)
    assert e.quotient == norm
    assert p.is_simple
    assert poset_queries(p)["maximal_elements"] == [e.id]


def test_poset_disjoint_blocks():
    d12 = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]]
    d34 = [[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    t = make_tuple(4, [d12, d12, d34, d34])
    p = build_poset(t)
    assert len(p) == 2
    assert not p.is_simple
    assert len(p.hasse_components()) == 2
    assert len(p.maximal_elements()) == 2


def test_order_ideal_bijection_random():
    rng = random.Random(71)
    for _ in range(15):
        t = random_bk_tuple(rng, max_rank=3, max_points=4, coord_bound=2)
        lattice = enumerate_bk_subtuples(t)
        p = build_poset(t)
        n = len(p.elements)
        ideals = set()
        for mask in range(1 << n):
            chosen = [i for i in range(n) if mask >> i & 1]
            if any(
                p.leq(j, i) and j not in chosen
                for i in chosen
                for j in range(n)
            ):
                continue  # not downward closed
            ideals.add(frozenset().union(*(p.elements[i].block for i in chosen)) if chosen else frozenset())
        assert ideals == set(lattice)


def test_quotient_irreducibility_random():
    rng = random.Random(72)
    for _ in range(15):
        t = random_bk_tuple(rng, max_rank=3, max_points=4, coord_bound=2)
        p = build_poset(t)
        for e in p.elements:
            assert is_irreducible_bk(e.quotient)
            assert (e.irr_class == LIR) == (mixed_volume(e.quotient) == 1)


def test_mixed_volume_product_formula():
    rng = random.Random(73)
    for _ in range(15):
        t = random_bk_tuple(rng, max_rank=3, max_points=4, coord_bound=2)
        n, _ = normalize(t)
        p = build_poset(n)
        prod = 1
        for e in p.elements:
            prod *= mixed_volume(e.quotient)
        assert prod == mixed_volume(n)


def test_poset_invariant_under_permutation():
    rng = random.Random(74)
    for _ in range(10):
        t = random_bk_tuple(rng, max_rank=3, max_points=3, coord_bound=2)
        k = len(t)
        perm = list(range(k))
        rng.shuffle(perm)
        t2 = SupportTuple(t.ambient_rank, tuple(t.supports[i] for i in perm))
        p1 = build_poset(t)
        p2 = build_poset(t2)
        # blocks correspond through the permutation
        relabel = {old: new for new, old in enumerate(perm)}
        blocks1 = {frozenset(relabel[i] for i in e.block) for e in p1.elements}
        blocks2 = {e.block for e in p2.elements}
        assert blocks1 == blocks2
        classes1 = sorted(
            (tuple(sorted(relabel[i] for i in e.block)), e.irr_class) for e in p1.elements
        )
        classes2 = sorted((tuple(sorted(e.block)), e.irr_class) for e in p2.elements)
        assert classes1 == classes2


def test_maximal_filtration():
    p = build_poset(V_SHAPE)
    filt = maximal_filtration(p)
    assert len(filt) == 3
    seen = frozenset()
    for e in filt:
        # linear extension: everything below must already be present
        for other in p.elements:
            if other.principal_ideal < e.principal_ideal:
                assert other.block <= seen
        seen |= e.block
    assert seen == frozenset({0, 1, 2})


def test_lir_matches_simplex_search_low_dim():
    rng = random.Random(75)
    checked = 0
    for _ in range(40):
        t = random_bk_tuple(rng, max_rank=2, max_points=4, coord_bound=2)
        n, _ = normalize(t)
        if not is_irreducible_bk(n):
            continue
        expect_lir = mixed_volume(n) == 1
        assert maps_into_unit_simplex(n) == expect_lir
        checked += 1
    assert checked >= 5
