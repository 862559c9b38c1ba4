import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discriminant_atlas.intlinalg import (
    IntMatrix,
    Sublattice,
    hermite_rows,
    integer_kernel,
    invert_unimodular,
    quotient_map,
    saturate,
    smith_decompose,
    solve_in_columns,
    unimodular_coordinates,
)


def snf_postconditions(m):
    u, d, v = smith_decompose(m)
    assert u.mul(m).mul(v).entries == d.entries
    assert abs(u.det()) == 1
    assert abs(v.det()) == 1
    assert d.is_diagonal()
    diag = [d.entries[i][i] for i in range(min(d.rows, d.cols))]
    nonzero = [x for x in diag if x != 0]
    assert diag[: len(nonzero)] == nonzero, "zero divisors must come last"
    for a, b in zip(nonzero, nonzero[1:]):
        assert a > 0 and b % a == 0
    return u, d, v


def test_snf_hand_example():
    _, d, _ = snf_postconditions(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert [d.entries[i][i] for i in range(2)] == [1, 6]


def test_snf_identity():
    u, d, v = smith_decompose(IntMatrix.identity(3))
    assert u.entries == d.entries == v.entries == IntMatrix.identity(3).entries


def test_snf_one_by_one():
    u, d, v = snf_postconditions(IntMatrix.from_rows([[2]]))
    assert d.entries == ((2,),)
    assert u.entries == ((1,),)
    assert v.entries == ((1,),)


@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.integers(0, 10**6),
)
@settings(max_examples=60, deadline=None)
def test_snf_random(rows, cols, seed):
    rng = random.Random(seed)
    m = IntMatrix.from_rows(
        [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
    )
    snf_postconditions(m)


def test_hermite_rows_canonical():
    a = IntMatrix.from_rows([[2, 4], [1, 1]])
    b = IntMatrix.from_rows([[1, 1], [2, 4], [3, 5]])  # same row lattice
    assert hermite_rows(a).entries == hermite_rows(b).entries
    h = hermite_rows(a)
    assert hermite_rows(h).entries == h.entries


def test_saturate_examples():
    s = Sublattice.from_generators(2, [(2, 0)])
    assert saturate(s).basis.entries == ((1,), (0,))
    s2 = Sublattice.from_generators(2, [(1, 1)])
    assert saturate(s2).basis.entries == s2.basis.entries
    s3 = Sublattice.from_generators(2, [(2, 0), (0, 3)])
    sat3 = saturate(s3)
    assert sat3.rank == 2
    assert abs(sat3.basis.det()) == 1  # all of Z^2


def test_saturate_idempotent_random():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 4)
        gens = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(rng.randint(0, n))]
        s = Sublattice.from_generators(n, gens)
        sat = saturate(s)
        assert sat.rank == s.rank
        again = saturate(sat)
        assert again.basis.entries == sat.basis.entries
        for col in s.basis.columns():
            assert sat.contains(col)


def test_quotient_map_examples():
    pi = quotient_map(2, Sublattice.from_generators(2, [(1, 0)]))
    assert pi.entries == ((0, 1),)
    pi2 = quotient_map(2, Sublattice.from_generators(2, [(1, 1)]))
    assert pi2.apply((1, 1)) == (0,)
    assert pi2.entries == ((1, -1),)
    pi3 = quotient_map(2, Sublattice.from_generators(2, []))
    assert pi3.entries == IntMatrix.identity(2).entries


def test_quotient_map_kernel_and_surjectivity():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 4)
        gens = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(0, n))]
        s = Sublattice.from_generators(n, gens)
        sat = saturate(s)
        pi = quotient_map(n, s)
        assert pi.rows == n - sat.rank
        for col in s.basis.columns():
            assert pi.apply(col) == (0,) * pi.rows
        # surjectivity: the row Hermite form has unit pivots on every row
        if pi.rows:
            _, d, _ = smith_decompose(pi)
            assert all(d.entries[i][i] == 1 for i in range(pi.rows))
        # kernel = saturation
        ker = integer_kernel(pi)
        assert ker.cols == sat.rank
        for col in ker.columns():
            assert sat.contains(col)


def test_unimodular_coordinates_examples():
    c = unimodular_coordinates(Sublattice.from_generators(2, [(2, 0)]))
    assert c.apply((1, 0)) == (1,)
    c2 = unimodular_coordinates(Sublattice.from_generators(2, [(1, 0), (0, 1)]))
    assert abs(c2.det()) == 1
    c3 = unimodular_coordinates(Sublattice.from_generators(2, [(1, 1)]))
    assert c3.apply((1, 1)) == (1,)


def test_unimodular_coordinates_random():
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(1, 4)
        gens = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(1, n))]
        s = Sublattice.from_generators(n, gens)
        sat = saturate(s)
        c = unimodular_coordinates(s)
        assert c.rows == sat.rank
        img = c.mul(sat.basis)
        assert img.entries == IntMatrix.identity(sat.rank).entries


def test_solve_in_columns():
    basis = IntMatrix.from_columns([(2, 0), (1, 1)], nrows=2)
    assert solve_in_columns(basis, (3, 1)) == (1, 1)
    assert solve_in_columns(basis, (1, 0)) is None  # not in the lattice
    assert solve_in_columns(IntMatrix.zero(2, 0), (0, 0)) == ()
    assert solve_in_columns(IntMatrix.zero(2, 0), (1, 0)) is None


def test_invert_unimodular():
    m = IntMatrix.from_rows([[1, 2], [0, 1]])
    inv = invert_unimodular(m)
    assert m.mul(inv).entries == IntMatrix.identity(2).entries
