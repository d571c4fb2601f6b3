from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from limcone.errors import RankError, ShapeError
from limcone.rootsys import (
    Weight,
    build_system,
    dynkin,
    from_fundamental_coords,
    is_dominant_integral,
    to_fundamental_coords,
)
from oracles import brute_roots, canonical, combination, divisibility_dominant, last_positive, listed_fundamental

KINDS = "ABCD"
MIN = {"A": 1, "B": 1, "C": 1, "D": 2}


def ranks(kind, top=8):
    return range(MIN[kind], top + 1)


@pytest.mark.parametrize("kind", KINDS)
def test_fundamental_weights_match_listed(kind):
    for r in ranks(kind):
        sys_ = build_system(kind, r, warn=False)
        for i, xi in enumerate(sys_.fundamental_weights, 1):
            assert canonical(kind, xi.coords) == listed_fundamental(kind, r, i), (kind, r, i)


@pytest.mark.parametrize("kind", KINDS)
def test_positive_roots_match_enumeration(kind):
    for r in ranks(kind, 5):
        sys_ = build_system(kind, r, warn=False)
        got = {a.coords for a in sys_.positive_roots}
        want = {a for a in brute_roots(kind, r) if last_positive(a)}
        assert got == want
        assert len(sys_.all_roots()) == len(brute_roots(kind, r))


def test_c3_positive_roots_listed():
    sys_ = build_system("C", 3)
    got = {tuple(int(x) for x in a.coords) for a in sys_.positive_roots}
    assert got == {
        (2, 0, 0), (0, 2, 0), (0, 0, 2),
        (-1, 1, 0), (1, 1, 0), (-1, 0, 1), (1, 0, 1), (0, -1, 1), (0, 1, 1),
    }


@pytest.mark.parametrize("kind", KINDS)
def test_simple_roots_dual_to_fundamental(kind):
    for r in ranks(kind, 6):
        sys_ = build_system(kind, r, warn=False)
        for i, xi in enumerate(sys_.fundamental_weights):
            for j, a in enumerate(sys_.simple_roots):
                q = sum(x * y for x, y in zip(xi.coords, a.coords)) / sum(y * y for y in a.coords)
                assert q == (1 if i == j else 0)


def test_low_rank_warns_but_builds():
    with pytest.warns(UserWarning):
        sys_ = build_system("C", 2)
    assert sys_.rank == 2
    with pytest.raises(RankError):
        build_system("D", 1)
    with pytest.raises(ShapeError):
        dynkin("E")


def test_a_type_equality_modulo_ones():
    w1 = Weight(dynkin("A"), 2, (0, 2, 2))
    w2 = Weight(dynkin("A"), 2, (1, 3, 3))
    assert w1 == w2 and hash(w1) == hash(w2)
    with pytest.raises(ShapeError):
        Weight(dynkin("A"), 2, (0, 2))


def test_fundamental_coordinate_examples():
    c2 = build_system("C", 2, warn=False)
    assert to_fundamental_coords(c2, c2.weight((2, 4))) == (1, 1)
    b2 = build_system("B", 2)
    assert to_fundamental_coords(b2, b2.weight((1, 3))) == (1, 1)
    c3 = build_system("C", 3)
    assert not is_dominant_integral(c3, c3.weight((4, 2, 2)))
    assert is_dominant_integral(c3, c3.weight((2, 4, 4)))


@pytest.mark.parametrize("kind", KINDS)
def test_semilattice_box_against_divisibility(kind):
    """Every weight with fundamental coordinates in {0..3} is dominant by both tests."""
    for r in ranks(kind, 4):
        sys_ = build_system(kind, r, warn=False)
        for coeffs in product(range(4), repeat=r):
            lam = sys_.weight(combination(kind, r, coeffs))
            assert is_dominant_integral(sys_, lam)
            assert divisibility_dominant(kind, r, lam.coords)
            assert to_fundamental_coords(sys_, lam) == tuple(Fraction(c) for c in coeffs)


@pytest.mark.parametrize("kind", KINDS)
def test_dominance_agrees_on_coordinate_box(kind):
    """Off the semilattice too: all small integer and half-integer vectors."""
    vals = [Fraction(k, 2) for k in range(-4, 7)]
    for r in ranks(kind, 3):
        sys_ = build_system(kind, r, warn=False)
        n = sys_.dim
        for v in product(vals, repeat=n):
            lam = sys_.weight(v)
            assert is_dominant_integral(sys_, lam) == divisibility_dominant(kind, r, v)


@given(st.sampled_from(KINDS), st.integers(0, 6), st.data())
def test_fundamental_roundtrip(kind, extra, data):
    r = MIN[kind] + extra
    sys_ = build_system(kind, r, warn=False)
    coeffs = data.draw(st.lists(st.integers(0, 9), min_size=r, max_size=r))
    lam = from_fundamental_coords(sys_, coeffs)
    assert to_fundamental_coords(sys_, lam) == tuple(Fraction(c) for c in coeffs)
    assert is_dominant_integral(sys_, lam)
