from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from limcone.exact import Echelon, GaussRat, dependencies, frac, inverse, parse_scalar, rank, solve_dense

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)
gauss = st.builds(GaussRat, rationals, rationals)


def test_frac_rejects_floats_and_bools():
    assert frac("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        frac(0.5)
    with pytest.raises(TypeError):
        frac(True)


def test_parse_scalar_forms():
    assert parse_scalar(3) == 3
    assert parse_scalar("-1/2") == Fraction(-1, 2)
    assert parse_scalar({"re": "1/2", "im": 2}) == GaussRat(Fraction(1, 2), 2)
    assert parse_scalar([1, -1]) == GaussRat(1, -1)


@given(gauss, gauss, gauss)
def test_gauss_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert (a * a.conjugate()).im == 0
    assert a.abs2() == (a * a.conjugate()).re


def test_gauss_mixes_with_fraction():
    i = GaussRat(0, 1)
    assert i * i == -1
    assert Fraction(1, 2) + i == GaussRat(Fraction(1, 2), 1)
    assert 1 - i == GaussRat(1, -1)
    assert 1 / i == -i


def test_echelon_rank_and_dependencies():
    vecs = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
    assert rank(vecs) == 2
    deps = dependencies(vecs)
    assert len(deps) == 1
    d = deps[0]
    combo = {}
    for j, c in d.items():
        for k, v in vecs[j].items():
            combo[k] = combo.get(k, 0) + c * v
    assert all(v == 0 for v in combo.values())


def test_echelon_coordinates():
    e = Echelon(track=True)
    e.insert({0: 1, 1: 1})
    e.insert({1: 1})
    assert e.coordinates({0: 2, 1: 5}) == {0: 2, 1: 3}
    assert e.coordinates({2: 1}) is None


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
def test_solve_dense_solution_checks(rows):
    b = [Fraction(1), Fraction(-2), Fraction(3)]
    x = solve_dense(rows, b)
    if x is not None:
        for r, bi in zip(rows, b):
            assert sum(a * xi for a, xi in zip(r, x)) == bi


def test_inverse_roundtrip_complex():
    i = GaussRat(0, 1)
    a = [[GaussRat(1), i], [i, GaussRat(2)]]
    inv = inverse(a)
    prod = [[sum((a[r][k] * inv[k][c] for k in range(2)), GaussRat(0)) for c in range(2)] for r in range(2)]
    assert prod == [[1, 0], [0, 1]]
    with pytest.raises(ZeroDivisionError):
        inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
