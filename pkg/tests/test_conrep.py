from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from limcone.conrep import (
    ConicalRepModel,
    generated_subrep,
    norms_round_trip,
    restrict_to_level,
    same_tree,
    smooth_report,
)
from limcone.errors import DepthError, SystemError_, ZeroVector
from limcone.limits import DirectSystemSpec
from limcone.measure import CylinderMeasure, StepSection, build_point_measure, build_rec_measure
from limcone.treeset import CHAIN, TreePath, build_tree, kary, tree_from_shape
from oracles import GROWING_C

F = Fraction


def rec(tree):
    return ConicalRepModel(tree, build_rec_measure(tree))


def test_restrict_examples(chain_tree, binary_chain):
    for n in (1, 2):
        (s,) = restrict_to_level(rec(chain_tree), n)
        assert s.mass == 1 and s.multiplicity == 1
    two = restrict_to_level(rec(binary_chain), 2)
    assert [s.mass for s in two] == [F(1, 2), F(1, 2)]
    assert [s.weight.coords for s in two] == [(2, 2), (2, 4)]
    pt = ConicalRepModel(binary_chain, build_point_measure(binary_chain, TreePath((0, 0))))
    (s,) = restrict_to_level(pt, 1)
    assert s.mass == 1
    with pytest.raises(DepthError):
        restrict_to_level(pt, 3)


def test_model_requires_valid_measure(binary_chain, chain_tree):
    with pytest.raises(ValueError):
        ConicalRepModel(binary_chain, CylinderMeasure(binary_chain, ((F(1),), (F(1), F(1)))))
    with pytest.raises(SystemError_):
        ConicalRepModel(binary_chain, build_rec_measure(chain_tree))


def test_same_tree_examples(full_binary, c_growing):
    r = rec(full_binary)
    px = ConicalRepModel(full_binary, build_point_measure(full_binary, TreePath((0, 1))))
    rep = same_tree(r, px)
    assert rep.same and all(rep.levels)
    assert not rep.identical_measures and not rep.same_atoms
    assert rep.verdict == "same tree, inequivalent representations"
    py = ConicalRepModel(full_binary, build_point_measure(full_binary, TreePath((0, 0))))
    assert same_tree(px, py).verdict == "same tree, inequivalent representations"
    me = same_tree(r, r)
    assert me.same and me.identical_measures and me.verdict == "same tree, identical measures"
    xi1 = build_tree(c_growing, [[((2,), None)], [((2, 2), 0)]], CHAIN)
    xi2 = build_tree(c_growing, [[((0,), None)], [((0, 2), 0)]], CHAIN)
    other = same_tree(rec(xi1), rec(xi2))
    assert not other.same and other.differs_at == 1
    late = build_tree(c_growing, [[((2,), None)], [((2, 4), 0)]], CHAIN)
    assert same_tree(rec(xi1), rec(late)).differs_at == 2
    with pytest.raises(SystemError_):
        same_tree(rec(xi1), rec(build_tree(DirectSystemSpec("B", (1,), "step1"), [[((1,), None)]])))


def test_same_tree_equal_atoms(binary_chain):
    # isolated points carry atoms under both measures
    r = rec(binary_chain)
    p = ConicalRepModel(binary_chain, build_point_measure(binary_chain, TreePath((0, 0))))
    rep = same_tree(r, p)
    assert rep.same and not rep.identical_measures and rep.same_atoms
    assert rep.verdict == "same tree, measures with equal atom sets"


def test_generated_subrep_examples(binary_chain):
    r = rec(binary_chain)
    assert generated_subrep(r, StepSection.of(1, [1])) == r
    sub = generated_subrep(r, StepSection.of(2, [0, 3]))
    assert sub.measure.masses == ((F(1, 2),), (F(1, 2),))
    three = rec(tree_from_shape(GROWING_C, [3, [0, 1, 1, 2]]))
    sub = generated_subrep(three, StepSection.of(1, [0, 1, 1]))
    assert sum(sub.measure.masses[0]) == F(2, 3)
    assert len(sub.tree.levels[1]) == 3
    with pytest.raises(ZeroVector):
        generated_subrep(r, StepSection.of(2, [0, 0]))


def test_smooth_report_examples(binary_chain, full_binary, c_growing):
    s = smooth_report(rec(binary_chain))
    assert s.smooth and len(s.decomposition.summands) == 2
    assert s.blocks_per_level == (1, 2)
    bad = smooth_report(rec(full_binary))
    assert not bad.smooth and [w[3] for w in bad.decomposition.witness] == [2, 4, 6, 8, 10]
    trivial = build_tree(c_growing, [[((0,), None)]], CHAIN)
    t = smooth_report(rec(trivial))
    assert t.smooth and [x.head for x in t.decomposition.summands] == [()]


shapes = st.sampled_from(
    [[1], [2, [0, 1]], [2, [0, 0, 1]], [1, [0, 0, 0], [0, 1, 1, 2]], [3, [0, 1, 1, 2, 2, 2], [0, 1, 2, 3, 4, 5]]]
)


@st.composite
def models(draw):
    shape = draw(shapes)
    tail = draw(st.sampled_from([CHAIN, kary(2)]))
    tree = tree_from_shape(GROWING_C, shape, tail)
    paths = tree.represented_paths()
    if draw(st.booleans()):
        return rec(tree)
    return ConicalRepModel(tree, build_point_measure(tree, draw(st.sampled_from(paths))))


@given(models())
def test_mass_conservation_and_distinct_summands(rep):
    for n in range(1, rep.tree.depth + 1):
        parts = restrict_to_level(rep, n)
        assert sum(s.mass for s in parts) == 1
        labels = [(rep.tree.ancestors(n, s.index), s.weight) for s in parts]
        assert len(set(map(repr, labels))) == len(parts)
        assert all(s.multiplicity == 1 for s in parts)


@given(models())
def test_generated_by_one_is_identity_and_idempotent(rep):
    one = StepSection.of(1, [1] * len(rep.tree.levels[0]))
    assert generated_subrep(rep, one) == rep
    assert generated_subrep(generated_subrep(rep, one), one) == rep


@given(models(), st.data())
def test_subrep_idempotent(rep, data):
    n = len(rep.tree.levels[-1])
    vals = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n).filter(any))
    sub = generated_subrep(rep, StepSection.of(rep.tree.depth, vals))
    ones = StepSection.of(1, [1] * len(sub.tree.levels[0]))
    assert generated_subrep(sub, ones) == sub
    assert norms_round_trip(sub) == sub.measure


@given(models())
def test_round_trip(rep):
    assert norms_round_trip(rep) == rep.measure
