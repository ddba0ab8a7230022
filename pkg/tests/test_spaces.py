import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipdyn.errors import DomainError, SpecError
from lipdyn.oracles import dinv_pathsum
from lipdyn.sampling import random_explicit_tree, random_vector
from lipdyn.scalars import FLOATING, parse_scalar
from lipdyn.spaces import (
    LipFunc, SeqVec, Weights, basis_del, basis_e, chi_sector, chi_singleton, from_sequence,
    in_sigma00, lip_norm, plus_norm, to_sequence, weighted_lip_norm, weighted_plus_norm,
    weighted_sup_norm,
)
from lipdyn.trees import PathN0, ZLine, uniform_tree

TREES = [PathN0(), ZLine(), uniform_tree(2)]


def test_sequence_of_sector_indicator_is_unit_vector():
    for t in TREES:
        for w in t.vertices(3):
            assert to_sequence(chi_sector(t, w)) == basis_e(t, w)


def test_sequence_of_singleton_indicator():
    for t in TREES:
        for w in t.vertices(3):
            assert to_sequence(chi_singleton(t, w)) == basis_del(t, w)


def test_root_singleton_norms():
    b = uniform_tree(2)
    f = chi_singleton(b, 0)
    assert lip_norm(f) == 1
    assert plus_norm(f) == 2


def test_lipfunc_extends_by_deepest_core_ancestor():
    t = PathN0()
    f = LipFunc(t, {0: 1, 1: 3, 2: 7})
    assert f(50) == 7
    assert f.anchor(50) == 2
    assert to_sequence(f) == SeqVec(t, {0: 1, 1: 2, 2: 4})


def test_lipfunc_core_must_be_down_closed():
    with pytest.raises(SpecError):
        LipFunc(PathN0(), {0: 1, 2: 3})


def test_from_sequence_small():
    t = ZLine()
    f = from_sequence(SeqVec(t, {0: 2, -1: 1, 2: Fraction(1, 2)}))
    assert f(-5) == 3
    assert f(1) == 2
    assert f(9) == Fraction(5, 2)


def test_seqvec_drops_zeros_and_arithmetic():
    t = PathN0()
    x = SeqVec(t, {0: 1, 3: 0})
    assert x.support == (0,)
    y = x + basis_e(t, 3) * 2 - basis_e(t, 0)
    assert y == SeqVec(t, {3: 2})
    assert (-y).sup_norm() == 2
    assert SeqVec.zero(t).is_zero()


def test_seqvec_rejects_foreign_vertex():
    with pytest.raises(DomainError):
        SeqVec(PathN0(), {-1: 1})


def test_weighted_norms():
    t = PathN0()
    c = Weights(depth_rule=lambda d: d + 1)
    x = SeqVec(t, {0: 3, 2: -1, 4: Fraction(1, 2)})
    assert weighted_sup_norm(x, c) == 3
    f = from_sequence(x)
    assert weighted_lip_norm(f, c) == 3
    assert weighted_plus_norm(f, c) == 6
    assert weighted_lip_norm(f, Weights()) == lip_norm(f)
    assert weighted_plus_norm(f, Weights()) == plus_norm(f)


def test_weights_validation():
    t = PathN0()
    with pytest.raises(DomainError):
        Weights(table={0: 2})(t, 0)
    with pytest.raises(DomainError):
        Weights(depth_rule=lambda d: -1)(t, 3)


def test_sigma00_membership():
    t = uniform_tree(2)
    assert in_sigma00(basis_del(t, (0, 1)))
    assert not in_sigma00(basis_e(t, (0, 1)))
    assert in_sigma00(SeqVec.zero(t))
    p = PathN0()
    assert in_sigma00(basis_e(p, 2) - basis_e(p, 3))
    assert in_sigma00(basis_e(p, 2) - basis_e(p, 4))
    assert not in_sigma00(basis_e(p, 2) + basis_e(p, 4))


def test_json_roundtrip():
    t = ZLine()
    x = SeqVec(t, {0: Fraction(1, 3), -2: 4})
    assert SeqVec.from_json(t, x.to_json()) == x
    f = from_sequence(x)
    assert LipFunc.from_json(t, f.to_json()) == f
    with pytest.raises(SpecError):
        LipFunc.from_json(t, {"core_values": {"0": 1}, "bogus": 1})


def test_floating_mode_scalars():
    assert parse_scalar("1/4", FLOATING) == 0.25
    assert parse_scalar([1, 2], FLOATING) == complex(1, 2)
    with pytest.raises(ValueError):
        parse_scalar([1, 2])


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0, 1, 2]))
def test_isometry_and_inverse(seed, which):
    rng = random.Random(seed)
    t = [PathN0(), ZLine(), random_explicit_tree(rng, 3)][which]
    x = random_vector(rng, t)
    f = from_sequence(x)
    assert to_sequence(f) == x
    assert lip_norm(f) == x.sup_norm()
    assert from_sequence(to_sequence(f)) == f
    for v in t.vertices(6):
        assert f(v) == dinv_pathsum(x, v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_sequence_map_is_linear(seed):
    rng = random.Random(seed)
    t = ZLine()
    x, y = random_vector(rng, t), random_vector(rng, t)
    a = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    assert from_sequence(x + y * a) == from_sequence(x) + from_sequence(y) * a
