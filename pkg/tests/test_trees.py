import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipdyn.errors import DomainError, SpecError
from lipdyn.oracles import lambda_bruteforce
from lipdyn.sampling import random_explicit_tree
from lipdyn.trees import (
    ExplicitTree, PathN0, ZLine, parse_vertex_key, sector_tail_tree, tree_from_json,
    uniform_tree, vertex_key,
)

import random


def test_parent_path():
    t = PathN0()
    assert t.parent(5) == 4
    assert t.parent(0) is None
    assert ZLine().parent(-3) == -2
    assert ZLine().parent(3) == 2


def test_children():
    assert PathN0().children(3) == (4,)
    assert set(ZLine().children(0)) == {-1, 1}
    assert ZLine().children(-2) == (-3,)
    b = uniform_tree(2)
    for v in b.vertices(3):
        assert len(b.children(v)) == 2


def test_depth_and_dist():
    assert PathN0().depth(7) == 7
    assert ZLine().depth(-4) == 4
    for t in (PathN0(), ZLine(), uniform_tree(3)):
        assert t.depth(t.root) == 0
    assert PathN0().dist(3, 8) == 5
    assert ZLine().dist(-2, 3) == 5
    assert ZLine().dist(4, 4) == 0


def test_unknown_vertex_is_domain_error():
    with pytest.raises(DomainError):
        PathN0().parent(-1)
    with pytest.raises(DomainError):
        PathN0().children(1.5)
    with pytest.raises(DomainError):
        uniform_tree(2).depth(99)
    with pytest.raises(DomainError):
        ZLine().dist(0, "x")


def test_lambda_values():
    assert PathN0().lambda_T() == 1
    assert uniform_tree(2).lambda_T() == 4
    assert ZLine().lambda_T() == 3


def test_nonhomogeneous_lambda_is_infinite():
    t = ExplicitTree([(0, 1)], 0, {1: [1, 2]})
    assert t.is_homogeneous_by_sectors() == (False, None)
    assert t.lambda_T() == math.inf


def test_homogeneity_levels():
    assert PathN0().is_homogeneous_by_sectors() == (True, 0)
    assert uniform_tree(2).is_homogeneous_by_sectors() == (True, 0)
    assert ZLine().is_homogeneous_by_sectors() == (True, 1)
    # binary core of depth 2, then unary tails: gamma is constant only from depth 2 on
    assert sector_tail_tree(2, 2, 1).is_homogeneous_by_sectors() == (True, 2)
    # tails of degree 2 continue the binary core seamlessly
    assert sector_tail_tree(2, 2, 2).is_homogeneous_by_sectors() == (True, 0)


def test_leaf_rejected():
    with pytest.raises(SpecError):
        ExplicitTree([(0, 1), (0, 2)], 0, {1: 2})
    ExplicitTree([(0, 1), (0, 2)], 0, {1: 2}, allow_leaves=True)


def test_bad_edges_rejected():
    with pytest.raises(SpecError):
        ExplicitTree([(0, 1), (1, 2), (2, 0)], 0, {})
    with pytest.raises(SpecError):
        ExplicitTree([(0, 1), (2, 3)], 0, {1: 1, 3: 1})
    with pytest.raises(SpecError):
        ExplicitTree([(0, 0)], 0, {})


def test_tail_vertex_ids_roundtrip():
    t = uniform_tree(2)
    v = t.children(t.children(0)[1])[0]
    assert v == (0, 1, 0)
    assert parse_vertex_key(vertex_key(v)) == v
    assert t.parent(v) == (0, 1)
    assert t.parent((0, 1)) == 0


def test_json_roundtrip_and_unknown_keys():
    for t in (PathN0(), ZLine(), sector_tail_tree(2, 2, [1, 2, 3, 1]),
              ExplicitTree([(0, 1)], 0, {1: [1, 2]})):
        assert tree_from_json(t.to_json()) == t
    with pytest.raises(SpecError):
        tree_from_json({"kind": "path_n0", "extra": 1})
    with pytest.raises(SpecError):
        tree_from_json({"kind": "cycle"})


@pytest.mark.parametrize("tree", [PathN0(), ZLine(), uniform_tree(2), sector_tail_tree(2, 2, [1, 3, 2, 1])])
def test_parent_depth_relations(tree):
    for v in tree.vertices(5):
        p = tree.parent(v)
        if p is None:
            assert v == tree.root
            continue
        assert tree.dist(v, p) == 1
        assert tree.depth(v) == tree.depth(p) + 1
        path = tree.path_to_root(v)
        assert len(path) == tree.depth(v) + 1
        assert path[0] == tree.root and path[-1] == v
        assert all(tree.dist(a, b) == 1 for a, b in zip(path, path[1:]))
        assert len(set(path)) == len(path)


@pytest.mark.parametrize("tree", [PathN0(), ZLine(), uniform_tree(2), sector_tail_tree(1, 2, [1, 2])])
def test_dist_is_metric_to_depth_six(tree):
    verts = list(tree.vertices(6 if tree.kind != "explicit" else 4))
    for u, v in itertools.product(verts, repeat=2):
        assert tree.dist(u, v) == tree.dist(v, u)
        assert (tree.dist(u, v) == 0) == (u == v)
    sample = verts[:25]
    for u, v, w in itertools.product(sample, repeat=3):
        assert tree.dist(u, w) <= tree.dist(u, v) + tree.dist(v, w)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 3))
def test_lambda_matches_bruteforce(seed, depth):
    t = random_explicit_tree(random.Random(seed), depth)
    ok, level = t.is_homogeneous_by_sectors()
    assert ok
    assert t.lambda_T() == lambda_bruteforce(t, level + 3)


def test_lambda_bruteforce_grows_on_nonhomogeneous_tree():
    t = ExplicitTree([(0, 1)], 0, {1: [1, 2]})
    values = [lambda_bruteforce(t, d) for d in (4, 8, 16)]
    assert values[0] < values[1] < values[2]
