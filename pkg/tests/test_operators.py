import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipdyn.errors import ContractError, DomainError
from lipdyn.operators import (
    UNBOUNDED, AffineTail, CompositionOp, MultiplicationOp, ShiftOp, SymbolPhi, SymbolPsi,
    ZeroOp, affine_symbol, comp_norm, comp_power_apply, example_zline_symbol, matrix_truncate,
    mult_norms, mult_plus_norm,
)
from lipdyn.oracles import dense_apply, op_norm_rowsum, op_norm_sign_search, op_plus_norm_extreme
from lipdyn.sampling import (
    random_explicit_tree, random_finite_symbol, random_path_symbol, random_psi, random_vector,
    random_zline_symbol,
)
from lipdyn.spaces import SeqVec, from_sequence, lip_norm, to_sequence
from lipdyn.trees import ExplicitTree, PathN0, ZLine, uniform_tree


def _rowsum(op):
    return op_norm_rowsum(matrix_truncate(op, depth=op.certified_depth()))


@pytest.mark.parametrize("phi, expected", [
    (affine_symbol(2, 1), 2),
    (affine_symbol(1, 5), 6),
    (affine_symbol(1, 1), 2),
    (affine_symbol(3, 0), 3),
    (example_zline_symbol(), 2),
])
def test_composition_norms(phi, expected):
    op = CompositionOp(phi)
    assert op.norm() == expected
    assert _rowsum(op) == expected


def test_composition_little_space_contract():
    with pytest.raises(ContractError):
        comp_norm(example_zline_symbol(), little=True)
    phi = SymbolPhi(ZLine(), {}, AffineTail(0, 2, 1), AffineTail(-1, 1, 1), assume_bounded=True)
    assert comp_norm(phi, little=True) == comp_norm(phi)


@pytest.mark.parametrize("tree, expected", [
    (PathN0(), 2), (uniform_tree(2), 4), (ZLine(), 4), (uniform_tree(3), 7),
])
def test_shift_norms(tree, expected):
    op = ShiftOp(tree)
    assert op.norm() == expected
    assert _rowsum(op) == expected


def test_shift_unbounded_on_nonhomogeneous():
    t = ExplicitTree([(0, 1)], 0, {1: [1, 2]})
    assert ShiftOp(t).norm() == UNBOUNDED
    assert not ShiftOp(t).bounded()
    with pytest.raises(DomainError):
        ShiftOp(t).apply(SeqVec(t, {0: 1}))


def test_shift_rows_binary_tree():
    t = uniform_tree(2)
    assert ShiftOp(t).row(0) == {0: 2, (0, 0): 1, (0, 1): 1}
    v = (0, 1)
    assert ShiftOp(t).row(v) == {v: 1, (0, 1, 0): 1, (0, 1, 1): 1, (0, 0): -1}


def test_shift_rows_path_tree():
    t = PathN0()
    assert ShiftOp(t).row(0) == {0: 1, 1: 1}
    assert ShiftOp(t).row(3) == {4: 1}


def test_multiplication_norms_and_plus_conflict():
    t = PathN0()
    psi = SymbolPsi.constant(t, 3)
    assert mult_norms(psi) == (3, 6)
    assert mult_plus_norm(psi) == 3
    psi = SymbolPsi(t, {0: 1, 1: 2, 2: -1})
    op = MultiplicationOp(psi)
    # terms: 1, 2 + 1*1, 1 + 2*3
    assert op.norm() == 7
    assert _rowsum(op) == 7


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_multiplication_plus_norm_against_extreme_points(seed):
    rng = random.Random(seed)
    psi = random_psi(rng, PathN0(), depth=3)
    op = MultiplicationOp(psi)
    m = matrix_truncate(op, depth=op.certified_depth())
    dense = m.dense()
    assert m.row_index[0] == 0 and m.col_index[0] == 0
    assert op.plus_norm() == op_plus_norm_extreme(dense)
    lnorm, plus_formula = mult_norms(psi)
    assert op.plus_norm() <= plus_formula
    assert lnorm == op_norm_rowsum(m)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_conjugacy(seed):
    rng = random.Random(seed)
    cases = [(CompositionOp(random_path_symbol(rng)), PathN0()),
             (CompositionOp(random_zline_symbol(rng)), ZLine())]
    t = random_explicit_tree(rng, 3)
    cases.append((ShiftOp(t), t))
    cases.append((MultiplicationOp(random_psi(rng, t)), t))
    cases.append((ShiftOp(ZLine()), ZLine()))
    for op, tree in cases:
        x = random_vector(rng, tree)
        assert to_sequence(op.apply_lip(from_sequence(x))) == op.apply(x)


def test_conjugacy_on_finite_tree():
    rng = random.Random(5)
    fin = ExplicitTree([(0, 1), (0, 2), (1, 3), (1, 4)], 0, {}, allow_leaves=True)
    for _ in range(20):
        op = CompositionOp(random_finite_symbol(rng, fin))
        x = random_vector(rng, fin, 2, 4)
        assert to_sequence(op.apply_lip(from_sequence(x))) == op.apply(x)
        assert op.norm() == _rowsum(op)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_rows_agree_with_applied_columns(seed):
    rng = random.Random(seed)
    for op in (CompositionOp(random_path_symbol(rng)), ShiftOp(random_explicit_tree(rng, 2)),
               MultiplicationOp(random_psi(rng, PathN0()))):
        m = matrix_truncate(op, depth=3)
        for i, v in enumerate(m.row_index):
            from_columns = {m.col_index[j]: val for (r, j), val in m.entries.items() if r == i}
            assert from_columns == op.row(v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_witnesses_attain_terms(seed):
    rng = random.Random(seed)
    for op in (CompositionOp(random_path_symbol(rng)), CompositionOp(random_zline_symbol(rng)),
               MultiplicationOp(random_psi(rng, PathN0())), ShiftOp(random_explicit_tree(rng, 2))):
        for u in op.tree.vertices(3):
            w = op.witness(u)
            assert w.sup_norm() == 1
            assert abs(op.apply(w)[u]) == op.term(u)
            assert op.term(u) <= op.norm()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_sign_search_on_blocks(seed):
    rng = random.Random(seed)
    op = CompositionOp(random_path_symbol(rng, max_start=3, top=5))
    m = matrix_truncate(op, num_rows=6)
    if m.cols <= 12:
        assert op_norm_sign_search(dense_apply(m.dense()), m.cols) == op_norm_rowsum(m)
        assert op_norm_rowsum(m) <= op.norm()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4))
def test_power_identity_via_matrix_products(seed, n):
    rng = random.Random(seed)
    phi = random_path_symbol(rng, max_start=2, max_a=2, top=4)
    op = CompositionOp(phi)
    depth = 3
    left = matrix_truncate(op.power(n), depth=depth)
    prod = matrix_truncate(op, depth=depth)
    for _ in range(n - 1):
        inner = matrix_truncate(op, depth=op.tree.depth(prod.col_index[-1]))
        prod = prod @ inner
    as_dict = lambda m: {(m.row_index[i], m.col_index[j]): v for (i, j), v in m.entries.items()}
    assert as_dict(left) == as_dict(prod)
    x = random_vector(rng, PathN0(), 4)
    y = x
    for _ in range(n):
        y = op.apply(y)
    assert comp_power_apply(phi, n, x) == y


def test_scaling():
    op = CompositionOp(affine_symbol(2, 1))
    scaled = Fraction(-3, 2) * op
    assert scaled.norm() == 3
    x = SeqVec(PathN0(), {0: 1, 2: 2})
    assert scaled.apply(x) == op.apply(x) * Fraction(-3, 2)
    assert matrix_truncate(scaled, depth=3).entries == matrix_truncate(op, depth=3).scaled(Fraction(-3, 2)).entries
    z = ZeroOp(PathN0())
    assert z.norm() == 0 and z.apply(x).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_norm_bounds_images(seed):
    rng = random.Random(seed)
    op = CompositionOp(random_zline_symbol(rng))
    f = from_sequence(random_vector(rng, ZLine()))
    assert lip_norm(op.apply_lip(f)) <= op.norm() * lip_norm(f)
