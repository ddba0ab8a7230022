import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipdyn.errors import DomainError, TruncationError
from lipdyn.operators import (
    CompositionOp, MultiplicationOp, ShiftOp, SymbolPsi, TruncatedMatrix, affine_symbol,
    matrix_truncate,
)
from lipdyn.sampling import random_path_symbol, random_vector
from lipdyn.spaces import SeqVec
from lipdyn.trees import PathN0, uniform_tree


def expected_csv(rows, width, ones):
    """Dense 0/1 CSV with the given ones per row, written out by hand."""
    lines = ["," + ",".join(str(j) for j in range(width))]
    for i in range(rows):
        lines.append(str(i) + "," + ",".join("1" if j in ones(i) else "0" for j in range(width)))
    return "\n".join(lines) + "\n"


def test_pattern_shift_by_one():
    m = matrix_truncate(CompositionOp(affine_symbol(1, 1)), num_rows=6)
    ones = lambda i: {0, 1} if i == 0 else {i + 1}
    assert m.to_csv() == expected_csv(6, 7, ones)


def test_pattern_doubling():
    m = matrix_truncate(CompositionOp(affine_symbol(2, 1)), num_rows=5)
    ones = lambda i: {0, 1} if i == 0 else {2 * i, 2 * i + 1}
    assert m.to_csv() == expected_csv(5, 10, ones)


def test_column_count_covers_rows():
    m = matrix_truncate(CompositionOp(affine_symbol(2, 1)), num_rows=16)
    assert m.cols == 2 * 15 + 2
    with pytest.raises(TruncationError) as err:
        matrix_truncate(CompositionOp(affine_symbol(2, 1)), num_rows=4, num_cols=5)
    assert err.value.required == 8


def test_exactly_one_size_argument():
    op = ShiftOp(PathN0())
    with pytest.raises(DomainError):
        matrix_truncate(op)
    with pytest.raises(DomainError):
        matrix_truncate(op, num_rows=3, depth=2)


def test_rational_cells_and_json():
    psi = SymbolPsi(PathN0(), {0: Fraction(1, 2), 1: 2})
    m = matrix_truncate(MultiplicationOp(psi), num_rows=3)
    assert m.to_csv().splitlines()[1].split(",")[1] == "1/2"
    data = m.to_json()
    assert data["rows"] == ["0", "1", "2"]
    assert ["1", "0", ["3/2", "0"]] in data["entries"]


def test_binary_tree_row_labels():
    m = matrix_truncate(ShiftOp(uniform_tree(2)), depth=1)
    assert m.to_csv().splitlines()[0] == ",0,0:0,0:1,0:0:0,0:0:1,0:1:0,0:1:1"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_matrix_applies_like_operator(seed):
    rng = random.Random(seed)
    op = CompositionOp(random_path_symbol(rng))
    m = matrix_truncate(op, depth=4)
    x = random_vector(rng, PathN0(), depth=m.cols - 1)
    dense = m.dense()
    vec = [x[c] for c in m.col_index]
    image = op.apply(x)
    for i, v in enumerate(m.row_index):
        assert sum(a * b for a, b in zip(dense[i], vec)) == image[v]


def test_matmul_index_check():
    a = TruncatedMatrix((0,), (0, 1), {(0, 0): 1})
    with pytest.raises(DomainError):
        a @ a
    b = TruncatedMatrix((0, 1), (0,), {(1, 0): 3})
    assert (a @ b).entries == {}
    assert (TruncatedMatrix((0,), (0, 1), {(0, 1): 2}) @ b).entries == {(0, 0): 6}
    assert SeqVec(PathN0(), {}).is_zero()
