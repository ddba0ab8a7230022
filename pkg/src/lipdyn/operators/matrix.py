"""Finite sections of sequence-space operators."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from ..errors import DomainError, TruncationError
from ..scalars import Scalar, format_pair, format_scalar, is_exact
from ..spaces import SeqVec
from ..trees import vertex_key
from .base import SeqOperator


@dataclass(frozen=True)
class TruncatedMatrix:
    """Sparse matrix whose rows and columns are labelled by vertices.

    ``entries`` maps ``(i, j)`` positions to nonzero scalars.
    """

    row_index: tuple
    col_index: tuple
    entries: dict = field(default_factory=dict)

    @property
    def rows(self) -> int:
        return len(self.row_index)

    @property
    def cols(self) -> int:
        return len(self.col_index)

    def __getitem__(self, ij) -> Scalar:
        return self.entries.get(ij, 0)

    def dense(self) -> list:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def row_sums(self) -> list:
        sums = [0] * self.rows
        for (i, _), val in self.entries.items():
            sums[i] += abs(val)
        return sums

    def __matmul__(self, other: TruncatedMatrix) -> TruncatedMatrix:
        if self.col_index != other.row_index:
            raise DomainError("inner indices of the two sections do not match")
        by_row: dict = {}
        for (k, j), val in other.entries.items():
            by_row.setdefault(k, []).append((j, val))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[i, j] = out.get((i, j), 0) + a * b
        return TruncatedMatrix(self.row_index, other.col_index,
                               {ij: v for ij, v in out.items() if v != 0})

    def scaled(self, scalar: Scalar) -> TruncatedMatrix:
        return TruncatedMatrix(self.row_index, self.col_index,
                               {ij: scalar * v for ij, v in self.entries.items() if scalar * v != 0})

    def pattern(self) -> frozenset:
        return frozenset(self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + [vertex_key(c) for c in self.col_index])
        for i, r in enumerate(self.row_index):
            writer.writerow([vertex_key(r)] + [_csv_cell(self[i, j]) for j in range(self.cols)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "rows": [vertex_key(r) for r in self.row_index],
            "cols": [vertex_key(c) for c in self.col_index],
            "entries": [
                [vertex_key(self.row_index[i]), vertex_key(self.col_index[j]), format_pair(v)]
                for (i, j), v in sorted(self.entries.items())
            ],
        }


def _csv_cell(value: Scalar) -> str:
    if isinstance(value, complex):
        return str(value)
    if is_exact(value):
        return format_scalar(value)
    return repr(float(value))


def _bfs_prefix(tree, count: int) -> tuple:
    """First ``count`` vertices in breadth-first order."""
    d = 0
    while True:
        verts = tuple(tree.vertices(d))
        if len(verts) >= count:
            return verts[:count]
        if d > 0 and len(verts) == len(tuple(tree.vertices(d - 1))):
            raise DomainError(f"the tree has fewer than {count} vertices")
        d += 1


def required_col_depth(op: SeqOperator, rows) -> int:
    """Deepest column touched by the given rows."""
    tree = op.tree
    return max((tree.depth(w) for v in rows for w in op.row(v)), default=0)


def matrix_truncate(
    op: SeqOperator,
    num_rows: int | None = None,
    depth: int | None = None,
    num_cols: int | None = None,
) -> TruncatedMatrix:
    """Row-complete section of ``op``.

    Rows are the first ``num_rows`` vertices in breadth-first order, or every
    vertex of depth at most ``depth``.  Columns default to every vertex down to
    the deepest one any kept row touches, so each row is complete; on the path
    tree that is ``max phi(i) + 1`` columns for a composition.  An explicit
    ``num_cols`` that would cut a row raises :class:`TruncationError`
    carrying the column count needed.  Entry ``(i, j)`` is coordinate
    ``row_i`` of ``op`` applied to the unit vector at ``col_j``.
    """
    tree = op.tree
    if (num_rows is None) == (depth is None):
        raise DomainError("give exactly one of num_rows and depth")
    if depth is not None:
        rows = tuple(tree.vertices(depth))
    else:
        if num_rows < 1:
            raise DomainError("num_rows must be positive")
        rows = _bfs_prefix(tree, num_rows)
    col_depth = required_col_depth(op, rows)
    needed = {w for v in rows for w in op.row(v)}
    all_cols = tuple(tree.vertices(col_depth))
    if num_cols is None:
        cols = all_cols
    else:
        cols = all_cols[:num_cols] if num_cols <= len(all_cols) else _bfs_prefix(tree, num_cols)
        missing = needed - set(cols)
        if missing:
            need = max(all_cols.index(w) for w in missing) + 1
            raise TruncationError(
                f"{num_cols} columns cut some rows; {need} columns are needed", required=need
            )
    row_pos = {v: i for i, v in enumerate(rows)}
    entries = {}
    for j, c in enumerate(cols):
        image = op.apply(SeqVec(tree, {c: 1}))
        for v, val in image.items():
            i = row_pos.get(v)
            if i is not None:
                entries[i, j] = val
    return TruncatedMatrix(rows, cols, entries)
