"""Brute-force cross-checks.

Nothing here reuses the formulas of the operator modules: norms come from
finite matrices or from exhaustive sign search, path sums from walking the
parent pointers, and the branching supremum from enumerating vertices.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass

from .errors import DomainError
from .scalars import DEFAULT_TOL, Scalar, format_scalar, is_exact

SIGN_SEARCH_MAX_DIM = 20


@dataclass
class OracleReport:
    quantity: str
    formula_value: Scalar
    oracle_value: Scalar
    agreement: bool
    depth_used: int

    @classmethod
    def compare(cls, quantity: str, formula_value, oracle_value, depth_used: int,
                tol: float | None = None) -> OracleReport:
        if is_exact(formula_value) and is_exact(oracle_value) and tol is None:
            ok = formula_value == oracle_value
        else:
            ok = abs(formula_value - oracle_value) <= (DEFAULT_TOL if tol is None else tol)
        return cls(quantity, formula_value, oracle_value, ok, depth_used)

    def to_json(self) -> dict:
        data = asdict(self)
        for key in ("formula_value", "oracle_value"):
            v = data[key]
            data[key] = "inf" if v == math.inf else (format_scalar(v) if not isinstance(v, complex) else str(v))
        return data


def op_norm_rowsum(m) -> Scalar:
    """Largest row l1 sum of a finite matrix (dense rows or a ``TruncatedMatrix``)."""
    if hasattr(m, "entries") and hasattr(m, "row_index"):
        sums = {}
        for (i, _), val in m.entries.items():
            sums[i] = sums.get(i, 0) + abs(val)
        return max(sums.values(), default=0)
    return max((sum(abs(a) for a in row) for row in m), default=0)


def op_norm_sign_search(apply_fn: Callable[[Sequence], Sequence], dim: int) -> Scalar:
    """``max ||A s||_inf`` over all sign vectors ``s`` in ``{-1, 1}^dim``.

    For real coefficients the maximum over the unit cube is attained at a
    vertex, so this is the operator norm.  ``s`` and ``-s`` give the same
    value, so the first sign is fixed.
    """
    if dim > SIGN_SEARCH_MAX_DIM:
        raise DomainError(f"sign search refuses dim {dim} > {SIGN_SEARCH_MAX_DIM}")
    if dim == 0:
        return max((abs(v) for v in apply_fn(())), default=0)
    best = 0
    for rest in itertools.product((1, -1), repeat=dim - 1):
        image = apply_fn((1,) + rest)
        best = max(best, max((abs(v) for v in image), default=0))
    return best


def dense_apply(rows: Sequence[Sequence]) -> Callable[[Sequence], list]:
    """Matrix-vector product as a callable, for feeding :func:`op_norm_sign_search`."""
    return lambda s: [sum(a * b for a, b in zip(row, s)) for row in rows]


def op_plus_norm_extreme(rows: Sequence[Sequence], root_col: int = 0, root_row: int = 0) -> Scalar:
    """Norm of a real matrix for ``|x_root| + max_{v != root} |x_v|`` on both sides.

    The unit ball is the hull of ``+-e(root)`` and of the sign vectors that
    vanish at the root; every such extreme point is tried.
    """
    ncols = len(rows[0]) if rows else 0
    others = [c for c in range(ncols) if c != root_col]
    if len(others) > SIGN_SEARCH_MAX_DIM:
        raise DomainError("too many columns for the extreme-point search")

    def plus(vec):
        rest = [abs(vec[i]) for i in range(len(vec)) if i != root_row]
        return abs(vec[root_row]) + max(rest, default=0)

    def image(x):
        return [sum(r[c] * x[c] for c in range(ncols)) for r in rows]

    e = [0] * ncols
    e[root_col] = 1
    best = plus(image(e))
    for signs in itertools.product((1, -1), repeat=len(others)):
        x = [0] * ncols
        for c, s in zip(others, signs):
            x[c] = s
        best = max(best, plus(image(x)))
    return best


def dinv_pathsum(x, v) -> Scalar:
    """Sum of ``x`` over the root path of ``v``, by walking parent pointers."""
    tree = x.tree
    if v not in tree:
        raise DomainError(f"vertex {v!r} is not in the tree")
    total = 0
    w = v
    while w is not None:
        total += x.entries.get(w, 0)
        w = tree.parent(w)
    return total


def lambda_bruteforce(tree, depth: int) -> int:
    """Largest branching term over every non-root vertex of depth at most ``depth``."""
    best = 0
    frontier = [(tree.root, 0)]
    while frontier:
        nxt = []
        for v, d in frontier:
            kids = list(tree.children(v))
            if d > 0:
                gv = len(kids)
                gp = len(tree.children(tree.parent(v)))
                best = max(best, gv + gp - 1 + abs(gv - 1) + d * abs(gv - gp))
            if d < depth:
                nxt.extend((w, d + 1) for w in kids)
        frontier = nxt
    return best
