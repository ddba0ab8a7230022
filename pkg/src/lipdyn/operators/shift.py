"""The backward shift ``[B f](v) = sum of f over the children of v``.

Row ``v != root`` of its sequence-space conjugate has coefficient ``+1`` on
every child of ``v``, ``-1`` on every sibling, ``gamma(v) - 1`` on ``v``
itself and ``gamma(v) - gamma(parent(v))`` on each vertex of the root path
up to the parent.  The root row is ``gamma(root)`` on the root plus ``1`` on
each child.
"""

from __future__ import annotations

from ..errors import DomainError
from ..spaces import LipFunc, SeqVec
from ..trees import RootedTree, Vertex
from .base import UNBOUNDED, PathSums, SeqOperator


def _level(tree: RootedTree) -> int:
    ok, level = tree.is_homogeneous_by_sectors()
    if not ok:
        raise DomainError("the backward shift is unbounded on trees that are not homogeneous by sectors")
    return level


def shift_bounded(tree: RootedTree) -> bool:
    return tree.is_homogeneous_by_sectors()[0]


def shift_term(tree: RootedTree, u: Vertex) -> int:
    if u == tree.root:
        return 2 * tree.gamma(u)
    return tree.lambda_term(u)


def shift_norm(tree: RootedTree):
    """``max(2 gamma(root), Lambda(T))``, or ``inf`` on non-homogeneous trees."""
    lam = tree.lambda_T()
    if lam == UNBOUNDED:
        return UNBOUNDED
    return max(2 * tree.gamma(tree.root), lam)


def shift_apply_lip(tree: RootedTree, f: LipFunc) -> LipFunc:
    if f.tree != tree:
        raise DomainError("function lives on a different tree")
    level = _level(tree)
    region = set(f.core)
    for v in f.core:
        region.update(tree.children(v))
    region.update(tree.vertices(level))
    return LipFunc(tree, {v: sum((f(w) for w in tree.children(v)), 0) for v in region})


def shift_apply_seq(tree: RootedTree, x: SeqVec) -> SeqVec:
    if x.tree != tree:
        raise DomainError("vector lives on a different tree")
    level = _level(tree)
    sums = PathSums(x)
    region = set(tree.vertices(level))
    for v in x.entries:
        p = tree.parent(v)
        region.add(v)
        if p is not None:
            region.add(p)
            region.update(tree.children(p))
    out = {}
    for v in region:
        kids = tree.children(v)
        g = len(kids)
        p = tree.parent(v)
        if p is None:
            value = g * x[v] + sum((x[w] for w in kids), 0)
        else:
            value = (g - 1) * x[v] + sum((x[w] for w in kids), 0)
            value -= sum((x[w] for w in tree.children(p) if w != v), 0)
            value += (g - tree.gamma(p)) * sums(p)
        if value != 0:
            out[v] = value
    return SeqVec(tree, out)


def shift_row(tree: RootedTree, v: Vertex) -> dict:
    kids = tree.children(v)
    p = tree.parent(v)
    row = {w: 1 for w in kids}
    if p is None:
        row[v] = len(kids)
    else:
        row[v] = len(kids) - 1
        row.update((w, -1) for w in tree.siblings(v))
        jump = len(kids) - tree.gamma(p)
        row.update((w, jump) for w in tree.path_to_root(p))
    return {w: c for w, c in row.items() if c != 0}


def extremal_witness_shift(tree: RootedTree, u: Vertex) -> SeqVec:
    """Unit vector realizing ``shift_term(tree, u)`` at coordinate ``u``.

    At the root: ones on the root and its children.  Elsewhere: the sign of
    each coefficient of row ``u`` (ones on the children, minus ones on the
    siblings, the signs of the branching jumps along the root path).
    """
    entries = {w: (1 if c > 0 else -1) for w, c in shift_row(tree, u).items()}
    if not entries:
        entries = {tree.root: 1}
    return SeqVec(tree, entries)


class ShiftOp(SeqOperator):
    def __init__(self, tree: RootedTree):
        self.tree = tree

    def apply(self, x):
        return shift_apply_seq(self.tree, x)

    def apply_lip(self, f):
        return shift_apply_lip(self.tree, f)

    def row(self, v):
        return shift_row(self.tree, v)

    def norm(self):
        return shift_norm(self.tree)

    def term(self, v):
        return shift_term(self.tree, v)

    def certified_depth(self):
        return _level(self.tree) + 1

    def witness(self, u):
        return extremal_witness_shift(self.tree, u)

    def __repr__(self):
        return f"ShiftOp({self.tree!r})"
