"""Shared plumbing for the sequence-space operators."""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections.abc import Mapping

from ..errors import DomainError
from ..scalars import Scalar, unit_phase
from ..spaces import LipFunc, SeqVec
from ..trees import PathN0, RootedTree, Vertex, ZLine

UNBOUNDED = math.inf


class PathSums:
    """Root-path partial sums of a finitely supported vector.

    Sums are tabulated on the down-closure of the support; every other vertex
    inherits the sum of its deepest ancestor in there.
    """

    def __init__(self, x: SeqVec):
        tree = x.tree
        self.tree = tree
        table = {tree.root: x[tree.root]}
        for v in sorted(x.entries, key=tree.depth):
            path = tree.path_to_root(v)
            for i in range(1, len(path)):
                if path[i] not in table:
                    table[path[i]] = table[path[i - 1]] + x[path[i]]
        self._table = table
        ints = [v for v in table if isinstance(v, int)]
        self.lo = min(ints)
        self.hi = max(ints)

    def __call__(self, w: Vertex) -> Scalar:
        if isinstance(self.tree, (PathN0, ZLine)):
            # down-closed sets on the line are intervals around the root
            return self._table[min(max(w, self.lo), self.hi)]
        while w not in self._table:
            w = self.tree.parent(w)
        return self._table[w]

    @property
    def closure(self) -> frozenset:
        return frozenset(self._table)


def signed_path_difference(tree: RootedTree, u: Vertex, w: Vertex) -> dict:
    """Coefficients of ``S(u) - S(w)`` as a combination of the coordinates."""
    pu, pw = tree.path_to_root(u), tree.path_to_root(w)
    k = 0
    while k < min(len(pu), len(pw)) and pu[k] == pw[k]:
        k += 1
    row = {v: 1 for v in pu[k:]}
    row.update((v, -1) for v in pw[k:])
    return row


def sign_vector(tree: RootedTree, row: Mapping) -> SeqVec:
    """Unimodular vector aligned with a row, so that the row pairs to its l1 norm."""
    entries = {v: unit_phase(c) for v, c in row.items() if c != 0}
    if not entries:
        entries = {tree.root: 1}
    return SeqVec(tree, entries)


class SeqOperator(ABC):
    """Bounded (or flagged unbounded) operator on sequences indexed by a tree."""

    tree: RootedTree

    @abstractmethod
    def apply(self, x: SeqVec) -> SeqVec: ...

    @abstractmethod
    def apply_lip(self, f: LipFunc) -> LipFunc: ...

    @abstractmethod
    def row(self, v: Vertex) -> dict:
        """Nonzero coefficients of coordinate ``v`` of the image."""

    @abstractmethod
    def norm(self) -> Scalar | float: ...

    @abstractmethod
    def term(self, v: Vertex) -> Scalar:
        """The quantity of the norm formula contributed by coordinate ``v``."""

    @abstractmethod
    def certified_depth(self) -> int:
        """Rows of depth up to this value already realize the norm."""

    def witness(self, u: Vertex) -> SeqVec:
        """Unit vector whose image has modulus ``term(u)`` at coordinate ``u``."""
        return sign_vector(self.tree, self.row(u))

    def bounded(self) -> bool:
        return self.norm() != UNBOUNDED

    def __call__(self, x: SeqVec) -> SeqVec:
        return self.apply(x)

    def __rmul__(self, scalar):
        return ScaledOp(scalar, self)

    def _check_tree(self, obj) -> None:
        if obj.tree != self.tree:
            raise DomainError("operand lives on a different tree")


class ScaledOp(SeqOperator):
    def __init__(self, scalar: Scalar, op: SeqOperator):
        self.scalar = scalar
        self.op = op
        self.tree = op.tree

    def apply(self, x):
        return self.op.apply(x) * self.scalar

    def apply_lip(self, f):
        return self.op.apply_lip(f) * self.scalar

    def row(self, v):
        return {w: self.scalar * c for w, c in self.op.row(v).items() if self.scalar * c != 0}

    def norm(self):
        n = self.op.norm()
        if n == UNBOUNDED:
            return UNBOUNDED if self.scalar != 0 else 0
        return abs(self.scalar) * n

    def term(self, v):
        return abs(self.scalar) * self.op.term(v)

    def certified_depth(self):
        return self.op.certified_depth()

    def witness(self, u):
        return self.op.witness(u)

    def __repr__(self):
        return f"{self.scalar}*{self.op!r}"


class ZeroOp(SeqOperator):
    def __init__(self, tree: RootedTree):
        self.tree = tree

    def apply(self, x):
        self._check_tree(x)
        return SeqVec.zero(self.tree)

    def apply_lip(self, f):
        return LipFunc.constant(self.tree, 0)

    def row(self, v):
        self.tree._check(v)
        return {}

    def norm(self):
        return 0

    def term(self, v):
        return 0

    def certified_depth(self):
        return 0

    def __repr__(self):
        return "ZeroOp()"
