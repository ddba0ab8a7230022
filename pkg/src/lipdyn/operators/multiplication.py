"""Multiplication operators ``f -> psi * f``.

In sequence coordinates::

    [M x]_root = psi(root) x_root
    [M x]_v    = psi(v) x_v + (psi(v) - psi(parent(v))) * S(parent(v))

where ``S`` is the root-path sum of ``x``.  Off the core of ``psi`` the
difference term vanishes, so every supremum below is a maximum over the
core.
"""

from __future__ import annotations

from ..errors import DomainError
from ..scalars import Scalar, unit_phase
from ..spaces import LipFunc, SeqVec
from ..trees import Vertex
from .base import PathSums, SeqOperator
from .symbols import SymbolPsi


def _jump(psi: SymbolPsi, v: Vertex) -> Scalar:
    p = psi.tree.parent(v)
    return 0 if p is None else psi(v) - psi(p)


def mult_term(psi: SymbolPsi, u: Vertex) -> Scalar:
    """``|psi(root)|`` at the root, ``|psi(u)| + |u| |psi(u) - psi(parent(u))|`` elsewhere."""
    tree = psi.tree
    if u == tree.root:
        return abs(psi(u))
    return abs(psi(u)) + tree.depth(u) * abs(_jump(psi, u))


def _nonroot_terms(psi: SymbolPsi):
    tree = psi.tree
    core = psi.values.core
    # off the core a term equals |psi(anchor)|, which the anchor's own term dominates
    for v in core:
        if v != tree.root:
            yield mult_term(psi, v)
    if any(c not in core for c in tree.children(tree.root)):
        yield abs(psi(tree.root))


def mult_bounded(psi: SymbolPsi) -> bool:
    """Finitely determined multipliers always satisfy both boundedness conditions."""
    sup_abs = max(abs(val) for val in psi.values.core_values.values())
    sup_weighted = max((psi.tree.depth(v) * abs(_jump(psi, v)) for v in psi.values.core), default=0)
    return sup_abs < float("inf") and sup_weighted < float("inf")


def mult_norms(psi: SymbolPsi) -> tuple:
    """The two closed-form norms ``(max-norm value, sum-norm value)``.

    The first is the exact operator norm for ``max(|f(root)|, sup |df|)``.
    The second evaluates ``|psi(root)| + sup(|psi(v)| + |v| |dpsi(v)|)``; it is
    an upper bound for the operator norm under ``|f(root)| + sup |df|`` but not
    always equal to it (see :func:`mult_plus_norm`).
    """
    sup = max(_nonroot_terms(psi), default=0)
    return max(abs(psi(psi.tree.root)), sup), abs(psi(psi.tree.root)) + sup


def mult_plus_norm(psi: SymbolPsi) -> Scalar:
    """Exact operator norm for ``|f(root)| + sup |df|``.

    The unit ball of that norm is the convex hull of ``+-e(root)`` and of the
    unimodular vectors vanishing at the root.  Testing the operator on those
    extreme points gives

        max(|psi(root)| + sup |dpsi|,  sup |psi(v)| + (|v| - 1) |dpsi(v)|).
    """
    tree = psi.tree
    core = psi.values.core
    jumps = [abs(_jump(psi, v)) for v in core if v != tree.root]
    at_root = abs(psi(tree.root)) + max(jumps, default=0)
    rest = [abs(psi(v)) + (tree.depth(v) - 1) * abs(_jump(psi, v)) for v in core if v != tree.root]
    if any(c not in core for c in tree.children(tree.root)):
        rest.append(abs(psi(tree.root)))
    return max([at_root] + rest)


def mult_apply_lip(psi: SymbolPsi, f: LipFunc) -> LipFunc:
    if f.tree != psi.tree:
        raise DomainError("function and multiplier live on different trees")
    region = f.core | psi.values.core
    return LipFunc(f.tree, {v: psi(v) * f(v) for v in region})


def mult_apply_seq(psi: SymbolPsi, x: SeqVec) -> SeqVec:
    if x.tree != psi.tree:
        raise DomainError("vector and multiplier live on different trees")
    tree = psi.tree
    sums = PathSums(x)
    out = {}
    for v in set(x.entries) | psi.values.core:
        p = tree.parent(v)
        value = psi(v) * x[v]
        if p is not None:
            value += (psi(v) - psi(p)) * sums(p)
        if value != 0:
            out[v] = value
    return SeqVec(tree, out)


def mult_row(psi: SymbolPsi, v: Vertex) -> dict:
    tree = psi.tree
    row = {v: psi(v)} if psi(v) != 0 else {}
    jump = _jump(psi, v)
    if jump != 0:
        for w in tree.path_to_root(v)[:-1]:
            row[w] = jump
    return row


def extremal_witness_mult(psi: SymbolPsi, u: Vertex) -> SeqVec:
    """Unit vector realizing ``mult_term(psi, u)`` at coordinate ``u``.

    The root path up to the parent of ``u`` carries the phase aligning the
    jump of ``psi`` at ``u``; the entry at ``u`` aligns ``psi(u)``.
    """
    tree = psi.tree
    entries = {w: unit_phase(_jump(psi, u)) for w in tree.path_to_root(u)[:-1]}
    entries[u] = unit_phase(psi(u))
    return SeqVec(tree, entries)


class MultiplicationOp(SeqOperator):
    def __init__(self, psi: SymbolPsi):
        self.psi = psi
        self.tree = psi.tree

    def apply(self, x):
        return mult_apply_seq(self.psi, x)

    def apply_lip(self, f):
        return mult_apply_lip(self.psi, f)

    def row(self, v):
        return mult_row(self.psi, v)

    def norm(self):
        return mult_norms(self.psi)[0]

    def plus_norm(self):
        return mult_plus_norm(self.psi)

    def term(self, v):
        return mult_term(self.psi, v)

    def certified_depth(self):
        return self.psi.core_depth + 1

    def witness(self, u):
        return extremal_witness_mult(self.psi, u)

    def __repr__(self):
        return f"MultiplicationOp({self.psi!r})"
