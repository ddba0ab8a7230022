"""Composition operators ``f -> f o phi`` and their sequence-space conjugates.

In sequence coordinates the image of ``x`` at a vertex ``v`` is the
difference of root-path sums ``S(phi(v)) - S(phi(parent(v)))``, with the
sum at the (missing) parent of the root taken to be zero.  On the path tree
this is the block sum of ``x`` over ``phi(v-1)+1 .. phi(v)``.
"""

from __future__ import annotations

from ..errors import ContractError, DomainError
from ..spaces import LipFunc, SeqVec
from ..trees import ExplicitTree, Vertex, ZLine
from .base import PathSums, SeqOperator, signed_path_difference
from .symbols import SymbolPhi


def _composition_region(phi: SymbolPhi, lo: int, hi: int) -> list:
    """Vertices whose image coordinate may be nonzero (or, for functions, that fix the closure)."""
    tree = phi.tree
    depth = phi.settled_depth(lo, hi)
    return list(tree.vertices(depth))


def lipschitz_constant(phi: SymbolPhi) -> int:
    """Largest distance between the images of adjacent vertices.

    Edges deeper than the symbol's horizon sit inside an affine tail and all
    have image distance ``|a|``, so the supremum is a finite maximum.
    """
    tree = phi.tree
    horizon = phi.lipschitz_horizon()
    best = max(phi.tail_slopes(), default=0)
    for v in tree.vertices(horizon):
        p = tree.parent(v)
        if p is not None:
            best = max(best, tree.dist(phi(v), phi(p)))
    return best


def comp_term(phi: SymbolPhi, u: Vertex) -> int:
    """``1 + |phi(root)|`` at the root, ``dist(phi(u), phi(parent(u)))`` elsewhere."""
    tree = phi.tree
    p = tree.parent(u)
    if p is None:
        return 1 + tree.depth(phi(u))
    return tree.dist(phi(u), phi(p))


def comp_norm(phi: SymbolPhi, little: bool = False) -> int:
    """Operator norm ``max(1 + |phi(root)|, L_phi)``.

    ``little=True`` asks for the norm on the little space.  Away from the path
    tree boundedness there is not decided here, so the symbol must carry
    ``assume_bounded``.
    """
    if little and isinstance(phi.tree, ZLine) and not phi.assume_bounded:
        raise ContractError("boundedness on the little space is not checked here; set assume_bounded")
    return max(comp_term(phi, phi.tree.root), lipschitz_constant(phi))


def comp_apply_lip(phi: SymbolPhi, f: LipFunc) -> LipFunc:
    if f.tree != phi.tree:
        raise DomainError("function and symbol live on different trees")
    tree = phi.tree
    if isinstance(tree, ExplicitTree) and tree.is_finite():
        region = list(tree.vertices(tree.core_depth))
    else:
        ints = [v for v in f.core if isinstance(v, int)]
        region = _composition_region(phi, min(ints), max(ints))
    return LipFunc(tree, {v: f(phi(v)) for v in region})


def comp_apply_seq(phi: SymbolPhi, x: SeqVec) -> SeqVec:
    """Sequence-space image computed straight from root-path sums."""
    if x.tree != phi.tree:
        raise DomainError("vector and symbol live on different trees")
    tree = phi.tree
    sums = PathSums(x)
    if isinstance(tree, ExplicitTree) and tree.is_finite():
        region = list(tree.vertices(tree.core_depth))
    else:
        region = _composition_region(phi, sums.lo, sums.hi)
    out = {}
    for v in region:
        p = tree.parent(v)
        value = sums(phi(v)) - (0 if p is None else sums(phi(p)))
        if value != 0:
            out[v] = value
    return SeqVec(tree, out)


def comp_power_apply(phi: SymbolPhi, n: int, x: SeqVec) -> SeqVec:
    """Image of ``x`` under the ``n``-th power, via the iterated symbol."""
    if n < 0:
        raise DomainError("power must be non-negative")
    if n == 0:
        return x
    try:
        return comp_apply_seq(phi.power(n), x)
    except DomainError:
        for _ in range(n):
            x = comp_apply_seq(phi, x)
        return x


def comp_row(phi: SymbolPhi, v: Vertex) -> dict:
    tree = phi.tree
    p = tree.parent(v)
    if p is None:
        return {w: 1 for w in tree.path_to_root(phi(v))}
    return signed_path_difference(tree, phi(v), phi(p))


def extremal_witness_comp(phi: SymbolPhi, u: Vertex) -> SeqVec:
    """Unit vector whose image has modulus ``comp_term(phi, u)`` at ``u``.

    At the root it is the indicator of the root path of ``phi(root)``.
    Elsewhere it is ``+1`` on the part of the root path of ``phi(u)`` not
    shared with that of ``phi(parent(u))`` and ``-1`` on the converse part.
    When both images coincide the term is zero and the root unit vector is
    returned.
    """
    tree = phi.tree
    row = comp_row(phi, u)
    if not row:
        return SeqVec(tree, {tree.root: 1})
    return SeqVec(tree, row)


class CompositionOp(SeqOperator):
    def __init__(self, phi: SymbolPhi):
        self.phi = phi
        self.tree = phi.tree

    def apply(self, x):
        return comp_apply_seq(self.phi, x)

    def apply_lip(self, f):
        return comp_apply_lip(self.phi, f)

    def row(self, v):
        return comp_row(self.phi, v)

    def norm(self):
        return comp_norm(self.phi)

    def term(self, v):
        return comp_term(self.phi, v)

    def certified_depth(self):
        return self.phi.lipschitz_horizon() + 1

    def witness(self, u):
        return extremal_witness_comp(self.phi, u)

    def power(self, n: int) -> CompositionOp:
        return CompositionOp(self.phi.power(n))

    def __repr__(self):
        return f"CompositionOp({self.phi!r})"
