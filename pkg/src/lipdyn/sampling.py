"""Seeded random instances for property checks and the ``verify`` command."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .operators.symbols import AffineTail, SymbolPhi, SymbolPsi
from .spaces import SeqVec, basis_del
from .trees import ExplicitTree, PathN0, RootedTree, ZLine

SEED_ENV = "LIPDYN_SEED"
DEFAULT_SEED = 20240501


def make_rng(seed: int | None = None) -> random.Random:
    """RNG seeded from ``seed``, else ``$LIPDYN_SEED``, else a fixed default."""
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, DEFAULT_SEED))
    return random.Random(seed)


def random_rational(rng: random.Random, bound: int = 9, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_vector(rng: random.Random, tree: RootedTree, depth: int = 5, size: int = 6) -> SeqVec:
    verts = list(tree.vertices(depth))
    picks = rng.sample(verts, min(size, len(verts)))
    return SeqVec(tree, {v: random_rational(rng) for v in picks})


def random_explicit_tree(rng: random.Random, depth: int = 3, homogeneous: bool = True) -> ExplicitTree:
    """Random core of the given depth; every core leaf gets a tail of degree 1..3.

    With ``homogeneous=False`` some tails alternate two degrees.
    """
    edges = []
    level = [0]
    nxt = 1
    for d in range(depth):
        new = []
        for v in level:
            for _ in range(rng.randint(1, 2) if d < depth - 1 else rng.randint(0, 2)):
                edges.append((v, nxt))
                new.append(nxt)
                nxt += 1
        if not new:
            break
        level = new
    children = {}
    for u, v in edges:
        children.setdefault(u, []).append(v)
    leaves = [v for v in range(nxt) if v not in children]
    tails = {}
    for v in leaves:
        if homogeneous or rng.random() < 0.5:
            tails[v] = rng.randint(1, 3)
        else:
            tails[v] = [1, 2]
    return ExplicitTree(edges, 0, tails)


def random_increasing_symbol(rng: random.Random, max_start: int = 5, max_a: int = 3,
                             step: int = 3) -> SymbolPhi:
    """Strictly increasing path-tree symbol with ``phi(0) > 0`` and an affine tail."""
    start = rng.randint(0, max_start)
    table = {}
    prev = 0
    for j in range(start):
        prev = (rng.randint(1, step) if j == 0 else prev + rng.randint(1, step))
        table[j] = prev
    a = rng.randint(1, max_a)
    floor = (prev + 1) if start > 0 else 1
    lowest_b = floor - a * start
    b = rng.randint(lowest_b, lowest_b + step - 1)
    return SymbolPhi(PathN0(), table, AffineTail(start, a, b), increasing=True)


def random_path_symbol(rng: random.Random, max_start: int = 4, max_a: int = 3, top: int = 8) -> SymbolPhi:
    """Arbitrary (not necessarily monotone) path-tree symbol with an affine tail."""
    start = rng.randint(0, max_start)
    table = {j: rng.randint(0, top) for j in range(start)}
    a = rng.randint(1, max_a)
    b = rng.randint(0, top)
    return SymbolPhi(PathN0(), table, AffineTail(start, a, b))


def random_zline_symbol(rng: random.Random, top: int = 4) -> SymbolPhi:
    pos_start = rng.randint(0, 2)
    neg_start = -rng.randint(1, 2)
    table = {j: rng.randint(-top, top) for j in range(neg_start + 1, pos_start)}
    pos = AffineTail(pos_start, rng.choice([-2, -1, 1, 2]), rng.randint(-top, top))
    neg = AffineTail(neg_start, rng.choice([-2, -1, 1, 2]), rng.randint(-top, top))
    return SymbolPhi(ZLine(), table, pos, neg)


def random_finite_symbol(rng: random.Random, tree: ExplicitTree) -> SymbolPhi:
    verts = sorted(tree.core)
    return SymbolPhi(tree, {v: rng.choice(verts) for v in verts})


def random_psi(rng: random.Random, tree: RootedTree, depth: int = 3) -> SymbolPsi:
    """Multiplier with random rational values on a random down-closed core."""
    values = {tree.root: random_rational(rng)}
    frontier = [tree.root]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for w in tree.children(v):
                if rng.random() < 0.7:
                    values[w] = random_rational(rng)
                    nxt.append(w)
        frontier = nxt
    tails = {v: random_rational(rng) for v in values if rng.random() < 0.3}
    return SymbolPsi(tree, values, tails)


def random_sigma00(rng: random.Random, tree: RootedTree, count: int = 3, depth: int = 4) -> SeqVec:
    """Random rational combination of the vectors ``e(w) - sum of e(children)``."""
    verts = list(tree.vertices(depth))
    total = SeqVec.zero(tree)
    for _ in range(count):
        total = total + basis_del(tree, rng.choice(verts)) * random_rational(rng)
    return total
