"""Sequence vectors, Lipschitz functions and the coordinate change between them.

A :class:`SeqVec` is a finitely supported vector indexed by the vertices of
a tree.  A :class:`LipFunc` is a function on the tree given by its values on
a finite down-closed *core*; off the core it repeats the value of its
deepest core ancestor, i.e. it is constant on every sector hanging below the
core.  That closure rule is exactly what the path-sum inverse of a finitely
supported vector produces, so :func:`to_sequence` and :func:`from_sequence`
are exact, total inverses of each other on these classes.

The coordinate change is

    to_sequence(f)[root] = f(root),   to_sequence(f)[v] = f(v) - f(parent(v)),

and its inverse sums a vector along root paths.  It maps the max-form
Lipschitz norm onto the sup norm isometrically (also in the weighted variants
with weight 1 at the root).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any

from .errors import DomainError, SpecError
from .scalars import EXACT, Scalar, format_pair, parse_scalar
from .trees import RootedTree, Vertex, parse_vertex_key, vertex_key


def _depth_then_key(tree: RootedTree):
    return lambda v: (tree.depth(v), vertex_key(v))


class SeqVec:
    """Finitely supported vector on the vertices of ``tree``; absent entries are 0."""

    __slots__ = ("tree", "_entries")

    def __init__(self, tree: RootedTree, entries: Mapping | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict = {}
        for v, value in items:
            if v not in tree:
                raise DomainError(f"vertex {v!r} is not in the tree")
            if value != 0:
                data[v] = value
        self.tree = tree
        self._entries = MappingProxyType(data)

    @classmethod
    def zero(cls, tree: RootedTree) -> SeqVec:
        return cls(tree)

    @property
    def entries(self) -> Mapping:
        return self._entries

    def __getitem__(self, v: Vertex) -> Scalar:
        return self._entries.get(v, 0)

    def items(self):
        return self._entries.items()

    @property
    def support(self) -> tuple:
        return tuple(sorted(self._entries, key=_depth_then_key(self.tree)))

    @property
    def support_depth(self) -> int:
        """Max depth over the support; 0 for the zero vector."""
        return max((self.tree.depth(v) for v in self._entries), default=0)

    def is_zero(self) -> bool:
        return not self._entries

    def sup_norm(self) -> Scalar:
        return max((abs(x) for x in self._entries.values()), default=0)

    def _combine(self, other: SeqVec, sign: int) -> SeqVec:
        if not isinstance(other, SeqVec):
            return NotImplemented
        if other.tree != self.tree:
            raise DomainError("vectors live on different trees")
        out = dict(self._entries)
        for v, x in other._entries.items():
            out[v] = out.get(v, 0) + sign * x
        return SeqVec(self.tree, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return SeqVec(self.tree, {v: -x for v, x in self._entries.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, (SeqVec, LipFunc)):
            return NotImplemented
        return SeqVec(self.tree, {v: scalar * x for v, x in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SeqVec):
            return NotImplemented
        return self.tree == other.tree and dict(self._entries) == dict(other._entries)

    def __hash__(self):
        return hash((self.tree, frozenset(self._entries.items())))

    def __repr__(self):
        body = ", ".join(f"{vertex_key(v)}: {self._entries[v]}" for v in self.support)
        return f"SeqVec({{{body}}})"

    def to_json(self) -> dict:
        return {vertex_key(v): format_pair(self._entries[v]) for v in self.support}

    @classmethod
    def from_json(cls, tree: RootedTree, data: Mapping, mode: str = EXACT) -> SeqVec:
        if not isinstance(data, Mapping):
            raise SpecError("vector spec must be a JSON object")
        try:
            return cls(tree, {parse_vertex_key(k): parse_scalar(v, mode) for k, v in data.items()})
        except (TypeError, ValueError) as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(str(exc)) from exc


class LipFunc:
    """Function on a tree given by values on a finite down-closed core.

    Off the core the function repeats the value of the deepest core
    ancestor.  Equality is equality of functions, not of presentations.
    """

    __slots__ = ("tree", "_values")

    def __init__(self, tree: RootedTree, core_values: Mapping):
        values = dict(core_values)
        if tree.root not in values:
            raise SpecError("the core of a function must contain the root")
        for v in values:
            if v not in tree:
                raise DomainError(f"vertex {v!r} is not in the tree")
            p = tree.parent(v)
            if p is not None and p not in values:
                raise SpecError(f"core is not down-closed: {v!r} is present but its parent is not")
        self.tree = tree
        self._values = MappingProxyType(values)

    @classmethod
    def constant(cls, tree: RootedTree, value: Scalar) -> LipFunc:
        return cls(tree, {tree.root: value})

    @property
    def core_values(self) -> Mapping:
        return self._values

    @property
    def core(self) -> frozenset:
        return frozenset(self._values)

    @property
    def core_depth(self) -> int:
        return max(self.tree.depth(v) for v in self._values)

    def boundary(self) -> tuple:
        """Core vertices with at least one child outside the core."""
        out = [
            v for v in self._values
            if any(c not in self._values for c in self.tree.children(v))
        ]
        return tuple(sorted(out, key=_depth_then_key(self.tree)))

    def anchor(self, v: Vertex) -> Vertex:
        """Deepest core vertex on the root path of ``v``."""
        self.tree._check(v)
        while v not in self._values:
            v = self.tree._parent(v)
        return v

    def __call__(self, v: Vertex) -> Scalar:
        return self._values[self.anchor(v)]

    def increments(self):
        """Pairs ``(v, f(v) - f(parent(v)))`` over the non-root core; zero elsewhere."""
        for v, fv in self._values.items():
            p = self.tree._parent(v)
            if p is not None:
                yield v, fv - self._values[p]

    def _aligned(self, other: LipFunc) -> set:
        if other.tree != self.tree:
            raise DomainError("functions live on different trees")
        return set(self._values) | set(other._values)

    def __add__(self, other):
        if not isinstance(other, LipFunc):
            return NotImplemented
        return LipFunc(self.tree, {v: self(v) + other(v) for v in self._aligned(other)})

    def __sub__(self, other):
        if not isinstance(other, LipFunc):
            return NotImplemented
        return LipFunc(self.tree, {v: self(v) - other(v) for v in self._aligned(other)})

    def __neg__(self):
        return LipFunc(self.tree, {v: -x for v, x in self._values.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, (SeqVec, LipFunc)):
            return NotImplemented
        return LipFunc(self.tree, {v: scalar * x for v, x in self._values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LipFunc):
            return NotImplemented
        if other.tree != self.tree:
            return False
        # agreement on the union of two down-closed cores forces agreement everywhere
        return all(self(v) == other(v) for v in self._aligned(other))

    def __hash__(self):
        return hash(self.tree)

    def __repr__(self):
        body = ", ".join(
            f"{vertex_key(v)}: {self._values[v]}"
            for v in sorted(self._values, key=_depth_then_key(self.tree))
        )
        return f"LipFunc({{{body}}})"

    def lip_norm(self) -> Scalar:
        return lip_norm(self)

    def plus_norm(self) -> Scalar:
        return plus_norm(self)

    def to_json(self) -> dict:
        order = sorted(self._values, key=_depth_then_key(self.tree))
        return {
            "core_values": {vertex_key(v): format_pair(self._values[v]) for v in order},
            "boundary": [vertex_key(v) for v in self.boundary()],
        }

    @classmethod
    def from_json(cls, tree: RootedTree, data: Mapping, mode: str = EXACT) -> LipFunc:
        if not isinstance(data, Mapping) or "core_values" not in data:
            raise SpecError("function spec must be an object with 'core_values'")
        extra = set(data) - {"core_values", "boundary"}
        if extra:
            raise SpecError(f"unknown keys in function spec: {sorted(extra)}")
        values = {parse_vertex_key(k): parse_scalar(v, mode) for k, v in data["core_values"].items()}
        f = cls(tree, values)
        if "boundary" in data:
            declared = {parse_vertex_key(k) for k in data["boundary"]}
            if declared != set(f.boundary()):
                raise SpecError("declared core boundary does not match the core")
        return f


@dataclass(frozen=True)
class Weights:
    """Positive weights ``c_v`` with ``c_root = 1``.

    Values come from ``table`` when present, otherwise from ``depth_rule``
    applied to the depth of the vertex (default: constant 1).
    """

    table: Mapping = field(default_factory=dict)
    depth_rule: Callable[[int], Scalar] | None = None

    def __call__(self, tree: RootedTree, v: Vertex) -> Scalar:
        if v in self.table:
            c = self.table[v]
        elif self.depth_rule is not None:
            c = self.depth_rule(tree.depth(v))
        else:
            c = 1
        if not c > 0:
            raise DomainError(f"weight at {v!r} must be positive, got {c!r}")
        if v == tree.root and c != 1:
            raise DomainError(f"the root weight must be 1, got {c!r}")
        return c


def sup_norm(x: SeqVec) -> Scalar:
    return x.sup_norm()


def weighted_sup_norm(x: SeqVec, c: Weights) -> Scalar:
    return max((c(x.tree, v) * abs(val) for v, val in x.items()), default=0)


def lip_norm(f: LipFunc) -> Scalar:
    """``max(|f(root)|, sup |f(v) - f(parent(v))|)``; the sup is attained on the core."""
    return max([abs(f.core_values[f.tree.root])] + [abs(d) for _, d in f.increments()])


def plus_norm(f: LipFunc) -> Scalar:
    """``|f(root)| + sup |f(v) - f(parent(v))|``."""
    return abs(f.core_values[f.tree.root]) + max((abs(d) for _, d in f.increments()), default=0)


def weighted_lip_norm(f: LipFunc, c: Weights) -> Scalar:
    tree = f.tree
    return max([abs(f.core_values[tree.root])] + [c(tree, v) * abs(d) for v, d in f.increments()])


def weighted_plus_norm(f: LipFunc, c: Weights) -> Scalar:
    tree = f.tree
    return abs(f.core_values[tree.root]) + max(
        (c(tree, v) * abs(d) for v, d in f.increments()), default=0
    )


def to_sequence(f: LipFunc) -> SeqVec:
    """Root value followed by parent increments."""
    tree = f.tree
    entries = {tree.root: f.core_values[tree.root]}
    entries.update(f.increments())
    return SeqVec(tree, entries)


def from_sequence(x: SeqVec) -> LipFunc:
    """Root-path partial sums of ``x``.

    The result is presented on the down-closure of the support (plus the
    root); beyond it the partial sums no longer change.
    """
    tree = x.tree
    values: dict = {tree.root: x[tree.root]}
    for v in sorted(x.entries, key=tree.depth):
        path = tree.path_to_root(v)
        for i, w in enumerate(path):
            if w not in values:
                values[w] = values[path[i - 1]] + x[w]
    return LipFunc(tree, values)


def basis_e(tree: RootedTree, w: Vertex) -> SeqVec:
    """Canonical unit vector at ``w``."""
    return SeqVec(tree, {w: 1})


def basis_del(tree: RootedTree, w: Vertex) -> SeqVec:
    """``e(w)`` minus the unit vectors of the children of ``w``."""
    entries = {w: 1}
    entries.update((u, -1) for u in tree.children(w))
    return SeqVec(tree, entries)


def chi_sector(tree: RootedTree, w: Vertex) -> LipFunc:
    """Indicator of the sector of ``w``."""
    path = tree.path_to_root(w)
    return LipFunc(tree, {u: (1 if u == w else 0) for u in path})


def chi_singleton(tree: RootedTree, w: Vertex) -> LipFunc:
    """Indicator of the single vertex ``w``."""
    values = {u: 0 for u in tree.path_to_root(w)}
    values[w] = 1
    values.update((u, 0) for u in tree.children(w))
    return LipFunc(tree, values)


def _reaches_depth(tree: RootedTree, v: Vertex, m: int) -> bool:
    stack = [v]
    while stack:
        w = stack.pop()
        if tree.depth(w) >= m:
            return True
        stack.extend(tree.children(w))
    return False


def in_sigma00(x: SeqVec) -> bool:
    """Root-path sums of ``x`` vanish at every vertex of depth ``support_depth``.

    A vertex of that depth either lies in the down-closure of the support,
    or its path sum equals the sum at its deepest ancestor in there.
    """
    if x.is_zero():
        return True
    tree = x.tree
    m = x.support_depth
    f = from_sequence(x)
    core = f.core
    for v in core:
        if f(v) == 0:
            continue
        d = tree.depth(v)
        if d == m:
            return False
        if any(c not in core and _reaches_depth(tree, c, m) for c in tree.children(v)):
            return False
    return True
