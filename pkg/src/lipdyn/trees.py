"""Finitely presented, locally finite rooted trees.

Three presentations are available:

* :class:`PathN0` -- vertices ``0, 1, 2, ...`` with ``k ~ k+1`` and root ``0``.
* :class:`ZLine` -- vertices in the integers with ``k ~ k+1`` and root ``0``;
  the root has the two children ``-1`` and ``1`` and each spawns a ray.
* :class:`ExplicitTree` -- a finite core given by edges, where every core
  leaf may carry a tail rule.  An integer tail ``d`` hangs a full ``d``-ary
  tree below the leaf (the sector-tail family); a tuple ``(d0, d1, ...)``
  repeats the degrees periodically by relative depth, which is how
  non-homogeneous trees are presented.

Core vertices of an explicit tree are integers.  A tail vertex is the tuple
``(leaf, i1, ..., ik)`` of child indices below ``leaf``; its string key is
``"leaf:i1:...:ik"``.

Trees are immutable; every method is a pure function of the presentation.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from typing import Any, Union

from .errors import DomainError, SpecError

Vertex = Union[int, tuple]


def vertex_key(v: Vertex) -> str:
    if isinstance(v, tuple):
        return ":".join(str(p) for p in v)
    return str(v)


def parse_vertex_key(key: Any) -> Vertex:
    if isinstance(key, bool):
        raise SpecError(f"bad vertex id {key!r}")
    if isinstance(key, int):
        return key
    if isinstance(key, (list, tuple)):
        return tuple(int(p) for p in key)
    try:
        parts = [int(p) for p in str(key).split(":")]
    except ValueError:
        raise SpecError(f"bad vertex id {key!r}") from None
    return parts[0] if len(parts) == 1 else tuple(parts)


class RootedTree(ABC):
    """Common navigation built on top of ``parent``/``children``/``depth``."""

    kind: str = ""
    root: Vertex = 0

    @abstractmethod
    def __contains__(self, v: object) -> bool: ...

    @abstractmethod
    def _parent(self, v: Vertex) -> Vertex | None: ...

    @abstractmethod
    def _children(self, v: Vertex) -> tuple: ...

    @abstractmethod
    def _depth(self, v: Vertex) -> int: ...

    @abstractmethod
    def homogeneity_level(self) -> int | None:
        """Smallest ``N`` such that the tree is homogeneous by sectors at level ``N``."""

    @abstractmethod
    def to_json(self) -> dict: ...

    def _check(self, v: Vertex) -> None:
        if v not in self:
            raise DomainError(f"vertex {v!r} is not in this {self.kind} tree")

    def parent(self, v: Vertex) -> Vertex | None:
        self._check(v)
        return self._parent(v)

    def children(self, v: Vertex) -> tuple:
        self._check(v)
        return self._children(v)

    def depth(self, v: Vertex) -> int:
        self._check(v)
        return self._depth(v)

    def gamma(self, v: Vertex) -> int:
        """Number of children of ``v``."""
        return len(self.children(v))

    def path_to_root(self, v: Vertex) -> tuple:
        """The root path ``(root, v1, ..., v)``."""
        self._check(v)
        path = [v]
        while (p := self._parent(path[-1])) is not None:
            path.append(p)
        return tuple(reversed(path))

    def dist(self, u: Vertex, v: Vertex) -> int:
        pu, pv = self.path_to_root(u), self.path_to_root(v)
        common = 0
        for a, b in zip(pu, pv):
            if a != b:
                break
            common += 1
        return len(pu) + len(pv) - 2 * common

    def siblings(self, v: Vertex) -> tuple:
        p = self.parent(v)
        if p is None:
            return ()
        return tuple(w for w in self._children(p) if w != v)

    def is_ancestor(self, w: Vertex, v: Vertex) -> bool:
        """True when ``w`` lies on the root path of ``v`` (``w == v`` included)."""
        return w in self.path_to_root(v)

    def vertices(self, max_depth: int) -> Iterator:
        """Breadth-first enumeration of every vertex with depth <= ``max_depth``."""
        if max_depth < 0:
            return
        queue = deque([(self.root, 0)])
        while queue:
            v, d = queue.popleft()
            yield v
            if d < max_depth:
                queue.extend((c, d + 1) for c in self._children(v))

    def sector(self, v: Vertex, max_depth: int) -> Iterator:
        """Vertices of the sector of ``v`` down to absolute depth ``max_depth``."""
        self._check(v)
        stack = [v]
        while stack:
            w = stack.pop()
            yield w
            if self._depth(w) < max_depth:
                stack.extend(reversed(self._children(w)))

    def is_finite(self) -> bool:
        return False

    def is_homogeneous_by_sectors(self) -> tuple[bool, int | None]:
        n = self.homogeneity_level()
        return n is not None, n

    def _lambda_representatives(self, max_depth: int) -> Iterable:
        return self.vertices(max_depth)

    def lambda_term(self, v: Vertex) -> int:
        p = self.parent(v)
        if p is None:
            raise DomainError("the branching term is defined on non-root vertices")
        g, gp = self._gamma(v), self._gamma(p)
        return g + gp - 1 + abs(g - 1) + self._depth(v) * abs(g - gp)

    def _gamma(self, v: Vertex) -> int:
        return len(self._children(v))

    def lambda_T(self) -> float | int:
        """Sup over non-root ``v`` of ``γ(v)+γ(v⁻)-1+|γ(v)-1|+|v|·|γ(v)-γ(v⁻)|``.

        Beyond the homogeneity level ``N`` the depth-weighted term vanishes and
        the rest is constant per sector, so the sup is attained at depth
        ``<= N + 1``.  Non-homogeneous trees give ``math.inf``.  A tree that
        has no non-root vertex gives 0.
        """
        n = self.homogeneity_level()
        if n is None:
            return math.inf
        best = 0
        for v in self._lambda_representatives(n + 1):
            if v != self.root:
                best = max(best, self.lambda_term(v))
        return best

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class PathN0(RootedTree):
    kind = "path_n0"

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and not isinstance(v, bool) and v >= 0

    def _parent(self, v):
        return v - 1 if v > 0 else None

    def _children(self, v):
        return (v + 1,)

    def _depth(self, v):
        return v

    def dist(self, u, v):
        self._check(u)
        self._check(v)
        return abs(u - v)

    def homogeneity_level(self):
        return 0

    def to_json(self):
        return {"kind": self.kind}

    def __eq__(self, other):
        return isinstance(other, PathN0)

    def __hash__(self):
        return hash(self.kind)


class ZLine(RootedTree):
    kind = "z_line"

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and not isinstance(v, bool)

    def _parent(self, v):
        if v == 0:
            return None
        return v - 1 if v > 0 else v + 1

    def _children(self, v):
        if v == 0:
            return (-1, 1)
        return (v + 1,) if v > 0 else (v - 1,)

    def _depth(self, v):
        return abs(v)

    def dist(self, u, v):
        self._check(u)
        self._check(v)
        return abs(u - v)

    def homogeneity_level(self):
        return 1

    def to_json(self):
        return {"kind": self.kind}

    def __eq__(self, other):
        return isinstance(other, ZLine)

    def __hash__(self):
        return hash(self.kind)


def _normalize_tail(spec: Any) -> tuple[int, ...]:
    if isinstance(spec, bool):
        raise SpecError(f"bad tail degree {spec!r}")
    if isinstance(spec, int):
        degrees: tuple[int, ...] = (spec,)
    elif isinstance(spec, (list, tuple)) and spec and all(
        isinstance(d, int) and not isinstance(d, bool) for d in spec
    ):
        degrees = tuple(spec)
    else:
        raise SpecError(f"tail degree must be an int or a non-empty list of ints, got {spec!r}")
    if degrees == (0,):
        return degrees
    if any(d < 1 for d in degrees):
        raise SpecError(f"periodic tail degrees must be positive, got {spec!r}")
    # reduce to the minimal period
    for p in range(1, len(degrees) + 1):
        if len(degrees) % p == 0 and degrees == degrees[:p] * (len(degrees) // p):
            return degrees[:p]
    return degrees


class ExplicitTree(RootedTree):
    """Finite core plus per-leaf tail rules.

    ``allow_leaves`` admits genuine leaves (core leaves without a tail, or
    with tail degree 0).  Such finite pieces violate the standing assumption
    that only the root may have degree one, so they are meant for oracle
    testing only and are rejected by default.
    """

    kind = "explicit"

    def __init__(
        self,
        edges: Iterable = (),
        root: int = 0,
        tail_degrees: Mapping | None = None,
        allow_leaves: bool = False,
    ):
        if isinstance(root, bool) or not isinstance(root, int):
            raise SpecError(f"root must be an integer vertex id, got {root!r}")
        adjacency: dict[int, set[int]] = {root: set()}
        edge_list = []
        for edge in edges:
            try:
                u, v = edge
            except (TypeError, ValueError):
                raise SpecError(f"edge must be a pair, got {edge!r}") from None
            for w in (u, v):
                if isinstance(w, bool) or not isinstance(w, int):
                    raise SpecError(f"core vertex ids must be integers, got {w!r}")
            if u == v:
                raise SpecError(f"self-loop at {u}")
            if v in adjacency.get(u, ()):
                raise SpecError(f"duplicate edge {u}-{v}")
            adjacency.setdefault(u, set()).add(v)
            adjacency.setdefault(v, set()).add(u)
            edge_list.append((min(u, v), max(u, v)))
        if len(edge_list) != len(adjacency) - 1:
            raise SpecError("edges do not form a tree (edge count != vertex count - 1)")

        parents: dict[int, int | None] = {root: None}
        depths = {root: 0}
        children: dict[int, list[int]] = {}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            kids = sorted(w for w in adjacency[v] if w != parents[v])
            children[v] = kids
            for w in kids:
                if w in parents:
                    raise SpecError("edges contain a cycle")
                parents[w] = v
                depths[w] = depths[v] + 1
                queue.append(w)
        if len(parents) != len(adjacency):
            raise SpecError("edges do not form a connected graph")

        tails: dict[int, tuple[int, ...]] = {}
        for key, spec in (tail_degrees or {}).items():
            leaf = parse_vertex_key(key)
            if leaf not in adjacency:
                raise SpecError(f"tail declared on unknown vertex {key!r}")
            if children[leaf]:
                raise SpecError(f"tail declared on interior core vertex {leaf}")
            tails[leaf] = _normalize_tail(spec)
        for v, kids in children.items():
            if kids:
                continue
            if tails.get(v, (0,)) == (0,):
                if not allow_leaves and v != root:
                    raise SpecError(
                        f"core leaf {v} has no tail; only the root may have degree one"
                    )
                tails.pop(v, None)

        self.root = root
        self.allow_leaves = bool(allow_leaves)
        self._edges = tuple(sorted(edge_list))
        self._core_parent = parents
        self._core_depth = depths
        self._core_children = {v: tuple(k) for v, k in children.items()}
        self._tails = tails

    # -- presentation data -------------------------------------------------
    @property
    def core(self) -> frozenset:
        return frozenset(self._core_parent)

    @property
    def tails(self) -> dict:
        return dict(self._tails)

    @property
    def core_depth(self) -> int:
        return max(self._core_depth.values())

    def is_finite(self) -> bool:
        return not self._tails

    # -- navigation -------------------------------------------------------
    def __contains__(self, v: object) -> bool:
        if isinstance(v, bool):
            return False
        if isinstance(v, int):
            return v in self._core_parent
        if not isinstance(v, tuple) or len(v) < 2:
            return False
        leaf, *path = v
        degrees = self._tails.get(leaf)
        if degrees is None:
            return False
        for r, i in enumerate(path):
            if not isinstance(i, int) or not 0 <= i < degrees[r % len(degrees)]:
                return False
        return True

    def _parent(self, v):
        if isinstance(v, tuple):
            return v[0] if len(v) == 2 else v[:-1]
        return self._core_parent[v]

    def _children(self, v):
        if isinstance(v, tuple):
            leaf, rel = v[0], len(v) - 1
        else:
            kids = self._core_children[v]
            if kids or v not in self._tails:
                return kids
            leaf, rel = v, 0
        degrees = self._tails[leaf]
        base = v if isinstance(v, tuple) else (v,)
        return tuple(base + (i,) for i in range(degrees[rel % len(degrees)]))

    def _depth(self, v):
        if isinstance(v, tuple):
            return self._core_depth[v[0]] + len(v) - 1
        return self._core_depth[v]

    # -- sector structure --------------------------------------------------
    def homogeneity_level(self):
        if any(len(d) > 1 for d in self._tails.values()):
            return None
        # gamma of a core vertex; core leaves report their tail degree
        core_gamma = {v: self._gamma(v) for v in self._core_parent}
        uniform: dict[int, int | None] = {}

        def sector_gamma(v: int) -> int | None:
            # common gamma over the sector of a core vertex, None if it varies
            if v in uniform:
                return uniform[v]
            g = core_gamma[v]
            for w in self._core_children[v]:
                if sector_gamma(w) != g:
                    g = None
                    break
            uniform[v] = g
            return g

        by_depth: dict[int, list[int]] = {}
        for v, d in self._core_depth.items():
            by_depth.setdefault(d, []).append(v)
        for n in range(self.core_depth + 1):
            if all(sector_gamma(v) is not None for v in by_depth[n]):
                return n
        return self.core_depth  # pragma: no cover - the deepest level is all leaves

    def _lambda_representatives(self, max_depth):
        # siblings inside a tail are isomorphic, so one branch per tail suffices
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            yield v
            if self._depth(v) >= max_depth:
                continue
            kids = self._children(v)
            if isinstance(v, tuple) or v in self._tails:
                kids = kids[:1]
            queue.extend(kids)

    # -- equality / serialization -----------------------------------------
    def _key(self):
        return (self.root, self._edges, tuple(sorted(self._tails.items())), self.allow_leaves)

    def __eq__(self, other):
        return isinstance(other, ExplicitTree) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_json(self):
        data: dict[str, Any] = {
            "kind": self.kind,
            "edges": [list(e) for e in self._edges],
            "root": self.root,
            "tail_degrees": {
                vertex_key(v): (d[0] if len(d) == 1 else list(d))
                for v, d in sorted(self._tails.items())
            },
        }
        if self.allow_leaves:
            data["allow_leaves"] = True
        return data

    def __repr__(self):
        return f"ExplicitTree(core={len(self._core_parent)} vertices, tails={self._tails})"


def uniform_tree(degree: int) -> ExplicitTree:
    """The tree in which every vertex, root included, has ``degree`` children."""
    return ExplicitTree(edges=(), root=0, tail_degrees={0: degree})


def sector_tail_tree(core_depth: int, core_degree: int, tail_degree) -> ExplicitTree:
    """Full ``core_degree``-ary core of the given depth with tails on its leaves.

    ``tail_degree`` is one degree for every core leaf, or a sequence with one
    entry per leaf in left-to-right order.
    """
    edges = []
    level = [0]
    next_id = 1
    for _ in range(core_depth):
        new_level = []
        for v in level:
            for _ in range(core_degree):
                edges.append((v, next_id))
                new_level.append(next_id)
                next_id += 1
        level = new_level
    if isinstance(tail_degree, int):
        tails = {v: tail_degree for v in level}
    else:
        tails = {v: tail_degree[i] for i, v in enumerate(level)}
    return ExplicitTree(edges=edges, root=0, tail_degrees=tails)


_TREE_KEYS = {
    "path_n0": {"kind"},
    "z_line": {"kind"},
    "explicit": {"kind", "edges", "root", "tail_degrees", "allow_leaves"},
}


def tree_from_json(data: Mapping) -> RootedTree:
    """Build a tree from its JSON document, rejecting unknown keys."""
    if not isinstance(data, Mapping):
        raise SpecError("tree spec must be a JSON object")
    kind = data.get("kind")
    if kind not in _TREE_KEYS:
        raise SpecError(f"unknown tree kind {kind!r}")
    extra = set(data) - _TREE_KEYS[kind]
    if extra:
        raise SpecError(f"unknown keys in {kind} tree spec: {sorted(extra)}")
    if kind == "path_n0":
        return PathN0()
    if kind == "z_line":
        return ZLine()
    allow = data.get("allow_leaves", False)
    if not isinstance(allow, bool):
        raise SpecError("allow_leaves must be a boolean")
    return ExplicitTree(
        edges=data.get("edges", ()),
        root=data.get("root", 0),
        tail_degrees=data.get("tail_degrees", {}),
        allow_leaves=allow,
    )
