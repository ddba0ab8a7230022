"""Symbols of composition and multiplication operators.

A composition symbol on the path tree or the integer line is a finite table
plus affine tails ``j -> a*j + b``; on a finite explicit tree it is a total
table.  The affine tails are what make every supremum over the infinite tree
reducible to a finite, certified search.  A table-only symbol, or one given
by a Python callable, is a black box: it can be iterated but not certified.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..errors import DomainError, SpecError, TruncationError
from ..scalars import EXACT, Scalar, format_pair, parse_scalar
from ..spaces import LipFunc
from ..trees import ExplicitTree, PathN0, RootedTree, Vertex, ZLine, parse_vertex_key, vertex_key


def _ceil_div(p: int, q: int) -> int:
    return math.ceil(Fraction(p, q))


def _floor_div(p: int, q: int) -> int:
    return math.floor(Fraction(p, q))


@dataclass(frozen=True)
class AffineTail:
    """``j -> a*j + b`` for ``j >= start`` (positive ray) or ``j <= start`` (negative ray)."""

    start: int
    a: int
    b: int

    def __call__(self, j: int) -> int:
        return self.a * j + self.b

    def to_json(self) -> dict:
        return {"from": self.start, "a": self.a, "b": self.b}

    @classmethod
    def from_json(cls, data: Any) -> AffineTail:
        if not isinstance(data, Mapping) or set(data) != {"from", "a", "b"}:
            raise SpecError("affine tail must be an object with keys 'from', 'a', 'b'")
        vals = [data[k] for k in ("from", "a", "b")]
        if any(isinstance(x, bool) or not isinstance(x, int) for x in vals):
            raise SpecError("affine tail entries must be integers")
        return cls(*vals)


class SymbolPhi:
    """Vertex self-map.

    ``increasing`` records the hypotheses of the hypercyclicity classifier
    (path tree, strictly increasing, ``phi(0) > 0``).  Leave it ``None`` to
    have it detected; an explicit ``True`` is verified when the symbol is
    certifiable and trusted for black boxes; ``False`` switches it off.
    """

    def __init__(
        self,
        tree: RootedTree,
        table: Mapping | None = None,
        tail: AffineTail | None = None,
        negative_tail: AffineTail | None = None,
        increasing: bool | None = None,
        assume_bounded: bool = False,
        rule: Callable[[Vertex], Vertex] | None = None,
    ):
        self.tree = tree
        self.table = dict(table or {})
        self.tail = tail
        self.negative_tail = negative_tail
        self.assume_bounded = bool(assume_bounded)
        self.rule = rule
        self._validate()
        detected = self._detect_increasing()
        if increasing is None:
            self.increasing = bool(detected)
        elif increasing and detected is False:
            raise SpecError("symbol flagged increasing but it is not strictly increasing with phi(0) > 0")
        else:
            self.increasing = bool(increasing)

    # -- validation -------------------------------------------------------
    def _validate(self) -> None:
        tree = self.tree
        for j, image in self.table.items():
            if j not in tree or image not in tree:
                raise SpecError(f"table entry {j!r} -> {image!r} leaves the tree")
        if isinstance(tree, PathN0):
            if self.negative_tail is not None:
                raise SpecError("the path tree has no negative ray")
            if self.tail is not None:
                t = self.tail
                if t.start < 0 or t.a < 1:
                    raise SpecError("path-tree tails need from >= 0 and a >= 1")
                if t(t.start) < 0:
                    raise SpecError("affine tail maps below the root")
                missing = [j for j in range(t.start) if j not in self.table]
                if missing:
                    raise SpecError(f"table must cover 0..{t.start - 1}; missing {missing[:5]}")
                if any(j >= t.start for j in self.table):
                    raise SpecError("table entries overlap the affine tail")
        elif isinstance(tree, ZLine):
            pos, neg = self.tail, self.negative_tail
            if pos is not None and (pos.start < 0 or pos.a == 0):
                raise SpecError("positive ray tail needs from >= 0 and a != 0")
            if neg is not None and (neg.start > -1 or neg.a == 0):
                raise SpecError("negative ray tail needs from <= -1 and a != 0")
            if pos is not None and neg is not None:
                missing = [j for j in range(neg.start + 1, pos.start) if j not in self.table]
                if missing:
                    raise SpecError(f"table must cover {neg.start + 1}..{pos.start - 1}; missing {missing[:5]}")
            for j in self.table:
                if (pos is not None and j >= pos.start) or (neg is not None and j <= neg.start):
                    raise SpecError("table entries overlap an affine tail")
        elif isinstance(tree, ExplicitTree):
            if not tree.is_finite():
                raise SpecError("composition symbols on explicit trees need a finite tree")
            if self.tail is not None or self.negative_tail is not None:
                raise SpecError("affine tails only exist on the path tree and the integer line")
            if self.rule is None and set(self.table) != set(tree.core):
                raise SpecError("symbol on a finite tree must be a total table")
        else:
            raise SpecError(f"unsupported tree {tree!r}")

    def _detect_increasing(self) -> bool | None:
        """True/False when decidable from the presentation, None for black boxes."""
        if not isinstance(self.tree, PathN0):
            return False
        if self.tail is not None:
            top = self.tail.start
            values = [self.table[j] for j in range(top)] + [self.tail(top)]
        elif self.rule is None:
            top = 0
            while top in self.table:
                top += 1
            if top == 0:
                return None
            values = [self.table[j] for j in range(top)]
        else:
            return None
        return values[0] > 0 and all(x < y for x, y in zip(values, values[1:]))

    # -- evaluation -------------------------------------------------------
    @property
    def certifiable(self) -> bool:
        """Every ray carries an affine tail (or the tree is finite)."""
        if isinstance(self.tree, ExplicitTree):
            return self.rule is None
        if isinstance(self.tree, PathN0):
            return self.tail is not None
        return self.tail is not None and self.negative_tail is not None

    def __call__(self, v: Vertex) -> Vertex:
        if v in self.table:
            return self.table[v]
        self.tree._check(v)
        if self.tail is not None and isinstance(v, int) and v >= self.tail.start:
            return self.tail(v)
        if self.negative_tail is not None and isinstance(v, int) and v <= self.negative_tail.start:
            return self.negative_tail(v)
        if self.rule is not None:
            return self.rule(v)
        raise TruncationError(
            f"symbol is undefined at {v!r}", required=self.tree.depth(v) + 1
        )

    def iterate(self, v: Vertex, n: int) -> Vertex:
        """``phi`` applied ``n`` times; ``n = 0`` is the identity."""
        if n < 0:
            raise DomainError("iterate count must be non-negative")
        for _ in range(n):
            v = self(v)
        return v

    def power(self, n: int) -> SymbolPhi:
        """The symbol of the ``n``-th iterate, again eventually affine on the path tree."""
        if n < 1:
            raise DomainError("power needs n >= 1")
        if n == 1:
            return self
        if not isinstance(self.tree, PathN0):
            if isinstance(self.tree, ExplicitTree) and self.rule is None:
                return SymbolPhi(self.tree, {v: self.iterate(v, n) for v in self.table},
                                 assume_bounded=self.assume_bounded)
            raise DomainError("closed-form powers are only available on the path tree and finite trees")
        if self.tail is None:
            if self.rule is not None:
                return SymbolPhi(self.tree, rule=lambda j: self.iterate(j, n),
                                 increasing=self.increasing or None)
            table = {}
            for j in sorted(self.table):
                try:
                    table[j] = self.iterate(j, n)
                except TruncationError:
                    break
            return SymbolPhi(self.tree, table)
        t = self.tail
        start = t.start
        while True:
            j, ok = start, True
            for _ in range(n - 1):
                j = t(j)
                if j < t.start:
                    ok = False
                    break
            if ok:
                break
            start += 1
        a_n = t.a ** n
        b_n = t.b * n if t.a == 1 else t.b * (a_n - 1) // (t.a - 1)
        table = {j: self.iterate(j, n) for j in range(start)}
        return SymbolPhi(self.tree, table, AffineTail(start, a_n, b_n),
                         increasing=self.increasing or None, assume_bounded=self.assume_bounded)

    # -- certified horizons ------------------------------------------------
    def _need_certifiable(self) -> None:
        if not self.certifiable:
            raise TruncationError("black-box symbol: no affine tail to certify the computation")

    def lipschitz_horizon(self) -> int:
        """Depth ``K`` such that every edge ``(v, parent(v))`` with ``|v| > K`` sits in a tail."""
        self._need_certifiable()
        if isinstance(self.tree, ExplicitTree):
            return self.tree.core_depth
        k = self.tail.start
        if self.negative_tail is not None:
            k = max(k, -self.negative_tail.start)
        return k

    def tail_slopes(self) -> tuple[int, ...]:
        return tuple(abs(t.a) for t in (self.tail, self.negative_tail) if t is not None)

    def settled_depth(self, lo: int, hi: int) -> int:
        """Depth ``K`` beyond which ``phi`` lands past the interval ``[lo, hi]``.

        For every ``v`` with ``|v| >= K`` the image lies in ``[hi, inf)`` or in
        ``(-inf, lo]``, always on the same side along a ray.  A function that
        is constant outside ``(lo, hi)`` on each ray therefore composes to a
        function that is constant on every sector hanging at depth ``K``.
        On finite trees this is simply the height plus one.
        """
        tree = self.tree
        if isinstance(tree, ExplicitTree):
            return tree.core_depth + 1
        if isinstance(tree, PathN0):
            if self.increasing:
                # phi(j) >= j + phi(0) > j, so j >= hi already lands past hi
                k = max(hi, 0)
                if self.tail is not None:
                    k = min(k, max(self.tail.start, _ceil_div(hi - self.tail.b, self.tail.a)))
                self._check_defined(k)
                return k
            self._need_certifiable()
            t = self.tail
            return max(t.start, _ceil_div(hi - t.b, t.a))
        self._need_certifiable()
        pos, neg = self.tail, self.negative_tail
        if pos.a > 0:
            k_pos = max(pos.start, _ceil_div(hi - pos.b, pos.a))
        else:
            k_pos = max(pos.start, _ceil_div(lo - pos.b, pos.a))
        if neg.a > 0:
            k_neg = max(-neg.start, -_floor_div(lo - neg.b, neg.a))
        else:
            k_neg = max(-neg.start, -_floor_div(hi - neg.b, neg.a))
        return max(k_pos, k_neg, 0)

    def _check_defined(self, depth: int) -> None:
        if self.certifiable or self.rule is not None:
            return
        for j in range(depth + 1):
            if j not in self.table:
                raise TruncationError(
                    f"symbol table stops at {j - 1}; the computation needs values up to {depth}",
                    required=depth + 1,
                )

    # -- equality / serialization -----------------------------------------
    def _key(self):
        if self.rule is not None:
            return id(self)
        return (self.tree, tuple(sorted(self.table.items(), key=lambda kv: vertex_key(kv[0]))),
                self.tail, self.negative_tail, self.increasing, self.assume_bounded)

    def __eq__(self, other):
        return isinstance(other, SymbolPhi) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"SymbolPhi(table={self.table}, tail={self.tail}, "
                f"negative_tail={self.negative_tail}, increasing={self.increasing})")

    def to_json(self) -> dict:
        if self.rule is not None:
            raise SpecError("black-box symbols given by a callable cannot be serialized")
        data: dict[str, Any] = {
            "table": {vertex_key(j): self.table[j] for j in sorted(self.table, key=vertex_key)},
            "increasing": self.increasing,
        }
        if self.tail is not None:
            data["affine_tail"] = self.tail.to_json()
        if self.negative_tail is not None:
            data["negative_tail"] = self.negative_tail.to_json()
        if self.assume_bounded:
            data["assume_bounded"] = True
        return data

    @classmethod
    def from_json(cls, tree: RootedTree, data: Mapping) -> SymbolPhi:
        if not isinstance(data, Mapping):
            raise SpecError("symbol spec must be a JSON object")
        extra = set(data) - {"table", "affine_tail", "negative_tail", "increasing", "assume_bounded"}
        if extra:
            raise SpecError(f"unknown keys in symbol spec: {sorted(extra)}")
        table_raw = data.get("table", {})
        if not isinstance(table_raw, Mapping):
            raise SpecError("symbol table must be an object")
        table = {}
        for k, v in table_raw.items():
            if isinstance(v, bool) or not isinstance(v, (int, str, list)):
                raise SpecError(f"symbol table value {v!r} is not a vertex id")
            table[parse_vertex_key(k)] = parse_vertex_key(v)
        tail = AffineTail.from_json(data["affine_tail"]) if "affine_tail" in data else None
        neg = AffineTail.from_json(data["negative_tail"]) if "negative_tail" in data else None
        inc = data.get("increasing")
        if inc is not None and not isinstance(inc, bool):
            raise SpecError("'increasing' must be a boolean")
        bounded = data.get("assume_bounded", False)
        if not isinstance(bounded, bool):
            raise SpecError("'assume_bounded' must be a boolean")
        return cls(tree, table, tail, neg, increasing=inc, assume_bounded=bounded)


def affine_symbol(a: int, b: int, tree: RootedTree | None = None, **kwargs) -> SymbolPhi:
    """``j -> a*j + b`` on the whole path tree."""
    return SymbolPhi(tree or PathN0(), {}, AffineTail(0, a, b), **kwargs)


def example_zline_symbol() -> SymbolPhi:
    """``j -> j + 1`` on the negative ray and ``j -> 2j + 1`` on ``j >= 0``."""
    return SymbolPhi(ZLine(), {}, AffineTail(0, 2, 1), AffineTail(-1, 1, 1))


class SymbolPsi:
    """Multiplier presented as a finitely determined function.

    ``table`` gives values on a down-closed core; ``tail_values`` optionally
    assigns, to a core vertex ``u``, the constant taken on every sector that
    hangs below ``u`` outside the core (default: the value at ``u``).
    """

    def __init__(self, tree: RootedTree, table: Mapping, tail_values: Mapping | None = None):
        values = dict(table)
        for u, c in (tail_values or {}).items():
            if u not in values:
                raise SpecError(f"tail value declared at non-core vertex {u!r}")
            for w in tree.children(u):
                if w not in table:
                    values[w] = c
        self.tree = tree
        self.values = LipFunc(tree, values)

    @classmethod
    def constant(cls, tree: RootedTree, value: Scalar) -> SymbolPsi:
        return cls(tree, {tree.root: value})

    def __call__(self, v: Vertex) -> Scalar:
        return self.values(v)

    @property
    def core_depth(self) -> int:
        return self.values.core_depth

    def __eq__(self, other):
        return isinstance(other, SymbolPsi) and self.values == other.values

    def __hash__(self):
        return hash(self.tree)

    def __repr__(self):
        return f"SymbolPsi({self.values!r})"

    def to_json(self) -> dict:
        vals = self.values.core_values
        return {"table": {vertex_key(v): format_pair(vals[v]) for v in
                          sorted(vals, key=lambda v: (self.tree.depth(v), vertex_key(v)))}}

    @classmethod
    def from_json(cls, tree: RootedTree, data: Mapping, mode: str = EXACT) -> SymbolPsi:
        if not isinstance(data, Mapping) or "table" not in data:
            raise SpecError("multiplier spec must be an object with a 'table'")
        extra = set(data) - {"table", "tail_values"}
        if extra:
            raise SpecError(f"unknown keys in multiplier spec: {sorted(extra)}")
        try:
            table = {parse_vertex_key(k): parse_scalar(v, mode) for k, v in data["table"].items()}
            tails = {parse_vertex_key(k): parse_scalar(v, mode)
                     for k, v in data.get("tail_values", {}).items()}
        except (TypeError, ValueError) as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(str(exc)) from exc
        return cls(tree, table, tails)
