"""Reduced ordered BDDs (plain Shannon nodes, no complement edges)."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .function import BooleanFunction

ZERO = 0
ONE = 1


class BddError(ValueError):
    pass


@dataclass(frozen=True)
class BddNode:
    var: int
    low: int
    high: int


@dataclass(frozen=True)
class Bdd:
    """Node ids 0 and 1 are the terminals; ``nodes[k]`` describes id ``k + 2``."""

    num_vars: int
    order: tuple[int, ...]
    roots: tuple[int, ...]
    nodes: tuple[BddNode, ...]
    var_names: tuple[str, ...]

    def node(self, ref: int) -> BddNode:
        if ref < 2:
            raise BddError(f"{ref} is a terminal")
        return self.nodes[ref - 2]

    @staticmethod
    def is_terminal(ref: int) -> bool:
        return ref < 2

    def level(self, ref: int) -> int:
        """Position of the node's variable in the order; terminals sit below every variable."""
        if ref < 2:
            return self.num_vars
        return self.order.index(self.node(ref).var)

    def reachable(self, roots: Sequence[int] | None = None) -> list[int]:
        """Internal node ids reachable from ``roots``, ascending."""
        seen: set[int] = set()
        stack = [r for r in (self.roots if roots is None else roots) if r >= 2]
        while stack:
            ref = stack.pop()
            if ref in seen:
                continue
            seen.add(ref)
            nd = self.node(ref)
            stack.extend(c for c in (nd.low, nd.high) if c >= 2)
        return sorted(seen)

    def parents(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {ref: [] for ref in self.reachable()}
        for ref in self.reachable():
            nd = self.node(ref)
            for c in (nd.low, nd.high):
                if c >= 2:
                    out[c].append(ref)
        return out

    def to_dot(self) -> str:
        lines = ["digraph bdd {", '  node [shape=circle];', '  t0 [label="0", shape=box];', '  t1 [label="1", shape=box];']

        def name(ref: int) -> str:
            return f"t{ref}" if ref < 2 else f"n{ref}"

        for ref in self.reachable():
            nd = self.node(ref)
            lines.append(f'  {name(ref)} [label="{self.var_names[nd.var]}"];')
            lines.append(f"  {name(ref)} -> {name(nd.low)} [style=dashed];")
            lines.append(f"  {name(ref)} -> {name(nd.high)};")
        for j, r in enumerate(self.roots):
            lines.append(f'  f{j} [label="f{j}", shape=plaintext];')
            lines.append(f"  f{j} -> {name(r)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self):
        self.nodes: list[BddNode] = []
        self.unique: dict[tuple[int, int, int], int] = {}

    def mk(self, var: int, low: int, high: int) -> int:
        if low == high:
            return low
        key = (var, low, high)
        ref = self.unique.get(key)
        if ref is None:
            ref = len(self.nodes) + 2
            self.nodes.append(BddNode(var, low, high))
            self.unique[key] = ref
        return ref


def build(function: BooleanFunction, order: Sequence[int] | None = None) -> Bdd:
    """Bottom-up construction from the truth table, one shared unique table for all outputs."""
    n = function.num_inputs
    order = tuple(range(n)) if order is None else tuple(order)
    if sorted(order) != list(range(n)):
        raise BddError(f"order {order} is not a permutation of range({n})")
    b = _Builder()
    # word bit s holds the variable at depth n-1-s, so adjacent pairs differ in the deepest variable
    size = 1 << n
    assignment = [0] * size
    for w in range(size):
        a = 0
        for s in range(n):
            if (w >> s) & 1:
                a |= 1 << order[n - 1 - s]
        assignment[w] = a
    roots = []
    for j in range(function.num_outputs):
        layer = [(function.rows[assignment[w]] >> j) & 1 for w in range(size)]
        for s in range(n):
            var = order[n - 1 - s]
            layer = [b.mk(var, layer[k], layer[k + 1]) for k in range(0, len(layer), 2)]
        roots.append(layer[0])
    return Bdd(n, order, tuple(roots), tuple(b.nodes), function.input_names)


def evaluate_bdd(bdd: Bdd, assignment: int) -> int:
    if assignment < 0 or assignment >> bdd.num_vars:
        raise BddError(f"assignment {assignment} does not fit in {bdd.num_vars} variables")
    out = 0
    for j, ref in enumerate(bdd.roots):
        while ref >= 2:
            nd = bdd.nodes[ref - 2]
            ref = nd.high if (assignment >> nd.var) & 1 else nd.low
        out |= ref << j
    return out


class ShapeKind(str, Enum):
    GENERAL = "GENERAL"
    HIGH_ZERO = "HIGH_ZERO"
    HIGH_ONE = "HIGH_ONE"
    LOW_ZERO = "LOW_ZERO"
    LOW_ONE = "LOW_ONE"
    VARIABLE = "VARIABLE"
    NEGATED_VARIABLE = "NEGATED_VARIABLE"


@dataclass(frozen=True)
class NodeShape:
    kind: ShapeKind
    low_terminal: int | None
    high_terminal: int | None
    low_shared: bool = False
    high_shared: bool = False
    shared: bool = False


_KINDS = {
    (ZERO, ONE): ShapeKind.VARIABLE,
    (ONE, ZERO): ShapeKind.NEGATED_VARIABLE,
    (ZERO, None): ShapeKind.LOW_ZERO,
    (ONE, None): ShapeKind.LOW_ONE,
    (None, ZERO): ShapeKind.HIGH_ZERO,
    (None, ONE): ShapeKind.HIGH_ONE,
    (None, None): ShapeKind.GENERAL,
}


def classify_node(bdd: Bdd, ref: int, parents: dict[int, list[int]] | None = None) -> NodeShape:
    """Shape of an internal node, plus whether it or its children feed more than one consumer.

    A root counts as one consumer, so a root that is also somebody's child is shared.
    """
    if ref < 2:
        raise BddError("terminals have no shape")
    nd = bdd.node(ref)
    lo = nd.low if nd.low < 2 else None
    hi = nd.high if nd.high < 2 else None
    if parents is None:
        parents = bdd.parents()

    def fanout(r: int) -> int:
        if r < 2:
            return 0
        return len(parents.get(r, ())) + bdd.roots.count(r)

    return NodeShape(
        kind=_KINDS[(lo, hi)],
        low_terminal=lo,
        high_terminal=hi,
        low_shared=fanout(nd.low) > 1,
        high_shared=fanout(nd.high) > 1,
        shared=fanout(ref) > 1,
    )
