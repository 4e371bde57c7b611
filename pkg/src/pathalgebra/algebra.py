"""Path accessors, selection conditions and the core operators (select, join, union)."""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Union

from .graph import PropertyGraph, Value, values_equal
from .paths import Path, PathSet


# -- path operators ---------------------------------------------------------

def first(p: Path) -> str:
    return p.first


def last(p: Path) -> str:
    return p.last


def node_at(p: Path, i: int) -> str:
    return p.node_at(i)


def edge_at(p: Path, j: int) -> str:
    return p.edge_at(j)


def length(p: Path) -> int:
    return p.length


def label_of(g: PropertyGraph, o: str) -> str | None:
    return g.label(o)


def prop_of(g: PropertyGraph, o: str, pr: str) -> Value | None:
    return g.prop(o, pr)


def concat(p1: Path, p2: Path) -> Path:
    """``p1`` followed by the tail of ``p2``; requires ``last(p1) == first(p2)``."""
    return p1.concat(p2)


# -- selection conditions ---------------------------------------------------

@dataclass(frozen=True)
class LabelOfNode:
    index: int
    value: str


@dataclass(frozen=True)
class LabelOfEdge:
    index: int
    value: str


@dataclass(frozen=True)
class LabelOfFirst:
    value: str


@dataclass(frozen=True)
class LabelOfLast:
    value: str


@dataclass(frozen=True)
class NodeProp:
    index: int
    prop: str
    value: Value


@dataclass(frozen=True)
class EdgeProp:
    index: int
    prop: str
    value: Value


@dataclass(frozen=True)
class FirstProp:
    prop: str
    value: Value


@dataclass(frozen=True)
class LastProp:
    prop: str
    value: Value


@dataclass(frozen=True)
class LenEq:
    value: int


@dataclass(frozen=True)
class And:
    left: Condition
    right: Condition


@dataclass(frozen=True)
class Or:
    left: Condition
    right: Condition


@dataclass(frozen=True)
class Not:
    operand: Condition


Condition = Union[
    LabelOfNode, LabelOfEdge, LabelOfFirst, LabelOfLast,
    NodeProp, EdgeProp, FirstProp, LastProp, LenEq, And, Or, Not,
]

ENDPOINT_LEAVES = (LabelOfFirst, LabelOfLast, FirstProp, LastProp)


def conjunction(conds: Iterable[Condition]) -> Condition | None:
    """Left-nested ``And`` of ``conds``; ``None`` when empty."""
    result: Condition | None = None
    for c in conds:
        result = c if result is None else And(result, c)
    return result


def conjuncts(c: Condition) -> list[Condition]:
    if isinstance(c, And):
        return conjuncts(c.left) + conjuncts(c.right)
    return [c]


def eval_condition(g: PropertyGraph, c: Condition, p: Path) -> bool:
    """Evaluate ``c`` on ``p``.

    Positions beyond the path and missing labels or properties make a leaf false.
    """
    match c:
        case LabelOfNode(i, v):
            return 1 <= i <= p.length + 1 and g.label(p.node_at(i)) == v
        case LabelOfEdge(i, v):
            return 1 <= i <= p.length and g.label(p.edge_at(i)) == v
        case LabelOfFirst(v):
            return g.label(p.first) == v
        case LabelOfLast(v):
            return g.label(p.last) == v
        case NodeProp(i, pr, v):
            return 1 <= i <= p.length + 1 and _prop_is(g, p.node_at(i), pr, v)
        case EdgeProp(i, pr, v):
            return 1 <= i <= p.length and _prop_is(g, p.edge_at(i), pr, v)
        case FirstProp(pr, v):
            return _prop_is(g, p.first, pr, v)
        case LastProp(pr, v):
            return _prop_is(g, p.last, pr, v)
        case LenEq(n):
            return p.length == n
        case And(l, r):
            return eval_condition(g, l, p) and eval_condition(g, r, p)
        case Or(l, r):
            return eval_condition(g, l, p) or eval_condition(g, r, p)
        case Not(x):
            return not eval_condition(g, x, p)
    raise TypeError(f"not a selection condition: {c!r}")


def _prop_is(g: PropertyGraph, o: str, pr: str, v: Value) -> bool:
    actual = g.prop(o, pr)
    return actual is not None and values_equal(actual, v)


_BARE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_KEYWORDS = {"and", "or", "not", "true", "false"}


def render_label(v: str) -> str:
    if _BARE.match(v) and v.lower() not in _KEYWORDS:
        return v
    return json.dumps(v)


def render_value(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return json.dumps(v)


def render_condition(c: Condition) -> str:
    """Textual form, e.g. ``label(edge(1)) = Knows AND first.name = "Moe"``."""
    match c:
        case LabelOfNode(i, v):
            return f"label(node({i})) = {render_label(v)}"
        case LabelOfEdge(i, v):
            return f"label(edge({i})) = {render_label(v)}"
        case LabelOfFirst(v):
            return f"label(first) = {render_label(v)}"
        case LabelOfLast(v):
            return f"label(last) = {render_label(v)}"
        case NodeProp(i, pr, v):
            return f"node({i}).{pr} = {render_value(v)}"
        case EdgeProp(i, pr, v):
            return f"edge({i}).{pr} = {render_value(v)}"
        case FirstProp(pr, v):
            return f"first.{pr} = {render_value(v)}"
        case LastProp(pr, v):
            return f"last.{pr} = {render_value(v)}"
        case LenEq(n):
            return f"len() = {n}"
        case And(l, r) | Or(l, r):
            op = "AND" if isinstance(c, And) else "OR"
            left = render_condition(l)
            if isinstance(l, (And, Or)) and type(l) is not type(c):
                left = f"({left})"
            right = render_condition(r)
            if isinstance(r, (And, Or)):
                right = f"({right})"
            return f"{left} {op} {right}"
        case Not(x):
            return f"NOT ({render_condition(x)})"
    raise TypeError(f"not a selection condition: {c!r}")


# -- core operators ---------------------------------------------------------

def select(g: PropertyGraph, c: Condition, paths: Iterable[Path]) -> PathSet:
    return frozenset(p for p in paths if eval_condition(g, c, p))


def join(left: Iterable[Path], right: Iterable[Path]) -> PathSet:
    """All concatenations ``p1 . p2`` with ``last(p1) == first(p2)``."""
    by_first: dict[str, list[Path]] = defaultdict(list)
    for p in right:
        by_first[p.first].append(p)
    out = set()
    for p1 in left:
        for p2 in by_first.get(p1.last, ()):
            out.add(Path(p1.ids + p2.ids[1:]))
    return frozenset(out)


def union(left: Iterable[Path], right: Iterable[Path]) -> PathSet:
    return frozenset(left).union(right)
