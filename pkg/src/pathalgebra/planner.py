"""Logical plans: operator trees compiled from query ASTs, and their rendering."""

from __future__ import annotations

from dataclasses import dataclass
import typing
from typing import Iterator

from . import algebra as alg
from .algebra import Condition
from .parser import Alt, Concat, Label, Optional, Plus, QueryAst, Regex, Star
from .recursion import PathSemantics
from .solspace import GroupKey, OrderKey, ProjectionSpec


@dataclass(frozen=True)
class NodesScan:
    pass


@dataclass(frozen=True)
class EdgesScan:
    pass


@dataclass(frozen=True)
class Select:
    condition: Condition
    child: LogicalPlan


@dataclass(frozen=True)
class Join:
    left: LogicalPlan
    right: LogicalPlan


@dataclass(frozen=True)
class Union:
    left: LogicalPlan
    right: LogicalPlan


@dataclass(frozen=True)
class Recurse:
    semantics: PathSemantics
    child: LogicalPlan


@dataclass(frozen=True)
class Restrict:
    """Whole-path restrictor applied to the pattern's result."""

    semantics: PathSemantics
    child: LogicalPlan


@dataclass(frozen=True)
class GroupBy:
    key: GroupKey
    child: LogicalPlan


@dataclass(frozen=True)
class OrderBy:
    key: OrderKey
    child: LogicalPlan


@dataclass(frozen=True)
class Project:
    spec: ProjectionSpec
    child: LogicalPlan


LogicalPlan = typing.Union[NodesScan, EdgesScan, Select, Join, Union, Recurse, Restrict, GroupBy, OrderBy, Project]

PATH_OPERATORS = (NodesScan, EdgesScan, Select, Join, Union, Recurse, Restrict)


def children(plan: LogicalPlan) -> tuple[LogicalPlan, ...]:
    if isinstance(plan, (Join, Union)):
        return (plan.left, plan.right)
    if isinstance(plan, (NodesScan, EdgesScan)):
        return ()
    return (plan.child,)


def walk(plan: LogicalPlan) -> Iterator[LogicalPlan]:
    """Pre-order traversal."""
    yield plan
    for c in children(plan):
        yield from walk(c)


def size(plan: LogicalPlan) -> int:
    return sum(1 for _ in walk(plan))


def label_scan(name: str) -> Select:
    return Select(alg.LabelOfEdge(1, name), EdgesScan())


def compile_regex(r: Regex, semantics: PathSemantics = PathSemantics.WALK) -> LogicalPlan:
    """Translate a regular expression over edge labels into path operators."""
    match r:
        case Label(name):
            return label_scan(name)
        case Concat(left, right):
            return Join(compile_regex(left, semantics), compile_regex(right, semantics))
        case Alt(left, right):
            return Union(compile_regex(left, semantics), compile_regex(right, semantics))
        case Plus(x):
            return Recurse(semantics, compile_regex(x, semantics))
        case Star(x):
            return Union(Recurse(semantics, compile_regex(x, semantics)), NodesScan())
        case Optional(x):
            return Union(compile_regex(x, semantics), NodesScan())
    raise TypeError(f"not a regex: {r!r}")


def endpoint_conditions(q: QueryAst) -> list[Condition]:
    conds: list[Condition] = []
    if q.source.label is not None:
        conds.append(alg.LabelOfFirst(q.source.label))
    conds.extend(alg.FirstProp(k, v) for k, v in q.source.props)
    if q.target.label is not None:
        conds.append(alg.LabelOfLast(q.target.label))
    conds.extend(alg.LastProp(k, v) for k, v in q.target.props)
    return conds


def plan(q: QueryAst) -> LogicalPlan:
    """Project . [OrderBy] . GroupBy . Restrict . [Select] . regex."""
    body = compile_regex(q.regex, q.restrictor)
    conds = endpoint_conditions(q)
    if q.where is not None:
        conds.append(q.where)
    cond = alg.conjunction(conds)
    if cond is not None:
        body = Select(cond, body)
    node: LogicalPlan = GroupBy(q.group_by, Restrict(q.restrictor, body))
    if q.order_by is not None:
        node = OrderBy(q.order_by, node)
    return Project(q.projection, node)


# -- rendering --------------------------------------------------------------------

_GROUP_NAMES = {"S": "Source", "T": "Target", "L": "Length"}
_ORDER_NAMES = {"P": "Partition", "G": "Group", "A": "Path"}


def _count(n: int | None) -> str:
    return "ALL" if n is None else str(n)


def _header(node: LogicalPlan) -> str | None:
    match node:
        case Project(spec, _):
            return (f"Projection ({_count(spec.parts)} PARTITIONS {_count(spec.groups)} GROUPS "
                    f"{_count(spec.paths)} PATHS)")
        case OrderBy(key, _):
            return "OrderBy (" + " ".join(_ORDER_NAMES[c] for c in key.value) + ")"
        case GroupBy(key, _):
            if key is GroupKey.NONE:
                return "Group (None)"
            return "Group (" + " ".join(_GROUP_NAMES[c] for c in key.value) + ")"
        case Restrict(sem, _):
            return f"Restrictor ({sem.value})"
    return None


def render_plan(node: LogicalPlan) -> str:
    """Canonical text: header lines for the solution-space chain, then an indented tree."""
    lines = []
    while (head := _header(node)) is not None:
        lines.append(head)
        node = node.child
    _render_tree(node, 0, lines)
    return "\n".join(lines) + "\n"


def _scan_name(node: LogicalPlan) -> str | None:
    if isinstance(node, EdgesScan):
        return "EDGES(G)"
    if isinstance(node, NodesScan):
        return "NODES(G)"
    return None


def _render_tree(node: LogicalPlan, depth: int, lines: list[str]) -> None:
    pad = "  " * depth + "-> "
    match node:
        case NodesScan() | EdgesScan():
            lines.append(pad + _scan_name(node))
        case Select(cond, child):
            scan = _scan_name(child)
            if scan is not None:
                lines.append(f"{pad}Select: ({alg.render_condition(cond)} , {scan})")
            else:
                lines.append(f"{pad}Select: ({alg.render_condition(cond)})")
                _render_tree(child, depth + 1, lines)
        case Join(left, right) | Union(left, right):
            lines.append(pad + ("Join" if isinstance(node, Join) else "Union"))
            _render_tree(left, depth + 1, lines)
            _render_tree(right, depth + 1, lines)
        case Recurse(sem, child):
            lines.append(f"{pad}Recursive Join (restrictor: {sem.value})")
            _render_tree(child, depth + 1, lines)
        case _:
            head = _header(node)
            if head is None:
                raise TypeError(f"not a plan node: {node!r}")
            lines.append(pad + head)
            _render_tree(node.child, depth + 1, lines)


def render_algebra(node: LogicalPlan) -> str:
    """Compact algebra expression, e.g. ``pi(*,*,1)(tau_A(gamma_ST(phi_TRAIL(...))))``."""
    match node:
        case NodesScan():
            return "Nodes(G)"
        case EdgesScan():
            return "Edges(G)"
        case Select(cond, child):
            return f"sigma[{alg.render_condition(cond)}]({render_algebra(child)})"
        case Join(left, right):
            return f"({render_algebra(left)} JOIN {render_algebra(right)})"
        case Union(left, right):
            return f"({render_algebra(left)} UNION {render_algebra(right)})"
        case Recurse(sem, child):
            return f"phi_{sem.value}({render_algebra(child)})"
        case Restrict(sem, child):
            return f"rho_{sem.value}({render_algebra(child)})"
        case GroupBy(key, child):
            return f"gamma{'_' + key.value if key.value else ''}({render_algebra(child)})"
        case OrderBy(key, child):
            return f"tau_{key.value}({render_algebra(child)})"
        case Project(spec, child):
            return f"pi{spec}({render_algebra(child)})"
    raise TypeError(f"not a plan node: {node!r}")
