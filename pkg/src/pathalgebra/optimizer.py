"""Rule-based plan rewrites: selection pushdown, walk-to-shortest, redundant order-by removal."""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Callable

from . import algebra as alg
from .algebra import Condition
from .planner import (
    GroupBy,
    Join,
    LogicalPlan,
    OrderBy,
    Project,
    Recurse,
    Restrict,
    Select,
    Union,
    children,
    size,
    walk,
)
from .recursion import PathSemantics
from .solspace import GroupKey, OrderKey, ProjectionSpec

log = logging.getLogger(__name__)

Rule = Callable[[LogicalPlan], "LogicalPlan | None"]


def references(c: Condition) -> set[str]:
    """Which parts of a path ``c`` looks at: ``first``, ``last`` and/or ``inner``."""
    if isinstance(c, (alg.LabelOfFirst, alg.FirstProp)):
        return {"first"}
    if isinstance(c, (alg.LabelOfLast, alg.LastProp)):
        return {"last"}
    if isinstance(c, (alg.And, alg.Or)):
        return references(c.left) | references(c.right)
    if isinstance(c, alg.Not):
        return references(c.operand)
    return {"inner"}


def is_endpoint_only(c: Condition) -> bool:
    return "inner" not in references(c)


def _with_children(node: LogicalPlan, new: tuple[LogicalPlan, ...]) -> LogicalPlan:
    if isinstance(node, (Join, Union)):
        return replace(node, left=new[0], right=new[1])
    if not new:
        return node
    return replace(node, child=new[0])


def _apply_once(node: LogicalPlan, rule: Rule) -> tuple[LogicalPlan, bool]:
    """Apply ``rule`` at the first matching node in pre-order."""
    result = rule(node)
    if result is not None:
        return result, True
    kids = children(node)
    for k, kid in enumerate(kids):
        new_kid, changed = _apply_once(kid, rule)
        if changed:
            return _with_children(node, kids[:k] + (new_kid,) + kids[k + 1 :]), True
    return node, False


def rewrite(plan: LogicalPlan, rules: list[Rule], cap: int | None = None) -> LogicalPlan:
    """Apply ``rules`` until none matches, at most ``cap`` times (default 10 x plan size)."""
    cap = cap if cap is not None else 10 * size(plan)
    for _ in range(cap):
        for rule in rules:
            plan, changed = _apply_once(plan, rule)
            if changed:
                log.debug("applied %s", rule.__name__)
                break
        else:
            return plan
    log.warning("rewrite cap of %d applications reached", cap)
    return plan


# -- rules ----------------------------------------------------------------------------

def pushdown_step(node: LogicalPlan) -> LogicalPlan | None:
    if not isinstance(node, Select):
        return None
    cond, child = node.condition, node.child
    if isinstance(child, Union):
        return Union(Select(cond, child.left), Select(cond, child.right))
    if isinstance(child, Join):
        to_left, to_right, residual = [], [], []
        for c in alg.conjuncts(cond):
            refs = references(c)
            if refs == {"first"}:
                to_left.append(c)
            elif refs == {"last"}:
                to_right.append(c)
            else:
                residual.append(c)
        if not to_left and not to_right:
            return None
        left, right = child.left, child.right
        if to_left:
            left = Select(alg.conjunction(to_left), left)
        if to_right:
            right = Select(alg.conjunction(to_right), right)
        joined = Join(left, right)
        rest = alg.conjunction(residual)
        return joined if rest is None else Select(rest, joined)
    if isinstance(child, Restrict) and is_endpoint_only(cond):
        return Restrict(child.semantics, Select(cond, child.child))
    if isinstance(child, Select) and is_endpoint_only(cond) and not is_endpoint_only(child.condition):
        return Select(child.condition, Select(cond, child.child))
    return None


def _shortest_safe(body: LogicalPlan) -> bool:
    recursions = [n for n in walk(body) if isinstance(n, Recurse)]
    if not recursions or any(r.semantics is not PathSemantics.WALK for r in recursions):
        return False
    for n in walk(body):
        if isinstance(n, Restrict):
            return False
        if isinstance(n, Select) and not is_endpoint_only(n.condition):
            if any(isinstance(m, Recurse) for m in walk(n.child)):
                return False
    return True


def _to_shortest(node: LogicalPlan) -> LogicalPlan:
    new = tuple(_to_shortest(k) for k in children(node))
    node = _with_children(node, new)
    if isinstance(node, Recurse):
        return Recurse(PathSemantics.SHORTEST, node.child)
    return node


def walk_to_shortest_step(node: LogicalPlan) -> LogicalPlan | None:
    match node:
        case Project(
            ProjectionSpec(1, 1, None),
            OrderBy(OrderKey.G, GroupBy(GroupKey.L, Restrict(PathSemantics.WALK, body))),
        ) if _shortest_safe(body):
            inner = Restrict(PathSemantics.SHORTEST, _to_shortest(body))
            return Project(node.spec, OrderBy(OrderKey.G, GroupBy(GroupKey.L, inner)))
    return None


def drop_orderby_step(node: LogicalPlan) -> LogicalPlan | None:
    if (
        isinstance(node, OrderBy)
        and node.key in (OrderKey.P, OrderKey.G, OrderKey.PG)
        and isinstance(node.child, GroupBy)
        and node.child.key is GroupKey.NONE
    ):
        return node.child
    return None


def push_down_selection(plan: LogicalPlan) -> LogicalPlan:
    """Move selections towards the scans.

    Conditions on the first node go into a join's left input, conditions on
    the last node into its right input; any selection distributes over union;
    endpoint-only selections move below restrictors and below selections on
    inner positions. Nothing moves below a recursion.
    """
    return rewrite(plan, [pushdown_step])


def walk_to_shortest(plan: LogicalPlan) -> LogicalPlan:
    """Swap walk recursion for shortest recursion under ``pi(1,1,*) tau_G gamma_L``.

    Both sides return every path of the globally minimal length. The rewrite is
    skipped when a selection on inner positions sits above a recursion, since
    dropping longer segments could then change the answer.
    """
    return rewrite(plan, [walk_to_shortest_step])


def drop_redundant_orderby(plan: LogicalPlan) -> LogicalPlan:
    """Remove partition/group ordering over a single-partition, single-group space."""
    return rewrite(plan, [drop_orderby_step])


def optimize(plan: LogicalPlan) -> LogicalPlan:
    return rewrite(plan, [drop_orderby_step, walk_to_shortest_step, pushdown_step])
