"""Bottom-up interpreter for logical plans."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import algebra as alg
from .graph import PropertyGraph, edges_of, nodes_of
from .paths import PathSet, canonical
from .planner import (
    EdgesScan,
    GroupBy,
    Join,
    LogicalPlan,
    NodesScan,
    OrderBy,
    Project,
    Recurse,
    Restrict,
    Select,
    Union,
)
from .recursion import RecursionConfig, phi, restrict
from .solspace import ProjectionSpec, SolutionSpace, group_by, order_by, project


@dataclass(frozen=True)
class ExecutionOptions:
    """``max_depth`` bounds walk recursion; ``seed`` switches projection
    tie-breaks from canonical order to a seeded shuffle; ``limit`` truncates
    the canonical result."""

    max_depth: int | None = None
    seed: int | None = None
    limit: int | None = None


class _Evaluator:
    def __init__(self, graph: PropertyGraph, opts: ExecutionOptions):
        self.graph = graph
        self.opts = opts
        self.rng = random.Random(opts.seed) if opts.seed is not None else None

    def eval(self, node: LogicalPlan) -> PathSet | SolutionSpace:
        match node:
            case NodesScan():
                return nodes_of(self.graph)
            case EdgesScan():
                return edges_of(self.graph)
            case Select(cond, child):
                return alg.select(self.graph, cond, self.paths(child))
            case Join(left, right):
                return alg.join(self.paths(left), self.paths(right))
            case Union(left, right):
                return alg.union(self.paths(left), self.paths(right))
            case Recurse(sem, child):
                return phi(sem, self.paths(child), RecursionConfig(max_depth=self.opts.max_depth))
            case Restrict(sem, child):
                return restrict(sem, self.paths(child))
            case GroupBy(key, child):
                return group_by(key, self.paths(child))
            case OrderBy(key, child):
                return order_by(key, self.space(child))
            case Project(spec, child):
                return project(spec, self.space(child), self.rng)
        raise TypeError(f"not a plan node: {node!r}")

    def paths(self, node: LogicalPlan) -> PathSet:
        result = self.eval(node)
        if isinstance(result, SolutionSpace):
            raise TypeError(f"{type(node).__name__} yields a solution space where paths are needed")
        return result

    def space(self, node: LogicalPlan) -> SolutionSpace:
        result = self.eval(node)
        if not isinstance(result, SolutionSpace):
            raise TypeError(f"{type(node).__name__} yields paths where a solution space is needed")
        return result


def evaluate(plan: LogicalPlan, graph: PropertyGraph, opts: ExecutionOptions = ExecutionOptions()):
    """Evaluate ``plan``; the result is a path set or, for a group/order root, a solution space."""
    return _Evaluator(graph, opts).eval(plan)


def execute(plan: LogicalPlan, graph: PropertyGraph, opts: ExecutionOptions = ExecutionOptions()) -> PathSet:
    """Evaluate ``plan`` to a path set.

    A root that yields a solution space is projected with ``(*,*,*)``.
    """
    ev = _Evaluator(graph, opts)
    result = ev.eval(plan)
    if isinstance(result, SolutionSpace):
        result = project(ProjectionSpec(), result, ev.rng)
    if opts.limit is not None:
        result = frozenset(canonical(result)[: opts.limit])
    return result


def solution_space(plan: LogicalPlan, graph: PropertyGraph, opts: ExecutionOptions = ExecutionOptions()) -> SolutionSpace | None:
    """The solution space feeding the root projection, if the plan has one."""
    node = plan.child if isinstance(plan, Project) else plan
    result = _Evaluator(graph, opts).eval(node)
    return result if isinstance(result, SolutionSpace) else None
