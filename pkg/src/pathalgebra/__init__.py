"""Path algebra for property graphs: parse, plan, optimize and evaluate path queries."""

from .engine import ExecutionOptions, evaluate, execute, solution_space
from .errors import (
    ConcatError,
    DivergenceError,
    GraphLoadError,
    PathAlgebraError,
    PositionError,
    QuerySemanticError,
    QuerySyntaxError,
)
from .graph import PropertyGraph, edges_of, load_graph, nodes_of, parse_graph
from .optimizer import optimize
from .parser import QueryAst, parse_classic_gql, parse_query, render_query
from .paths import Path, canonical, parse_path, render_path
from .planner import plan, render_plan
from .recursion import PathSemantics, RecursionConfig, phi
from .solspace import GroupKey, OrderKey, ProjectionSpec, group_by, order_by, project

__all__ = [
    "ConcatError", "DivergenceError", "ExecutionOptions", "GraphLoadError", "GroupKey",
    "OrderKey", "Path", "PathAlgebraError", "PathSemantics", "PositionError",
    "ProjectionSpec", "PropertyGraph", "QueryAst", "QuerySemanticError", "QuerySyntaxError",
    "RecursionConfig", "canonical", "edges_of", "evaluate", "execute", "group_by",
    "load_graph", "nodes_of", "optimize", "order_by", "parse_classic_gql", "parse_graph",
    "parse_path", "parse_query", "phi", "plan", "project", "render_path", "render_plan",
    "render_query", "solution_space",
]
