from __future__ import annotations

import pytest

from pathalgebra import GroupKey, OrderKey, PathSemantics, parse_classic_gql, parse_query, plan, render_plan
from pathalgebra.algebra import And, FirstProp, LabelOfEdge, LabelOfFirst, LabelOfLast, LenEq
from pathalgebra.parser import parse_regex
from pathalgebra.planner import (
    EdgesScan,
    GroupBy,
    Join,
    NodesScan,
    OrderBy,
    Project,
    Recurse,
    Restrict,
    Select,
    Union,
    compile_regex,
    label_scan,
    render_algebra,
    size,
    walk,
)

from conftest import GOLDEN
from golden_classic import RESTRICTORS, SELECTORS, classic_query, render_all

SAMPLE = "MATCH ALL PARTITIONS ALL GROUPS 1 PATHS TRAIL p = (?x)-[(:Knows)+]->(?y) GROUP BY TARGET ORDER BY PATH"
S = PathSemantics

# Selector translations written as algebra expressions over a placeholder body.
SELECTOR_ALGEBRA = {
    "ALL": "pi(*,*,*)(gamma(RE))",
    "ANY SHORTEST": "pi(*,*,1)(tau_A(gamma_ST(RE)))",
    "ALL SHORTEST": "pi(*,1,*)(tau_G(gamma_STL(RE)))",
    "ANY": "pi(*,*,1)(gamma_ST(RE))",
    "ANY 2": "pi(*,*,2)(gamma_ST(RE))",
    "SHORTEST 2": "pi(*,*,2)(tau_A(gamma_ST(RE)))",
    "SHORTEST 2 GROUP": "pi(*,2,*)(tau_G(gamma_STL(RE)))",
}


class TestCompileRegex:
    def test_label(self):
        assert compile_regex(parse_regex("a")) == Select(LabelOfEdge(1, "a"), EdgesScan())

    def test_constructors(self):
        a, b = label_scan("a"), label_scan("b")
        assert compile_regex(parse_regex("a/b")) == Join(a, b)
        assert compile_regex(parse_regex("a|b")) == Union(a, b)
        assert compile_regex(parse_regex("a+"), S.TRAIL) == Recurse(S.TRAIL, a)
        assert compile_regex(parse_regex("a*"), S.SIMPLE) == Union(Recurse(S.SIMPLE, a), NodesScan())
        assert compile_regex(parse_regex("a?")) == Union(a, NodesScan())

    def test_nested_recursion_carries_semantics(self):
        lp = compile_regex(parse_regex("(a/b+)+"), S.ACYCLIC)
        assert {n.semantics for n in walk(lp) if isinstance(n, Recurse)} == {S.ACYCLIC}


class TestPlan:
    def test_sample_chain(self):
        lp = plan(parse_query(SAMPLE))
        assert isinstance(lp, Project)
        assert lp.child == OrderBy(
            OrderKey.A, GroupBy(GroupKey.T, Restrict(S.TRAIL, Recurse(S.TRAIL, label_scan("Knows"))))
        )

    def test_endpoint_filters(self):
        lp = plan(parse_query('MATCH p = (x:Person {name: "Moe"})-[:Knows]->(y:Person) WHERE len() = 1'))
        sel = lp.child.child.child
        assert isinstance(sel, Select)
        assert sel.condition == And(And(And(LabelOfFirst("Person"), FirstProp("name", "Moe")),
                                        LabelOfLast("Person")), LenEq(1))

    def test_no_order_by_when_absent(self):
        lp = plan(parse_query("MATCH p = (x)-[:a]->(y)"))
        assert isinstance(lp.child, GroupBy) and lp.child.key is GroupKey.NONE

    def test_size_and_walk(self):
        lp = plan(parse_query(SAMPLE))
        assert size(lp) == len(list(walk(lp))) == 7


class TestRendering:
    def test_sample_block(self):
        assert render_plan(plan(parse_query(SAMPLE))) == (GOLDEN / "sample_plan.txt").read_text()

    def test_nested_tree(self):
        text = render_plan(plan(parse_query("MATCH p = (x {k: 1})-[:a/:b*]->(y)")))
        assert text == (
            "Projection (ALL PARTITIONS ALL GROUPS ALL PATHS)\n"
            "Group (None)\n"
            "Restrictor (WALK)\n"
            "-> Select: (first.k = 1)\n"
            "  -> Join\n"
            "    -> Select: (label(edge(1)) = a , EDGES(G))\n"
            "    -> Union\n"
            "      -> Recursive Join (restrictor: WALK)\n"
            "        -> Select: (label(edge(1)) = b , EDGES(G))\n"
            "      -> NODES(G)\n"
        )

    def test_classic_goldens(self):
        assert render_all() == (GOLDEN / "classic_plans.txt").read_text()

    @pytest.mark.parametrize("restrictor", RESTRICTORS)
    @pytest.mark.parametrize("selector", SELECTORS)
    def test_selector_translation(self, selector, restrictor):
        lp = plan(parse_classic_gql(classic_query(selector, restrictor)))
        body = f"rho_{restrictor}(phi_{restrictor}(sigma[label(edge(1)) = Knows](Edges(G))))"
        assert render_algebra(lp) == SELECTOR_ALGEBRA[selector].replace("RE", body)
