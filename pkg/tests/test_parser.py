from __future__ import annotations

import pytest

from pathalgebra import (
    GroupKey,
    OrderKey,
    PathSemantics,
    ProjectionSpec,
    QuerySemanticError,
    QuerySyntaxError,
    parse_classic_gql,
    parse_query,
    render_query,
)
from pathalgebra.algebra import And, FirstProp, LabelOfEdge, LenEq, Not, Or
from pathalgebra.parser import (
    Alt,
    Concat,
    Label,
    NodeSpec,
    Optional,
    Plus,
    Star,
    parse_condition,
    parse_regex,
    render_regex,
    tokenize,
)

SAMPLE = "MATCH ALL PARTITIONS ALL GROUPS 1 PATHS TRAIL p = (?x)-[(:Knows)+]->(?y) GROUP BY TARGET ORDER BY PATH"

SELECTORS = {
    "ALL": (ProjectionSpec(), GroupKey.NONE, None),
    "ANY SHORTEST": (ProjectionSpec(None, None, 1), GroupKey.ST, OrderKey.A),
    "ALL SHORTEST": (ProjectionSpec(None, 1, None), GroupKey.STL, OrderKey.G),
    "ANY": (ProjectionSpec(None, None, 1), GroupKey.ST, None),
    "ANY 3": (ProjectionSpec(None, None, 3), GroupKey.ST, None),
    "SHORTEST 3": (ProjectionSpec(None, None, 3), GroupKey.ST, OrderKey.A),
    "SHORTEST 3 GROUP": (ProjectionSpec(None, 3, None), GroupKey.STL, OrderKey.G),
}
RESTRICTORS = ["WALK", "TRAIL", "ACYCLIC", "SIMPLE"]


class TestExtended:
    def test_sample_query(self):
        q = parse_query(SAMPLE)
        assert q.projection == ProjectionSpec(None, None, 1)
        assert q.restrictor is PathSemantics.TRAIL
        assert q.path_var == "p"
        assert q.source == NodeSpec("x") and q.target == NodeSpec("y")
        assert q.regex == Plus(Label("Knows"))
        assert q.group_by is GroupKey.T and q.order_by is OrderKey.A

    def test_defaults(self):
        q = parse_query("MATCH p = (x)-[:Knows]->(y)")
        assert q.projection == ProjectionSpec()
        assert q.restrictor is PathSemantics.WALK
        assert q.group_by is GroupKey.NONE and q.order_by is None

    def test_node_patterns_and_where(self):
        q = parse_query(
            'MATCH SIMPLE p = (?x:Person {name: "Moe"})-[:Knows+|(:Likes/:Has_creator)+]->(?y:Person {name: "Apu"})'
            " WHERE len() = 2 OR NOT label(edge(1)) = Likes"
        )
        assert q.source == NodeSpec("x", "Person", (("name", "Moe"),))
        assert q.target.label == "Person"
        assert q.regex == Alt(Plus(Label("Knows")), Plus(Concat(Label("Likes"), Label("Has_creator"))))
        assert q.where == Or(LenEq(2), Not(LabelOfEdge(1, "Likes")))

    def test_keywords_are_case_insensitive(self):
        assert parse_query(SAMPLE.lower().replace("knows", "Knows")) == parse_query(SAMPLE)

    def test_comments_and_terminator(self):
        text = "// leading\nMATCH /* inline */ TRAIL p = (x)-[:Knows]->+(y);"
        assert parse_query(text).regex == Plus(Label("Knows"))

    def test_multi_key_group_and_order(self):
        q = parse_query("MATCH p = (x)-[:a]->(y) GROUP BY SOURCE, LENGTH ORDER BY PARTITION GROUP PATH")
        assert q.group_by is GroupKey.SL and q.order_by is OrderKey.PGA

    @pytest.mark.parametrize(
        "text",
        [
            SAMPLE,
            "MATCH p = (x)-[:a/:b|:c*]->(y)",
            'MATCH 2 PARTITIONS ALL GROUPS 3 PATHS ACYCLIC q = (:A {k: -1, ok: true})-[:"odd label"?]->()',
            "MATCH SHORTEST p = (x)-[(:a|:b)/:c]->(y) WHERE first.name = \"Moe\" AND len() = 2",
            "MATCH p = (x)-[(:a/:b)+]->(y) GROUP BY SOURCE TARGET LENGTH ORDER BY GROUP",
        ],
    )
    def test_render_round_trip(self, text):
        q = parse_query(text)
        assert parse_query(render_query(q)) == q


class TestClassic:
    @pytest.mark.parametrize("restrictor", RESTRICTORS)
    @pytest.mark.parametrize("selector", list(SELECTORS))
    def test_all_combinations(self, selector, restrictor):
        q = parse_classic_gql(f"MATCH {selector} {restrictor} p = (x)-[:Knows]->+(y)")
        assert (q.projection, q.group_by, q.order_by) == SELECTORS[selector]
        assert q.restrictor is PathSemantics[restrictor]
        assert parse_query(render_query(q)) == q

    def test_bare_form(self):
        q = parse_classic_gql("ANY SHORTEST TRAIL (x)-[:Knows]->+(y)")
        assert q == parse_classic_gql("MATCH ANY SHORTEST TRAIL p = (x)-[:Knows]->+(y).")

    def test_defaults(self):
        q = parse_classic_gql("MATCH p = (x)-[:Knows]->(y)")
        assert q.projection == ProjectionSpec() and q.restrictor is PathSemantics.WALK

    def test_shortest_restrictor_rejected(self):
        with pytest.raises(QuerySyntaxError):
            parse_classic_gql("MATCH ANY SHORTEST SHORTEST p = (x)-[:Knows]->(y)")


class TestRegexAndConditions:
    @pytest.mark.parametrize(
        "text, ast",
        [
            (":a", Label("a")),
            ("a/b|c", Alt(Concat(Label("a"), Label("b")), Label("c"))),
            ("a/(b|c)", Concat(Label("a"), Alt(Label("b"), Label("c")))),
            ("a+*", Star(Plus(Label("a")))),
            ("(a/b)?", Optional(Concat(Label("a"), Label("b")))),
        ],
    )
    def test_precedence(self, text, ast):
        assert parse_regex(text) == ast
        assert parse_regex(render_regex(ast)) == ast

    def test_condition_precedence(self):
        c = parse_condition("len() = 1 OR len() = 2 AND NOT first.k = 3")
        assert c == Or(LenEq(1), And(LenEq(2), Not(FirstProp("k", 3))))


class TestErrors:
    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("MATCH p = (x)-[:Knows->(y)", 1, 22),
            ("MATCH\n  p = (x)-[]->(y)", 2, 12),
            ("MATCH p = (x)-[:a]->(y) extra", 1, 25),
            ("MATCH p = (x)-[:a]->(y) WHERE len() = ", 1, 39),
            ("MATCH p = (x)-[:a]->(y) $", 1, 25),
        ],
    )
    def test_location(self, text, line, column):
        with pytest.raises(QuerySyntaxError) as info:
            parse_query(text)
        assert (info.value.line, info.value.column) == (line, column)

    def test_expected_tokens_listed(self):
        with pytest.raises(QuerySyntaxError) as info:
            parse_query("MATCH p = (x)-[:a]->(y) GROUP BY COLOUR")
        assert "SOURCE" in info.value.expected

    @pytest.mark.parametrize(
        "text",
        [
            "MATCH 0 PARTITIONS ALL GROUPS ALL PATHS p = (x)-[:a]->(y)",
            "MATCH p = (x)-[:a]->(y) WHERE label(edge(0)) = a",
            "MATCH p = (x)-[:a]->(y) GROUP BY SOURCE SOURCE",
        ],
    )
    def test_semantic_errors(self, text):
        with pytest.raises(QuerySemanticError):
            parse_query(text)

    def test_classic_zero_count(self):
        with pytest.raises(QuerySemanticError):
            parse_classic_gql("MATCH SHORTEST 0 WALK p = (x)-[:a]->(y)")

    def test_lexer_tracks_lines(self):
        toks = tokenize("a\n  b")
        assert [(t.line, t.column) for t in toks[:2]] == [(1, 1), (2, 3)]
