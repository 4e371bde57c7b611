"""Recursive-descent parser for extended and classic GQL path queries.

Extended form::

    MATCH [<n>|ALL PARTITIONS <n>|ALL GROUPS <n>|ALL PATHS]
          [WALK|TRAIL|SIMPLE|ACYCLIC|SHORTEST]
          p = (?x {name:"Moe"})-[(:Knows)+]->(?y)
          [WHERE <condition>] [GROUP BY SOURCE TARGET LENGTH] [ORDER BY PARTITION GROUP PATH]

Classic form replaces the projection with a GQL selector (``ALL``,
``ANY SHORTEST``, ``ALL SHORTEST``, ``ANY``, ``ANY k``, ``SHORTEST k``,
``SHORTEST k GROUP``) and allows no group/order clauses.

Keywords are case-insensitive, identifiers are not. ``//`` and ``/* */``
comments are skipped.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Union

from . import algebra as alg
from .algebra import Condition
from .errors import QuerySemanticError, QuerySyntaxError
from .graph import Value
from .recursion import PathSemantics
from .solspace import GroupKey, OrderKey, ProjectionSpec


# -- regex AST ----------------------------------------------------------------

@dataclass(frozen=True)
class Label:
    name: str


@dataclass(frozen=True)
class Concat:
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Alt:
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Plus:
    operand: Regex


@dataclass(frozen=True)
class Star:
    operand: Regex


@dataclass(frozen=True)
class Optional:
    operand: Regex


Regex = Union[Label, Concat, Alt, Plus, Star, Optional]


# -- query AST ------------------------------------------------------------------

@dataclass(frozen=True)
class NodeSpec:
    var: str | None = None
    label: str | None = None
    props: tuple[tuple[str, Value], ...] = ()


@dataclass(frozen=True)
class QueryAst:
    projection: ProjectionSpec
    restrictor: PathSemantics
    path_var: str
    source: NodeSpec
    target: NodeSpec
    regex: Regex
    where: Condition | None = None
    group_by: GroupKey = GroupKey.NONE
    order_by: OrderKey | None = None


# -- lexer ------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, STRING, PUNCT, EOF
    text: str
    line: int
    column: int

    @property
    def upper(self) -> str:
        return self.text.upper()


_LEX = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*|/\*.*?\*/)
  | (?P<STRING>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
  | (?P<NUMBER>\d+)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<PUNCT>->|[()\[\]{}:,=./|+*?\-;])
    """,
    re.VERBOSE | re.DOTALL,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


def _string_value(tok: Token) -> str:
    body = tok.text
    if body.startswith("'"):
        body = '"' + body[1:-1].replace('\\\'', "'").replace('"', '\\"') + '"'
    return json.loads(body)


# -- parser -----------------------------------------------------------------------

_RESTRICTORS = {s.value: s for s in PathSemantics}
_CLASSIC_RESTRICTORS = ("WALK", "TRAIL", "SIMPLE", "ACYCLIC")


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def is_kw(self, *words: str, tok: Token | None = None) -> bool:
        tok = tok or self.tok
        return tok.kind == "IDENT" and tok.upper in words

    def is_punct(self, *chars: str) -> bool:
        return self.tok.kind == "PUNCT" and self.tok.text in chars

    def error(self, message: str, *expected: str) -> QuerySyntaxError:
        found = self.tok.text or "end of input"
        return QuerySyntaxError(f"{message}, found {found!r}", self.tok.line, self.tok.column, expected)

    def semantic(self, message: str, tok: Token) -> QuerySemanticError:
        return QuerySemanticError(message, tok.line, tok.column)

    def expect_kw(self, *words: str) -> Token:
        if not self.is_kw(*words):
            raise self.error("unexpected token", *words)
        return self.advance()

    def expect_punct(self, char: str) -> Token:
        if not self.is_punct(char):
            raise self.error("unexpected token", repr(char))
        return self.advance()

    def expect_ident(self, what: str) -> Token:
        if self.tok.kind != "IDENT":
            raise self.error(f"expected {what}", what)
        return self.advance()

    def expect_count(self) -> tuple[int, Token]:
        if self.tok.kind != "NUMBER":
            raise self.error("expected a count", "<number>")
        tok = self.advance()
        n = int(tok.text)
        if n < 1:
            raise self.semantic(f"count must be at least 1, got {n}", tok)
        return n, tok

    def finish(self) -> None:
        if self.is_punct(".", ";"):
            self.advance()
        if self.tok.kind != "EOF":
            raise self.error("unexpected trailing input", "end of input")

    # query forms

    def extended(self) -> QueryAst:
        self._match_keyword()
        projection = ProjectionSpec()
        if self.is_kw("ALL") or self.tok.kind == "NUMBER":
            projection = self.projection()
        restrictor = PathSemantics.WALK
        if self.is_kw(*_RESTRICTORS):
            restrictor = _RESTRICTORS[self.advance().upper]
        var, source, regex, target = self.path_pattern()
        where = self.where()
        group_by = GroupKey.NONE
        order_by = None
        if self.is_kw("GROUP"):
            group_by = self.group_by()
        if self.is_kw("ORDER"):
            order_by = self.order_by()
        self.finish()
        return QueryAst(projection, restrictor, var, source, target, regex, where, group_by, order_by)

    def classic(self) -> QueryAst:
        self._match_keyword()
        projection, group_by, order_by = self.selector()
        restrictor = PathSemantics.WALK
        if self.is_kw(*_CLASSIC_RESTRICTORS):
            restrictor = _RESTRICTORS[self.advance().upper]
        elif self.is_kw("SHORTEST"):
            raise self.error("SHORTEST is a selector, not a restrictor here", *_CLASSIC_RESTRICTORS)
        var, source, regex, target = self.path_pattern()
        where = self.where()
        self.finish()
        return QueryAst(projection, restrictor, var, source, target, regex, where, group_by, order_by)

    def _match_keyword(self) -> None:
        if self.is_kw("MATCH"):
            self.advance()

    def projection(self) -> ProjectionSpec:
        counts = []
        for unit in (("PARTITIONS", "PARTITION"), ("GROUPS", "GROUP"), ("PATHS", "PATH")):
            if self.is_kw("ALL"):
                self.advance()
                counts.append(None)
            else:
                counts.append(self.expect_count()[0])
            self.expect_kw(*unit)
        return ProjectionSpec(*counts)

    def selector(self) -> tuple[ProjectionSpec, GroupKey, OrderKey | None]:
        """Translate a GQL selector into projection, group-by and order-by."""
        if self.is_kw("ALL"):
            self.advance()
            if self.is_kw("SHORTEST"):
                self.advance()
                return ProjectionSpec(None, 1, None), GroupKey.STL, OrderKey.G
            return ProjectionSpec(), GroupKey.NONE, None
        if self.is_kw("ANY"):
            self.advance()
            if self.is_kw("SHORTEST"):
                self.advance()
                return ProjectionSpec(None, None, 1), GroupKey.ST, OrderKey.A
            if self.tok.kind == "NUMBER":
                k, _ = self.expect_count()
                return ProjectionSpec(None, None, k), GroupKey.ST, None
            return ProjectionSpec(None, None, 1), GroupKey.ST, None
        if self.is_kw("SHORTEST"):
            self.advance()
            k, _ = self.expect_count()
            if self.is_kw("GROUP", "GROUPS"):
                self.advance()
                return ProjectionSpec(None, k, None), GroupKey.STL, OrderKey.G
            return ProjectionSpec(None, None, k), GroupKey.ST, OrderKey.A
        if self.is_kw(*_CLASSIC_RESTRICTORS) or self.is_punct("(") or self.peek().text == "=":
            return ProjectionSpec(), GroupKey.NONE, None
        raise self.error("unknown selector", "ALL", "ALL SHORTEST", "ANY", "ANY SHORTEST", "ANY <k>",
                         "SHORTEST <k>", "SHORTEST <k> GROUP", *_CLASSIC_RESTRICTORS)

    def group_by(self) -> GroupKey:
        self.expect_kw("GROUP")
        self.expect_kw("BY")
        keys = self.key_list(("SOURCE", "TARGET", "LENGTH"))
        return GroupKey.from_flags("SOURCE" in keys, "TARGET" in keys, "LENGTH" in keys)

    def order_by(self) -> OrderKey:
        self.expect_kw("ORDER")
        self.expect_kw("BY")
        keys = self.key_list(("PARTITION", "GROUP", "PATH"))
        return OrderKey.from_flags("PARTITION" in keys, "GROUP" in keys, "PATH" in keys)

    def key_list(self, allowed: tuple[str, ...]) -> set[str]:
        keys: set[str] = set()
        while True:
            tok = self.expect_kw(*allowed)
            if tok.upper in keys:
                raise self.semantic(f"{tok.upper} listed twice", tok)
            keys.add(tok.upper)
            if self.is_punct(","):
                self.advance()
                continue
            if not self.is_kw(*allowed):
                return keys

    # patterns

    def path_pattern(self) -> tuple[str, NodeSpec, Regex, NodeSpec]:
        var = "p"
        if self.tok.kind == "IDENT" and self.peek().text == "=":
            var = self.advance().text
            self.advance()
        source = self.node_pattern()
        self.expect_punct("-")
        self.expect_punct("[")
        regex = self.regex()
        self.expect_punct("]")
        self.expect_punct("->")
        if self.is_punct("+", "*", "?"):
            regex = {"+": Plus, "*": Star, "?": Optional}[self.advance().text](regex)
        target = self.node_pattern()
        return var, source, regex, target

    def node_pattern(self) -> NodeSpec:
        self.expect_punct("(")
        var = label = None
        if self.is_punct("?"):
            self.advance()
            var = self.expect_ident("variable").text
        elif self.tok.kind == "IDENT":
            var = self.advance().text
        if self.is_punct(":"):
            self.advance()
            label = self.label_name()
        props: list[tuple[str, Value]] = []
        if self.is_punct("{"):
            self.advance()
            while not self.is_punct("}"):
                key_tok = self.expect_ident("property name")
                if key_tok.text in dict(props):
                    raise self.semantic(f"property {key_tok.text} given twice", key_tok)
                self.expect_punct(":")
                props.append((key_tok.text, self.value()))
                if not self.is_punct("}"):
                    self.expect_punct(",")
            self.advance()
        self.expect_punct(")")
        return NodeSpec(var, label, tuple(props))

    def label_name(self) -> str:
        if self.tok.kind == "STRING":
            return _string_value(self.advance())
        return self.expect_ident("label").text

    def value(self) -> Value:
        tok = self.tok
        if tok.kind == "STRING":
            self.advance()
            return _string_value(tok)
        if tok.kind == "NUMBER":
            self.advance()
            return int(tok.text)
        if self.is_punct("-") and self.peek().kind == "NUMBER":
            self.advance()
            return -int(self.advance().text)
        if self.is_kw("TRUE", "FALSE"):
            return self.advance().upper == "TRUE"
        raise self.error("expected a value", "<string>", "<integer>", "true", "false")

    # regular expressions: alternation < concatenation (/) < postfix

    def regex(self) -> Regex:
        node = self.regex_concat()
        while self.is_punct("|"):
            self.advance()
            node = Alt(node, self.regex_concat())
        return node

    def regex_concat(self) -> Regex:
        node = self.regex_postfix()
        while self.is_punct("/"):
            self.advance()
            node = Concat(node, self.regex_postfix())
        return node

    def regex_postfix(self) -> Regex:
        node = self.regex_atom()
        while self.is_punct("+", "*", "?"):
            node = {"+": Plus, "*": Star, "?": Optional}[self.advance().text](node)
        return node

    def regex_atom(self) -> Regex:
        if self.is_punct("("):
            self.advance()
            node = self.regex()
            self.expect_punct(")")
            return node
        if self.is_punct(":"):
            self.advance()
        if self.tok.kind not in ("IDENT", "STRING"):
            raise self.error("expected an edge label", "<label>", "'('")
        return Label(self.label_name())

    # conditions: OR < AND < NOT

    def where(self) -> Condition | None:
        if not self.is_kw("WHERE"):
            return None
        self.advance()
        return self.condition()

    def condition(self) -> Condition:
        node = self.cond_and()
        while self.is_kw("OR"):
            self.advance()
            node = alg.Or(node, self.cond_and())
        return node

    def cond_and(self) -> Condition:
        node = self.cond_not()
        while self.is_kw("AND"):
            self.advance()
            node = alg.And(node, self.cond_not())
        return node

    def cond_not(self) -> Condition:
        if self.is_kw("NOT"):
            self.advance()
            return alg.Not(self.cond_not())
        if self.is_punct("("):
            self.advance()
            node = self.condition()
            self.expect_punct(")")
            return node
        return self.cond_leaf()

    def position(self) -> int:
        self.expect_punct("(")
        if self.tok.kind != "NUMBER":
            raise self.error("expected a position", "<number>")
        tok = self.advance()
        if int(tok.text) < 1:
            raise self.semantic("positions start at 1", tok)
        self.expect_punct(")")
        return int(tok.text)

    def cond_leaf(self) -> Condition:
        start = self.tok
        if self.is_kw("LABEL"):
            self.advance()
            self.expect_punct("(")
            if self.is_kw("NODE", "EDGE"):
                kind = self.advance().upper
                i = self.position()
                self.expect_punct(")")
                self.expect_punct("=")
                v = self.label_name()
                return alg.LabelOfNode(i, v) if kind == "NODE" else alg.LabelOfEdge(i, v)
            which = self.expect_kw("FIRST", "LAST").upper
            self.expect_punct(")")
            self.expect_punct("=")
            v = self.label_name()
            return alg.LabelOfFirst(v) if which == "FIRST" else alg.LabelOfLast(v)
        if self.is_kw("NODE", "EDGE"):
            kind = self.advance().upper
            i = self.position()
            self.expect_punct(".")
            pr = self.expect_ident("property name").text
            self.expect_punct("=")
            v = self.value()
            return alg.NodeProp(i, pr, v) if kind == "NODE" else alg.EdgeProp(i, pr, v)
        if self.is_kw("FIRST", "LAST"):
            which = self.advance().upper
            self.expect_punct(".")
            pr = self.expect_ident("property name").text
            self.expect_punct("=")
            v = self.value()
            return alg.FirstProp(pr, v) if which == "FIRST" else alg.LastProp(pr, v)
        if self.is_kw("LEN"):
            self.advance()
            self.expect_punct("(")
            self.expect_punct(")")
            self.expect_punct("=")
            if self.tok.kind != "NUMBER":
                raise self.error("expected a length", "<number>")
            return alg.LenEq(int(self.advance().text))
        raise QuerySyntaxError(
            f"expected a condition, found {start.text or 'end of input'!r}",
            start.line, start.column,
            ("label(...)", "node(i).p", "edge(i).p", "first.p", "last.p", "len()", "NOT", "'('"),
        )


def parse_query(text: str) -> QueryAst:
    """Parse an extended path query."""
    return _Parser(text).extended()


def parse_classic_gql(text: str) -> QueryAst:
    """Parse a classic selector/restrictor query into the extended AST."""
    return _Parser(text).classic()


def parse_condition(text: str) -> Condition:
    p = _Parser(text)
    cond = p.condition()
    p.finish()
    return cond


def parse_regex(text: str) -> Regex:
    p = _Parser(text)
    r = p.regex()
    p.finish()
    return r


# -- rendering --------------------------------------------------------------------

_GROUP_WORDS = {"S": "SOURCE", "T": "TARGET", "L": "LENGTH"}
_ORDER_WORDS = {"P": "PARTITION", "G": "GROUP", "A": "PATH"}


def render_regex(r: Regex) -> str:
    return _render_regex(r, 0)


def _render_regex(r: Regex, context: int) -> str:
    # precedence: 1 alternation, 2 concatenation, 3 postfix
    match r:
        case Label(name):
            return ":" + alg.render_label(name)
        case Alt(left, right):
            text = f"{_render_regex(left, 1)}|{_render_regex(right, 2)}"
            return f"({text})" if context > 1 else text
        case Concat(left, right):
            text = f"{_render_regex(left, 2)}/{_render_regex(right, 3)}"
            return f"({text})" if context > 2 else text
        case Plus(x) | Star(x) | Optional(x):
            op = {Plus: "+", Star: "*", Optional: "?"}[type(r)]
            return f"{_render_regex(x, 4)}{op}"
    raise TypeError(f"not a regex: {r!r}")


def render_node(n: NodeSpec) -> str:
    text = n.var or ""
    if n.label is not None:
        text += ":" + alg.render_label(n.label)
    if n.props:
        body = ", ".join(f"{k}: {alg.render_value(v)}" for k, v in n.props)
        text += (" " if text else "") + "{" + body + "}"
    return f"({text})"


def render_projection(spec: ProjectionSpec) -> str:
    def word(n: int | None) -> str:
        return "ALL" if n is None else str(n)

    return f"{word(spec.parts)} PARTITIONS {word(spec.groups)} GROUPS {word(spec.paths)} PATHS"


def render_query(q: QueryAst) -> str:
    """Canonical extended-syntax text; parses back to an equal AST."""
    parts = [
        "MATCH",
        render_projection(q.projection),
        q.restrictor.value,
        f"{q.path_var} = {render_node(q.source)}-[{render_regex(q.regex)}]->{render_node(q.target)}",
    ]
    if q.where is not None:
        parts.append("WHERE " + alg.render_condition(q.where))
    if q.group_by is not GroupKey.NONE:
        parts.append("GROUP BY " + " ".join(_GROUP_WORDS[c] for c in q.group_by.value))
    if q.order_by is not None:
        parts.append("ORDER BY " + " ".join(_ORDER_WORDS[c] for c in q.order_by.value))
    return " ".join(parts)
