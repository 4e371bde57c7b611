"""In-memory property graph and its line-oriented file format.

File format (UTF-8, ``#`` starts a comment)::

    N <id> [<label>] [key=value ...]
    E <id> <src-id> <tgt-id> [<label>] [key=value ...]

Values are ``"string"`` (JSON escapes), integers, or ``true``/``false``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from types import MappingProxyType
from typing import Mapping, Union

from .errors import GraphLoadError
from .paths import Path, PathSet

Value = Union[str, int, bool]

_TOKEN = re.compile(
    r"""
    (?P<prop>[A-Za-z_][\w]*)=(?P<value>"(?:[^"\\]|\\.)*"|\S+)
  | (?P<word>[^\s=]+)
    """,
    re.VERBOSE,
)


def values_equal(a: object, b: object) -> bool:
    """Type-and-value equality; ``True`` never equals ``1``."""
    return type(a) is type(b) and a == b


@dataclass(frozen=True)
class PropertyGraph:
    """Immutable property graph: nodes, edges, endpoints, labels and properties.

    Iteration over ``nodes`` and ``edges`` is in lexicographic id order.
    """

    nodes: tuple[str, ...]
    edges: tuple[str, ...]
    endpoints: Mapping[str, tuple[str, str]]
    labels: Mapping[str, str] = field(default_factory=dict)
    properties: Mapping[tuple[str, str], Value] = field(default_factory=dict)
    _node_set: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_node_set", frozenset(self.nodes))
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        object.__setattr__(self, "endpoints", MappingProxyType(dict(self.endpoints)))
        object.__setattr__(self, "labels", MappingProxyType(dict(self.labels)))
        object.__setattr__(self, "properties", MappingProxyType(dict(self.properties)))
        self._validate()

    def _validate(self) -> None:
        node_set = self._node_set
        if len(node_set) != len(self.nodes):
            raise GraphLoadError("duplicate node id")
        if len(set(self.edges)) != len(self.edges):
            raise GraphLoadError("duplicate edge id")
        both = node_set.intersection(self.edges)
        if both:
            raise GraphLoadError(f"id used for both a node and an edge: {min(both)}")
        for e in self.edges:
            if e not in self.endpoints:
                raise GraphLoadError(f"edge {e} has no endpoints")
            src, tgt = self.endpoints[e]
            for n in (src, tgt):
                if n not in node_set:
                    raise GraphLoadError(f"edge {e} references unknown node {n}")
        if set(self.endpoints) - set(self.edges):
            raise GraphLoadError("endpoints given for unknown edge")
        objects = node_set.union(self.edges)
        for o in self.labels:
            if o not in objects:
                raise GraphLoadError(f"label on unknown object {o}")
        for o, _ in self.properties:
            if o not in objects:
                raise GraphLoadError(f"property on unknown object {o}")

    def label(self, o: str) -> str | None:
        """Label of ``o``, or ``None`` when it has none."""
        return self.labels.get(o)

    def prop(self, o: str, name: str) -> Value | None:
        return self.properties.get((o, name))

    def source(self, e: str) -> str:
        return self.endpoints[e][0]

    def target(self, e: str) -> str:
        return self.endpoints[e][1]

    def is_well_formed(self, p: Path) -> bool:
        """True iff every id of ``p`` exists and each edge joins its neighbours."""
        if p.first not in self._node_set:
            return False
        ids = p.ids
        return all(
            self.endpoints.get(ids[k]) == (ids[k - 1], ids[k + 1]) for k in range(1, len(ids), 2)
        )


def nodes_of(g: PropertyGraph) -> PathSet:
    """One zero-length path per node."""
    return frozenset(Path((n,)) for n in g.nodes)


def edges_of(g: PropertyGraph) -> PathSet:
    """One length-one path ``(src, e, tgt)`` per edge."""
    return frozenset(Path((g.source(e), e, g.target(e))) for e in g.edges)


def _parse_value(raw: str, line: int, column: int) -> Value:
    if raw.startswith('"'):
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise GraphLoadError(f"bad string literal {raw}", line, column) from exc
    if raw == "true":
        return True
    if raw == "false":
        return False
    if re.fullmatch(r"[+-]?\d+", raw):
        return int(raw)
    raise GraphLoadError(f"bad value {raw!r}; expected \"string\", integer or true/false", line, column)


def parse_graph(text: str) -> PropertyGraph:
    """Parse the graph file format from a string."""
    nodes: list[str] = []
    edges: list[str] = []
    endpoints: dict[str, tuple[str, str]] = {}
    labels: dict[str, str] = {}
    properties: dict[tuple[str, str], Value] = {}
    seen: dict[str, int] = {}
    edge_lines: dict[str, tuple[int, int]] = {}

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line)
        if not line.strip():
            continue
        words: list[tuple[str, int]] = []
        props: list[tuple[str, Value]] = []
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(line, pos)
            if m is None:
                raise GraphLoadError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
            if m.group("prop"):
                if props and m.group("prop") in dict(props):
                    raise GraphLoadError(f"duplicate property {m.group('prop')}", lineno, pos + 1)
                props.append((m.group("prop"), _parse_value(m.group("value"), lineno, m.start("value") + 1)))
            else:
                if props:
                    raise GraphLoadError("label or id after properties", lineno, pos + 1)
                words.append((m.group("word"), pos + 1))
            pos = m.end()

        kind, kind_col = words[0]
        if kind == "N":
            arity = 2
        elif kind == "E":
            arity = 4
        else:
            raise GraphLoadError(f"unknown record type {kind!r}; expected N or E", lineno, kind_col)
        if len(words) < arity:
            raise GraphLoadError(f"{kind} record needs {arity - 1} identifier(s)", lineno, kind_col)
        if len(words) > arity + 1:
            raise GraphLoadError(
                f"object {words[1][0]} has more than one label", lineno, words[arity + 1][1]
            )
        oid, oid_col = words[1]
        if oid in seen:
            raise GraphLoadError(f"duplicate id {oid} (first defined on line {seen[oid]})", lineno, oid_col)
        seen[oid] = lineno
        if kind == "N":
            nodes.append(oid)
        else:
            edges.append(oid)
            endpoints[oid] = (words[2][0], words[3][0])
            edge_lines[oid] = (lineno, words[2][1])
        if len(words) == arity + 1:
            labels[oid] = words[arity][0]
        for key, value in props:
            properties[(oid, key)] = value

    node_set = set(nodes)
    for e in edges:
        for n in endpoints[e]:
            if n not in node_set:
                line, col = edge_lines[e]
                raise GraphLoadError(f"edge {e} references unknown node {n}", line, col)
    return PropertyGraph(tuple(nodes), tuple(edges), endpoints, labels, properties)


def _strip_comment(line: str) -> str:
    in_string = False
    escaped = False
    for k, ch in enumerate(line):
        if escaped:
            escaped = False
        elif ch == "\\" and in_string:
            escaped = True
        elif ch == '"':
            in_string = not in_string
        elif ch == "#" and not in_string:
            return line[:k]
    return line


def load_graph(path: str | FsPath) -> PropertyGraph:
    """Load a graph file. Raises :class:`GraphLoadError` on any defect."""
    try:
        text = FsPath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphLoadError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_graph(text)
