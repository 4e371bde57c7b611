"""Brute-force reference semantics for tests.

Nothing here calls the engine's operators: walks are enumerated by plain
depth-first search over edge endpoints, regular expressions are matched by
position-set simulation over the label word, shortest walks come from a
layered search over regex derivatives, and selectors are applied straight
from their informal definitions.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Iterable

from .graph import PropertyGraph
from .parser import Alt, Concat, Label, Optional, Plus, Regex, Star
from .paths import Path

Walk = tuple[str, ...]


def enumerate_walks(
    g: PropertyGraph,
    max_len: int,
    labels: set[str] | None = None,
    keep: Callable[[Walk], bool] | None = None,
) -> set[Walk]:
    """Every walk with at most ``max_len`` edges.

    With ``labels`` given, only edges carrying one of those labels are followed.
    ``keep`` must be prefix-closed: a walk it rejects is neither kept nor extended.
    """
    out_edges: dict[str, list[str]] = defaultdict(list)
    for e, (src, _) in g.endpoints.items():
        if labels is None or g.labels.get(e) in labels:
            out_edges[src].append(e)
    found: set[Walk] = set()

    def dfs(walk: Walk, remaining: int) -> None:
        if keep is not None and not keep(walk):
            return
        found.add(walk)
        if remaining == 0:
            return
        for e in out_edges[walk[-1]]:
            dfs(walk + (e, g.endpoints[e][1]), remaining - 1)

    for n in g.nodes:
        dfs((n,), max_len)
    return found


def regex_labels(r: Regex) -> set[str]:
    if isinstance(r, Label):
        return {r.name}
    if isinstance(r, (Concat, Alt)):
        return regex_labels(r.left) | regex_labels(r.right)
    return regex_labels(r.operand)


def _ends(r: Regex, word: list[str | None], start: int) -> set[int]:
    """All ``j`` such that ``r`` matches ``word[start:j]``."""
    if isinstance(r, Label):
        return {start + 1} if start < len(word) and word[start] == r.name else set()
    if isinstance(r, Concat):
        return {j for i in _ends(r.left, word, start) for j in _ends(r.right, word, i)}
    if isinstance(r, Alt):
        return _ends(r.left, word, start) | _ends(r.right, word, start)
    if isinstance(r, Optional):
        return {start} | _ends(r.operand, word, start)
    reached: set[int] = set()
    frontier = {start}
    while frontier:
        step = {j for i in frontier for j in _ends(r.operand, word, i)}
        frontier = step - reached
        reached |= step
    if isinstance(r, Star):
        reached.add(start)
    return reached


def label_word(g: PropertyGraph, walk: Walk) -> list[str | None]:
    return [g.labels.get(e) for e in walk[1::2]]


def regex_match(r: Regex, walk: Walk | Path, g: PropertyGraph) -> bool:
    ids = walk.ids if isinstance(walk, Path) else walk
    word = label_word(g, ids)
    return len(word) in _ends(r, word, 0)


def trail_ok(w: Walk) -> bool:
    es = w[1::2]
    return len(es) == len(set(es))


def acyclic_ok(w: Walk) -> bool:
    ns = w[0::2]
    return len(ns) == len(set(ns))


def simple_ok(w: Walk) -> bool:
    ns = list(w[0::2])
    if len(ns) > 1 and ns[0] == ns[-1]:
        ns.pop()
    return len(ns) == len(set(ns))


def natural_bound(g: PropertyGraph, semantics: str) -> int:
    """A walk length that every answer of ``semantics`` fits within."""
    n, m = len(g.nodes), len(g.edges)
    return {"TRAIL": m, "ACYCLIC": max(n - 1, 0), "SIMPLE": n}[semantics]


_KEEP = {"TRAIL": trail_ok, "ACYCLIC": acyclic_ok, "SIMPLE": simple_ok}


def answers(
    g: PropertyGraph, r: Regex, semantics: str, max_len: int | None = None
) -> frozenset[Path]:
    """Matching walks of ``r`` under a restrictor, by enumeration.

    ``WALK`` requires ``max_len``; trail, acyclic and simple default to their
    natural bound. ``SHORTEST`` ignores ``max_len``.
    """
    if semantics == "SHORTEST":
        return shortest_answers(g, r)
    if max_len is None:
        if semantics == "WALK":
            raise ValueError("WALK needs an explicit bound")
        max_len = natural_bound(g, semantics)
    walks = enumerate_walks(g, max_len, regex_labels(r), _KEEP.get(semantics))
    return frozenset(Path(w) for w in walks if regex_match(r, w, g))


# Regular expressions as hashable terms, for Brzozowski derivatives.
_EMPTY = ("empty",)
_EPS = ("eps",)


def _cat(a: tuple, b: tuple) -> tuple:
    if _EMPTY in (a, b):
        return _EMPTY
    if a == _EPS:
        return b
    if b == _EPS:
        return a
    if a[0] == "cat":
        return _cat(a[1], _cat(a[2], b))
    return ("cat", a, b)


def _alt(*terms: tuple) -> tuple:
    flat: set[tuple] = set()
    for t in terms:
        if t[0] == "alt":
            flat |= t[1]
        elif t != _EMPTY:
            flat.add(t)
    if not flat:
        return _EMPTY
    if len(flat) == 1:
        return next(iter(flat))
    return ("alt", frozenset(flat))


def _star(a: tuple) -> tuple:
    if a in (_EMPTY, _EPS):
        return _EPS
    return a if a[0] == "star" else ("star", a)


def _term(r: Regex) -> tuple:
    if isinstance(r, Label):
        return ("lab", r.name)
    if isinstance(r, Concat):
        return _cat(_term(r.left), _term(r.right))
    if isinstance(r, Alt):
        return _alt(_term(r.left), _term(r.right))
    x = _term(r.operand)
    if isinstance(r, Plus):
        return _cat(x, _star(x))
    if isinstance(r, Star):
        return _star(x)
    return _alt(_EPS, x)


def _nullable(t: tuple) -> bool:
    kind = t[0]
    if kind in ("eps", "star"):
        return True
    if kind == "cat":
        return _nullable(t[1]) and _nullable(t[2])
    if kind == "alt":
        return any(_nullable(x) for x in t[1])
    return False


def _derive(t: tuple, label: str | None) -> tuple:
    kind = t[0]
    if kind == "lab":
        return _EPS if t[1] == label else _EMPTY
    if kind == "cat":
        head = _cat(_derive(t[1], label), t[2])
        return _alt(head, _derive(t[2], label)) if _nullable(t[1]) else head
    if kind == "alt":
        return _alt(*(_derive(x, label) for x in t[1]))
    if kind == "star":
        return _cat(_derive(t[1], label), t)
    return _EMPTY


def shortest_answers(g: PropertyGraph, r: Regex) -> frozenset[Path]:
    """Every minimal-length matching walk for each (source, target) pair.

    Walks are grown one edge at a time from each source. A walk whose
    (last node, remaining expression) state was already reached by a strictly
    shorter walk is dropped: splicing in the shorter prefix would shorten any
    match built on it.
    """
    out_edges: dict[str, list[str]] = defaultdict(list)
    for e, (src, _) in g.endpoints.items():
        out_edges[src].append(e)
    start = _term(r)
    found: set[Walk] = set()
    for source in g.nodes:
        first_seen = {(source, start): 0}
        best: dict[str, int] = {}
        layer = [((source,), start)]
        length = 0
        while layer:
            for walk, t in layer:
                if _nullable(t) and best.setdefault(walk[-1], length) == length:
                    found.add(walk)
            length += 1
            grown = []
            for walk, t in layer:
                for e in out_edges[walk[-1]]:
                    d = _derive(t, g.labels.get(e))
                    tgt = g.endpoints[e][1]
                    if d == _EMPTY or first_seen.setdefault((tgt, d), length) != length:
                        continue
                    grown.append((walk + (e, tgt), d))
            layer = grown
    return frozenset(Path(w) for w in found)


def _canon(w: Path) -> tuple:
    return (len(w.ids), w.ids)


def apply_selector(paths: Iterable[Path], selector: str, k: int = 1) -> frozenset[Path]:
    """Apply a GQL selector by its plain-language definition.

    Partitions are endpoint pairs. "Any" picks use canonical order so results
    are comparable with the engine's default tie-break.
    """
    parts: dict[tuple[str, str], list[Path]] = defaultdict(list)
    for p in paths:
        parts[(p.ids[0], p.ids[-1])].append(p)
    out: set[Path] = set()
    for members in parts.values():
        members.sort(key=_canon)
        shortest = len(members[0].ids)
        if selector == "ALL":
            out.update(members)
        elif selector == "ANY SHORTEST":
            out.add(members[0])
        elif selector == "ALL SHORTEST":
            out.update(p for p in members if len(p.ids) == shortest)
        elif selector == "ANY":
            out.add(members[0])
        elif selector == "ANY k":
            out.update(members[:k])
        elif selector == "SHORTEST k":
            out.update(members[:k])
        elif selector == "SHORTEST k GROUP":
            lengths = sorted({len(p.ids) for p in members})[:k]
            out.update(p for p in members if len(p.ids) in lengths)
        else:
            raise ValueError(f"unknown selector {selector!r}")
    return frozenset(out)
