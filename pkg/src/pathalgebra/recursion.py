"""The recursive operator under walk, trail, acyclic, simple and shortest semantics.

Trail, acyclic and simple recursion prune every joined candidate that breaks
the semantics, which is what makes them terminate on cyclic inputs. Shortest
recursion is computed per source with a Dijkstra pass over the input paths
followed by enumeration of the tight compositions.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator

from .errors import DivergenceError
from .graph import PropertyGraph, nodes_of
from .paths import Path, PathSet


class PathSemantics(Enum):
    WALK = "WALK"
    TRAIL = "TRAIL"
    ACYCLIC = "ACYCLIC"
    SIMPLE = "SIMPLE"
    SHORTEST = "SHORTEST"


@dataclass(frozen=True)
class RecursionConfig:
    """``max_depth`` bounds the number of join iterations (walk only).

    ``include_zero`` unites the result with the graph's zero-length paths,
    turning ``+`` into ``*``.
    """

    max_depth: int | None = None
    include_zero: bool = False

    def __post_init__(self) -> None:
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")


def is_trail(p: Path) -> bool:
    edges = p.edges
    return len(set(edges)) == len(edges)


def is_acyclic(p: Path) -> bool:
    nodes = p.nodes
    return len(set(nodes)) == len(nodes)


def is_simple(p: Path) -> bool:
    nodes = p.nodes
    if len(nodes) > 1 and nodes[0] == nodes[-1]:
        nodes = nodes[:-1]
    return len(set(nodes)) == len(nodes)


PREDICATES: dict[PathSemantics, Callable[[Path], bool]] = {
    PathSemantics.TRAIL: is_trail,
    PathSemantics.ACYCLIC: is_acyclic,
    PathSemantics.SIMPLE: is_simple,
}


def levels(
    sem: PathSemantics, paths: Iterable[Path], max_depth: int | None = None
) -> Iterator[PathSet]:
    """Yield the new paths found at each iteration of the pruned fixpoint.

    The first yielded set is the (pruned) input itself. Iteration stops when an
    iteration adds nothing. For walk semantics without ``max_depth`` a
    :class:`DivergenceError` is raised once an iteration produces new paths
    after more steps than there are distinct endpoints, which can only happen
    when the input composes into a cycle.
    """
    if sem is PathSemantics.SHORTEST:
        raise ValueError("shortest semantics has no level iteration; use phi()")
    keep = PREDICATES.get(sem)
    base = frozenset(p for p in paths if keep is None or keep(p))
    by_first: dict[str, list[Path]] = defaultdict(list)
    for p in base:
        by_first[p.first].append(p)
    endpoints = {p.first for p in base} | {p.last for p in base}

    seen = set(base)
    delta = base
    iteration = 0
    if delta:
        yield delta
    while delta:
        if max_depth is not None and iteration >= max_depth:
            return
        iteration += 1
        fresh = set()
        for p1 in delta:
            for p2 in by_first.get(p1.last, ()):
                cand = Path(p1.ids + p2.ids[1:])
                if cand in seen or (keep is not None and not keep(cand)):
                    continue
                fresh.add(cand)
        if not fresh:
            return
        if sem is PathSemantics.WALK and max_depth is None and iteration > len(endpoints):
            raise DivergenceError(iteration)
        seen.update(fresh)
        delta = frozenset(fresh)
        yield delta


def phi(
    sem: PathSemantics,
    paths: Iterable[Path],
    config: RecursionConfig = RecursionConfig(),
    graph: PropertyGraph | None = None,
) -> PathSet:
    """Recursive self-join of ``paths`` to fixpoint under ``sem``."""
    paths = frozenset(paths)
    if sem is PathSemantics.SHORTEST:
        result = shortest_compositions(paths)
    else:
        depth = config.max_depth if sem is PathSemantics.WALK else None
        result = frozenset().union(*levels(sem, paths, depth))
    if config.include_zero:
        if graph is None:
            raise ValueError("include_zero needs the owning graph")
        result = result | nodes_of(graph)
        if sem is PathSemantics.SHORTEST:
            result = restrict(sem, result)
    return result


def shortest_compositions(paths: Iterable[Path]) -> PathSet:
    """Every composition of input paths that is shortest for its (first, last) pair."""
    zero = {p for p in paths if p.length == 0}
    positive = [p for p in paths if p.length > 0]
    by_first: dict[str, list[Path]] = defaultdict(list)
    for p in positive:
        by_first[p.first].append(p)

    out: set[Path] = set(zero)
    zero_nodes = {p.first for p in zero}
    for source in sorted(by_first):
        dist = _distances(source, by_first)
        stack = [q for q in by_first[source] if q.length == dist[q.last]]
        while stack:
            p = stack.pop()
            if not (p.last == source and source in zero_nodes):
                out.add(p)
            reached = dist[p.last]
            for q in by_first.get(p.last, ()):
                if reached + q.length == dist[q.last]:
                    stack.append(Path(p.ids + q.ids[1:]))
    return frozenset(out)


def _distances(source: str, by_first: dict[str, list[Path]]) -> dict[str, int]:
    """Shortest non-empty composition length from ``source`` to each node."""
    dist: dict[str, int] = {}
    heap = [(q.length, q.last) for q in by_first[source]]
    heapq.heapify(heap)
    while heap:
        d, node = heapq.heappop(heap)
        if node in dist:
            continue
        dist[node] = d
        for q in by_first.get(node, ()):
            if q.last not in dist:
                heapq.heappush(heap, (d + q.length, q.last))
    return dist


def restrict(sem: PathSemantics, paths: Iterable[Path]) -> PathSet:
    """Keep the paths allowed by ``sem`` as a whole-path restriction.

    For shortest semantics that is the minimal-length paths of each
    (first, last) pair.
    """
    if sem is PathSemantics.WALK:
        return frozenset(paths)
    if sem is PathSemantics.SHORTEST:
        best: dict[tuple[str, str], int] = {}
        paths = list(paths)
        for p in paths:
            key = (p.first, p.last)
            if key not in best or p.length < best[key]:
                best[key] = p.length
        return frozenset(p for p in paths if p.length == best[(p.first, p.last)])
    keep = PREDICATES[sem]
    return frozenset(p for p in paths if keep(p))
