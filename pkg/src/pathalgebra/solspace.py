"""Solution spaces and the group-by, order-by and projection operators."""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Hashable, Iterable, Sequence

from .paths import Path, PathSet, render_path


class GroupKey(Enum):
    """Which of source (S), target (T) and length (L) the group-by uses."""

    NONE = ""
    S = "S"
    T = "T"
    L = "L"
    ST = "ST"
    SL = "SL"
    TL = "TL"
    STL = "STL"

    @classmethod
    def from_flags(cls, source: bool, target: bool, length: bool) -> GroupKey:
        return cls("S" * source + "T" * target + "L" * length)


class OrderKey(Enum):
    """Which of partitions (P), groups (G) and paths (A) the order-by weighs."""

    P = "P"
    G = "G"
    A = "A"
    PG = "PG"
    PA = "PA"
    GA = "GA"
    PGA = "PGA"

    @classmethod
    def from_flags(cls, partition: bool, group: bool, path: bool) -> OrderKey:
        return cls("P" * partition + "G" * group + "A" * path)


@dataclass(frozen=True)
class ProjectionSpec:
    """How many partitions, groups per partition and paths per group to keep.

    ``None`` stands for ``*`` (all).
    """

    parts: int | None = None
    groups: int | None = None
    paths: int | None = None

    def __post_init__(self) -> None:
        for name in ("parts", "groups", "paths"):
            n = getattr(self, name)
            if n is not None and n < 1:
                raise ValueError(f"projection count {name} must be >= 1, got {n}")

    def __str__(self) -> str:
        return "(" + ",".join("*" if n is None else str(n) for n in (self.parts, self.groups, self.paths)) + ")"


PartitionId = tuple
GroupId = tuple


@dataclass(frozen=True)
class SolutionSpace:
    """Paths organised into groups and partitions, with ordering weights.

    Partition ids are tuples of the partitioning key values; group ids are
    ``(partition_id, group_key_values)``.
    """

    paths: PathSet
    groups: frozenset
    partitions: frozenset
    path_to_group: dict[Path, GroupId]
    group_to_partition: dict[GroupId, PartitionId]
    path_weight: dict[Path, int]
    group_weight: dict[GroupId, int]
    partition_weight: dict[PartitionId, int]

    def members(self, group: GroupId) -> list[Path]:
        return [p for p, g in self.path_to_group.items() if g == group]

    def groups_of(self, partition: PartitionId) -> list[GroupId]:
        return [g for g, part in self.group_to_partition.items() if part == partition]


def group_by(psi: GroupKey, paths: Iterable[Path]) -> SolutionSpace:
    """Organise ``paths`` into a solution space keyed by ``psi``; all weights 1."""
    paths = frozenset(paths)
    by_source = "S" in psi.value
    by_target = "T" in psi.value
    by_length = "L" in psi.value
    path_to_group = {}
    group_to_partition = {}
    for p in paths:
        part = (p.first,) * by_source + (p.last,) * by_target
        group = (part, (p.length,) * by_length)
        path_to_group[p] = group
        group_to_partition[group] = part
    groups = frozenset(group_to_partition)
    partitions = frozenset(group_to_partition.values())
    return SolutionSpace(
        paths=paths,
        groups=groups,
        partitions=partitions,
        path_to_group=path_to_group,
        group_to_partition=group_to_partition,
        path_weight=dict.fromkeys(paths, 1),
        group_weight=dict.fromkeys(groups, 1),
        partition_weight=dict.fromkeys(partitions, 1),
    )


def min_len(ss: SolutionSpace, element: tuple) -> int:
    """Length of the shortest path in a group or partition."""
    if element in ss.groups:
        return min(p.length for p in ss.members(element))
    if element in ss.partitions:
        return min(p.length for p, g in ss.path_to_group.items() if ss.group_to_partition[g] == element)
    raise KeyError(f"{element!r} is neither a group nor a partition")


def _min_lengths(ss: SolutionSpace) -> tuple[dict, dict]:
    group_min: dict[GroupId, int] = {}
    for p, g in ss.path_to_group.items():
        if g not in group_min or p.length < group_min[g]:
            group_min[g] = p.length
    part_min: dict[PartitionId, int] = {}
    for g, m in group_min.items():
        part = ss.group_to_partition[g]
        if part not in part_min or m < part_min[part]:
            part_min[part] = m
    return group_min, part_min


def order_by(theta: OrderKey, ss: SolutionSpace) -> SolutionSpace:
    """Replace the weights selected by ``theta`` with minimal/actual lengths."""
    group_min, part_min = _min_lengths(ss)
    changes = {}
    if "P" in theta.value:
        changes["partition_weight"] = dict(part_min)
    if "G" in theta.value:
        changes["group_weight"] = dict(group_min)
    if "A" in theta.value:
        changes["path_weight"] = {p: p.length for p in ss.paths}
    return replace(ss, **changes)


def project(
    spec: ProjectionSpec, ss: SolutionSpace, rng: random.Random | None = None
) -> PathSet:
    """Take the first partitions, groups per partition and paths per group.

    Each level is sorted ascending by weight. Ties go to canonical path order
    (for groups and partitions, the canonical order of their minimal member),
    or to a shuffle drawn from ``rng`` when one is given.
    """
    members: dict[GroupId, list[Path]] = defaultdict(list)
    for p, g in ss.path_to_group.items():
        members[g].append(p)
    for g in members:
        members[g].sort(key=Path.sort_key)
    group_rep = {g: ps[0].sort_key() for g, ps in members.items()}
    part_groups: dict[PartitionId, list[GroupId]] = defaultdict(list)
    for g, part in ss.group_to_partition.items():
        part_groups[part].append(g)
    part_rep = {part: min(group_rep[g] for g in gs) for part, gs in part_groups.items()}

    out: set[Path] = set()
    for part in _take(ss.partitions, spec.parts, ss.partition_weight, part_rep.__getitem__, rng):
        for g in _take(part_groups[part], spec.groups, ss.group_weight, group_rep.__getitem__, rng):
            out.update(_take(members[g], spec.paths, ss.path_weight, Path.sort_key, rng))
    return frozenset(out)


def _take(
    items: Iterable[Hashable],
    count: int | None,
    weight: dict,
    tie_key: Callable,
    rng: random.Random | None,
) -> Sequence:
    seq = sorted(items, key=tie_key)
    if rng is not None:
        shuffle = {item: rng.random() for item in seq}
        seq.sort(key=shuffle.__getitem__)
    seq.sort(key=weight.__getitem__)  # stable: ties keep the order above
    return seq if count is None else seq[:count]


def render_space(ss: SolutionSpace) -> str:
    """Tabular rendering: partition, group, path, MinL(P), MinL(G), Len(p)."""
    group_min, part_min = _min_lengths(ss)
    rows = [("Partition", "Group", "Path", "MinL(P)", "MinL(G)", "Len(p)")]
    part_groups: dict[PartitionId, list[GroupId]] = defaultdict(list)
    for g, part in ss.group_to_partition.items():
        part_groups[part].append(g)
    members: dict[GroupId, list[Path]] = defaultdict(list)
    for p, g in ss.path_to_group.items():
        members[g].append(p)
    for i, part in enumerate(sorted(ss.partitions), start=1):
        for j, g in enumerate(sorted(part_groups[part], key=lambda g: g[1]), start=1):
            for k, p in enumerate(sorted(members[g], key=Path.sort_key)):
                rows.append((
                    f"part{i}" if j == 1 and k == 0 else "",
                    f"group{i}.{j}" if k == 0 else "",
                    render_path(p),
                    str(part_min[part]) if j == 1 and k == 0 else "",
                    str(group_min[g]) if k == 0 else "",
                    str(p.length),
                ))
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"
