"""The path value and its canonical ordering and rendering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ConcatError, PositionError


@dataclass(frozen=True, slots=True)
class Path:
    """Alternating node/edge identifier sequence that starts and ends with a node.

    Two paths are equal iff their identifier sequences are equal.
    """

    ids: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.ids) % 2 != 1:
            raise ValueError(f"path must have an odd number of ids, got {self.ids!r}")

    @classmethod
    def of(cls, *ids: str) -> Path:
        return cls(tuple(ids))

    @property
    def first(self) -> str:
        return self.ids[0]

    @property
    def last(self) -> str:
        return self.ids[-1]

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.ids) // 2

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.ids[0::2]

    @property
    def edges(self) -> tuple[str, ...]:
        return self.ids[1::2]

    def node_at(self, i: int) -> str:
        """Node at 1-based position ``i`` (1 <= i <= length + 1)."""
        if not 1 <= i <= self.length + 1:
            raise PositionError(f"node position {i} outside path of length {self.length}")
        return self.ids[2 * (i - 1)]

    def edge_at(self, j: int) -> str:
        """Edge at 1-based position ``j`` (1 <= j <= length)."""
        if not 1 <= j <= self.length:
            raise PositionError(f"edge position {j} outside path of length {self.length}")
        return self.ids[2 * j - 1]

    def concat(self, other: Path) -> Path:
        if self.last != other.first:
            raise ConcatError(
                f"cannot concatenate: {self} ends at {self.last}, {other} starts at {other.first}"
            )
        return Path(self.ids + other.ids[1:])

    def sort_key(self) -> tuple[int, tuple[str, ...]]:
        return (self.length, self.ids)

    def __str__(self) -> str:
        return render_path(self)


PathSet = frozenset  # frozenset[Path]; the alias keeps signatures readable


def canonical(paths: Iterable[Path]) -> list[Path]:
    """Paths sorted by length, then lexicographically by id sequence."""
    return sorted(paths, key=Path.sort_key)


def render_path(p: Path) -> str:
    """Render as ``(n1)-[e1]->(n2)``; a zero-length path renders ``(n1)``."""
    parts = [f"({p.ids[0]})"]
    for k in range(1, len(p.ids), 2):
        parts.append(f"-[{p.ids[k]}]->({p.ids[k + 1]})")
    return "".join(parts)


def parse_path(text: str) -> Path:
    """Inverse of :func:`render_path`."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"not a rendered path: {text!r}")
    ids = [text[1 : text.index(")")]]
    rest = text[text.index(")") + 1 :]
    while rest:
        if not rest.startswith("-["):
            raise ValueError(f"not a rendered path: {text!r}")
        close = rest.index("]->(")
        ids.append(rest[2:close])
        end = rest.index(")", close)
        ids.append(rest[close + 4 : end])
        rest = rest[end + 1 :]
    return Path(tuple(ids))
