"""Loop-free digraphs on the vertex set {1, ..., n}, stored as bitmask rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParseError


@dataclass(frozen=True)
class Digraph:
    """Directed graph on vertices ``1..n``.

    ``adjacency[i]`` is the out-neighbourhood of vertex ``i + 1`` as a bitmask
    whose bit ``j`` stands for vertex ``j + 1``.
    """

    n: int
    adjacency: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise ValueError("adjacency must have exactly n rows")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adjacency):
            if row & ~full:
                raise ValueError(f"row {i + 1} points outside the vertex set")
            if row >> i & 1:
                raise ValueError(f"loop at vertex {i + 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * n
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge {(i, j)} outside [1, {n}]")
            rows[i - 1] |= 1 << (j - 1)
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    @classmethod
    def transitive_tournament(cls, n: int) -> "Digraph":
        """Edges ``i -> j`` exactly when ``i > j``."""
        return cls(n, tuple((1 << i) - 1 for i in range(n)))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i - 1] >> (j - 1) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.adjacency):
            for j in range(self.n):
                if row >> j & 1:
                    yield i + 1, j + 1

    def edge_count(self) -> int:
        return sum(bin(row).count("1") for row in self.adjacency)

    def complement(self) -> "Digraph":
        """All non-loop ordered pairs that are not edges."""
        full = (1 << self.n) - 1
        return Digraph(
            self.n,
            tuple(full & ~row & ~(1 << i) for i, row in enumerate(self.adjacency)),
        )

    def is_tournament(self) -> bool:
        return self.tournament_violation() is None

    def tournament_violation(self) -> tuple[int, int] | None:
        """First pair ``(i, j)``, ``i < j``, with zero or two arcs, else None."""
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                if self.has_edge(i, j) == self.has_edge(j, i):
                    return i, j
        return None

    def is_transitive_tournament(self) -> bool:
        """Tournament whose out-degrees are exactly 0, 1, ..., n-1."""
        scores = sorted(bin(row).count("1") for row in self.adjacency)
        return scores == list(range(self.n)) and self.is_tournament()

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        """Subgraph induced on ``vertices``, relabelled ``1..k`` in increasing order."""
        vs = sorted(vertices)
        rows = []
        for a in vs:
            row = 0
            for k, b in enumerate(vs):
                if a != b and self.has_edge(a, b):
                    row |= 1 << k
            rows.append(row)
        return Digraph(len(vs), tuple(rows))

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{i} {j}" for i, j in self.edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Digraph":
        """Parse the fixture format: first line ``n``, then one ``i j`` per edge."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ParseError("empty digraph text")
        try:
            n = int(lines[0])
            edges = []
            for ln in lines[1:]:
                i, j = ln.split()
                edges.append((int(i), int(j)))
            return cls.from_edges(n, edges)
        except ValueError as exc:
            raise ParseError(f"bad digraph text: {exc}") from None
