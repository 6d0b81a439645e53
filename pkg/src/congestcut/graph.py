"""Weighted multigraph model, cut arithmetic, and edge-list serialization.

A weight-w edge stands for w parallel unit edges; all cut weights and
partition values are therefore exact integers / rationals.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, TextIO, Union


class GraphError(ValueError):
    """Invalid graph construction or graph-level precondition failure."""


class InvalidCutError(GraphError):
    """A cut side was empty or covered every node."""


# Weights are capped at n**4 so that every sum the algorithms form
# (total weight, subtree degree sums, load counters) stays in 64 bits
# for any graph we can simulate.
WEIGHT_CAP_EXPONENT = 4


class Graph:
    """Immutable connected multigraph with positive integer edge weights.

    Node ids are 0..n-1. Parallel input edges are merged by summing their
    weights, so the stored edge list has at most one entry per unordered
    pair; the per-edge weight is the parallel-copy count.
    """

    __slots__ = ("n", "edges", "_adj", "_index", "_degree", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]]):
        if n < 1:
            raise GraphError(f"node count must be positive, got {n}")
        merged: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            if not (isinstance(u, int) and isinstance(v, int)):
                raise GraphError(f"node ids must be integers: ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise GraphError(f"edge ({u}, {v}) needs a positive integer weight, got {w!r}")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0) + w
        cap = max(n, 2) ** WEIGHT_CAP_EXPONENT
        for (u, v), w in merged.items():
            if w > cap:
                raise GraphError(f"edge ({u}, {v}) weight {w} exceeds cap n**{WEIGHT_CAP_EXPONENT}={cap}")
        self.n = n
        self.edges: tuple[tuple[int, int, int], ...] = tuple(
            (u, v, merged[(u, v)]) for (u, v) in sorted(merged)
        )
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        index: dict[tuple[int, int], int] = {}
        degree = [0] * n
        for i, (u, v, w) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
            index[(u, v)] = i
            degree[u] += w
            degree[v] += w
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._index = index
        self._degree = tuple(degree)
        self._hash = hash((n, self.edges))
        if not self._connected():
            raise GraphError("graph is disconnected")

    def _connected(self) -> bool:
        if self.n == 1:
            return True
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v, _ in self._adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        return count == self.n

    # -- basic queries ----------------------------------------------------

    @property
    def m(self) -> int:
        """Number of distinct weighted edges."""
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    @property
    def multigraph_size(self) -> int:
        """Edge count of the unit-weight multigraph view (sum of weights)."""
        return self.total_weight

    def degree(self, v: int) -> int:
        """Weighted degree of v."""
        return self._degree[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(u for u, _ in self._adj[v])

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """Pairs (neighbor, edge index) sorted by neighbor id."""
        return self._adj[v]

    def edge_index(self, u: int, v: int) -> Optional[int]:
        return self._index.get((u, v) if u < v else (v, u))

    def weight(self, u: int, v: int) -> int:
        i = self.edge_index(u, v)
        if i is None:
            raise GraphError(f"no edge ({u}, {v})")
        return self.edges[i][2]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, W={self.total_weight})"


def cut_weight(g: Graph, side: Iterable[int]) -> int:
    """Total weight of edges crossing the bipartition (side, V - side)."""
    s = frozenset(side)
    if not s or len(s) >= g.n:
        raise InvalidCutError(f"cut side must be a proper nonempty subset, got {len(s)} of {g.n} nodes")
    if not all(0 <= v < g.n for v in s):
        raise InvalidCutError("cut side contains unknown node ids")
    return sum(w for u, v, w in g.edges if (u in s) != (v in s))


class Cut:
    """A vertex bipartition together with its crossing weight."""

    __slots__ = ("side", "weight")

    def __init__(self, side: frozenset[int], weight: int):
        self.side = frozenset(side)
        self.weight = weight

    @classmethod
    def from_side(cls, g: Graph, side: Iterable[int]) -> "Cut":
        s = frozenset(side)
        return cls(s, cut_weight(g, s))

    def verify(self, g: Graph) -> bool:
        return cut_weight(g, self.side) == self.weight

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cut) and self.side == other.side and self.weight == other.weight

    def __repr__(self) -> str:
        return f"Cut(weight={self.weight}, side={sorted(self.side)})"


class Partition:
    """Disjoint nonempty node blocks covering every node."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: Iterable[Iterable[int]], n: Optional[int] = None):
        blks = tuple(frozenset(b) for b in blocks)
        if any(not b for b in blks):
            raise GraphError("partition blocks must be nonempty")
        seen: set[int] = set()
        for b in blks:
            if seen & b:
                raise GraphError("partition blocks overlap")
            seen |= b
        if n is not None and seen != set(range(n)):
            raise GraphError("partition does not cover all nodes")
        self.blocks = tuple(sorted(blks, key=min))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.blocks)

    def block_of(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                out[v] = i
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"Partition({[sorted(b) for b in self.blocks]})"


def crossing_weight(g: Graph, p: Partition) -> int:
    """Multigraph edge count of g contracted by p (total crossing weight)."""
    block = p.block_of()
    return sum(w for u, v, w in g.edges if block[u] != block[v])


def part_val(g: Graph, p: Partition) -> Fraction:
    """Partition value: crossing weight over (number of blocks - 1), exact."""
    if len(p) < 2:
        raise GraphError("partition value needs at least two blocks")
    return Fraction(crossing_weight(g, p), len(p) - 1)


# -- distances (test support) ---------------------------------------------


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v, _ in g.incident(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def eccentricity(g: Graph, v: int) -> int:
    return max(bfs_distances(g, v))


def exact_diameter(g: Graph) -> int:
    """All-pairs BFS diameter; intended for assertions on small graphs."""
    return max(eccentricity(g, v) for v in range(g.n))


# -- edge-list file format --------------------------------------------------
#
# Header line "n m", then one line "u v w" per weighted edge, ASCII decimal.


def write_edgelist(g: Graph, out: TextIO) -> None:
    out.write(f"{g.n} {g.m}\n")
    for u, v, w in g.edges:
        out.write(f"{u} {v} {w}\n")


def read_edgelist(inp: TextIO) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in inp) if ln]
    if not lines:
        raise GraphError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"bad header line: {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphError(f"header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise GraphError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1]), int(parts[2])))
    return Graph(n, edges)


def graph_to_text(g: Graph) -> str:
    import io

    buf = io.StringIO()
    write_edgelist(g, buf)
    return buf.getvalue()


def graph_from_text(text: str) -> Graph:
    import io

    return read_edgelist(io.StringIO(text))
