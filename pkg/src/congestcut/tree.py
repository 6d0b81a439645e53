"""Rooted spanning trees and the shared lexicographic MST."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

from .graph import Graph, GraphError


class RootedTree:
    """Spanning tree as parent pointers plus derived children lists."""

    __slots__ = ("n", "root", "parent", "children", "_depth")

    def __init__(self, root: int, parent: Sequence[Optional[int]]):
        n = len(parent)
        if not (0 <= root < n) or parent[root] is not None:
            raise GraphError("root must be the unique node without a parent")
        if sum(1 for p in parent if p is None) != 1:
            raise GraphError("exactly one node may lack a parent")
        children: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(parent):
            if p is None:
                continue
            if not (0 <= p < n):
                raise GraphError(f"parent of {v} out of range: {p}")
            children[p].append(v)
        # depth assignment doubles as the acyclicity/spanning check
        depth = [-1] * n
        depth[root] = 0
        queue = deque([root])
        seen = 1
        while queue:
            u = queue.popleft()
            for c in children[u]:
                depth[c] = depth[u] + 1
                seen += 1
                queue.append(c)
        if seen != n:
            raise GraphError("parent pointers do not form a single spanning tree")
        self.n = n
        self.root = root
        self.parent = tuple(parent)
        self.children = tuple(tuple(sorted(c)) for c in children)
        self._depth = tuple(depth)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], root: int = 0) -> "RootedTree":
        adj: list[list[int]] = [[] for _ in range(n)]
        count = 0
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
            count += 1
        if count != n - 1:
            raise GraphError(f"spanning tree on {n} nodes needs {n - 1} edges, got {count}")
        parent: list[Optional[int]] = [None] * n
        seen = [False] * n
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    queue.append(v)
        if not all(seen):
            raise GraphError("edges do not span all nodes")
        return cls(root, parent)

    def depth(self, v: int) -> int:
        return self._depth[v]

    @property
    def height(self) -> int:
        return max(self._depth)

    def edges(self) -> list[tuple[int, int]]:
        """Tree edges as (min, max) pairs."""
        return sorted(
            (min(v, p), max(v, p)) for v, p in enumerate(self.parent) if p is not None
        )

    def subtree(self, v: int) -> frozenset[int]:
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self.children[u])
        return frozenset(out)

    def topo_order(self) -> list[int]:
        """Root-first order; reversing it visits children before parents."""
        order = []
        stack = [self.root]
        while stack:
            u = stack.pop()
            order.append(u)
            stack.extend(self.children[u])
        return order

    def lca(self, u: int, v: int) -> int:
        du, dv = self._depth[u], self._depth[v]
        while du > dv:
            u = self.parent[u]  # type: ignore[assignment]
            du -= 1
        while dv > du:
            v = self.parent[v]  # type: ignore[assignment]
            dv -= 1
        while u != v:
            u = self.parent[u]  # type: ignore[assignment]
            v = self.parent[v]  # type: ignore[assignment]
        return u

    def ancestors(self, v: int) -> list[int]:
        """Ancestor chain from v (inclusive) up to the root."""
        chain = [v]
        while self.parent[chain[-1]] is not None:
            chain.append(self.parent[chain[-1]])  # type: ignore[arg-type]
        return chain

    def spans(self, g: Graph) -> bool:
        return self.n == g.n and all(g.edge_index(u, v) is not None for u, v in self.edges())


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def kruskal_mst(g: Graph, keys: Optional[Sequence[int]] = None) -> frozenset[int]:
    """Edge indices of the unique MST under the key (keys[e], u, v).

    Edges are already stored sorted by (u, v), so sorting by (key, index)
    realizes the shared lexicographic tie-break. With keys=None this is the
    lexicographically first spanning tree.
    """
    if keys is None:
        keys = [0] * g.m
    order = sorted(range(g.m), key=lambda i: (keys[i], i))
    uf = _UnionFind(g.n)
    chosen = []
    for i in order:
        u, v, _ = g.edges[i]
        if uf.union(u, v):
            chosen.append(i)
            if len(chosen) == g.n - 1:
                break
    if len(chosen) != g.n - 1:
        raise GraphError("graph is not connected")
    return frozenset(chosen)


def tree_from_edge_indices(g: Graph, indices: Iterable[int], root: int = 0) -> RootedTree:
    return RootedTree.from_edges(g.n, [(g.edges[i][0], g.edges[i][1]) for i in indices], root)
