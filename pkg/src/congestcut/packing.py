"""Greedy tree packing, load bookkeeping, and partition-duality machinery.

Loads count how many packed trees contain each weighted edge; a weight-w
edge stands for w parallel copies whose individual loads stay within one of
each other under greedy rotation, so the copy extremes are load // w and
ceil(load / w). All threshold comparisons use exact rationals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ._kernels import greedy_pack_kernel
from .graph import Graph, GraphError, Partition
from .oracle import OracleCapacityError, optimal_partition
from .tree import _UnionFind, kruskal_mst

Rational = Union[Fraction, int, float]


@dataclass(frozen=True)
class TreePacking:
    """An ordered multiset of spanning trees with per-edge inclusion counts."""

    graph: Graph
    trees: tuple[tuple[int, ...], ...]
    loads: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.trees)

    def min_copy_load(self, e: int) -> int:
        return self.loads[e] // self.graph.edges[e][2]

    def max_copy_load(self, e: int) -> int:
        w = self.graph.edges[e][2]
        return -((-self.loads[e]) // w)

    def min_relative_load(self, e: int) -> Fraction:
        return Fraction(self.min_copy_load(e), self.size)

    def max_relative_load(self, e: int) -> Fraction:
        return Fraction(self.max_copy_load(e), self.size)

    def pack_val(self, active: Optional[Sequence[bool]] = None) -> Fraction:
        """Packing value |T| / max copy load, over active edges only if given."""
        peak = 0
        for e in range(self.graph.m):
            if active is not None and not active[e]:
                continue
            peak = max(peak, self.max_copy_load(e))
        if peak == 0:
            raise GraphError("packing value undefined: no loaded active edge")
        return Fraction(self.size, peak)

    def dump(self) -> str:
        return json.dumps({"trees": [list(t) for t in self.trees]})

    def replay_loads(self) -> tuple[int, ...]:
        counts = [0] * self.graph.m
        for t in self.trees:
            for e in t:
                counts[e] += 1
        return tuple(counts)


def greedy_pack(g: Graph, k: int, contracted: Optional[Sequence[bool]] = None) -> TreePacking:
    """Pack k spanning trees, each the unique MST for the loads so far.

    The MST key is (min parallel-copy load, endpoint pair); contracted edges
    compare below everything, so each tree absorbs a spanning forest of them.
    """
    if k < 1:
        raise GraphError(f"tree count must be positive, got {k}")
    m = g.m
    eu = np.fromiter((e[0] for e in g.edges), np.int64, m)
    ev = np.fromiter((e[1] for e in g.edges), np.int64, m)
    ew = np.fromiter((e[2] for e in g.edges), np.int64, m)
    mask = np.zeros(m, np.bool_)
    if contracted is not None:
        mask[:] = list(contracted)
    trees = np.empty((k, g.n - 1), np.int64)
    loads = np.zeros(m, np.int64)
    status = greedy_pack_kernel(eu, ev, ew, mask, g.n, k, trees, loads)
    if status != 0:
        raise GraphError("greedy packing failed to span; graph disconnected?")
    return TreePacking(
        graph=g,
        trees=tuple(tuple(sorted(int(e) for e in row)) for row in trees),
        loads=tuple(int(x) for x in loads),
    )


def verify_greedy_replay(packing: TreePacking, contracted: Optional[Sequence[bool]] = None) -> bool:
    """Re-run the greedy construction in pure Python and compare tree by tree.

    Independent of the jitted kernel; used as the replay oracle.
    """
    g = packing.graph
    loads = [0] * g.m
    for recorded in packing.trees:
        keys = []
        for e in range(g.m):
            if contracted is not None and contracted[e]:
                keys.append(-1)
            else:
                keys.append(loads[e] // g.edges[e][2])
        mst = kruskal_mst(g, keys)
        if tuple(sorted(mst)) != recorded:
            return False
        for e in mst:
            loads[e] += 1
    return tuple(loads) == packing.loads


def tree_count_for(lambda_bound: int, m: Union[int, float], eps: Rational) -> int:
    """Trees needed for the load-approximation guarantee: ceil(6 L ln(m) / eps^2)."""
    eps = Fraction(eps) if not isinstance(eps, float) else Fraction(eps).limit_denominator(10**12)
    if eps <= 0 or eps >= 2:
        raise GraphError(f"eps must lie in (0, 2), got {float(eps)}")
    if lambda_bound < 1:
        raise GraphError(f"lambda bound must be positive, got {lambda_bound}")
    if m < 1:
        raise GraphError(f"multigraph edge count must be positive, got {m}")
    raw = 6 * lambda_bound * math.log(m) / float(eps) ** 2
    return max(1, math.ceil(raw - 1e-9))


def eps_prime_for_cut(eps: Rational) -> Fraction:
    """Rational eps' with (1 - 2eps')(1 - eps') >= 1/(1 + eps), just below the
    exact root of the quadratic, so the final cut guarantee still holds."""
    e = Fraction(eps)
    if e <= 0:
        raise GraphError(f"eps must be positive, got {eps}")
    root = (3 - math.sqrt(1 + 8 / (1 + float(e)))) / 4
    cand = Fraction(int(root * 10**9), 10**9)
    target = Fraction(1, 1) / (1 + e)
    while cand > 0 and (1 - 2 * cand) * (1 - cand) < target:
        cand -= Fraction(1, 10**9)
    if not 0 < cand < Fraction(1, 2):
        raise GraphError(f"could not derive eps' from {eps}")
    return cand


def max_levels(n: int, eps_prime: Fraction) -> int:
    """Recursion depth bound: node counts shrink by (1 - eps') per contraction."""
    return math.ceil(math.log(max(n, 2)) / float(eps_prime)) + 1


def load_threshold_components(g: Graph, packing: TreePacking, l_a: Fraction) -> Partition:
    """Connected components after keeping only edges of relative load < l_a.

    An edge is kept when its lightest parallel copy is strictly below the
    threshold; comparisons are exact rationals.
    """
    uf = _UnionFind(g.n)
    for e, (u, v, _) in enumerate(g.edges):
        if packing.min_relative_load(e) < l_a:
            uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(uf.find(v), []).append(v)
    return Partition(groups.values(), g.n)


def ideal_loads(g: Graph, cap: int = 8) -> dict[int, Fraction]:
    """Ideal relative loads from the recursive optimal-partition hierarchy.

    Enumeration-backed oracle for small n: edges crossing the optimal
    partition get load 1/Phi, then each block recurses on its induced
    subgraph. Ties pick the lexicographically least optimal partition.
    """
    if g.n > cap:
        raise OracleCapacityError(f"ideal loads enumerate partitions; need n <= {cap}")
    loads: dict[int, Fraction] = {}

    def recurse(nodes: frozenset[int]) -> None:
        if len(nodes) < 2:
            return
        relabel = {v: i for i, v in enumerate(sorted(nodes))}
        members = []
        sub_edges = []
        for e, (u, v, w) in enumerate(g.edges):
            if u in nodes and v in nodes:
                members.append(e)
                sub_edges.append((relabel[u], relabel[v], w))
        # optimal-partition blocks are always connected and non-singleton
        # blocks carry internal edges, so this construction cannot fail
        sub = Graph(len(nodes), sub_edges)
        phi, part = optimal_partition(sub)
        block_of = part.block_of()
        inv = {i: v for v, i in relabel.items()}
        for e, (u, v, _) in zip(members, sub_edges):
            if block_of[u] != block_of[v]:
                loads[e] = Fraction(1, 1) / phi
        for block in part:
            recurse(frozenset(inv[v] for v in block))

    recurse(frozenset(range(g.n)))
    assert len(loads) == g.m
    return loads
