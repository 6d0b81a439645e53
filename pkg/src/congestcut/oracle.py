"""Independent minimum-cut oracles and partition enumeration.

Two tiers: exhaustive bipartition enumeration for small graphs, and a
deterministic Stoer-Wagner contraction algorithm for medium ones. Neither
shares any code with the tree-packing pipeline they are used to validate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .graph import Cut, Graph, GraphError, Partition, part_val

ENUMERATION_LIMIT = 20
POLYNOMIAL_LIMIT = 400
PARTITION_LIMIT = 10


class OracleCapacityError(GraphError):
    """The requested oracle tier cannot handle a graph of this size."""


def all_cut_weights(g: Graph) -> np.ndarray:
    """Cut weights for every bipartition, indexed by the bitmask of the side.

    Node n-1 is fixed outside the side, so masks run over bits 0..n-2;
    entry 0 (empty side) is 0 and not a cut.
    """
    if g.n > ENUMERATION_LIMIT + 1:
        raise OracleCapacityError(f"enumeration needs n <= {ENUMERATION_LIMIT + 1}, got {g.n}")
    masks = np.arange(1 << (g.n - 1), dtype=np.int64)
    weights = np.zeros(1 << (g.n - 1), dtype=np.int64)
    for u, v, w in g.edges:
        bu = (masks >> u) & 1 if u < g.n - 1 else np.zeros_like(masks)
        bv = (masks >> v) & 1 if v < g.n - 1 else np.zeros_like(masks)
        weights += w * np.not_equal(bu, bv)
    return weights


def _enumerate_mincut(g: Graph) -> Cut:
    weights = all_cut_weights(g)
    best = int(np.argmin(weights[1:])) + 1
    side = frozenset(v for v in range(g.n - 1) if (best >> v) & 1)
    return Cut(side, int(weights[best]))


def stoer_wagner(g: Graph) -> Cut:
    """Deterministic global min cut by repeated minimum s-t cut phases."""
    if g.n < 2:
        raise OracleCapacityError("min cut needs at least two nodes")
    n = g.n
    w = np.zeros((n, n), dtype=np.int64)
    for u, v, wt in g.edges:
        w[u, v] += wt
        w[v, u] += wt
    groups: list[Optional[list[int]]] = [[v] for v in range(n)]
    active = list(range(n))
    best_weight: Optional[int] = None
    best_side: frozenset[int] = frozenset()
    while len(active) > 1:
        # Maximum-adjacency ordering; ties broken by smallest id.
        a = active[0]
        conn = w[a, active].astype(np.int64)
        in_a = {a}
        order = [a]
        while len(order) < len(active):
            pick_pos = -1
            pick_val = -1
            for pos, v in enumerate(active):
                if v in in_a:
                    continue
                c = int(conn[pos])
                if c > pick_val:
                    pick_val = c
                    pick_pos = pos
            v = active[pick_pos]
            order.append(v)
            in_a.add(v)
            conn += w[v, active]
        s, t = order[-2], order[-1]
        phase_weight = int(sum(w[t, u] for u in active if u != t))
        if best_weight is None or phase_weight < best_weight:
            best_weight = phase_weight
            best_side = frozenset(groups[t])  # type: ignore[arg-type]
        # merge t into s
        groups[s] = groups[s] + groups[t]  # type: ignore[operator]
        groups[t] = None
        w[s, :] += w[t, :]
        w[:, s] += w[:, t]
        w[s, s] = 0
        active.remove(t)
    assert best_weight is not None
    return Cut(best_side, best_weight)


def brute_force_mincut(g: Graph) -> Cut:
    """Globally minimum cut by enumeration (n <= 20) or Stoer-Wagner (n <= 400)."""
    if g.n < 2:
        raise OracleCapacityError("min cut needs at least two nodes")
    if g.n <= ENUMERATION_LIMIT:
        return _enumerate_mincut(g)
    if g.n <= POLYNOMIAL_LIMIT:
        return stoer_wagner(g)
    raise OracleCapacityError(f"oracle capacity is n <= {POLYNOMIAL_LIMIT}, got {g.n}")


def mincut_value(g: Graph) -> int:
    return brute_force_mincut(g).weight


# -- partition enumeration ---------------------------------------------------


def iter_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    """All set partitions of items, via restricted growth strings."""
    k = len(items)
    if k == 0:
        yield []
        return
    codes = [0] * k
    maxes = [0] * k
    while True:
        nblocks = max(codes) + 1
        blocks: list[list[int]] = [[] for _ in range(nblocks)]
        for i, c in enumerate(codes):
            blocks[c].append(items[i])
        yield blocks
        i = k - 1
        while i > 0 and codes[i] == maxes[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        codes[i] += 1
        maxes[i] = max(maxes[i - 1], codes[i])
        for j in range(i + 1, k):
            codes[j] = 0
            maxes[j] = maxes[i]


def optimal_partition(g: Graph) -> tuple[Fraction, Partition]:
    """Minimum partition value Phi and the lexicographically least optimum.

    Exhaustive over all nontrivial partitions; capped at small n.
    """
    if g.n > PARTITION_LIMIT:
        raise OracleCapacityError(f"partition enumeration needs n <= {PARTITION_LIMIT}, got {g.n}")
    if g.n < 2:
        raise OracleCapacityError("partition value needs at least two nodes")
    best_val: Optional[Fraction] = None
    best_key = None
    best_part: Optional[Partition] = None
    for blocks in iter_partitions(list(range(g.n))):
        if len(blocks) < 2:
            continue
        p = Partition(blocks, g.n)
        val = part_val(g, p)
        key = tuple(tuple(sorted(b)) for b in p.blocks)
        if best_val is None or val < best_val or (val == best_val and key < best_key):
            best_val, best_key, best_part = val, key, p
    assert best_val is not None and best_part is not None
    return best_val, best_part


def phi_value(g: Graph) -> Fraction:
    return optimal_partition(g)[0]
