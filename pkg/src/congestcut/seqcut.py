"""Sequential reference of the contraction-based approximate min-cut driver.

Each level packs greedy trees over the current loads, takes the best cut
that 1-respects a packed tree, and then either reports the best
component-induced cut (when thresholding the loads shatters the graph into
many components) or contracts the light edges and recurses. Contraction is
virtual: the graph is never rebuilt, components live in a union-find over
original node ids, and contracted edges enter every tree via sentinel keys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from ._kernels import BIG, greedy_pack_kernel, one_respect_scan
from .graph import Cut, Graph, GraphError, cut_weight
from .packing import TreePacking, eps_prime_for_cut, greedy_pack, max_levels, tree_count_for
from .sampling import eps_prime_for_sampling, karger_sample_connected, sampling_probability
from .tree import _UnionFind, tree_from_edge_indices

Rational = Union[Fraction, int, float]


@dataclass(frozen=True)
class LevelRecord:
    """One recursion level: sizes, packing stats, and the branch taken."""

    nodes: int
    multigraph_edges: int
    trees_packed: int
    pack_val: Fraction
    l_a: Fraction
    components: int
    branch: str  # "components" | "contract"
    one_respect_weight: Optional[int]
    component_weight: Optional[int] = None
    trees: Optional[tuple[tuple[int, ...], ...]] = None
    labels: Optional[tuple[int, ...]] = None


@dataclass
class RecursionTrace:
    eps: Fraction
    eps_prime: Fraction
    lambda_bound: int
    levels: list[LevelRecord]

    @property
    def trees_total(self) -> int:
        return sum(rec.trees_packed for rec in self.levels)


def estimate_lambda(g: Graph, eps: Rational = 1) -> int:
    """Doubling upper estimate of the min cut from packing values alone.

    Guess L, pack enough trees for the value lemma at L, and accept once
    (2 + eps) * pack_val fits under the guess; the accepted value is an
    upper bound within a small constant factor of the true min cut.
    """
    eps = Fraction(eps)
    m_multi = g.multigraph_size
    guess = 1
    while guess <= 4 * g.total_weight:
        k = tree_count_for(guess, m_multi, eps)
        packing = greedy_pack(g, k)
        upper = (2 + eps) * packing.pack_val()
        if upper <= guess:
            return max(1, math.ceil(upper))
        guess *= 2
    raise GraphError("lambda estimate failed to converge")  # pragma: no cover


def one_respect_all_trees(g: Graph, packing: TreePacking) -> Cut:
    """Minimum cut among all cuts 1-respecting any tree of the packing."""
    if packing.size < 1:
        raise GraphError("packing is empty")
    eu, ev, ew = _edge_arrays(g)
    trees = np.array(packing.trees, dtype=np.int64).reshape(packing.size, g.n - 1)
    valid = np.ones(g.m, dtype=np.bool_)
    w, t, v = one_respect_scan(eu, ev, ew, g.n, trees, valid, 0)
    if t < 0:
        raise GraphError("no 1-respecting candidate")
    tree = tree_from_edge_indices(g, packing.trees[int(t)], root=0)
    side = tree.subtree(int(v))
    cut = Cut(side, int(w))
    assert cut.verify(g)
    return cut


def _edge_arrays(g: Graph):
    eu = np.fromiter((e[0] for e in g.edges), np.int64, g.m)
    ev = np.fromiter((e[1] for e in g.edges), np.int64, g.m)
    ew = np.fromiter((e[2] for e in g.edges), np.int64, g.m)
    return eu, ev, ew


def _component_labels(g: Graph, keep: Sequence[bool]) -> list[int]:
    """Component label = smallest member id, over the kept edge subgraph."""
    uf = _UnionFind(g.n)
    for e, (u, v, _) in enumerate(g.edges):
        if keep[e]:
            uf.union(u, v)
    # union-by-smaller-root makes find() the minimum id directly
    return [uf.find(v) for v in range(g.n)]


def _best_component_cut(g: Graph, labels: Sequence[int]) -> tuple[int, int]:
    """(weight, label) of the smallest component-induced cut, ties to label."""
    boundary: dict[int, int] = {}
    for u, v, w in g.edges:
        lu, lv = labels[u], labels[v]
        if lu != lv:
            boundary[lu] = boundary.get(lu, 0) + w
            boundary[lv] = boundary.get(lv, 0) + w
    if not boundary:
        raise GraphError("single component has no induced cut")
    return min((w, l) for l, w in boundary.items())


def approx_min_cut(
    g: Graph,
    eps: Rational,
    seed: int = 0,
    *,
    lambda_bound: Optional[int] = None,
    record_trees: bool = False,
) -> tuple[Cut, RecursionTrace]:
    """Find a cut of weight at most (1 + eps) times the minimum.

    The returned side is on original node ids at every level because the
    contraction is virtual. seed only feeds the lambda estimate interface;
    the driver itself is deterministic.
    """
    if g.n < 2:
        raise GraphError("need at least two nodes")
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise GraphError(f"eps must lie in (0, 1], got {float(eps)}")
    eps_prime = eps_prime_for_cut(eps)
    lam = lambda_bound if lambda_bound is not None else estimate_lambda(g)
    trace = RecursionTrace(eps=eps, eps_prime=eps_prime, lambda_bound=lam, levels=[])
    cap = max_levels(g.n, eps_prime)

    eu, ev, ew = _edge_arrays(g)
    labels = list(range(g.n))
    best: Optional[tuple] = None  # (weight, kind, level, side); kind 0 = 1-respect

    for level in range(cap + 1):
        contracted = np.fromiter(
            (labels[u] == labels[v] for u, v, _ in g.edges), np.bool_, g.m
        )
        n_comp = len(set(labels))
        if n_comp <= 1:
            break
        m_multi = int(sum(w for e, (_, _, w) in enumerate(g.edges) if not contracted[e]))
        k = tree_count_for(lam, m_multi, eps_prime)
        trees = np.empty((k, g.n - 1), np.int64)
        loads = np.zeros(g.m, np.int64)
        status = greedy_pack_kernel(eu, ev, ew, contracted, g.n, k, trees, loads)
        if status != 0:  # pragma: no cover - the input graph is connected
            raise GraphError("packing failed to span")
        valid = ~contracted
        w_star, t_star, v_star = one_respect_scan(eu, ev, ew, g.n, trees, valid, 0)
        assert t_star >= 0, "a crossing tree edge always yields a candidate"
        cand_tree = tuple(int(e) for e in trees[int(t_star)])
        if best is None or int(w_star) < best[0]:
            side = tree_from_edge_indices(g, cand_tree, root=0).subtree(int(v_star))
            best = (int(w_star), 0, level, side)

        peak = 0
        for e in range(g.m):
            if not contracted[e]:
                load, wt = int(loads[e]), g.edges[e][2]
                peak = max(peak, -((-load) // wt))
        pack_val = Fraction(k, peak)
        l_a = (1 - 2 * eps_prime) / pack_val
        keep = []
        for e in range(g.m):
            if contracted[e]:
                keep.append(True)
            else:
                min_copy = int(loads[e]) // g.edges[e][2]
                keep.append(Fraction(min_copy, k) < l_a)
        new_labels = _component_labels(g, keep)
        n_next = len(set(new_labels))

        record = dict(
            nodes=n_comp,
            multigraph_edges=m_multi,
            trees_packed=k,
            pack_val=pack_val,
            l_a=l_a,
            components=n_next,
            one_respect_weight=int(w_star),
            trees=tuple(tuple(sorted(int(e) for e in row)) for row in trees) if record_trees else None,
            labels=tuple(new_labels) if record_trees else None,
        )

        if n_next >= (1 - eps_prime) * n_comp:
            comp_w, comp_label = _best_component_cut(g, new_labels)
            trace.levels.append(
                LevelRecord(branch="components", component_weight=comp_w, **record)
            )
            if best is None or comp_w < best[0]:
                side = frozenset(v for v in range(g.n) if new_labels[v] == comp_label)
                best = (comp_w, 1, level, side)
            break
        trace.levels.append(LevelRecord(branch="contract", **record))
        labels = new_labels
    else:  # pragma: no cover - the node-count factor forbids this
        raise GraphError("recursion exceeded its level cap")

    assert best is not None
    cut = Cut(best[3], best[0])
    assert cut.verify(g), "candidate weight must match its recomputed cut weight"
    return cut, trace


def exact_min_cut(g: Graph, seed: int = 0) -> Cut:
    """Exact minimum cut: approximate with eps below 1/lambda, so integral
    cut weights force the exact answer."""
    lam_upper = estimate_lambda(g)
    eps = Fraction(1, lam_upper + 1)
    cut, _ = approx_min_cut(g, eps, seed, lambda_bound=lam_upper)
    return cut


def sampled_approx_min_cut(g: Graph, eps: Rational, seed: int = 0, d: int = 2) -> Cut:
    """(1 + eps)-approximate min cut via edge sampling for high connectivity.

    Keeps each unit edge with probability p derived from the lambda estimate,
    solves on the sample at the tighter eps', and evaluates the winning side
    in the original graph. With p clamped at 1 this is approx_min_cut.
    """
    eps = Fraction(eps)
    lam_upper = estimate_lambda(g)
    ep = eps_prime_for_sampling(eps)
    p = sampling_probability(g.n, d, ep, lam_upper)
    if p >= 1:
        return approx_min_cut(g, eps, seed)[0]
    sample, _ = karger_sample_connected(g, p, seed)
    cut_h, _ = approx_min_cut(sample, ep, seed)
    return Cut.from_side(g, cut_h.side)
