import math
from fractions import Fraction

import pytest

from congestcut.graph import Graph, GraphError, Partition, part_val
from congestcut.generators import generate
from congestcut.oracle import brute_force_mincut, iter_partitions, phi_value
from congestcut.packing import (
    TreePacking,
    eps_prime_for_cut,
    greedy_pack,
    ideal_loads,
    load_threshold_components,
    max_levels,
    tree_count_for,
    verify_greedy_replay,
)


def path_graph(n):
    return Graph(n, [(i, i + 1, 1) for i in range(n - 1)])


def test_tree_graph_packs_itself():
    g = path_graph(5)
    p = greedy_pack(g, 7)
    assert all(t == tuple(range(4)) for t in p.trees)
    assert p.loads == (7, 7, 7, 7)
    assert p.pack_val() == 1


def test_c4_two_trees_drop_different_edges():
    g = generate("cycle:4", 0)
    p = greedy_pack(g, 2)
    dropped = [set(range(4)) - set(t) for t in p.trees]
    assert dropped[0] != dropped[1]
    assert max(p.loads) <= 2
    assert p.pack_val() >= 1


def test_k4_pack_val_converges_to_phi():
    g = generate("complete:4", 0)
    p = greedy_pack(g, 600)
    assert Fraction(9, 5) < p.pack_val() <= 2


def test_replay_check():
    for spec, seed in [("complete:5", 0), ("weighted_random:7,0.6,4", 2), ("cycle:6", 0)]:
        g = generate(spec, seed)
        p = greedy_pack(g, 40)
        assert verify_greedy_replay(p)
        assert p.replay_loads() == p.loads


def test_replay_with_contraction_sentinels():
    g = generate("complete:5", 0)
    contracted = [e == 0 for e in range(g.m)]
    p = greedy_pack(g, 25, contracted)
    assert verify_greedy_replay(p, contracted)
    # the contracted edge is forced into every tree
    assert p.loads[0] == 25


def test_weak_duality_every_pair():
    for spec, seed in [("complete:5", 0), ("weighted_random:6,0.7,3", 4), ("cycle:7", 0)]:
        g = generate(spec, seed)
        packing = greedy_pack(g, 30)
        pv = packing.pack_val()
        for blocks in iter_partitions(list(range(g.n))):
            if len(blocks) < 2:
                continue
            assert pv <= part_val(g, Partition(blocks, g.n))


def test_tree_count_for_examples():
    assert tree_count_for(2, math.e**2, 1) == 24
    assert tree_count_for(1, 3, Fraction(1, 2)) == math.ceil(24 * math.log(3))
    # monotone in the lambda bound
    counts = [tree_count_for(lam, 50, 1) for lam in (1, 2, 4, 8)]
    assert counts == sorted(counts)
    with pytest.raises(GraphError):
        tree_count_for(2, 10, 2)
    with pytest.raises(GraphError):
        tree_count_for(2, 10, Fraction(5, 2))


def test_eps_prime_for_cut_root():
    for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
        ep = eps_prime_for_cut(eps)
        assert 0 < ep < Fraction(1, 2)
        assert (1 - 2 * ep) * (1 - ep) >= Fraction(1, 1) / (1 + eps)
        nudged = ep + Fraction(1, 10**6)
        assert (1 - 2 * nudged) * (1 - nudged) < Fraction(1, 1) / (1 + eps)


def test_max_levels_grows_with_small_eps():
    assert max_levels(16, Fraction(1, 10)) >= max_levels(16, Fraction(1, 2))


def test_threshold_components_tree_extremes():
    g = path_graph(4)
    p = greedy_pack(g, 5)
    # every relative load is exactly 1
    singletons = load_threshold_components(g, p, Fraction(1, 2))
    assert len(singletons) == 4
    whole = load_threshold_components(g, p, Fraction(3, 2))
    assert len(whole) == 1


def test_threshold_components_planted():
    g = generate("planted_cut:8,8,2,1.0", 0)
    eps_prime = eps_prime_for_cut(Fraction(2, 5))
    k = tree_count_for(2, g.multigraph_size, eps_prime)
    p = greedy_pack(g, k)
    l_a = (1 - 2 * eps_prime) / p.pack_val()
    comps = load_threshold_components(g, p, l_a)
    assert comps == Partition([set(range(8)), set(range(8, 16))], 16)
    # the two planted-cut edges are at or above the threshold
    cut_edges = [e for e, (u, v, _) in enumerate(g.edges) if (u < 8) != (v < 8)]
    assert len(cut_edges) == 2
    for e in cut_edges:
        assert p.min_relative_load(e) >= l_a


def test_ideal_loads_single_edge():
    g = Graph(2, [(0, 1, 5)])
    assert ideal_loads(g) == {0: Fraction(1, 5)}


def test_ideal_loads_k4():
    g = generate("complete:4", 0)
    assert ideal_loads(g) == {e: Fraction(1, 2) for e in range(6)}


def test_ideal_loads_triangles_with_bridge():
    edges = [(0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1), (2, 3, 1)]
    g = Graph(6, edges)
    loads = ideal_loads(g)
    bridge = g.edge_index(2, 3)
    assert loads[bridge] == 1
    triangle_edges = [e for e in range(g.m) if e != bridge]
    assert all(loads[e] == Fraction(2, 3) for e in triangle_edges)
    # per the monotonicity lemma the sub-level Phi cannot drop
    assert phi_value(g) == 1


def test_load_convergence_small():
    # per-copy deviation |l(e) - l*(e)| <= eps/lambda at the prescribed count
    for spec, seed, eps in [("complete:4", 0, 1), ("cycle:5", 0, 1), ("weighted_random:6,0.8,2", 1, Fraction(1, 2))]:
        g = generate(spec, seed)
        lam = brute_force_mincut(g).weight
        k = tree_count_for(lam, g.multigraph_size, eps)
        packing = greedy_pack(g, k)
        ideal = ideal_loads(g)
        bound = Fraction(eps) / lam
        for e in range(g.m):
            assert abs(packing.min_relative_load(e) - ideal[e]) <= bound, (spec, e)
            assert abs(packing.max_relative_load(e) - ideal[e]) <= bound, (spec, e)


def test_subgraph_connectivity_corollary():
    # components of (V, E*_{<=l}) for l <= 1/Phi are at least Phi-connected
    from congestcut.tree import _UnionFind

    for spec, seed in [("weighted_random:6,0.7,3", 3), ("complete:5", 0), ("planted_cut:3,3,1,1.0", 0)]:
        g = generate(spec, seed)
        phi = phi_value(g)
        ideal = ideal_loads(g)
        for level in sorted(set(ideal.values())):
            if level > 1 / phi:
                continue
            uf = _UnionFind(g.n)
            for e, (u, v, _) in enumerate(g.edges):
                if ideal[e] <= level:
                    uf.union(u, v)
            comps: dict[int, list[int]] = {}
            for v in range(g.n):
                comps.setdefault(uf.find(v), []).append(v)
            for comp in comps.values():
                if len(comp) < 2:
                    continue
                members = set(comp)
                relabel = {v: i for i, v in enumerate(comp)}
                sub = Graph(
                    len(comp),
                    [(relabel[u], relabel[v], w) for u, v, w in g.edges if u in members and v in members],
                )
                assert brute_force_mincut(sub).weight >= phi, (spec, level)
