from fractions import Fraction

import pytest

from congestcut.graph import Graph, Partition, cut_weight, part_val
from congestcut.generators import generate
from congestcut.oracle import (
    OracleCapacityError,
    all_cut_weights,
    brute_force_mincut,
    iter_partitions,
    optimal_partition,
    phi_value,
    stoer_wagner,
)


def two_cliques_bridge(k=4, bridge_w=1):
    edges = [(i, j, 1) for i in range(k) for j in range(i + 1, k)]
    edges += [(k + i, k + j, 1) for i in range(k) for j in range(i + 1, k)]
    edges.append((0, k, bridge_w))
    return Graph(2 * k, edges)


def test_cycle5_mincut():
    cut = brute_force_mincut(generate("cycle:5", 0))
    assert cut.weight == 2


def test_k4_mincut():
    cut = brute_force_mincut(generate("complete:4", 0))
    assert cut.weight == 3
    assert len(cut.side) in (1, 3)


def test_bridge_mincut_side():
    g = two_cliques_bridge()
    cut = brute_force_mincut(g)
    assert cut.weight == 1
    assert cut.side in (frozenset(range(4)), frozenset(range(4, 8)))


def test_stoer_wagner_matches_enumeration():
    for spec, seed in [
        ("cycle:7", 0),
        ("complete:6", 0),
        ("weighted_random:8,0.5,5", 1),
        ("weighted_random:10,0.4,7", 2),
        ("random_regular:10,3", 3),
        ("planted_cut:5,5,2,0.9", 4),
    ]:
        g = generate(spec, seed)
        enum = brute_force_mincut(g)
        sw = stoer_wagner(g)
        assert sw.weight == enum.weight, spec
        assert cut_weight(g, sw.side) == sw.weight, spec


def test_stoer_wagner_weighted_bridge():
    g = two_cliques_bridge(k=5, bridge_w=3)
    assert stoer_wagner(g).weight == 3


def test_capacity_error():
    g = generate("cycle:401", 0)
    with pytest.raises(OracleCapacityError):
        brute_force_mincut(g)


def test_all_cut_weights_k4():
    g = generate("complete:4", 0)
    weights = all_cut_weights(g)
    assert len(weights) == 8
    # masks over nodes 0..2: four cuts isolate one node (weight 3),
    # three split into pairs (weight 4)
    assert sorted(int(w) for w in weights[1:]) == [3, 3, 3, 3, 4, 4, 4]


def test_iter_partitions_bell_numbers():
    assert sum(1 for _ in iter_partitions(list(range(4)))) == 15
    assert sum(1 for _ in iter_partitions(list(range(5)))) == 52


def test_phi_k4():
    g = generate("complete:4", 0)
    phi, part = optimal_partition(g)
    assert phi == 2
    assert part == Partition([{i} for i in range(4)], 4)


def test_phi_bounds_lemma():
    # lambda/2 < phi <= lambda on a few small graphs
    for spec, seed in [("cycle:6", 0), ("complete:5", 0), ("weighted_random:6,0.6,3", 5)]:
        g = generate(spec, seed)
        lam = brute_force_mincut(g).weight
        phi = phi_value(g)
        assert Fraction(lam, 2) < phi <= lam, spec


def test_min_cut_partition_achieves_lambda():
    g = generate("weighted_random:7,0.5,4", 9)
    cut = brute_force_mincut(g)
    p = Partition([cut.side, frozenset(range(g.n)) - cut.side], g.n)
    assert part_val(g, p) == cut.weight
