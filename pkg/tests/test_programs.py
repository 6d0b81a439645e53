import pytest

from congestcut.generators import generate
from congestcut.graph import Graph, exact_diameter
from congestcut.programs import (
    bfs_tree,
    broadcast_items,
    convergecast_sum,
    flood_min,
    upcast_items,
)
from congestcut.tree import RootedTree


def path_graph(n):
    return Graph(n, [(i, i + 1, 1) for i in range(n - 1)])


def test_bfs_star_from_center():
    g = Graph(5, [(0, i, 1) for i in range(1, 5)])
    tree, report = bfs_tree(g, 0)
    assert all(tree.parent[v] == 0 for v in range(1, 5))
    assert report.rounds <= 2


def test_bfs_path_endpoint():
    g = path_graph(4)
    tree, _ = bfs_tree(g, 0)
    assert tree.parent == (None, 0, 1, 2)


def test_bfs_cycle8_depth_and_rounds():
    g = generate("cycle:8", 0)
    tree, report = bfs_tree(g, 0)
    assert tree.height == 4
    assert report.rounds <= exact_diameter(g) + 1 == 5
    # node 4 ties between parents 3 and 5; smaller id wins
    assert tree.parent[4] == 3


def test_bfs_cycle6_depth():
    g = generate("cycle:6", 0)
    tree, _ = bfs_tree(g, 2)
    assert tree.height == 3


def test_bfs_depth_within_diameter():
    for spec, seed in [("weighted_random:14,0.3,4", 5), ("random_regular:12,3", 1)]:
        g = generate(spec, seed)
        tree, report = bfs_tree(g, 0)
        d = exact_diameter(g)
        assert tree.height <= d
        assert report.rounds <= d + 1


def test_flood_min_masked():
    g = generate("cycle:6", 0)
    values = [3, 5, 1, 7, 9, 2]
    outputs, _ = flood_min(g, values)
    assert outputs == [1] * 6


def test_upcast_single_item_depth3():
    g = path_graph(4)
    tree = RootedTree(0, [None, 0, 1, 2])
    items = [[], [], [], [(7, 8)]]
    collected, report = upcast_items(g, tree, items)
    assert collected == [(7, 8)]
    assert report.rounds <= 4


def test_upcast_ten_items_depth3_pipelines():
    g = Graph(7, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (1, 4, 1), (3, 5, 1), (3, 6, 1)])
    tree = RootedTree(0, [None, 0, 0, 1, 1, 3, 3])
    items = [[], [(1, 0)], [(2, 0)], [(3, 0), (3, 1)], [(4, 0)], [(5, 0), (5, 1), (5, 2)], [(6, 0), (6, 1)]]
    total = sum(len(i) for i in items)
    assert total == 10
    collected, report = upcast_items(g, tree, items)
    assert sorted(collected) == sorted(it for node in items for it in node)
    # pipelined: about total + depth rounds, not total * depth
    assert report.rounds <= total + 3 + 4


def test_upcast_empty():
    g = path_graph(3)
    tree = RootedTree(0, [None, 0, 1])
    collected, report = upcast_items(g, tree, [[], [], []])
    assert collected == []


def test_broadcast_single_item():
    g = path_graph(4)
    tree = RootedTree(0, [None, 0, 1, 2])
    outputs, report = broadcast_items(g, tree, [(42, 0)])
    assert all(out == [(42, 0)] for out in outputs)
    assert report.rounds <= 4


def test_broadcast_many_items_order_preserved():
    g = generate("cycle:7", 0)
    tree, _ = bfs_tree(g, 0)
    items = [(i, i * i) for i in range(9)]
    outputs, report = broadcast_items(g, tree, items)
    assert all(out == items for out in outputs)
    assert report.rounds <= len(items) + tree.height + 2


def test_convergecast_sum_is_handshake():
    for spec, seed in [("cycle:8", 0), ("weighted_random:10,0.5,6", 2)]:
        g = generate(spec, seed)
        tree, _ = bfs_tree(g, 0)
        degrees = [g.degree(v) for v in range(g.n)]
        sums, report = convergecast_sum(g, tree, degrees)
        assert sums[0] == 2 * g.total_weight
        assert report.rounds <= tree.height + 1


def test_convergecast_subtree_sums():
    g = path_graph(4)
    tree = RootedTree(0, [None, 0, 1, 2])
    sums, _ = convergecast_sum(g, tree, [1, 1, 1, 1])
    assert sums == [4, 3, 2, 1]
