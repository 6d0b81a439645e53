import pytest

from congestcut.graph import Graph, GraphError
from congestcut.generators import generate
from congestcut.tree import RootedTree, kruskal_mst, tree_from_edge_indices


def test_from_edges_path():
    t = RootedTree.from_edges(4, [(0, 1), (1, 2), (2, 3)], root=0)
    assert t.parent == (None, 0, 1, 2)
    assert t.depth(3) == 3
    assert t.subtree(1) == frozenset({1, 2, 3})


def test_rejects_non_tree():
    with pytest.raises(GraphError):
        RootedTree.from_edges(4, [(0, 1), (1, 2)], root=0)
    with pytest.raises(GraphError):
        RootedTree(0, [None, 0, 1, None])


def test_lca_and_ancestors():
    #        0
    #       / \
    #      1   2
    #     / \
    #    3   4
    t = RootedTree(0, [None, 0, 0, 1, 1])
    assert t.lca(3, 4) == 1
    assert t.lca(3, 2) == 0
    assert t.lca(3, 1) == 1
    assert t.ancestors(4) == [4, 1, 0]


def test_kruskal_drops_heaviest_on_cycle():
    g = Graph(4, [(0, 1, 1), (1, 2, 2), (2, 3, 4), (0, 3, 8)])
    keys = [w for _, _, w in g.edges]
    mst = kruskal_mst(g, keys)
    chosen = {g.edges[i][:2] for i in mst}
    assert chosen == {(0, 1), (1, 2), (2, 3)}


def test_kruskal_lexicographic_default():
    g = generate("complete:4", 0)
    mst = kruskal_mst(g)
    chosen = {g.edges[i][:2] for i in mst}
    assert chosen == {(0, 1), (0, 2), (0, 3)}


def test_kruskal_negative_keys():
    # -1 keys force those edges in first, mimicking contraction
    g = Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
    cheap = {(1, 2), (2, 3)}
    keys = [-1 if (u, v) in cheap else 5 for u, v, _ in g.edges]
    mst = kruskal_mst(g, keys)
    chosen = {g.edges[i][:2] for i in mst}
    assert cheap <= chosen and len(chosen) == 3


def test_tree_from_edge_indices_spans():
    g = generate("weighted_random:8,0.5,4", 11)
    t = tree_from_edge_indices(g, kruskal_mst(g), root=0)
    assert t.spans(g)
    assert sorted(t.topo_order()) == list(range(8))
