import io
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from congestcut.graph import (
    Cut,
    Graph,
    GraphError,
    InvalidCutError,
    Partition,
    cut_weight,
    exact_diameter,
    graph_from_text,
    graph_to_text,
    part_val,
)
from congestcut.generators import generate


def path_graph(n):
    return Graph(n, [(i, i + 1, 1) for i in range(n - 1)])


def test_rejects_disconnected():
    with pytest.raises(GraphError, match="disconnected"):
        Graph(4, [(0, 1, 1), (2, 3, 1)])


def test_rejects_self_loop_and_bad_weight():
    with pytest.raises(GraphError):
        Graph(2, [(0, 0, 1)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1, 1.5)])


def test_weight_cap():
    with pytest.raises(GraphError, match="cap"):
        Graph(2, [(0, 1, 2**4 + 1)])
    Graph(2, [(0, 1, 16)])  # exactly n**4 is allowed


def test_parallel_edges_merge():
    g = Graph(3, [(0, 1, 2), (1, 0, 3), (1, 2, 1)])
    assert g.weight(0, 1) == 5
    assert g.m == 2
    assert g.degree(1) == 6


def test_cut_weight_path():
    g = path_graph(3)
    assert cut_weight(g, {0}) == 1
    assert cut_weight(g, {0, 1}) == 1
    assert cut_weight(g, {1}) == 2


def test_cut_weight_k4_pair():
    g = generate("complete:4", 0)
    # hand enumeration: each of the two chosen nodes has two edges leaving the pair
    assert cut_weight(g, {0, 1}) == 4


def test_cut_weight_weighted_star():
    g = Graph(5, [(0, i, 3) for i in range(1, 5)])
    assert cut_weight(g, {3}) == 3


def test_cut_rejects_trivial_sides():
    g = path_graph(3)
    with pytest.raises(InvalidCutError):
        cut_weight(g, set())
    with pytest.raises(InvalidCutError):
        cut_weight(g, {0, 1, 2})


def test_cut_self_consistency():
    g = generate("complete:5", 0)
    c = Cut.from_side(g, {0, 2})
    assert c.verify(g)
    assert not Cut(frozenset({0, 2}), c.weight + 1).verify(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.data())
def test_cut_complement_symmetry(n, data):
    g = generate(f"complete:{n}", 0)
    size = data.draw(st.integers(1, n - 1))
    side = frozenset(data.draw(st.permutations(range(n)))[:size])
    rest = frozenset(range(n)) - side
    assert cut_weight(g, side) == cut_weight(g, rest)


def test_partition_validation():
    with pytest.raises(GraphError):
        Partition([{0, 1}, {1, 2}], 3)
    with pytest.raises(GraphError):
        Partition([{0}, {1}], 3)
    with pytest.raises(GraphError):
        Partition([{0}, set()], 1)


def test_part_val_k4():
    g = generate("complete:4", 0)
    singletons = Partition([{i} for i in range(4)], 4)
    assert part_val(g, singletons) == Fraction(6, 3) == 2
    split = Partition([{0}, {1, 2, 3}], 4)
    assert part_val(g, split) == 3
    with pytest.raises(GraphError):
        part_val(g, Partition([set(range(4))], 4))


def test_exact_diameter():
    assert exact_diameter(generate("cycle:8", 0)) == 4
    assert exact_diameter(path_graph(5)) == 4


def test_edgelist_roundtrip():
    g = generate("weighted_random:7,0.6,9", 3)
    text = graph_to_text(g)
    assert graph_from_text(text) == g
    assert graph_to_text(graph_from_text(text)) == text


def test_edgelist_header_mismatch():
    with pytest.raises(GraphError, match="promises"):
        graph_from_text("2 2\n0 1 1\n")
