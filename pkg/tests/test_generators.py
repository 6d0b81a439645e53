import pytest

from congestcut.graph import GraphError, cut_weight
from congestcut.generators import generate, parse_spec
from congestcut.oracle import brute_force_mincut


def test_parse_spec_forms():
    assert parse_spec("cycle:8").name == "cycle"
    assert parse_spec("planted:10,10,3,0.9").args == (10, 10, 3, 0.9)
    assert parse_spec("regular:16,3").name == "random_regular"
    with pytest.raises(GraphError):
        parse_spec("torus:3,3")


def test_cycle4():
    g = generate("cycle:4", 0)
    assert g.m == 4
    assert brute_force_mincut(g).weight == 2


def test_complete5():
    assert generate("complete:5", 0).m == 10


def test_determinism():
    a = generate("weighted_random:12,0.4,6", 7)
    b = generate("weighted_random:12,0.4,6", 7)
    c = generate("weighted_random:12,0.4,6", 8)
    assert a == b
    assert a != c


def test_planted_cut_is_unique_minimum():
    g = generate("planted_cut:10,10,3,0.8", 1)
    cut = brute_force_mincut(g)
    assert cut.weight == 3
    assert cut.side in (frozenset(range(10)), frozenset(range(10, 20)))
    # planted side achieves exactly k
    assert cut_weight(g, range(10)) == 3


def test_planted_cut_infeasible():
    with pytest.raises(GraphError):
        generate("planted_cut:3,3,20,0.9", 0)


def test_random_regular_degrees():
    g = generate("random_regular:12,3", 2)
    assert all(g.degree(v) == 3 for v in range(12))
    with pytest.raises(GraphError):
        generate("random_regular:7,3", 0)  # odd degree sum


def test_weighted_random_bounds():
    g = generate("weighted_random:9,0.7,5", 4)
    assert all(1 <= w <= 5 for _, _, w in g.edges)
