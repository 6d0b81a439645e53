from fractions import Fraction

import pytest

from congestcut.distcut import (
    DistMinCutDriver,
    component_cut_values,
    dist_approx_min_cut_full,
    dist_count_components,
    dist_estimate_value,
    dist_exact_min_cut,
)
from congestcut.generators import generate
from congestcut.graph import Graph, cut_weight
from congestcut.oracle import brute_force_mincut
from congestcut.programs import bfs_tree
from congestcut.seqcut import approx_min_cut, estimate_lambda


def keep_lists(g, pred):
    out = []
    for v in range(g.n):
        out.append(tuple(u for u, i in g.incident(v) if pred(*g.edges[i][:2])))
    return out


class TestCountComponents:
    def test_keep_nothing(self):
        g = generate("cycle:7", 0)
        bfs, _ = bfs_tree(g, 0)
        count, labels, rep = dist_count_components(g, keep_lists(g, lambda u, v: False), bfs)
        assert count == 7
        assert labels == list(range(7))

    def test_keep_everything(self):
        g = generate("weighted_random:9,0.5,4", 1)
        bfs, _ = bfs_tree(g, 0)
        count, labels, _ = dist_count_components(g, keep_lists(g, lambda u, v: True), bfs)
        assert count == 1
        assert labels == [0] * 9

    def test_planted_blocks(self):
        g = generate("planted_cut:6,6,2,1.0", 0)
        bfs, _ = bfs_tree(g, 0)
        count, labels, rep = dist_count_components(
            g, keep_lists(g, lambda u, v: (u < 6) == (v < 6)), bfs
        )
        assert count == 2
        assert labels == [0] * 6 + [6] * 6
        assert rep.max_msgs_per_edge_per_round <= 1

    def test_long_path_component(self):
        # a kept path of length n-1 needs the full n-round flood deadline
        n = 12
        g = Graph(n, [(i, i + 1, 1) for i in range(n - 1)] + [(0, n - 1, 1)])
        bfs, _ = bfs_tree(g, 0)
        count, labels, _ = dist_count_components(
            g, keep_lists(g, lambda u, v: abs(u - v) == 1), bfs
        )
        assert count == 1
        assert labels == [0] * n


class TestComponentCutValues:
    def test_single_component(self):
        g = generate("weighted_random:10,0.5,3", 2)
        bfs, _ = bfs_tree(g, 0)
        values, rep = component_cut_values(g, [0] * 10, bfs)
        assert values == [0] * 10
        assert rep.max_msgs_per_edge_per_round <= 1

    def test_planted_blocks_report_two(self):
        g = generate("planted_cut:4,4,2,1.0", 0)
        bfs, _ = bfs_tree(g, 0)
        labels = [0] * 4 + [4] * 4
        values, _ = component_cut_values(g, labels, bfs)
        assert values == [2] * 8

    def test_mixed_sizes_against_direct_evaluation(self):
        # one big 60-node component plus 40 singletons inside n = 100
        n = 100
        edges = [(i, i + 1, 1) for i in range(59)]  # path over the big block
        edges += [(i, (i + 7) % 60, 1) for i in range(0, 60, 3)]  # chords
        edges += [(59 + i, (59 + i + 1) % n, 1) for i in range(1, 41)]  # tail chain
        edges += [(0, 60, 1), (30, 80, 2)]
        g = Graph(n, edges)
        bfs, _ = bfs_tree(g, 0)
        labels = [0 if v < 60 else v for v in range(n)]
        keep = keep_lists(g, lambda u, v: u < 60 and v < 60)
        count, got_labels, _ = dist_count_components(g, keep, bfs)
        assert got_labels == labels
        assert count == 41
        values, _ = component_cut_values(g, labels, bfs)
        for v in range(n):
            members = [u for u in range(n) if labels[u] == labels[v]]
            assert values[v] == cut_weight(g, members), v

    def test_several_medium_components(self):
        g = generate("complete:12", 0)
        bfs, _ = bfs_tree(g, 0)
        labels = [v % 3 for v in range(12)]
        labels = [min(u for u in range(12) if u % 3 == l) for l in labels]
        values, _ = component_cut_values(g, labels, bfs)
        for v in range(12):
            members = [u for u in range(12) if labels[u] == labels[v]]
            assert values[v] == cut_weight(g, members)


DIST_SUITE = [
    ("cycle:7", 0),
    ("complete:4", 0),
    ("planted_cut:6,6,2,1.0", 1),
    ("weighted_random:8,0.6,3", 2),
    ("random_regular:8,3", 3),
]


class TestDistDrivers:
    def test_exact_c7(self):
        g = generate("cycle:7", 0)
        cut, rep = dist_exact_min_cut(g)
        assert cut.weight == 2
        assert rep.max_msgs_per_edge_per_round <= 1

    def test_exact_planted(self):
        g = generate("planted_cut:10,10,4,0.9", 0)
        cut, _ = dist_exact_min_cut(g)
        assert cut.weight == 4
        assert cut.side in (frozenset(range(10)), frozenset(range(10, 20)))

    def test_exact_weighted_bridge(self):
        edges = [(i, j, 1) for i in range(9) for j in range(i + 1, 9)]
        edges += [(9 + i, 9 + j, 1) for i in range(9) for j in range(i + 1, 9)]
        edges.append((0, 9, 5))
        g = Graph(18, edges)
        cut, _ = dist_exact_min_cut(g)
        assert cut.weight == 5

    def test_exact_matches_oracle_on_suite(self):
        for spec, seed in DIST_SUITE:
            g = generate(spec, seed)
            lam = brute_force_mincut(g).weight
            cut, _ = dist_exact_min_cut(g, seed=seed)
            assert cut.weight == lam, spec

    def test_approx_k4_isolates_a_node(self):
        g = generate("complete:4", 0)
        res = dist_approx_min_cut_full(g, Fraction(1, 4))
        assert res.cut.weight == 3
        assert len(res.cut.side) in (1, 3)
        assert sum(res.side_bits) in (1, 3)

    def test_side_bits_define_reported_weight(self):
        for spec, seed in DIST_SUITE:
            g = generate(spec, seed)
            res = dist_approx_min_cut_full(g, Fraction(1, 2), seed=seed)
            side = frozenset(v for v in range(g.n) if res.side_bits[v])
            assert cut_weight(g, side) == res.cut.weight, spec

    def test_estimate_value_bridge(self):
        edges = [(0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1), (2, 3, 1)]
        g = Graph(6, edges)
        value, _ = dist_estimate_value(g, Fraction(1, 2))
        assert value == 1

    def test_estimate_value_k4(self):
        g = generate("complete:4", 0)
        value, _ = dist_estimate_value(g, Fraction(1, 2))
        assert 3 <= value <= Fraction(15, 4)

    def test_estimate_value_c6(self):
        g = generate("cycle:6", 0)
        value, _ = dist_estimate_value(g, Fraction(1, 2))
        assert 2 <= value <= Fraction(5, 2)


class TestCrossValidation:
    @pytest.mark.parametrize("spec,seed", DIST_SUITE)
    def test_packing_and_levels_match_sequential(self, spec, seed):
        g = generate(spec, seed)
        eps = Fraction(1, 2)
        lam = estimate_lambda(g)
        seq_cut, seq_trace = approx_min_cut(g, eps, seed, lambda_bound=lam, record_trees=True)
        dist_res = dist_approx_min_cut_full(
            g, eps, seed, record_trees=True, lambda_bound=lam
        )
        dist_trace = dist_res.trace
        assert len(seq_trace.levels) == len(dist_trace.levels)
        for s_rec, d_rec in zip(seq_trace.levels, dist_trace.levels):
            assert s_rec.nodes == d_rec.nodes
            assert s_rec.multigraph_edges == d_rec.multigraph_edges
            assert s_rec.trees_packed == d_rec.trees_packed
            assert s_rec.pack_val == d_rec.pack_val
            assert s_rec.l_a == d_rec.l_a
            assert s_rec.components == d_rec.components
            assert s_rec.branch == d_rec.branch
            assert s_rec.one_respect_weight == d_rec.one_respect_weight
            assert s_rec.trees == d_rec.trees
            assert s_rec.labels == d_rec.labels
        assert seq_cut.weight == dist_res.cut.weight
        assert seq_cut.side == dist_res.cut.side
