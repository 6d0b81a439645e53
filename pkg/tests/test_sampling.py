from fractions import Fraction

import pytest

from congestcut.graph import Graph, GraphError
from congestcut.generators import generate
from congestcut.sampling import (
    DisconnectedSampleError,
    cut_preserving_probability,
    eps_prime_for_sampling,
    karger_sample,
    karger_sample_connected,
    sampling_probability,
)


def test_p_one_is_identity():
    g = generate("complete:6", 0)
    assert karger_sample(g, 1.0, 1) is g


def test_determinism():
    g = generate("complete:6", 0)
    a = karger_sample(g, 0.5, 42)
    b = karger_sample(g, 0.5, 42)
    assert a == b


def test_invalid_probability():
    g = generate("complete:4", 0)
    with pytest.raises(GraphError):
        karger_sample(g, 0.0, 0)
    with pytest.raises(GraphError):
        karger_sample(g, 1.5, 0)


def _sampled_weight(g, p, seed):
    try:
        return karger_sample(g, p, seed).total_weight
    except DisconnectedSampleError as exc:
        return exc.total_weight


def test_k6_expected_weight_monte_carlo():
    g = generate("complete:6", 0)
    trials = 1000
    mean = sum(_sampled_weight(g, 0.5, seed) for seed in range(trials)) / trials
    # E[total weight] = 15 * 0.5 = 7.5
    assert 7.5 * 0.95 <= mean <= 7.5 * 1.05


def test_heavy_edge_binomial_mean():
    g = Graph(2, [(0, 1, 10)])
    trials = 1000
    mean = sum(_sampled_weight(g, 0.5, seed) for seed in range(trials)) / trials
    assert 5 * 0.95 <= mean <= 5 * 1.05


def test_retry_wrapper():
    g = Graph(2, [(0, 1, 2)])
    h, attempts = karger_sample_connected(g, 0.4, seed=5)
    assert h.n == 2 and attempts >= 0
    # generous attempt budget exhausts only with absurdly small p
    with pytest.raises(DisconnectedSampleError):
        karger_sample_connected(g, 1e-9, seed=5, max_attempts=5)


def test_eps_prime_for_sampling_root_property():
    for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
        e = eps_prime_for_sampling(eps)
        assert 0 < e < 1
        assert (1 + e) ** 2 / (1 - e) <= 1 + eps
        # close to the exact root: not pointlessly small
        assert (1 + e + Fraction(1, 10**6)) ** 2 / (1 - e - Fraction(1, 10**6)) > 1 + eps


def test_sampling_probability_clamps():
    assert sampling_probability(12, 2, 0.5, 11) == 1.0
    assert cut_preserving_probability(12, 2, 0.5, 11) == 1.0
    p = cut_preserving_probability(12, 2, 0.5, 110)
    assert 0 < p < 1
