"""Random edge sampling that preserves cut values within (1 +/- eps)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import numpy as np

from .graph import Graph, GraphError


class DisconnectedSampleError(GraphError):
    """The sampled subgraph came out disconnected; retry with a fresh seed.

    Carries the sampled edge list and total weight as diagnostics.
    """

    def __init__(self, message: str, edges=(), total_weight: int = 0):
        super().__init__(message)
        self.edges = tuple(edges)
        self.total_weight = total_weight


def _edge_coin(seed: int, attempt: int, u: int, v: int) -> np.random.Generator:
    # Both endpoints of an edge can derive this stream locally, so the
    # sampling needs no communication.
    return np.random.default_rng([0x6B617267, seed & 0x7FFFFFFF, attempt, u, v])


def karger_sample(g: Graph, p: float, seed: int, attempt: int = 0) -> Graph:
    """Keep each unit edge independently with probability p.

    A weight-w edge is w parallel unit edges, so its sampled weight is a
    Binomial(w, p) draw; edges sampling to zero disappear. Deterministic
    for fixed (seed, attempt).
    """
    if not (0 < p <= 1):
        raise GraphError(f"sampling probability must be in (0, 1], got {p}")
    if p == 1:
        return g
    edges = []
    for u, v, w in g.edges:
        kept = int(_edge_coin(seed, attempt, u, v).binomial(w, p))
        if kept > 0:
            edges.append((u, v, kept))
    try:
        return Graph(g.n, edges)
    except GraphError as exc:
        raise DisconnectedSampleError(
            f"sample attempt {attempt} disconnected: {exc}",
            edges=edges,
            total_weight=sum(w for _, _, w in edges),
        ) from exc


def karger_sample_connected(
    g: Graph, p: float, seed: int, max_attempts: int = 100
) -> tuple[Graph, int]:
    """Retry karger_sample with fresh per-attempt streams until connected."""
    for attempt in range(max_attempts):
        try:
            return karger_sample(g, p, seed, attempt), attempt
        except DisconnectedSampleError:
            continue
    raise DisconnectedSampleError(
        f"no connected sample of {g!r} at p={p} after {max_attempts} attempts (seed {seed})"
    )


def eps_prime_for_sampling(eps: Union[Fraction, float, int]) -> Fraction:
    """Largest convenient rational e with (1+e)^2/(1-e) <= 1+eps.

    Positive root of e^2 + (3+eps)e - eps = 0, approximated from below so
    the final guarantee can only get stronger.
    """
    e = Fraction(eps)
    if e <= 0:
        raise GraphError(f"eps must be positive, got {eps}")
    root = (-(3 + float(e)) + math.sqrt((3 + float(e)) ** 2 + 4 * float(e))) / 2
    cand = Fraction(int(root * 10**9), 10**9)
    while cand > 0 and (1 + cand) ** 2 > (1 - cand) * (1 + e):
        cand -= Fraction(1, 10**9)
    if cand <= 0:
        raise GraphError(f"could not derive sampling eps' from {eps}")
    return cand


def sampling_probability(n: int, d: int, eps_prime: Union[Fraction, float], lam_bound: int) -> float:
    """Edge-keeping probability 6(d+2)ln(n) / (eps'^2 * lambda'), clamped to 1.

    lam_bound is an upper estimate of the min cut (at most a constant factor
    above it), which the leading constant 6 already absorbs.
    """
    if lam_bound < 1:
        raise GraphError(f"lambda bound must be positive, got {lam_bound}")
    p = 6 * (d + 2) * math.log(n) / (float(eps_prime) ** 2 * lam_bound)
    return min(1.0, p)


def cut_preserving_probability(n: int, d: int, eps: Union[Fraction, float], lam: int) -> float:
    """Probability 2(d+2)ln(n) / (eps^2 * lambda) at which every cut of G(p)
    stays within (1 +/- eps) of its expectation except with chance O(1/n^d).

    Takes the true min cut value; clamped to 1.
    """
    if lam < 1:
        raise GraphError(f"lambda must be positive, got {lam}")
    p = 2 * (d + 2) * math.log(n) / (float(eps) ** 2 * lam)
    return min(1.0, p)
