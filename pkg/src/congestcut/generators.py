"""Seeded graph generators with construction-time guarantees."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from .graph import Graph, GraphError
from .oracle import stoer_wagner

_GENERATOR_NAMES = ("cycle", "complete", "planted_cut", "random_regular", "weighted_random")


@dataclass(frozen=True)
class GenSpec:
    name: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.name}:{','.join(str(a) for a in self.args)}"


def parse_spec(text: str) -> GenSpec:
    """Parse specs like 'cycle:8', 'planted:10,10,3,0.9', 'regular:16,3'."""
    name, _, arg_text = text.partition(":")
    name = name.strip().lower().replace("-", "_")
    aliases = {"planted": "planted_cut", "regular": "random_regular", "wrandom": "weighted_random"}
    name = aliases.get(name, name)
    if name not in _GENERATOR_NAMES:
        raise GraphError(f"unknown generator {name!r}; choose from {_GENERATOR_NAMES}")
    args = []
    for part in arg_text.split(","):
        part = part.strip()
        if not part:
            continue
        args.append(float(part) if "." in part else int(part))
    return GenSpec(name, tuple(args))


def _rng(spec: GenSpec, seed: int, attempt: int = 0) -> random.Random:
    return random.Random(f"{spec}|{seed}|{attempt}")


def _cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n, 1) for i in range(n)])


def _complete(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"complete graph needs n >= 2, got {n}")
    return Graph(n, [(i, j, 1) for i in range(n) for j in range(i + 1, n)])


def _block_edges(nodes: list[int], p: float, rng: random.Random) -> list[tuple[int, int, int]]:
    edges = []
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if rng.random() < p:
                edges.append((nodes[i], nodes[j], 1))
    return edges


def _planted_cut(n1: int, n2: int, k: int, p_intra: float, spec: GenSpec, seed: int) -> Graph:
    """Two dense blocks joined by exactly k unit edges.

    The construction retries until each block's internal min cut exceeds k;
    then every cut splitting a block costs more than k, so the planted cut
    is the unique minimum with value k.
    """
    if n1 < 2 or n2 < 2 or k < 1 or k > n1 * n2:
        raise GraphError(f"infeasible planted_cut({n1}, {n2}, {k}, {p_intra})")
    for attempt in range(200):
        rng = _rng(spec, seed, attempt)
        left = list(range(n1))
        right = list(range(n1, n1 + n2))
        edges = _block_edges(left, p_intra, rng) + _block_edges(right, p_intra, rng)
        cross_pairs = [(u, v) for u in left for v in right]
        for u, v in rng.sample(cross_pairs, k):
            edges.append((u, v, 1))
        try:
            g = Graph(n1 + n2, edges)
        except GraphError:
            continue
        if _block_mincut(g, left) > k and _block_mincut(g, right) > k:
            return g
    raise GraphError(f"could not realize planted_cut({n1}, {n2}, {k}, {p_intra}); raise p_intra")


def _block_mincut(g: Graph, block: list[int]) -> int:
    members = set(block)
    relabel = {v: i for i, v in enumerate(block)}
    internal = [
        (relabel[u], relabel[v], w) for u, v, w in g.edges if u in members and v in members
    ]
    try:
        sub = Graph(len(block), internal)
    except GraphError:
        return 0  # disconnected block can never beat the planted cut
    return stoer_wagner(sub).weight


def _random_regular(n: int, d: int, spec: GenSpec, seed: int) -> Graph:
    if d < 2 or d >= n or (n * d) % 2 != 0:
        raise GraphError(f"infeasible random_regular({n}, {d})")
    for attempt in range(500):
        rng = _rng(spec, seed, attempt)
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        pairs = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or (min(u, v), max(u, v)) in pairs:
                ok = False
                break
            pairs.add((min(u, v), max(u, v)))
        if not ok:
            continue
        try:
            return Graph(n, [(u, v, 1) for u, v in pairs])
        except GraphError:
            continue
    raise GraphError(f"could not realize random_regular({n}, {d})")


def _weighted_random(n: int, p: float, w_max: int, spec: GenSpec, seed: int) -> Graph:
    if n < 2 or not (0 < p <= 1) or w_max < 1:
        raise GraphError(f"infeasible weighted_random({n}, {p}, {w_max})")
    for attempt in range(500):
        rng = _rng(spec, seed, attempt)
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    edges.append((u, v, rng.randint(1, w_max)))
        try:
            return Graph(n, edges)
        except GraphError:
            continue
    raise GraphError(f"could not realize weighted_random({n}, {p}, {w_max}); raise p")


def generate(spec: Union[str, GenSpec], seed: int) -> Graph:
    """Build the graph described by spec, deterministically for (spec, seed)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    name, args = spec.name, spec.args
    try:
        if name == "cycle":
            (n,) = args
            return _cycle(int(n))
        if name == "complete":
            (n,) = args
            return _complete(int(n))
        if name == "planted_cut":
            n1, n2, k, p = args
            return _planted_cut(int(n1), int(n2), int(k), float(p), spec, seed)
        if name == "random_regular":
            n, d = args
            return _random_regular(int(n), int(d), spec, seed)
        if name == "weighted_random":
            n, p, w_max = args
            return _weighted_random(int(n), float(p), int(w_max), spec, seed)
    except ValueError as exc:
        raise GraphError(f"bad arguments for {name}: {args}") from exc
    raise GraphError(f"unknown generator {name!r}")
