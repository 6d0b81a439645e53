"""Round-synchronous CONGEST engine with bandwidth accounting.

Every round each node may send at most `budget` messages per incident edge
per direction; a message is a small tag plus at most two bounded integers.
Delivery is deterministic (inboxes sorted by sender, tag, payload) and each
node's randomness comes from a stream derived from (seed, node id), so runs
are reproducible across platforms regardless of execution interleaving.
"""

from __future__ import annotations

import copy
import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, NamedTuple, Optional, Sequence, TextIO

from .graph import Graph, bfs_distances


@lru_cache(maxsize=64)
def _static_views(g: Graph):
    hint = max(1, 2 * max(bfs_distances(g, 0)))
    nodes = []
    for v in range(g.n):
        nbrs = g.neighbors(v)
        weights = {u: g.edges[i][2] for u, i in g.incident(v)}
        nodes.append((nbrs, frozenset(nbrs), weights))
    return hint, tuple(nodes)

TRACE_SCHEMA = "congestcut-trace-v1"

# Optional global trace sink (set by the CLI); run() uses it when no
# per-call trace stream is given.
TRACE_SINK: Optional[TextIO] = None

# wake_at value for programs that advance only when a message arrives
NEVER = 1 << 30

# Payload integers must stay polynomial in n; the exponent is generous
# because it only guards against smuggling unbounded data, with a floor so
# tiny graphs do not reject legitimate sums.
_VALUE_EXPONENT = 10
_VALUE_FLOOR = 1 << 44


class Message(NamedTuple):
    tag: int
    values: tuple[int, ...] = ()


def msg(tag: int, *values: int) -> Message:
    return Message(tag, tuple(values))


class SimError(RuntimeError):
    pass


class CongestionError(SimError):
    """A node exceeded the per-edge per-round message budget."""

    def __init__(self, round_no: int, edge: tuple[int, int], count: int, budget: int):
        super().__init__(
            f"round {round_no}: {count} messages on edge {edge[0]}->{edge[1]} exceeds budget {budget}"
        )
        self.round_no = round_no
        self.edge = edge
        self.count = count


class SimTimeoutError(SimError):
    """max_rounds elapsed before every node halted."""

    def __init__(self, max_rounds: int, active: list[int], report: "RoundReport"):
        super().__init__(f"{max_rounds} rounds elapsed with {len(active)} nodes still active")
        self.active = active
        self.report = report


@dataclass(frozen=True)
class RoundReport:
    """Audit trail of a run: rounds, congestion peak, and message totals."""

    rounds: int
    max_msgs_per_edge_per_round: int
    total_messages: int
    phases: dict[str, int] = field(default_factory=dict)

    @staticmethod
    def combine(reports: Iterable["RoundReport"]) -> "RoundReport":
        rounds = 0
        peak = 0
        total = 0
        phases: dict[str, int] = {}
        for r in reports:
            rounds += r.rounds
            peak = max(peak, r.max_msgs_per_edge_per_round)
            total += r.total_messages
            for label, rr in r.phases.items():
                phases[label] = phases.get(label, 0) + rr
        return RoundReport(rounds, peak, total, phases)


class NodeContext:
    """Everything a node may legitimately know before communicating."""

    __slots__ = ("node", "n", "neighbors", "weights", "diameter_hint", "data", "_rng_seed", "_rng")

    def __init__(self, node, n, neighbors, weights, diameter_hint, rng_seed, data):
        self.node = node
        self.n = n
        self.neighbors = neighbors  # sorted tuple of neighbor ids
        self.weights = weights  # neighbor id -> edge weight
        self.diameter_hint = diameter_hint  # 2-approximation of D
        self._rng_seed = rng_seed
        self._rng = None
        self.data = data  # per-node input, copied by the engine

    @property
    def rng(self) -> random.Random:
        # built lazily; the stream depends only on (seed, node id)
        if self._rng is None:
            self._rng = random.Random(self._rng_seed)
        return self._rng

    def degree(self) -> int:
        return sum(self.weights.values())


_IMMUTABLE = (int, float, str, bytes, bool, frozenset, type(None), Fraction)


def _isolated_copy(value):
    """Deep copy that skips provably immutable values (the common case)."""
    if isinstance(value, _IMMUTABLE):
        return value
    if isinstance(value, tuple):
        copied = [_isolated_copy(x) for x in value]
        return value if all(c is x for c, x in zip(copied, value)) else tuple(copied)
    if isinstance(value, list):
        return [_isolated_copy(x) for x in value]
    if isinstance(value, dict):
        return {k: _isolated_copy(v) for k, v in value.items()}
    if isinstance(value, (set, deque)):
        return type(value)(_isolated_copy(x) for x in value)
    return copy.deepcopy(value)


class NodeProgram:
    """Base class for per-node programs.

    Subclasses set up state in __init__(ctx) and implement on_round, which
    receives the sorted inbox of (sender, Message) pairs and returns an
    iterable of (neighbor, Message) sends. Set self.halted once done; the
    value left in self.output is returned by the engine.

    A program whose on_round provably does nothing on empty inboxes until
    some round may set self.wake_at to that round; the engine then skips
    the idle calls, delivering any incoming message immediately regardless.
    This is purely a simulation shortcut: skipped rounds are identical to
    executed no-op rounds.
    """

    def __init__(self, ctx: NodeContext):
        self.ctx = ctx
        self.halted = False
        self.output: Any = None
        self.wake_at: Optional[int] = None

    def on_round(self, round_no: int, inbox: list[tuple[int, Message]]):
        raise NotImplementedError


def diameter_hint_for(g: Graph) -> int:
    # One BFS gives ecc(0) with D/2 <= ecc <= D, so 2*ecc is a 2-approx >= D.
    return max(1, 2 * max(bfs_distances(g, 0)))


def run(
    g: Graph,
    program: Callable[[NodeContext], NodeProgram],
    node_inputs: Optional[Sequence[Any]] = None,
    *,
    budget: int = 1,
    max_rounds: Optional[int] = None,
    seed: int = 0,
    phase: str = "",
    trace: Optional[TextIO] = None,
) -> tuple[list[Any], RoundReport]:
    """Execute a NodeProgram on every node until all halt.

    Returns (per-node outputs, RoundReport). Raises CongestionError on any
    budget violation and SimTimeoutError if max_rounds elapse first.
    """
    n = g.n
    if trace is None:
        trace = TRACE_SINK
    if max_rounds is None:
        max_rounds = 60 * n + 400
    if max_rounds <= 0:
        raise SimError(f"max_rounds must be positive, got {max_rounds}")
    if budget < 1:
        raise SimError(f"budget must be at least 1, got {budget}")
    value_cap = max(max(n, 2) ** _VALUE_EXPONENT, _VALUE_FLOOR)
    hint, static = _static_views(g)
    neighbor_sets = [static[v][1] for v in range(n)]
    programs: list[NodeProgram] = []
    for v in range(n):
        nbrs, _, weights = static[v]
        ctx = NodeContext(
            node=v,
            n=n,
            neighbors=nbrs,
            weights=dict(weights),
            diameter_hint=hint,
            rng_seed=f"{seed}|{v}",
            data=_isolated_copy(node_inputs[v]) if node_inputs is not None else None,
        )
        programs.append(program(ctx))

    inboxes: list[list[tuple[int, Message]]] = [[] for _ in range(n)]
    peak = 0
    total = 0
    last_traffic_round = 0

    for round_no in range(1, max_rounds + 1):
        pending: list[list[tuple[int, Message]]] = [[] for _ in range(n)]
        edge_counts: dict[tuple[int, int], int] = {}
        any_sent = False
        for v in range(n):
            prog = programs[v]
            if prog.halted:
                continue
            if not inboxes[v] and prog.wake_at is not None and round_no < prog.wake_at:
                continue
            prog.wake_at = None
            sends = prog.on_round(round_no, inboxes[v]) or ()
            for to, message in sends:
                if to not in neighbor_sets[v]:
                    raise SimError(f"round {round_no}: node {v} sent to non-neighbor {to}")
                if not isinstance(message, Message):
                    raise SimError(f"round {round_no}: node {v} sent a non-Message {message!r}")
                if not (0 <= message.tag < 256):
                    raise SimError(f"round {round_no}: tag {message.tag} outside 8 bits")
                if len(message.values) > 2:
                    raise SimError(
                        f"round {round_no}: message with {len(message.values)} values exceeds payload"
                    )
                for val in message.values:
                    if not isinstance(val, int) or abs(val) > value_cap:
                        raise SimError(f"round {round_no}: payload value {val!r} exceeds poly(n) cap")
                key = (v, to)
                count = edge_counts.get(key, 0) + 1
                if count > budget:
                    raise CongestionError(round_no, key, count, budget)
                edge_counts[key] = count
                pending[to].append((v, message))
                total += 1
                any_sent = True
                if trace is not None:
                    trace.write(
                        json.dumps(
                            {
                                "schema": TRACE_SCHEMA,
                                "round": round_no,
                                "from": v,
                                "to": to,
                                "tag": message.tag,
                                "values": list(message.values),
                            }
                        )
                        + "\n"
                    )
        if edge_counts:
            peak = max(peak, max(edge_counts.values()))
        if any_sent:
            last_traffic_round = round_no
        for v in range(n):
            if len(pending[v]) > 1:
                pending[v].sort(key=lambda sm: (sm[0], sm[1].tag, sm[1].values))
        inboxes = pending
        if all(p.halted for p in programs):
            break
    else:
        report = RoundReport(
            rounds=last_traffic_round,
            max_msgs_per_edge_per_round=peak,
            total_messages=total,
            phases={phase or "run": last_traffic_round},
        )
        raise SimTimeoutError(max_rounds, [v for v in range(n) if not programs[v].halted], report)

    report = RoundReport(
        rounds=last_traffic_round,
        max_msgs_per_edge_per_round=peak,
        total_messages=total,
        phases={phase or "run": last_traffic_round},
    )
    return [p.output for p in programs], report
